#pragma once

#include <stdexcept>
#include <string>

namespace egfp {

/// Thrown when a matrix that must be inverted (a 0/m-position assignment,
/// or a coefficient required by a recovery selector) is singular.
class SingularAssignmentError : public std::runtime_error {
public:
    explicit SingularAssignmentError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Thrown by structured_generator for (kind, degree) pairs it has no template for.
class UnsupportedTemplateError : public std::invalid_argument {
public:
    explicit UnsupportedTemplateError(const std::string& what)
        : std::invalid_argument(what) {}
};

} // namespace egfp
