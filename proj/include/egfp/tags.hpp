#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace egfp {

/// Leaf symbol of a block tag: a polynomial coefficient A_j, its inverse,
/// or a named assigned matrix (and its inverse).
struct TagAtom {
    enum class Kind : std::uint8_t { coeff, coeff_inv, assigned, assigned_inv };
    Kind kind = Kind::coeff;
    int index = -1;   // coefficient index, for coeff / coeff_inv
    std::string name; // for assigned / assigned_inv

    friend bool operator==(const TagAtom&, const TagAtom&) = default;
    friend std::strong_ordering operator<=>(const TagAtom&, const TagAtom&) = default;

    bool inverse_of(const TagAtom& other) const;
    std::string str() const;
};

/// Integer multiple of an ordered product of atoms; empty product = identity.
struct TagTerm {
    long long coeff = 0;
    std::vector<TagAtom> atoms;

    friend bool operator==(const TagTerm&, const TagTerm&) = default;
};

/// Exact symbolic content of one block: an integer combination of atom
/// products, kept in a canonical sorted form. Rebuilding the dense block from
/// its tag reproduces the numeric product exactly for exact inputs.
class Tag {
public:
    Tag() = default; // zero

    static Tag zero() { return Tag(); }
    static Tag identity();
    static Tag coefficient(int j);
    static Tag coefficient_inverse(int j);
    static Tag assigned(const std::string& name);
    static Tag assigned_inverse(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    bool is_identity() const;

    /// Operation-free alphabet: zero, +/-I, +/-A_j, +/-A_j^{-1}, +/-assigned.
    bool is_operation_free() const;

    Tag operator-() const;
    Tag operator+(const Tag& other) const;
    Tag operator-(const Tag& other) const { return *this + (-other); }
    Tag operator*(const Tag& other) const;
    friend bool operator==(const Tag&, const Tag&) = default;

    /// Symbolic inverse, defined only for +/- a single invertible atom (or I).
    std::optional<Tag> inverted() const;

    const std::vector<TagTerm>& terms() const { return terms_; }

    /// Evaluates against concrete matrices: coefficients from `coeffs`
    /// (A_0..A_m), assigned matrices by name. Inverse atoms solve, they do
    /// not form explicit inverses.
    Eigen::MatrixXcd evaluate(const std::vector<Eigen::MatrixXcd>& coeffs,
                              const std::map<std::string, Eigen::MatrixXcd>& assigned,
                              int n) const;

    std::string str() const;          // "0", "I", "-A3", "A1*Ainv0", "A2+I", ...
    static Tag parse(const std::string& text);

private:
    explicit Tag(std::vector<TagTerm> terms) : terms_(std::move(terms)) {}
    void normalize();
    std::vector<TagTerm> terms_;
};

} // namespace egfp
