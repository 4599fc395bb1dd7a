#pragma once

#include "egfp/blockmat.hpp"
#include "egfp/poly.hpp"
#include "egfp/tuples.hpp"

#include <functional>
#include <random>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace egfp {

/// How one decoration tuple is assigned: the trivial coefficient choice, or
/// per-position named matrices. An empty name marks a position that keeps the
/// trivial choice, so one tuple can mix both.
struct DecorationAssignment {
    bool trivial = true;
    std::vector<std::string> names;
    std::vector<Eigen::MatrixXcd> values;

    static DecorationAssignment make_trivial() { return {}; }
    static DecorationAssignment make_named(std::vector<std::string> ns,
                                           std::vector<Eigen::MatrixXcd> vs);

    MatrixAssignment materialize(const IndexTuple& tuple, const MatrixPolynomial& p) const;
};

/// The data of one pencil
///   L(lambda) = M_{tau1}(Y1) M_{sigma1}(X1) (lambda M^P_tau - M^P_sigma)
///               M_{sigma2}(X2) M_{tau2}(Y2).
struct EgfpSpec {
    int m = 0;
    IndexTuple sigma, tau, sigma1, sigma2, tau1, tau2;
    DecorationAssignment x1, x2, y1, y2;

    /// omega = -tau as a plus-class tuple.
    IndexTuple omega() const { return tau.negated(); }
    IndexTuple sigma_composite() const { return concat(sigma1, sigma, sigma2); }
    IndexTuple tau_composite() const { return concat(tau1, tau, tau2); }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    bool operation_free_predicted = false;
    /// Coefficients that must be invertible to assemble the pencil
    /// (A_0 when -0 appears, A_m when +m appears, plus trivial-decoration
    /// coefficients at 0/m magnitude positions).
    std::vector<std::string> required_invertible;
};

/// Checks every defining clause and reports all violations.
ValidationReport validate(const EgfpSpec& spec);

struct BlockPencil {
    BlockMatrix L1, L0; // lambda L1 - L0
    std::optional<EgfpSpec> spec;
    int m = 0, n = 0;

    Eigen::MatrixXcd eval(std::complex<double> lambda) const;
    /// Named decoration matrices for tag evaluation.
    std::map<std::string, Eigen::MatrixXcd> named() const;
};

struct BuildOptions {
    /// Swap the order of the decoration factors on each side
    /// (M_{sigma1} M_{tau1} ... M_{tau2} M_{sigma2}); experimental, the
    /// standard theorems do not cover this order.
    bool swapped_decorations = false;
};

/// Assembles lambda L1 - L0. Throws std::invalid_argument for an invalid
/// spec and SingularAssignmentError when a mandatory inverse does not exist.
BlockPencil build(const EgfpSpec& spec, const MatrixPolynomial& p, const BuildOptions& = {});

enum class Family { FP, GFP, FPR, GFPR, EGFP_proper };

/// All classical families the spec falls into; {EGFP_proper} when none.
std::set<Family> classify(const EgfpSpec& spec);
std::string family_name(Family f);

/// max |i-j| over structurally nonzero blocks of L0 and L1.
int bandwidth(const BlockPencil& pencil);

enum class BandClass { tridiagonal, pentadiagonal, wider, not_applicable };
std::string band_class_name(BandClass c);

/// Bandwidth predicted from the index tuples alone. The penta-diagonal
/// criterion is an iff only when the decorations avoid the end indices of
/// sigma and tau; outside that hypothesis (and when the tuples do not already
/// force tridiagonal form) the result is not_applicable, never a guess.
BandClass predict_bandwidth(const EgfpSpec& spec);

/// True when the decorations avoid the end indices of sigma and tau.
bool end_index_hypothesis(const EgfpSpec& spec);

/// Exact structural test on the block tags.
bool is_operation_free(const BlockPencil& pencil);
/// The sufficient condition on tuples: m-1, m not both in sigma and
/// -1, -0 not both in tau.
bool operation_free_hypothesis(const EgfpSpec& spec);

enum class StructureKind { symmetric, skew, t_even, t_odd, t_palindromic };

struct StructuredPencil {
    BlockPencil pencil;
    /// Diagonal block-sign multiplier Q applied on the left, when the
    /// template uses one; +1/-1 per block row.
    std::vector<int> q_signs;
};

/// Structure-preserving template constructions. Supported pairs:
/// (symmetric, 6), (symmetric, 8), (skew, 5), (t_even, 5), (t_odd, 5),
/// (t_palindromic, 7). The optional X feeds the free matrix slot of the
/// m = 8 template (defaults to the identity).
StructuredPencil structured_generator(StructureKind kind, int m, const MatrixPolynomial& p,
                                      const std::optional<Eigen::MatrixXcd>& x = {});

struct EnumerationFilter {
    /// Predicted band filter; classes nest, so pentadiagonal admits
    /// tridiagonal specs as well.
    std::optional<BandClass> band;
    std::optional<Family> family;          // classical family filter
    std::optional<bool> operation_free;    // operation-free hypothesis filter
};

/// Streams every valid spec of degree m whose decoration tuples have length
/// <= decoration_cap, in a fixed deterministic order, with trivial
/// assignments. Stops early when the visitor returns false.
void enumerate_specs(int m, const EnumerationFilter& filter,
                     const std::function<bool(const EgfpSpec&)>& visit, int decoration_cap = 2);

/// Convenience collector for small m.
std::vector<EgfpSpec> enumerate_specs(int m, const EnumerationFilter& filter = {},
                                      int decoration_cap = 2);

/// Replaces trivial decoration assignments by named random nonsingular
/// matrices (integer-valued when `integer` is set), for randomized checks.
EgfpSpec with_random_decorations(EgfpSpec spec, std::mt19937_64& rng, int n,
                                 bool integer = false);

} // namespace egfp
