#pragma once

#include "egfp/oracle.hpp"
#include "egfp/pencils.hpp"
#include "egfp/poly.hpp"
#include "egfp/rational.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>

namespace egfp {

/// One block row of the pencil's null vector, optionally premultiplied by a
/// solved coefficient inverse: the linear isomorphism that carries null
/// vectors of L onto null vectors of P.
struct RowSelector {
    enum class Premul { none, am_inv, a0_inv, am_inv_t, a0_inv_t };
    int block = 1; // 1-based block row
    Premul premul = Premul::none;
    std::string branch; // which table case fired, for reports

    /// Applies the selector to stacked vectors (mn x p); premultipliers
    /// solve against the named coefficient (SingularAssignmentError when it
    /// is singular).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& z, const MatrixPolynomial& p) const;
    /// Same on a polynomial matrix, coefficientwise.
    PolyMatrix apply(const PolyMatrix& z, const MatrixPolynomial& p) const;

    std::string str() const;
};

/// Case tables for eigenvector recovery at finite eigenvalues.
RowSelector right_selector(const EgfpSpec& spec);
RowSelector left_selector(const EgfpSpec& spec);

/// Case table for eigenvectors at infinity (requires -m in tau).
std::pair<RowSelector, RowSelector> infinity_selectors(const EgfpSpec& spec);

struct RecoveryResult {
    Eigen::MatrixXcd vectors; // n x p
    RowSelector selector;
    double max_residual = 0.0; // ||P(mu) x|| / (||P|| ||x||), worst column
    bool full_rank = true;
};

/// Maps a basis Z of the right/left null space of L(mu) to a basis of the
/// null space of P(mu). Rank loss after selection is reported, not hidden.
RecoveryResult recover_eigenvectors(const EgfpSpec& spec, const MatrixPolynomial& p,
                                    std::complex<double> mu, const Eigen::MatrixXcd& z,
                                    Side side,
                                    const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Same at the eigenvalue infinity: Z is a null basis of L1 (right) or
/// L1^T (left); residuals are checked against rev P at 0, i.e. A_m.
RecoveryResult recover_eigenvectors_at_infinity(
    const EgfpSpec& spec, const MatrixPolynomial& p, const Eigen::MatrixXcd& z, Side side,
    const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Minimal bases travel through fixed block rows: m - c_0(sigma, sigma_2) on
/// the right, m - i_0(sigma_1, sigma) on the left.
RowSelector minimal_basis_selector(const EgfpSpec& spec, Side side);
PolyMatrix recover_minimal_basis(const EgfpSpec& spec, const PolyMatrix& z, Side side,
                                 const MatrixPolynomial& p);

/// Minimal-index shifts: with tau = (tau_l, -m, tau_r) and
/// alpha = (-rev(tau_l), sigma, -rev(tau_r)), right indices of P are those of
/// L minus i(alpha) and left indices minus c(alpha); i + c = m - 1.
struct MinimalIndexShift {
    int i_shift = 0; // subtract from right indices
    int c_shift = 0; // subtract from left indices
};
MinimalIndexShift minimal_index_shift(const EgfpSpec& spec);

std::vector<int> shift_indices(const std::vector<int>& pencil_indices, int shift);

/// System-matrix recovery: the selector acts on the first mn rows, the last
/// r rows pass through unchanged; minimal indices of S equal those of the
/// bordered pencil shifted exactly as in the polynomial case.
struct SystemRecovery {
    Eigen::MatrixXcd s_basis; // (n+r) x p, null basis of S(mu)
    Eigen::MatrixXcd g_basis; // n x p, the first n rows (basis for G)
    RowSelector selector;
    double max_residual = 0.0; // ||S(mu) z|| / (||S(mu)|| ||z||), worst column
};
SystemRecovery recover_system_eigenvectors(const EgfpSpec& spec, const Realization& real,
                                           std::complex<double> mu, const Eigen::MatrixXcd& z,
                                           Side side);

struct SystemBasisRecovery {
    PolyMatrix s_basis;
    PolyMatrix g_basis;
    RowSelector selector;
};
SystemBasisRecovery recover_system_minimal_basis(const EgfpSpec& spec, const Realization& real,
                                                 const PolyMatrix& z, Side side);

} // namespace egfp
