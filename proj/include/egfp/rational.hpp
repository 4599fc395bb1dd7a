#pragma once

#include "egfp/oracle.hpp"
#include "egfp/pencils.hpp"
#include "egfp/poly.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace egfp {

/// State-space realization G(lambda) = P(lambda) + C (lambda E - A)^{-1} B
/// with E nonsingular; r = 0 degenerates to the plain polynomial.
struct Realization {
    MatrixPolynomial P;
    Eigen::MatrixXcd A, E; // r x r
    Eigen::MatrixXcd B;    // r x n
    Eigen::MatrixXcd C;    // n x r

    Realization() = default;
    Realization(MatrixPolynomial p, Eigen::MatrixXcd a, Eigen::MatrixXcd e, Eigen::MatrixXcd b,
                Eigen::MatrixXcd c);

    int r() const { return static_cast<int>(A.rows()); }
    int n() const { return P.n; }

    /// G(lambda), evaluated by a linear solve; lambda must avoid eig(A, E).
    Eigen::MatrixXcd transfer_eval(std::complex<double> lambda) const;
};

/// The (n+r) x (n+r) system matrix [[P(lambda), C], [B, A - lambda E]].
struct SystemMatrix {
    Realization real;

    Eigen::MatrixXcd eval(std::complex<double> lambda) const;
    int dim() const { return real.n() + real.r(); }
    /// The system matrix as a degree-m matrix polynomial (for independent
    /// companion-based spectra).
    MatrixPolynomial as_polynomial() const;
};

SystemMatrix system_matrix(const Realization& real);

struct MinimalityReport {
    bool controllable = true; // rank [B, A - lambda E] = r at every probe
    bool observable = true;   // rank [C; A - lambda E] = r at every probe
    bool minimal() const { return controllable && observable; }
    struct Probe {
        std::complex<double> lambda;
        bool is_eigenvalue; // of (A, E)
        int rank_ctrl, rank_obs;
    };
    std::vector<Probe> probes;
};

/// Evaluates both rank conditions at every eigenvalue of (A, E) plus random
/// probe points; r = 0 is vacuously minimal.
MinimalityReport check_minimality(const Realization& real,
                                  const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Bordered pencil: the polynomial pencil with C in the border column at
/// block row m - i_0(sigma_1, sigma), B in the border row at block column
/// m - c_0(sigma, sigma_2), and A - lambda E in the corner.
struct BorderedPencil {
    BlockPencil core;
    Eigen::MatrixXcd A, E, B, C;
    int c_block_row = 0; // 1-based block row of C
    int b_block_col = 0; // 1-based block column of B

    int dim() const { return core.m * core.n + static_cast<int>(A.rows()); }
    /// Dense (mn+r) pair: lambda L1 - L0.
    Eigen::MatrixXcd dense_l0() const;
    Eigen::MatrixXcd dense_l1() const;
    Eigen::MatrixXcd eval(std::complex<double> lambda) const;
};

/// Requires 0 in sigma and -m in tau (invalid-spec otherwise). Positions
/// that would fall outside 1..m are rejected, never guessed.
BorderedPencil build_rational(const EgfpSpec& spec, const Realization& real,
                              const BuildOptions& = {});

/// Banded prediction for the bordered pencil: the core conditions plus the
/// border-position conditions from the block-banded definition
/// (c_0(sigma, sigma_2) and i_0(sigma_1, sigma) vanish for tridiagonal, are
/// at most 1 for penta-diagonal).
BandClass predict_bandwidth_rational(const EgfpSpec& spec);

/// max |i-j| over nonzero blocks including the border (border blocks counted
/// at distance m - position + 1 in the (m+1)-block grid with the corner).
int bandwidth_bordered(const BorderedPencil& pencil);

} // namespace egfp
