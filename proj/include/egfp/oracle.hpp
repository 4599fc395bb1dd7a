#pragma once

#include "egfp/poly.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace egfp {

/// One place for every numeric threshold used by checks and reports, so runs
/// are reproducible.
struct ToleranceConfig {
    double rank_factor = 64.0;        // numeric rank: sigma_k > max(dims)*eps*rank_factor*sigma_1
    double eig_match_rel = 1e-8;      // eigenvalue multiset agreement
    double residual_rel = 1e-8;       // ||P(mu)x|| <= residual_rel * ||P|| * ||x||
    double condition_skip = 1e6;      // skip eigenvalues worse conditioned than this
    double infinite_beta = 1e-8;      // |beta| below this (relative) counts as infinite
    double subspace_angle = 1e-8;     // decoration-invariance of recovered subspaces

    static const ToleranceConfig& defaults();
};

double rank_tolerance(const ToleranceConfig& tol, int rows, int cols, double sigma_max);

struct EigenResult {
    std::vector<std::complex<double>> finite;
    int infinite_count = 0;
    std::vector<double> condition; // parallel to finite
    bool regular = true;           // false when the pencil looks singular
};

enum class Side { right, left };

/// Dense QZ adapter for the pencil lambda*L1 - L0 (eigenvalues of
/// L0 x = lambda L1 x). Detects singular pencils via normal-rank probes at
/// random points before solving.
EigenResult generalized_eigs(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                             const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Eigenvalues of P via an independently-coded first companion form. Shares
/// no code with the pencil-construction path on purpose: agreement between
/// the two is evidence, not a tautology.
EigenResult companion_eigs(const MatrixPolynomial& p,
                           const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Orthonormal null-space basis (right: Mx = 0; left: x^T M = 0, i.e. the
/// kernel of the plain transpose).
Eigen::MatrixXcd null_basis(const Eigen::MatrixXcd& m, Side side,
                            const ToleranceConfig& tol = ToleranceConfig::defaults());

int numeric_rank(const Eigen::MatrixXcd& m,
                 const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Right (left) minimal indices of a singular pencil via the block-Toeplitz
/// rank recursion on degrees d = 0, 1, 2, ...; empty for regular pencils.
std::vector<int> minimal_indices_pencil(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                        Side side,
                                        const ToleranceConfig& tol = ToleranceConfig::defaults());

/// A right (left) minimal polynomial basis of the pencil, extracted from the
/// same recursion: new directions at degree d, made independent of shifted
/// lower-degree basis vectors.
PolyMatrix minimal_basis_pencil(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                Side side,
                                const ToleranceConfig& tol = ToleranceConfig::defaults());

/// Greedy nearest-neighbour pairing of two eigenvalue multisets under a
/// relative tolerance; true when they match one-to-one.
bool eigs_match(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b,
                double rel_tol, double scale = 1.0);

/// Newton polishing of a simple finite eigenvalue of lambda*L1 - L0
/// (lambda <- lambda - 1/trace(L(lambda)^{-1} L1)); sharpens QZ output so
/// that null vectors of L(mu) reach machine-precision residuals.
std::complex<double> polish_eigenvalue(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                       std::complex<double> mu, int steps = 3);

} // namespace egfp
