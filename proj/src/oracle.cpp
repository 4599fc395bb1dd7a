#include "egfp/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>

namespace egfp {

const ToleranceConfig& ToleranceConfig::defaults() {
    static const ToleranceConfig t{};
    return t;
}

double rank_tolerance(const ToleranceConfig& tol, int rows, int cols, double sigma_max) {
    return std::max(rows, cols) * std::numeric_limits<double>::epsilon() * tol.rank_factor *
           sigma_max;
}

namespace {

// zggev is not documented reentrant everywhere; serialize calls.
std::mutex qz_mutex;

struct QzRaw {
    std::vector<std::complex<double>> alpha, beta;
    Eigen::MatrixXcd vl, vr;
};

QzRaw zggev(Eigen::MatrixXcd a, Eigen::MatrixXcd b) {
    const int n = static_cast<int>(a.rows());
    QzRaw out;
    out.alpha.resize(n);
    out.beta.resize(n);
    out.vl.resize(n, n);
    out.vr.resize(n, n);
    if (n == 0) return out;
    std::lock_guard<std::mutex> lock(qz_mutex);
    int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'V', 'V', n,
                             reinterpret_cast<lapack_complex_double*>(a.data()), n,
                             reinterpret_cast<lapack_complex_double*>(b.data()), n,
                             reinterpret_cast<lapack_complex_double*>(out.alpha.data()),
                             reinterpret_cast<lapack_complex_double*>(out.beta.data()),
                             reinterpret_cast<lapack_complex_double*>(out.vl.data()), n,
                             reinterpret_cast<lapack_complex_double*>(out.vr.data()), n);
    if (info != 0) throw std::runtime_error("zggev failed: info = " + std::to_string(info));
    return out;
}

EigenResult classify_qz(const QzRaw& qz, const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                        const ToleranceConfig& tol) {
    EigenResult r;
    const double n0 = l0.norm(), n1 = l1.norm();
    for (std::size_t k = 0; k < qz.alpha.size(); ++k) {
        double a = std::abs(qz.alpha[k]), b = std::abs(qz.beta[k]);
        if (b <= tol.infinite_beta * (a + b) || (a == 0.0 && b == 0.0)) {
            ++r.infinite_count;
        } else {
            std::complex<double> lam = qz.alpha[k] / qz.beta[k];
            r.finite.push_back(lam);
            // first-order eigenvalue sensitivity: ||x|| ||y|| (||L0|| + |l| ||L1||)
            // over |y^H L1 x|; blows up for near-defective eigenvalues
            Eigen::VectorXcd x = qz.vr.col(static_cast<int>(k));
            Eigen::VectorXcd y = qz.vl.col(static_cast<int>(k));
            std::complex<double> s = y.adjoint() * (l1 * x);
            double denom = std::abs(s);
            double num = x.norm() * y.norm() * (n0 + std::abs(lam) * n1);
            r.condition.push_back(denom > 0 ? num / denom
                                            : std::numeric_limits<double>::infinity());
        }
    }
    return r;
}

bool probably_singular(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                       const ToleranceConfig& tol) {
    // normal-rank probe at three fixed pseudo-random points
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int probe = 0; probe < 3; ++probe) {
        std::complex<double> lam(d(rng), d(rng));
        Eigen::MatrixXcd m = lam * l1 - l0;
        if (numeric_rank(m, tol) == m.rows()) return false;
    }
    return true;
}

} // namespace

EigenResult generalized_eigs(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                             const ToleranceConfig& tol) {
    if (l0.rows() != l0.cols() || l1.rows() != l1.cols() || l0.rows() != l1.rows())
        throw std::invalid_argument("generalized_eigs: square matrices of equal size required");
    if (probably_singular(l0, l1, tol)) {
        EigenResult r;
        r.regular = false;
        return r;
    }
    QzRaw qz = zggev(l0, l1);
    return classify_qz(qz, l0, l1, tol);
}

EigenResult companion_eigs(const MatrixPolynomial& p, const ToleranceConfig& tol) {
    const int n = p.n, m = p.m;
    // First companion form, assembled directly:
    //   C1 = diag(A_m, I, ..., I),
    //   C0 = [[-A_{m-1} ... -A_0], [I 0 ... 0], ..., [0 ... I 0]].
    Eigen::MatrixXcd c1 = Eigen::MatrixXcd::Identity(m * n, m * n);
    c1.topLeftCorner(n, n) = p.coeff(m);
    Eigen::MatrixXcd c0 = Eigen::MatrixXcd::Zero(m * n, m * n);
    for (int k = 0; k < m; ++k) c0.block(0, k * n, n, n) = -p.coeff(m - 1 - k);
    for (int k = 1; k < m; ++k)
        c0.block(k * n, (k - 1) * n, n, n) = Eigen::MatrixXcd::Identity(n, n);
    return generalized_eigs(c0, c1, tol);
}

int numeric_rank(const Eigen::MatrixXcd& m, const ToleranceConfig& tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    double cut = rank_tolerance(tol, static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                                sv.size() ? sv(0) : 0.0);
    int r = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) ++r;
    return r;
}

Eigen::MatrixXcd null_basis(const Eigen::MatrixXcd& m, Side side, const ToleranceConfig& tol) {
    if (side == Side::left) return null_basis(m.transpose(), Side::right, tol);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cut = rank_tolerance(tol, static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                                sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > cut) ++rank;
    return svd.matrixV().rightCols(m.cols() - rank);
}

namespace {

/// Convolution matrix of the pencil acting on degree-<=d vector polynomials:
/// (d+2) block rows by (d+1) block columns of [-L0 / L1] staggered.
Eigen::MatrixXcd convolution_matrix(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                    int d) {
    const int r = static_cast<int>(l0.rows());
    const int c = static_cast<int>(l0.cols());
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero((d + 2) * r, (d + 1) * c);
    for (int k = 0; k <= d; ++k) {
        t.block(k * r, k * c, r, c) = -l0;
        t.block((k + 1) * r, k * c, r, c) = l1;
    }
    return t;
}

int normal_rank_pencil(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                       const ToleranceConfig& tol) {
    std::mt19937_64 rng(0xabcdef1234567ull);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    int best = 0;
    for (int probe = 0; probe < 3; ++probe) {
        std::complex<double> lam(d(rng), d(rng));
        best = std::max(best, numeric_rank(lam * l1 - l0, tol));
    }
    return best;
}

} // namespace

std::vector<int> minimal_indices_pencil(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                        Side side, const ToleranceConfig& tol) {
    if (side == Side::left)
        return minimal_indices_pencil(l0.transpose(), l1.transpose(), Side::right, tol);
    const int cols = static_cast<int>(l0.cols());
    const int deficiency = cols - normal_rank_pencil(l0, l1, tol);
    std::vector<int> indices;
    if (deficiency <= 0) return indices;

    int prev_null = 0;
    int prev_count = 0;
    const int dmax = static_cast<int>(l0.rows()) + cols; // safe saturation bound
    for (int d = 0; d <= dmax; ++d) {
        Eigen::MatrixXcd t = convolution_matrix(l0, l1, d);
        int null_dim = (d + 1) * cols - numeric_rank(t, tol);
        int count = null_dim - prev_null; // # of minimal indices <= d
        for (int k = 0; k < count - prev_count; ++k) indices.push_back(d);
        if (count >= deficiency) break;
        prev_null = null_dim;
        prev_count = count;
    }
    return indices;
}

PolyMatrix minimal_basis_pencil(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                Side side, const ToleranceConfig& tol) {
    if (side == Side::left)
        return minimal_basis_pencil(l0.transpose(), l1.transpose(), Side::right, tol);
    const int cols = static_cast<int>(l0.cols());
    const int deficiency = cols - normal_rank_pencil(l0, l1, tol);
    std::vector<std::pair<int, Eigen::VectorXcd>> basis; // (degree, stacked coeffs up to degree)
    if (deficiency > 0) {
        const int dmax = static_cast<int>(l0.rows()) + cols;
        for (int d = 0; d <= dmax && static_cast<int>(basis.size()) < deficiency; ++d) {
            Eigen::MatrixXcd nul = null_basis(convolution_matrix(l0, l1, d), Side::right, tol);
            if (nul.cols() == 0) continue;
            // span of lambda^j * (existing basis vectors), stacked to degree d
            std::vector<Eigen::VectorXcd> shifted;
            for (const auto& [deg, v] : basis)
                for (int j = 0; j + deg <= d; ++j) {
                    Eigen::VectorXcd s = Eigen::VectorXcd::Zero((d + 1) * cols);
                    s.segment(j * cols, (deg + 1) * cols) = v;
                    shifted.push_back(s);
                }
            Eigen::MatrixXcd shift_mat(static_cast<int>((d + 1) * cols),
                                       static_cast<int>(shifted.size()));
            for (std::size_t k = 0; k < shifted.size(); ++k) shift_mat.col(k) = shifted[k];

            // candidates independent of the shifted span: project away and re-orthonormalize
            Eigen::MatrixXcd cand = nul;
            if (shift_mat.cols() > 0) {
                Eigen::HouseholderQR<Eigen::MatrixXcd> qr(shift_mat);
                Eigen::MatrixXcd q = qr.householderQ() *
                                     Eigen::MatrixXcd::Identity(shift_mat.rows(),
                                                                std::min(shift_mat.rows(),
                                                                         shift_mat.cols()));
                cand = nul - q * (q.adjoint() * nul);
            }
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cand, Eigen::ComputeThinU);
            const auto& sv = svd.singularValues();
            // candidates come from unit null vectors, so the noise floor is
            // relative to 1, not to the largest candidate direction (which is
            // itself noise once the shifted span covers the whole kernel)
            double cut = rank_tolerance(tol, static_cast<int>(cand.rows()),
                                        static_cast<int>(cand.cols()), 1.0);
            for (int k = 0; k < sv.size() && static_cast<int>(basis.size()) < deficiency; ++k) {
                if (sv(k) <= cut) continue;
                basis.emplace_back(d, svd.matrixU().col(k));
            }
        }
    }
    int maxdeg = 0;
    for (const auto& [deg, v] : basis) maxdeg = std::max(maxdeg, deg);
    PolyMatrix out(cols, static_cast<int>(basis.size()), basis.empty() ? 0 : maxdeg);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& [deg, v] = basis[j];
        for (int d = 0; d <= deg; ++d) out.coeffs[d].col(j) = v.segment(d * cols, cols);
    }
    return out;
}

std::complex<double> polish_eigenvalue(const Eigen::MatrixXcd& l0, const Eigen::MatrixXcd& l1,
                                       std::complex<double> mu, int steps) {
    for (int k = 0; k < steps; ++k) {
        Eigen::MatrixXcd lm = mu * l1 - l0;
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lm);
        std::complex<double> dlogdet = lu.solve(l1).trace(); // d/dmu log det
        if (!std::isfinite(std::abs(dlogdet)) || std::abs(dlogdet) < 1e-300) break;
        std::complex<double> step = 1.0 / dlogdet;
        if (!std::isfinite(std::abs(step))) break;
        mu -= step;
    }
    return mu;
}

bool eigs_match(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b,
                double rel_tol, double scale) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        // nearest unmatched partner in b
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k) {
            double d = std::abs(x - b[k]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best == b.size()) return false;
        double denom = std::max({1.0, std::abs(x), scale});
        if (best_d > rel_tol * denom) return false;
        b.erase(b.begin() + best);
    }
    return true;
}

} // namespace egfp
