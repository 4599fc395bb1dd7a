#include "egfp/rational.hpp"

#include "egfp/errors.hpp"

#include <random>
#include <stdexcept>

namespace egfp {

Realization::Realization(MatrixPolynomial p, Eigen::MatrixXcd a, Eigen::MatrixXcd e,
                         Eigen::MatrixXcd b, Eigen::MatrixXcd c)
    : P(std::move(p)), A(std::move(a)), E(std::move(e)), B(std::move(b)), C(std::move(c)) {
    const int rr = static_cast<int>(A.rows());
    if (A.cols() != rr || E.rows() != rr || E.cols() != rr)
        throw std::invalid_argument("A and E must be square of equal size");
    if (B.rows() != rr || B.cols() != P.n || C.rows() != P.n || C.cols() != rr)
        throw std::invalid_argument("B must be r x n and C must be n x r");
    if (rr > 0 && !E.fullPivLu().isInvertible())
        throw std::invalid_argument("E must be nonsingular");
}

Eigen::MatrixXcd Realization::transfer_eval(std::complex<double> lambda) const {
    Eigen::MatrixXcd g = P.eval(lambda);
    if (r() > 0) g += C * (lambda * E - A).partialPivLu().solve(B);
    return g;
}

Eigen::MatrixXcd SystemMatrix::eval(std::complex<double> lambda) const {
    const int n = real.n(), r = real.r();
    Eigen::MatrixXcd s(n + r, n + r);
    s.topLeftCorner(n, n) = real.P.eval(lambda);
    s.topRightCorner(n, r) = real.C;
    s.bottomLeftCorner(r, n) = real.B;
    s.bottomRightCorner(r, r) = real.A - lambda * real.E;
    return s;
}

MatrixPolynomial SystemMatrix::as_polynomial() const {
    const int n = real.n(), r = real.r(), m = real.P.m;
    std::vector<Eigen::MatrixXcd> cs(m + 1, Eigen::MatrixXcd::Zero(n + r, n + r));
    for (int i = 0; i <= m; ++i) cs[i].topLeftCorner(n, n) = real.P.coeff(i);
    cs[0].topRightCorner(n, r) = real.C;
    cs[0].bottomLeftCorner(r, n) = real.B;
    cs[0].bottomRightCorner(r, r) = real.A;
    cs[1].bottomRightCorner(r, r) -= real.E;
    MatrixPolynomial p;
    p.n = n + r;
    p.m = m;
    p.coeffs = std::move(cs);
    return p;
}

SystemMatrix system_matrix(const Realization& real) { return SystemMatrix{real}; }

MinimalityReport check_minimality(const Realization& real, const ToleranceConfig& tol) {
    MinimalityReport rep;
    const int r = real.r(), n = real.n();
    if (r == 0) return rep; // vacuously minimal

    std::vector<std::pair<std::complex<double>, bool>> lambdas;
    EigenResult pe = generalized_eigs(real.A, real.E, tol);
    for (const auto& mu : pe.finite) lambdas.emplace_back(mu, true);
    std::mt19937_64 rng(0x5bd1e995u);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int k = 0; k < 3; ++k) lambdas.emplace_back(std::complex<double>(d(rng), d(rng)), false);

    for (const auto& [lam, is_eig] : lambdas) {
        Eigen::MatrixXcd ctrl(r, n + r);
        ctrl.leftCols(n) = real.B;
        ctrl.rightCols(r) = real.A - lam * real.E;
        Eigen::MatrixXcd obs(n + r, r);
        obs.topRows(n) = real.C;
        obs.bottomRows(r) = real.A - lam * real.E;
        int rc = numeric_rank(ctrl, tol);
        int ro = numeric_rank(obs, tol);
        rep.probes.push_back({lam, is_eig, rc, ro});
        if (rc < r) rep.controllable = false;
        if (ro < r) rep.observable = false;
    }
    return rep;
}

Eigen::MatrixXcd BorderedPencil::dense_l0() const {
    const int mn = core.m * core.n, r = static_cast<int>(A.rows()), n = core.n;
    Eigen::MatrixXcd l0 = Eigen::MatrixXcd::Zero(mn + r, mn + r);
    l0.topLeftCorner(mn, mn) = core.L0.dense();
    l0.block((c_block_row - 1) * n, mn, n, r) = -C;
    l0.block(mn, (b_block_col - 1) * n, r, n) = -B;
    l0.bottomRightCorner(r, r) = -A;
    return l0;
}

Eigen::MatrixXcd BorderedPencil::dense_l1() const {
    const int mn = core.m * core.n, r = static_cast<int>(A.rows());
    Eigen::MatrixXcd l1 = Eigen::MatrixXcd::Zero(mn + r, mn + r);
    l1.topLeftCorner(mn, mn) = core.L1.dense();
    l1.bottomRightCorner(r, r) = -E;
    return l1;
}

Eigen::MatrixXcd BorderedPencil::eval(std::complex<double> lambda) const {
    return lambda * dense_l1() - dense_l0();
}

BorderedPencil build_rational(const EgfpSpec& spec, const Realization& real,
                              const BuildOptions& opts) {
    if (!spec.sigma.contains(pos(0)))
        throw std::invalid_argument("build_rational: 0 must belong to sigma");
    if (!spec.tau.contains(neg(spec.m)))
        throw std::invalid_argument("build_rational: -m must belong to tau");

    const int m = spec.m;
    int c0 = consecutions(concat(spec.sigma, spec.sigma2), pos(0));
    int i0 = inversions(concat(spec.sigma1, spec.sigma), pos(0));
    if (c0 < 0 || c0 >= m || i0 < 0 || i0 >= m)
        throw std::invalid_argument(
            "build_rational: border position m - " + std::to_string(std::max(c0, i0)) +
            " falls outside the block grid; no construction is defined for this spec");

    BorderedPencil out;
    out.core = build(spec, real.P, opts);
    out.A = real.A;
    out.E = real.E;
    out.B = real.B;
    out.C = real.C;
    out.c_block_row = m - i0;
    out.b_block_col = m - c0;
    return out;
}

BandClass predict_bandwidth_rational(const EgfpSpec& spec) {
    BandClass core = predict_bandwidth(spec);
    if (!spec.sigma.contains(pos(0)) || !spec.tau.contains(neg(spec.m)))
        return BandClass::not_applicable;
    int c0 = consecutions(concat(spec.sigma, spec.sigma2), pos(0));
    int i0 = inversions(concat(spec.sigma1, spec.sigma), pos(0));
    int border = std::max(c0, i0) + 1; // border block distance in the extended grid
    if (core == BandClass::tridiagonal && border <= 1) return BandClass::tridiagonal;
    if (core == BandClass::not_applicable) return BandClass::not_applicable;
    if (core != BandClass::wider && border <= 2) return BandClass::pentadiagonal;
    return BandClass::wider;
}

int bandwidth_bordered(const BorderedPencil& pencil) {
    const int m = pencil.core.m;
    int b = bandwidth(pencil.core);
    if (!pencil.C.isZero(0.0)) b = std::max(b, m + 1 - pencil.c_block_row);
    if (!pencil.B.isZero(0.0)) b = std::max(b, m + 1 - pencil.b_block_col);
    return b;
}

} // namespace egfp
