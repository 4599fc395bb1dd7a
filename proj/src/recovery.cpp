#include "egfp/recovery.hpp"

#include "egfp/errors.hpp"

#include <stdexcept>

namespace egfp {

namespace {

Eigen::MatrixXcd solve_with(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& rhs,
                            bool transpose, const std::string& what) {
    Eigen::MatrixXcd mat = transpose ? a.transpose() : a;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(mat);
    if (!lu.isInvertible())
        throw SingularAssignmentError(what + " is singular; this recovery map does not exist");
    return lu.solve(rhs);
}

} // namespace

Eigen::MatrixXcd RowSelector::apply(const Eigen::MatrixXcd& z, const MatrixPolynomial& p) const {
    const int n = p.n;
    Eigen::MatrixXcd rows = z.middleRows((block - 1) * n, n);
    switch (premul) {
        case Premul::none: return rows;
        case Premul::am_inv: return solve_with(p.coeff(p.m), rows, false, "A_m");
        case Premul::a0_inv: return solve_with(p.coeff(0), rows, false, "A_0");
        case Premul::am_inv_t: return solve_with(p.coeff(p.m), rows, true, "A_m^T");
        case Premul::a0_inv_t: return solve_with(p.coeff(0), rows, true, "A_0^T");
    }
    return rows;
}

PolyMatrix RowSelector::apply(const PolyMatrix& z, const MatrixPolynomial& p) const {
    PolyMatrix out(p.n, z.cols, z.degree());
    for (int d = 0; d <= z.degree(); ++d) {
        Eigen::MatrixXcd rows = z.coeffs[d].middleRows((block - 1) * p.n, p.n);
        switch (premul) {
            case Premul::none: out.coeffs[d] = rows; break;
            case Premul::am_inv: out.coeffs[d] = solve_with(p.coeff(p.m), rows, false, "A_m"); break;
            case Premul::a0_inv: out.coeffs[d] = solve_with(p.coeff(0), rows, false, "A_0"); break;
            case Premul::am_inv_t:
                out.coeffs[d] = solve_with(p.coeff(p.m), rows, true, "A_m^T");
                break;
            case Premul::a0_inv_t:
                out.coeffs[d] = solve_with(p.coeff(0), rows, true, "A_0^T");
                break;
        }
    }
    return out;
}

std::string RowSelector::str() const {
    std::string pre;
    switch (premul) {
        case Premul::none: pre = ""; break;
        case Premul::am_inv: pre = "Am^-1 * "; break;
        case Premul::a0_inv: pre = "A0^-1 * "; break;
        case Premul::am_inv_t: pre = "Am^-T * "; break;
        case Premul::a0_inv_t: pre = "A0^-T * "; break;
    }
    return pre + "row " + std::to_string(block) + " [" + branch + "]";
}

RowSelector right_selector(const EgfpSpec& spec) {
    const int m = spec.m;
    RowSelector s;
    if (spec.sigma.contains(pos(0))) {
        int c0 = consecutions(spec.sigma, pos(0));
        if (c0 < m) {
            s.block = m - consecutions(concat(spec.sigma, spec.sigma2), pos(0));
            s.branch = "0 in sigma, c0 < m";
        } else {
            s.block = 1;
            s.premul = RowSelector::Premul::am_inv;
            s.branch = "0 in sigma, c0 = m";
        }
        return s;
    }
    // 0 in omega
    IndexTuple omega = spec.omega();
    int i0 = inversions(omega, pos(0));
    if (omega.contains(pos(0)) && spec.sigma.contains(pos(i0 + 1))) {
        int c_next = consecutions(spec.sigma, pos(i0 + 1));
        int sval = i0 + c_next + 1;
        if (sval < m) {
            int p = i0 + consecutions(concat(spec.sigma, spec.sigma2), pos(i0 + 1)) + 1;
            s.block = m - p;
            s.branch = "0 in omega, i0+1 in sigma, s < m";
        } else {
            s.block = consecutions(spec.tau2, neg(m - 1)) + 2;
            s.premul = RowSelector::Premul::am_inv;
            s.branch = "0 in omega, i0+1 in sigma, s = m";
        }
        return s;
    }
    if (i0 < m) {
        int p = i0 - consecutions(spec.tau2, neg(i0)) - 1;
        s.block = m - p;
        s.branch = "0 in omega, i0 < m, i0+1 not in sigma";
        return s;
    }
    s.block = m;
    s.premul = RowSelector::Premul::a0_inv;
    s.branch = "0 in omega, i0 = m";
    return s;
}

RowSelector left_selector(const EgfpSpec& spec) {
    const int m = spec.m;
    RowSelector s;
    if (spec.sigma.contains(pos(0))) {
        int i0 = inversions(spec.sigma, pos(0));
        if (i0 < m) {
            s.block = m - inversions(concat(spec.sigma1, spec.sigma), pos(0));
            s.branch = "0 in sigma, i0 < m";
        } else {
            s.block = 1;
            s.premul = RowSelector::Premul::am_inv_t;
            s.branch = "0 in sigma, i0 = m";
        }
        return s;
    }
    IndexTuple omega = spec.omega();
    int c0 = consecutions(omega, pos(0));
    if (omega.contains(pos(0)) && spec.sigma.contains(pos(c0 + 1))) {
        int i_next = inversions(spec.sigma, pos(c0 + 1));
        int sval = c0 + i_next + 1;
        if (sval < m) {
            int p = c0 + inversions(concat(spec.sigma1, spec.sigma), pos(c0 + 1)) + 1;
            s.block = m - p;
            s.branch = "0 in omega, c0+1 in sigma, s < m";
        } else {
            s.block = inversions(spec.tau1, neg(m - 1)) + 2;
            s.premul = RowSelector::Premul::am_inv_t;
            s.branch = "0 in omega, c0+1 in sigma, s = m";
        }
        return s;
    }
    if (c0 < m) {
        int p = c0 - inversions(spec.tau1, neg(c0)) - 1;
        s.block = m - p;
        s.branch = "0 in omega, c0 < m, c0+1 not in sigma";
        return s;
    }
    s.block = m;
    s.premul = RowSelector::Premul::a0_inv_t;
    s.branch = "0 in omega, c0 = m";
    return s;
}

std::pair<RowSelector, RowSelector> infinity_selectors(const EgfpSpec& spec) {
    const int m = spec.m;
    if (!spec.tau.contains(neg(m)))
        throw std::invalid_argument("infinity_selectors: -m must belong to tau");
    RowSelector right, left;
    int cm = consecutions(spec.tau, neg(m));
    if (cm < m) {
        right.block = consecutions(concat(spec.tau, spec.tau2), neg(m)) + 1;
        right.branch = "c_{-m}(tau) < m";
    } else {
        right.block = m;
        right.premul = RowSelector::Premul::a0_inv;
        right.branch = "c_{-m}(tau) = m";
    }
    int im = inversions(spec.tau, neg(m));
    if (im < m) {
        left.block = inversions(concat(spec.tau1, spec.tau), neg(m)) + 1;
        left.branch = "i_{-m}(tau) < m";
    } else {
        left.block = m;
        left.premul = RowSelector::Premul::a0_inv_t;
        left.branch = "i_{-m}(tau) = m";
    }
    return {right, left};
}

namespace {

RecoveryResult finish_recovery(const Eigen::MatrixXcd& selected, const RowSelector& sel,
                               const Eigen::MatrixXcd& residual_mat, double scale,
                               const ToleranceConfig& tol) {
    RecoveryResult out;
    out.vectors = selected;
    out.selector = sel;
    for (int j = 0; j < selected.cols(); ++j) {
        double nx = selected.col(j).norm();
        double res = (residual_mat * selected.col(j)).norm();
        out.max_residual = std::max(out.max_residual, res / std::max(scale * nx, 1e-300));
    }
    out.full_rank = numeric_rank(selected, tol) == selected.cols();
    return out;
}

} // namespace

RecoveryResult recover_eigenvectors(const EgfpSpec& spec, const MatrixPolynomial& p,
                                    std::complex<double> mu, const Eigen::MatrixXcd& z,
                                    Side side, const ToleranceConfig& tol) {
    RowSelector sel = (side == Side::right) ? right_selector(spec) : left_selector(spec);
    Eigen::MatrixXcd selected = sel.apply(z, p);
    Eigen::MatrixXcd pm = p.eval(mu);
    if (side == Side::left) pm.transposeInPlace();
    return finish_recovery(selected, sel, pm, p.frobenius_norm(), tol);
}

RecoveryResult recover_eigenvectors_at_infinity(const EgfpSpec& spec, const MatrixPolynomial& p,
                                                const Eigen::MatrixXcd& z, Side side,
                                                const ToleranceConfig& tol) {
    auto [right, left] = infinity_selectors(spec);
    RowSelector sel = (side == Side::right) ? right : left;
    Eigen::MatrixXcd selected = sel.apply(z, p);
    Eigen::MatrixXcd am = p.coeff(p.m); // rev P at 0
    if (side == Side::left) am.transposeInPlace();
    return finish_recovery(selected, sel, am, p.frobenius_norm(), tol);
}

RowSelector minimal_basis_selector(const EgfpSpec& spec, Side side) {
    RowSelector s;
    if (side == Side::right) {
        s.block = spec.m - consecutions(concat(spec.sigma, spec.sigma2), pos(0));
        s.branch = "right minimal basis";
    } else {
        s.block = spec.m - inversions(concat(spec.sigma1, spec.sigma), pos(0));
        s.branch = "left minimal basis";
    }
    return s;
}

PolyMatrix recover_minimal_basis(const EgfpSpec& spec, const PolyMatrix& z, Side side,
                                 const MatrixPolynomial& p) {
    if (!spec.sigma.contains(pos(0)) || !spec.tau.contains(neg(spec.m)))
        throw std::invalid_argument("minimal-basis recovery needs 0 in sigma and -m in tau");
    return minimal_basis_selector(spec, side).apply(z, p);
}

MinimalIndexShift minimal_index_shift(const EgfpSpec& spec) {
    if (!spec.tau.contains(neg(spec.m)))
        throw std::invalid_argument("minimal_index_shift: -m must belong to tau");
    // tau = (tau_l, -m, tau_r); alpha = (-rev(tau_l), sigma, -rev(tau_r))
    std::vector<SignedIndex> left, right;
    bool seen = false;
    for (const auto& t : spec.tau) {
        if (!seen && t == neg(spec.m)) {
            seen = true;
            continue;
        }
        (seen ? right : left).push_back(t);
    }
    IndexTuple alpha = concat(IndexTuple(left).reversed().negated(), spec.sigma,
                              IndexTuple(right).reversed().negated());
    MinimalIndexShift out;
    out.c_shift = total_consecutions(alpha);
    out.i_shift = total_inversions(alpha);
    return out;
}

std::vector<int> shift_indices(const std::vector<int>& pencil_indices, int shift) {
    std::vector<int> out;
    out.reserve(pencil_indices.size());
    for (int e : pencil_indices) out.push_back(e - shift);
    return out;
}

SystemRecovery recover_system_eigenvectors(const EgfpSpec& spec, const Realization& real,
                                           std::complex<double> mu, const Eigen::MatrixXcd& z,
                                           Side side) {
    const int mn = spec.m * real.n(), r = real.r();
    if (z.rows() != mn + r)
        throw std::invalid_argument("null basis must have mn + r rows");
    RowSelector sel = side == Side::right ? minimal_basis_selector(spec, Side::right)
                                          : minimal_basis_selector(spec, Side::left);
    SystemRecovery out;
    out.selector = sel;
    Eigen::MatrixXcd zn = sel.apply(z.topRows(mn), real.P);
    out.s_basis.resize(real.n() + r, z.cols());
    out.s_basis.topRows(real.n()) = zn;
    out.s_basis.bottomRows(r) = z.bottomRows(r);
    out.g_basis = zn;

    Eigen::MatrixXcd s = system_matrix(real).eval(mu);
    if (side == Side::left) s.transposeInPlace();
    for (int j = 0; j < out.s_basis.cols(); ++j) {
        double nx = out.s_basis.col(j).norm();
        double res = (s * out.s_basis.col(j)).norm();
        out.max_residual = std::max(out.max_residual, res / std::max(s.norm() * nx, 1e-300));
    }
    return out;
}

SystemBasisRecovery recover_system_minimal_basis(const EgfpSpec& spec, const Realization& real,
                                                 const PolyMatrix& z, Side side) {
    const int mn = spec.m * real.n(), r = real.r();
    if (z.rows != mn + r) throw std::invalid_argument("basis must have mn + r rows");
    RowSelector sel = minimal_basis_selector(spec, side);
    SystemBasisRecovery out;
    out.selector = sel;
    PolyMatrix zn = sel.apply(z.middle_rows(0, mn), real.P);
    out.s_basis = PolyMatrix(real.n() + r, z.cols, z.degree());
    for (int d = 0; d <= z.degree(); ++d) {
        out.s_basis.coeffs[d].topRows(real.n()) = zn.coeffs[d];
        out.s_basis.coeffs[d].bottomRows(r) = z.coeffs[d].bottomRows(r);
    }
    out.g_basis = zn;
    return out;
}

} // namespace egfp
