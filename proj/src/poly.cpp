#include "egfp/poly.hpp"

#include <stdexcept>

namespace egfp {

MatrixPolynomial::MatrixPolynomial(int degree, std::vector<Eigen::MatrixXcd> cs)
    : m(degree), coeffs(std::move(cs)) {
    if (m < 2) throw std::invalid_argument("matrix polynomial degree must be >= 2");
    if (coeffs.size() != static_cast<std::size_t>(m) + 1)
        throw std::invalid_argument("need m+1 coefficients");
    n = static_cast<int>(coeffs[0].rows());
    for (const auto& a : coeffs)
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("coefficients must be square of equal size");
    if (n > 0 && coeffs[m].isZero(0.0))
        throw std::invalid_argument("leading coefficient A_m must be nonzero");
}

Eigen::MatrixXcd MatrixPolynomial::eval(std::complex<double> lambda) const {
    Eigen::MatrixXcd v = coeffs[m];
    for (int i = m - 1; i >= 0; --i) v = lambda * v + coeffs[i];
    return v;
}

MatrixPolynomial MatrixPolynomial::rev() const {
    std::vector<Eigen::MatrixXcd> cs(coeffs.rbegin(), coeffs.rend());
    MatrixPolynomial r;
    r.n = n;
    r.m = m;
    r.coeffs = std::move(cs); // A_0 of rev may be zero, skip the A_m check
    return r;
}

double MatrixPolynomial::frobenius_norm() const {
    double v = 0;
    for (const auto& a : coeffs) v = std::max(v, a.norm());
    return v;
}

PolyMatrix::PolyMatrix(int r, int c, int degree) : rows(r), cols(c) {
    coeffs.assign(degree + 1, Eigen::MatrixXcd::Zero(r, c));
}

Eigen::MatrixXcd PolyMatrix::eval(std::complex<double> lambda) const {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(rows, cols);
    for (int d = degree(); d >= 0; --d) v = lambda * v + coeffs[d];
    return v;
}

int PolyMatrix::column_degree(int j, double tol) const {
    for (int d = degree(); d >= 0; --d)
        if (coeffs[d].col(j).norm() > tol) return d;
    return -1; // zero column
}

PolyMatrix PolyMatrix::middle_rows(int first, int count) const {
    PolyMatrix out(count, cols, degree());
    for (int d = 0; d <= degree(); ++d) out.coeffs[d] = coeffs[d].middleRows(first, count);
    return out;
}

PolyMatrix PolyMatrix::column(int j) const {
    PolyMatrix out(rows, 1, degree());
    for (int d = 0; d <= degree(); ++d) out.coeffs[d] = coeffs[d].col(j);
    return out;
}

} // namespace egfp
