#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace egfp {

/// P(lambda) = sum_{i=0}^m lambda^i A_i with square n x n coefficients,
/// m >= 2 and A_m != 0.
struct MatrixPolynomial {
    int n = 0;
    int m = 0;
    std::vector<Eigen::MatrixXcd> coeffs; // A_0 .. A_m

    MatrixPolynomial() = default;
    MatrixPolynomial(int degree, std::vector<Eigen::MatrixXcd> cs);

    const Eigen::MatrixXcd& coeff(int i) const { return coeffs.at(i); }

    Eigen::MatrixXcd eval(std::complex<double> lambda) const;
    /// rev P(lambda) = lambda^m P(1/lambda): coefficients reversed.
    MatrixPolynomial rev() const;

    double frobenius_norm() const; // max over coefficients
};

/// A k x p matrix polynomial in monomial form, used for polynomial null
/// bases: Z(lambda) = sum_d lambda^d Z_d.
struct PolyMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Eigen::MatrixXcd> coeffs; // degree 0 upward; may be empty (zero)

    PolyMatrix() = default;
    PolyMatrix(int r, int c, int degree);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Eigen::MatrixXcd eval(std::complex<double> lambda) const;
    /// Degree of one column: highest d with a nonzero coefficient above tol.
    int column_degree(int j, double tol = 0.0) const;
    /// Selects a row range [first, first+count) from every coefficient.
    PolyMatrix middle_rows(int first, int count) const;
    PolyMatrix column(int j) const;
};

} // namespace egfp
