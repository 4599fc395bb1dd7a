#pragma once

#include "egfp/blockmat.hpp"
#include "egfp/pencils.hpp"
#include "egfp/poly.hpp"
#include "egfp/tuples.hpp"

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace egfp::testing {

using Rng = std::mt19937_64;


/// Integer-valued complex matrix with entries in [-bound, bound] (exact in
/// doubles, so structural tests can compare bit-for-bit).
inline Eigen::MatrixXcd random_int_matrix(Rng& rng, int n, int bound = 4) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = std::complex<double>(d(rng), 0.0);
    return a;
}

inline Eigen::MatrixXcd random_int_nonsingular(Rng& rng, int n, int bound = 4) {
    for (;;) {
        Eigen::MatrixXcd a = random_int_matrix(rng, n, bound);
        if (a.fullPivLu().isInvertible()) return a;
    }
}

inline Eigen::MatrixXcd random_complex_matrix(Rng& rng, int n) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = std::complex<double>(d(rng), d(rng));
    return a;
}

inline Eigen::MatrixXcd random_complex_nonsingular(Rng& rng, int n) {
    for (;;) {
        Eigen::MatrixXcd a = random_complex_matrix(rng, n);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
        if (svd.singularValues()(n - 1) > 1e-3) return a;
    }
}

/// Random polynomial with exact integer coefficients; A_0 and A_m forced
/// nonsingular so that every elementary inverse exists.
inline MatrixPolynomial random_int_poly(Rng& rng, int m, int n, int bound = 3) {
    std::vector<Eigen::MatrixXcd> cs;
    for (int i = 0; i <= m; ++i) {
        if (i == 0 || i == m)
            cs.push_back(random_int_nonsingular(rng, n, bound));
        else
            cs.push_back(random_int_matrix(rng, n, bound));
    }
    return MatrixPolynomial(m, std::move(cs));
}

/// Same with A_0 = A_m = I, so the -0 and +m factors invert exactly and
/// bit-for-bit comparisons stay meaningful even through inverse entries.
inline MatrixPolynomial random_int_poly_unit_ends(Rng& rng, int m, int n, int bound = 3) {
    std::vector<Eigen::MatrixXcd> cs;
    for (int i = 0; i <= m; ++i) {
        if (i == 0 || i == m)
            cs.push_back(Eigen::MatrixXcd::Identity(n, n));
        else
            cs.push_back(random_int_matrix(rng, n, bound));
    }
    return MatrixPolynomial(m, std::move(cs));
}

inline MatrixPolynomial random_complex_poly(Rng& rng, int m, int n,
                                            bool nonsingular_ends = true) {
    std::vector<Eigen::MatrixXcd> cs;
    for (int i = 0; i <= m; ++i) {
        if (nonsingular_ends && (i == 0 || i == m))
            cs.push_back(random_complex_nonsingular(rng, n));
        else
            cs.push_back(random_complex_matrix(rng, n));
    }
    return MatrixPolynomial(m, std::move(cs));
}

/// Random state-space data; generic B, C of full rank make the realization
/// minimal almost surely (callers re-check when it matters).
inline Eigen::MatrixXcd random_rect(Rng& rng, int rows, int cols) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::MatrixXcd a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = std::complex<double>(d(rng), d(rng));
    return a;
}

/// All index tuples of length <= max_len over the plus values {0..vmax} or
/// the minus values {-0..-vmax} that satisfy the SIP.
inline std::vector<IndexTuple> all_sip_tuples(int vmax, int max_len, bool minus_class) {
    std::vector<IndexTuple> out;
    std::vector<SignedIndex> cur;
    auto rec = [&](auto&& self, int len) -> void {
        IndexTuple t{std::vector<SignedIndex>(cur)};
        if (!satisfies_sip(t)) return; // a violated pair can never be fixed later
        out.push_back(t);
        if (len == max_len) return;
        for (int v = 0; v <= vmax; ++v) {
            cur.push_back(minus_class ? neg(v) : pos(v));
            self(self, len + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace egfp::testing
