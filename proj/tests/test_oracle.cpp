#include "egfp/oracle.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace egfp;
using egfp::testing::Rng;

TEST_CASE("companion eigenvalues of a scalar quadratic") {
    // lambda^2 - 1 -> {1, -1}
    std::vector<Eigen::MatrixXcd> cs(3, Eigen::MatrixXcd::Identity(1, 1));
    cs[1].setZero();
    cs[0] = -Eigen::MatrixXcd::Identity(1, 1);
    MatrixPolynomial p(2, cs);
    EigenResult r = companion_eigs(p);
    REQUIRE(r.finite.size() == 2);
    CHECK(eigs_match(r.finite, {{1.0, 0.0}, {-1.0, 0.0}}, 1e-12));
    CHECK(r.infinite_count == 0);
}

TEST_CASE("degree deficiency shows up as infinite eigenvalues") {
    Rng rng(101);
    const int n = 3, m = 3;
    std::vector<Eigen::MatrixXcd> cs;
    for (int i = 0; i < m; ++i) cs.push_back(egfp::testing::random_complex_matrix(rng, n));
    // rank n-1 leading coefficient: one infinite eigenvalue generically
    Eigen::MatrixXcd u = egfp::testing::random_complex_matrix(rng, n);
    Eigen::MatrixXcd am = u.leftCols(n - 1) * u.leftCols(n - 1).adjoint();
    cs.push_back(am);
    MatrixPolynomial p(m, cs);
    REQUIRE(numeric_rank(am) == n - 1);
    EigenResult r = companion_eigs(p);
    CHECK(r.infinite_count == 1);
    CHECK(static_cast<int>(r.finite.size()) == m * n - 1);
}

TEST_CASE("companion eigenvalues against determinant root polishing") {
    Rng rng(103);
    const int n = 2, m = 3;
    MatrixPolynomial p = egfp::testing::random_complex_poly(rng, m, n);
    EigenResult r = companion_eigs(p);
    REQUIRE(r.regular);
    // Newton polishing of det P at each reported eigenvalue barely moves it
    auto detp = [&](std::complex<double> l) { return p.eval(l).determinant(); };
    for (auto mu : r.finite) {
        std::complex<double> h(1e-7, 0);
        for (int it = 0; it < 5; ++it) {
            std::complex<double> d = (detp(mu + h) - detp(mu - h)) / (2.0 * h);
            if (std::abs(d) < 1e-14) break;
            mu -= detp(mu) / d;
        }
        bool close = false;
        for (auto nu : r.finite)
            if (std::abs(mu - nu) < 1e-6 * std::max(1.0, std::abs(nu))) close = true;
        CHECK(close);
    }
}

TEST_CASE("generalized_eigs basics") {
    SUBCASE("diagonal pencil") {
        Eigen::MatrixXcd l1 = Eigen::MatrixXcd::Identity(3, 3);
        Eigen::MatrixXcd l0 = Eigen::MatrixXcd::Zero(3, 3);
        l0.diagonal() << 1.0, 2.0, 3.0;
        EigenResult r = generalized_eigs(l0, l1);
        CHECK(eigs_match(r.finite, {{1, 0}, {2, 0}, {3, 0}}, 1e-12));
    }
    SUBCASE("singular pencils are detected by normal-rank probes") {
        Eigen::MatrixXcd l1 = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd l0 = Eigen::MatrixXcd::Zero(2, 2);
        l1(0, 0) = 1; // pencil [[lambda, 0], [0, 0]] is singular
        EigenResult r = generalized_eigs(l0, l1);
        CHECK_FALSE(r.regular);
    }
}

TEST_CASE("null bases") {
    Rng rng(107);
    const ToleranceConfig& tol = ToleranceConfig::defaults();
    CHECK(null_basis(Eigen::MatrixXcd::Identity(4, 4), Side::right, tol).cols() == 0);
    CHECK(null_basis(Eigen::MatrixXcd::Zero(3, 3), Side::right, tol).cols() == 3);

    // rank-deficient product of thin factors
    Eigen::MatrixXcd a = egfp::testing::random_complex_matrix(rng, 5).leftCols(2);
    Eigen::MatrixXcd b = egfp::testing::random_complex_matrix(rng, 5).leftCols(2);
    Eigen::MatrixXcd m = a * b.adjoint(); // 5x5 of rank 2
    Eigen::MatrixXcd nr = null_basis(m, Side::right, tol);
    REQUIRE(nr.cols() == 3);
    CHECK((m * nr).norm() < 1e-10 * m.norm());
    Eigen::MatrixXcd nl = null_basis(m, Side::left, tol);
    REQUIRE(nl.cols() == 3);
    CHECK((nl.transpose() * m).norm() < 1e-10 * m.norm());
}

TEST_CASE("minimal indices by the convolution recursion") {
    SUBCASE("the 1x2 pencil [lambda, -1]") {
        Eigen::MatrixXcd l1(1, 2), l0(1, 2);
        l1 << 1, 0;
        l0 << 0, 1;
        auto right = minimal_indices_pencil(l0, l1, Side::right);
        CHECK(right == std::vector<int>{1});
        // 2x1 transpose: a left index instead
        auto left = minimal_indices_pencil(l0.transpose(), l1.transpose(), Side::left);
        CHECK(left == std::vector<int>{1});
    }
    SUBCASE("regular pencil gives nothing") {
        Eigen::MatrixXcd l1 = Eigen::MatrixXcd::Identity(2, 2);
        Eigen::MatrixXcd l0 = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
        CHECK(minimal_indices_pencil(l0, l1, Side::right).empty());
    }
    SUBCASE("canonical singular blocks of sizes 0, 1, 2") {
        // L_eps: eps x (eps+1) with rows [lambda, -1] staggered
        auto canonical = [](int eps) {
            Eigen::MatrixXcd l1 = Eigen::MatrixXcd::Zero(eps, eps + 1);
            Eigen::MatrixXcd l0 = Eigen::MatrixXcd::Zero(eps, eps + 1);
            for (int i = 0; i < eps; ++i) {
                l1(i, i) = 1;
                l0(i, i + 1) = 1;
            }
            return std::make_pair(l0, l1);
        };
        for (int eps : {1, 2}) {
            auto [l0, l1] = canonical(eps);
            CHECK(minimal_indices_pencil(l0, l1, Side::right) == std::vector<int>{eps});
        }
        // eps = 0: a zero column appended to a regular block
        Eigen::MatrixXcd l1(2, 3), l0(2, 3);
        l1 << 1, 0, 0, 0, 1, 0;
        l0 << 3, 0, 0, 0, 4, 0;
        CHECK(minimal_indices_pencil(l0, l1, Side::right) == std::vector<int>{0});

        // block-diagonal direct sum concatenates the indices
        auto [a0, a1] = canonical(1);
        auto [b0, b1] = canonical(2);
        Eigen::MatrixXcd d0 = Eigen::MatrixXcd::Zero(3, 5), d1 = Eigen::MatrixXcd::Zero(3, 5);
        d0.topLeftCorner(1, 2) = a0;
        d1.topLeftCorner(1, 2) = a1;
        d0.bottomRightCorner(2, 3) = b0;
        d1.bottomRightCorner(2, 3) = b1;
        CHECK(minimal_indices_pencil(d0, d1, Side::right) == std::vector<int>({1, 2}));
    }
}

TEST_CASE("minimal bases from the same recursion") {
    // [lambda, -1]: right minimal basis (1, lambda)
    Eigen::MatrixXcd l1(1, 2), l0(1, 2);
    l1 << 1, 0;
    l0 << 0, 1;
    PolyMatrix b = minimal_basis_pencil(l0, l1, Side::right);
    REQUIRE(b.cols == 1);
    REQUIRE(b.degree() == 1);
    // (lambda L1 - L0) b(lambda) = 0 identically: check at sample points
    for (double l : {0.3, -1.7, 2.9}) {
        Eigen::MatrixXcd v = (l * l1 - l0) * b.eval({l, 0});
        CHECK(v.norm() < 1e-10);
    }
    CHECK(b.column_degree(0, 1e-9) == 1);
}

TEST_CASE("eigenvalue multiset matching") {
    CHECK(eigs_match({{1, 0}, {2, 0}}, {{2, 0}, {1, 0}}, 1e-12));
    CHECK_FALSE(eigs_match({{1, 0}, {2, 0}}, {{2, 0}, {1.1, 0}}, 1e-6));
    CHECK_FALSE(eigs_match({{1, 0}}, {{1, 0}, {1, 0}}, 1e-6));
    CHECK(eigs_match({{1, 0}, {1, 0}}, {{1, 0}, {1, 0}}, 1e-12));
}
