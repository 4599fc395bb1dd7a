#pragma once

// Reference block layouts for the worked pencil examples, transcribed entry by
// entry, with the parameter sets that generate them. Coefficient stand-ins
// keep every comparison exact: A_j = (j+1) * R for one fixed integer matrix R
// and X = 31 * R, so tag-level equality and numeric equality must both hold.

#include "egfp/blockmat.hpp"
#include "egfp/pencils.hpp"
#include "egfp/rational.hpp"
#include "egfp/tags.hpp"

#include <map>
#include <string>
#include <vector>

namespace egfp::reference {

using TagGrid = std::vector<std::vector<const char*>>;

struct PencilFixture {
    std::string name;
    int m = 0;
    EgfpSpec spec;        // generating data (ignored when has_spec is false)
    bool has_spec = true;
    std::vector<int> q_signs; // optional left sign multiplier
    TagGrid l1, l0;
    // border data for the rational fixture
    bool bordered = false;
    int c_block_row = 0, b_block_col = 0;
};

/// Fixed integer stand-in: R with det R = 1.
inline Eigen::MatrixXcd standin_base(int n) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i < j)
                r(i, j) = std::complex<double>(i + j + 1, 0);
    return r;
}

inline MatrixPolynomial standin_poly(int m, int n) {
    Eigen::MatrixXcd r = standin_base(n);
    std::vector<Eigen::MatrixXcd> cs;
    for (int i = 0; i <= m; ++i) cs.push_back(double(i + 1) * r);
    return MatrixPolynomial(m, std::move(cs));
}

inline Eigen::MatrixXcd standin_x(int n) { return 31.0 * standin_base(n); }

inline BlockMatrix grid_to_blockmat(const TagGrid& grid, const MatrixPolynomial& p,
                                    const std::map<std::string, Eigen::MatrixXcd>& named) {
    const int m = static_cast<int>(grid.size());
    BlockMatrix out(m, p.n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Tag t = Tag::parse(grid[i][j]);
            out.set_block(i, j, t.evaluate(p.coeffs, named, p.n), t);
        }
    return out;
}

inline std::vector<PencilFixture> pencil_fixtures(int n) {
    std::vector<PencilFixture> out;
    const Eigen::MatrixXcd xv = standin_x(n);

    { // m = 5, (lambda M^P_{(-5,-1)} - M^P_{(3,4,2,0)}) M_3(X)
        PencilFixture f;
        f.name = "egfp-m5-proper";
        f.m = 5;
        f.spec.m = 5;
        f.spec.sigma = IndexTuple::of({3, 4, 2, 0});
        f.spec.tau = IndexTuple::of({-5, -1});
        f.spec.sigma2 = IndexTuple{pos(3)};
        f.spec.x2 = DecorationAssignment::make_named({"X"}, {xv});
        f.l1 = {{"A5", "0", "0", "0", "0"},
                {"0", "X", "I", "0", "0"},
                {"0", "I", "0", "0", "0"},
                {"0", "0", "0", "0", "I"},
                {"0", "0", "0", "I", "A1"}};
        f.l0 = {{"-A4", "X", "I", "0", "0"},
                {"-A3", "-A2", "0", "I", "0"},
                {"I", "0", "0", "0", "0"},
                {"0", "I", "0", "0", "0"},
                {"0", "0", "0", "0", "-A0"}};
        out.push_back(std::move(f));
    }

    { // m = 6 symmetric, (lambda M^P_{(-6,-3,-2,-4,-0)} - M^P_{(1,5)}) M^P_{-3}
        PencilFixture f;
        f.name = "symmetric-m6";
        f.m = 6;
        f.spec.m = 6;
        f.spec.sigma = IndexTuple::of({1, 5});
        f.spec.tau = IndexTuple{neg(6), neg(3), neg(2), neg(4), neg(0)};
        f.spec.tau2 = IndexTuple{neg(3)};
        // The (6,6) block is -lambda A_0^{-1}: the product form forces the
        // inverse into the lambda part (the constant variant is not even a
        // linearization).
        f.l1 = {{"A6", "0", "0", "0", "0", "0"},
                {"0", "0", "0", "I", "0", "0"},
                {"0", "0", "0", "0", "I", "0"},
                {"0", "I", "0", "A4", "A3", "0"},
                {"0", "0", "I", "A3", "A2", "0"},
                {"0", "0", "0", "0", "0", "-Ainv0"}};
        f.l0 = {{"-A5", "I", "0", "0", "0", "0"},
                {"I", "0", "0", "0", "0", "0"},
                {"0", "0", "0", "I", "0", "0"},
                {"0", "0", "I", "A3", "0", "0"},
                {"0", "0", "0", "0", "-A1", "I"},
                {"0", "0", "0", "0", "I", "0"}};
        out.push_back(std::move(f));
    }

    { // m = 8 symmetric penta-diagonal with free coupling X
        PencilFixture f;
        f.name = "symmetric-m8-penta";
        f.m = 8;
        f.spec.m = 8;
        f.spec.sigma = IndexTuple::of({4, 1, 2, 0});
        f.spec.tau = IndexTuple::of({-3, -6, -5, -8, -7});
        f.spec.sigma1 = IndexTuple{pos(0)};
        f.spec.x1 = DecorationAssignment::make_named({"X"}, {xv});
        f.spec.sigma2 = IndexTuple{pos(1), pos(0)};
        f.spec.x2 = DecorationAssignment::make_named({"", "X"},
                                                     {Eigen::MatrixXcd::Zero(n, n), xv});
        f.spec.tau2 = IndexTuple{neg(6), neg(8)};
        f.l1 = {{"0", "0", "A8", "0", "0", "0", "0", "0"},
                {"0", "0", "0", "I", "0", "0", "0", "0"},
                {"A8", "0", "A7", "A6", "0", "0", "0", "0"},
                {"0", "I", "A6", "A5", "0", "0", "0", "0"},
                {"0", "0", "0", "0", "0", "I", "0", "0"},
                {"0", "0", "0", "0", "I", "A3", "0", "0"},
                {"0", "0", "0", "0", "0", "0", "-A1", "X"},
                {"0", "0", "0", "0", "0", "0", "X", "0"}};
        f.l0 = {{"A8", "0", "0", "0", "0", "0", "0", "0"},
                {"0", "0", "I", "0", "0", "0", "0", "0"},
                {"0", "I", "A6", "0", "0", "0", "0", "0"},
                {"0", "0", "0", "-A4", "I", "0", "0", "0"},
                {"0", "0", "0", "I", "0", "0", "0", "0"},
                {"0", "0", "0", "0", "0", "-A2", "-A1", "X"},
                {"0", "0", "0", "0", "0", "-A1", "-A0", "0"},
                {"0", "0", "0", "0", "0", "X", "0", "0"}};
        out.push_back(std::move(f));
    }

    { // m = 5 T-even: Q L(lambda) with X = -A_3 and Q = diag(I,-I,I,-I,I)
        PencilFixture f;
        f.name = "t-even-m5";
        f.m = 5;
        f.spec.m = 5;
        f.spec.sigma = IndexTuple::of({3, 4, 2, 0});
        f.spec.tau = IndexTuple::of({-5, -1});
        f.spec.sigma2 = IndexTuple{pos(3)};
        f.q_signs = {1, -1, 1, -1, 1};
        f.l1 = {{"A5", "0", "0", "0", "0"},
                {"0", "A3", "-I", "0", "0"},
                {"0", "I", "0", "0", "0"},
                {"0", "0", "0", "0", "-I"},
                {"0", "0", "0", "I", "A1"}};
        f.l0 = {{"-A4", "-A3", "I", "0", "0"},
                {"A3", "A2", "0", "-I", "0"},
                {"I", "0", "0", "0", "0"},
                {"0", "-I", "0", "0", "0"},
                {"0", "0", "0", "0", "-A0"}};
        out.push_back(std::move(f));
    }

    { // m = 5 T-odd: same L, Q = diag(I,-I,-I,I,-I)
        PencilFixture f;
        f.name = "t-odd-m5";
        f.m = 5;
        f.spec = out.back().spec;
        f.q_signs = {1, -1, -1, 1, 1};
        f.l1 = {{"A5", "0", "0", "0", "0"},
                {"0", "A3", "-I", "0", "0"},
                {"0", "-I", "0", "0", "0"},
                {"0", "0", "0", "0", "I"},
                {"0", "0", "0", "I", "A1"}};
        f.l0 = {{"-A4", "-A3", "I", "0", "0"},
                {"A3", "A2", "0", "-I", "0"},
                {"-I", "0", "0", "0", "0"},
                {"0", "I", "0", "0", "0"},
                {"0", "0", "0", "0", "-A0"}};
        out.push_back(std::move(f));
    }

    { // m = 5 skew-symmetric: same L, Q = diag(I,I,-I,-I,I)
        PencilFixture f;
        f.name = "skew-m5";
        f.m = 5;
        f.spec = out.back().spec;
        f.q_signs = {1, 1, -1, -1, 1};
        f.l1 = {{"A5", "0", "0", "0", "0"},
                {"0", "-A3", "I", "0", "0"},
                {"0", "-I", "0", "0", "0"},
                {"0", "0", "0", "0", "-I"},
                {"0", "0", "0", "I", "A1"}};
        f.l0 = {{"-A4", "-A3", "I", "0", "0"},
                {"-A3", "-A2", "0", "I", "0"},
                {"-I", "0", "0", "0", "0"},
                {"0", "-I", "0", "0", "0"},
                {"0", "0", "0", "0", "-A0"}};
        out.push_back(std::move(f));
    }

    { // m = 7 T-palindromic template (no generating tuple data published)
        PencilFixture f;
        f.name = "palindromic-m7";
        f.m = 7;
        f.has_spec = false;
        f.l1 = {{"0", "0", "0", "0", "0", "-I", "0"},
                {"0", "0", "0", "0", "0", "-A1", "-A0"},
                {"0", "0", "0", "I", "A3", "0", "0"},
                {"0", "0", "0", "0", "-I", "0", "0"},
                {"I", "A6", "A5", "0", "0", "0", "0"},
                {"0", "A7", "A6", "0", "0", "0", "0"},
                {"0", "0", "A7", "0", "0", "0", "0"}};
        f.l0 = {{"0", "0", "0", "0", "-I", "0", "0"},
                {"0", "0", "0", "0", "-A1", "-A0", "0"},
                {"0", "0", "0", "0", "-A2", "-A1", "-A0"},
                {"0", "0", "-I", "0", "0", "0", "0"},
                {"0", "0", "-A4", "I", "0", "0", "0"},
                {"I", "A6", "0", "0", "0", "0", "0"},
                {"0", "A7", "0", "0", "0", "0", "0"}};
        out.push_back(std::move(f));
    }

    return out;
}

/// m = 5 rational fixture: core (lambda M^P_{(-5,-3)} - M^P_{(4,1,2,0)}) M^P_1
/// with C in block row 4 and B in block column 4.
inline PencilFixture rational_fixture() {
    PencilFixture f;
    f.name = "rational-m5-penta";
    f.m = 5;
    f.spec.m = 5;
    f.spec.sigma = IndexTuple::of({4, 1, 2, 0});
    f.spec.tau = IndexTuple::of({-5, -3});
    f.spec.sigma2 = IndexTuple{pos(1)};
    f.bordered = true;
    f.c_block_row = 4;
    f.b_block_col = 4;
    f.l1 = {{"A5", "0", "0", "0", "0"},
            {"0", "0", "I", "0", "0"},
            {"0", "I", "A3", "0", "0"},
            {"0", "0", "0", "-A1", "I"},
            {"0", "0", "0", "I", "0"}};
    f.l0 = {{"-A4", "I", "0", "0", "0"},
            {"I", "0", "0", "0", "0"},
            {"0", "0", "-A2", "-A1", "I"},
            {"0", "0", "-A1", "-A0", "0"},
            {"0", "0", "I", "0", "0"}};
    return f;
}

/// The worked recovery examples, with their displays.
struct RecoveryFixture {
    std::string name;
    EgfpSpec spec;
    TagGrid l1, l0;
    std::vector<std::string> assigned_names; // names used by the display
};

inline std::vector<RecoveryFixture> recovery_fixtures(int n) {
    std::vector<RecoveryFixture> out;
    const Eigen::MatrixXcd xv = standin_x(n);
    const Eigen::MatrixXcd yv = 37.0 * standin_base(n);

    { // m = 6: M_{-4}(X) (lambda M^P_{(-6,-3,-4,-0)} - M^P_{(1,2,5)}) M_1(Y)
        RecoveryFixture f;
        f.name = "recovery-m6";
        f.spec.m = 6;
        f.spec.sigma = IndexTuple::of({1, 2, 5});
        f.spec.tau = IndexTuple{neg(6), neg(3), neg(4), neg(0)};
        f.spec.sigma2 = IndexTuple{pos(1)};
        f.spec.x2 = DecorationAssignment::make_named({"Y"}, {yv});
        f.spec.tau1 = IndexTuple{neg(4)};
        f.spec.y1 = DecorationAssignment::make_named({"X"}, {xv});
        f.assigned_names = {"X", "Y"};
        f.l1 = {{"A6", "0", "0", "0", "0", "0"},
                {"0", "0", "0", "I", "0", "0"},
                {"0", "0", "I", "X", "0", "0"},
                {"0", "I", "A4", "A3", "0", "0"},
                {"0", "0", "0", "0", "Y", "I"},
                {"0", "0", "0", "0", "-Ainv0", "0"}};
        f.l0 = {{"-A5", "I", "0", "0", "0", "0"},
                {"0", "0", "I", "0", "0", "0"},
                {"I", "0", "X", "0", "0", "0"},
                {"0", "0", "0", "-A2", "Y", "I"},
                {"0", "0", "0", "-A1", "I", "0"},
                {"0", "0", "0", "I", "0", "0"}};
        out.push_back(std::move(f));
    }

    { // m = 5: (lambda M^P_{(-5,-1,-0)} - M^P_{(4,2,3)}) M_2(X)
        RecoveryFixture f;
        f.name = "recovery-m5";
        f.spec.m = 5;
        f.spec.sigma = IndexTuple::of({4, 2, 3});
        f.spec.tau = IndexTuple{neg(5), neg(1), neg(0)};
        f.spec.sigma2 = IndexTuple{pos(2)};
        f.spec.x2 = DecorationAssignment::make_named({"X"}, {xv});
        f.assigned_names = {"X"};
        f.l1 = {{"A5", "0", "0", "0", "0"},
                {"0", "I", "0", "0", "0"},
                {"0", "0", "X", "I", "0"},
                {"0", "0", "0", "0", "-Ainv0"},
                {"0", "0", "I", "0", "-A1*Ainv0"}};
        f.l0 = {{"-A4", "-A3", "X", "I", "0"},
                {"I", "0", "0", "0", "0"},
                {"0", "-A2", "I", "0", "0"},
                {"0", "I", "0", "0", "0"},
                {"0", "0", "0", "0", "I"}};
        out.push_back(std::move(f));
    }

    { // m = 3: (lambda M^P_{(-2,-1,-0)} - M^P_3) M^P_{-2}
        RecoveryFixture f;
        f.name = "recovery-m3";
        f.spec.m = 3;
        f.spec.sigma = IndexTuple::of({3});
        f.spec.tau = IndexTuple{neg(2), neg(1), neg(0)};
        f.spec.tau2 = IndexTuple{neg(2)};
        f.l1 = {{"0", "0", "-Ainv0"},
                {"0", "I", "-A2*Ainv0"},
                {"I", "A2", "-A1*Ainv0"}};
        f.l0 = {{"0", "Ainv3", "0"},
                {"I", "A2", "0"},
                {"0", "0", "I"}};
        out.push_back(std::move(f));
    }

    { // m = 5 at infinity: (lambda M^P_{(-4,-5,-3,-1)} - M^P_{(0,2)}) M_{-4}(X)
        RecoveryFixture f;
        f.name = "recovery-m5-infinity";
        f.spec.m = 5;
        f.spec.sigma = IndexTuple::of({0, 2});
        f.spec.tau = IndexTuple::of({-4, -5, -3, -1});
        f.spec.tau2 = IndexTuple{neg(4)};
        f.spec.y2 = DecorationAssignment::make_named({"X"}, {xv});
        f.assigned_names = {"X"};
        f.l1 = {{"0", "0", "I", "0", "0"},
                {"0", "A5", "A4", "0", "0"},
                {"I", "X", "A3", "0", "0"},
                {"0", "0", "0", "0", "I"},
                {"0", "0", "0", "I", "A1"}};
        f.l0 = {{"0", "I", "0", "0", "0"},
                {"I", "X", "0", "0", "0"},
                {"0", "0", "-A2", "I", "0"},
                {"0", "0", "I", "0", "0"},
                {"0", "0", "0", "0", "-A0"}};
        out.push_back(std::move(f));
    }

    return out;
}

} // namespace egfp::reference
