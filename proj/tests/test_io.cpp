#include "egfp/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace egfp;
using egfp::testing::Rng;

TEST_CASE("tuple JSON keeps -0") {
    IndexTuple t{neg(5), neg(0), pos(0), pos(3)};
    io::json j = io::tuple_to_json(t);
    CHECK(j.dump() == R"([-5,"-0",0,3])");
    CHECK(io::tuple_from_json(j) == t);
    // -0 written as a plain integer would collapse to 0
    CHECK(io::tuple_from_json(io::json::parse("[-0]")) == IndexTuple{pos(0)});
    CHECK(io::tuple_from_json(io::json::parse(R"(["-0"])")) == IndexTuple{neg(0)});
}

TEST_CASE("matrix and polynomial round trips") {
    Rng rng(401);
    Eigen::MatrixXcd m = egfp::testing::random_complex_matrix(rng, 3);
    CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);
    // real matrices serialize as plain numbers
    Eigen::MatrixXcd r = egfp::testing::random_int_matrix(rng, 2);
    io::json jr = io::matrix_to_json(r);
    CHECK(jr[0][0].is_number());
    CHECK(io::matrix_from_json(jr) == r);

    MatrixPolynomial p = egfp::testing::random_int_poly(rng, 3, 2);
    MatrixPolynomial q = io::poly_from_json(io::poly_to_json(p));
    CHECK(q.m == p.m);
    CHECK(q.n == p.n);
    for (int i = 0; i <= p.m; ++i) CHECK(q.coeff(i) == p.coeff(i));
}

TEST_CASE("spec round trip with assignments") {
    Rng rng(409);
    EgfpSpec s;
    s.m = 5;
    s.sigma = IndexTuple::of({3, 4, 2, 0});
    s.tau = IndexTuple{neg(5), neg(1)};
    s.sigma2 = IndexTuple{pos(3)};
    s.x2 = DecorationAssignment::make_named({"X"}, {egfp::testing::random_int_matrix(rng, 2)});
    io::json j = io::spec_to_json(s);
    EgfpSpec t = io::spec_from_json(j);
    CHECK(t.m == s.m);
    CHECK(t.sigma == s.sigma);
    CHECK(t.tau == s.tau);
    CHECK(t.sigma2 == s.sigma2);
    CHECK_FALSE(t.x2.trivial);
    CHECK(t.x2.names == s.x2.names);
    CHECK(t.x2.values[0] == s.x2.values[0]);
    CHECK(t.y1.trivial);
    // mixed trivial/assigned positions survive the trip
    EgfpSpec mixed = s;
    mixed.sigma2 = IndexTuple{pos(3), pos(2)};
    mixed.x2 = DecorationAssignment::make_named(
        {"", "X"}, {Eigen::MatrixXcd::Zero(2, 2), egfp::testing::random_int_matrix(rng, 2)});
    EgfpSpec back = io::spec_from_json(io::spec_to_json(mixed));
    CHECK(back.x2.names == mixed.x2.names);
}

TEST_CASE("realization round trip including r = 0") {
    Rng rng(419);
    MatrixPolynomial p = egfp::testing::random_int_poly(rng, 3, 2);
    Realization real(p, egfp::testing::random_int_matrix(rng, 2),
                     egfp::testing::random_int_nonsingular(rng, 2),
                     egfp::testing::random_rect(rng, 2, 2), egfp::testing::random_rect(rng, 2, 2));
    Realization rt = io::realization_from_json(io::realization_to_json(real));
    CHECK(rt.A == real.A);
    CHECK(rt.B == real.B);
    CHECK(rt.r() == 2);

    Realization empty(p, Eigen::MatrixXcd(0, 0), Eigen::MatrixXcd(0, 0),
                      Eigen::MatrixXcd(0, 2), Eigen::MatrixXcd(2, 0));
    Realization ert = io::realization_from_json(io::realization_to_json(empty));
    CHECK(ert.r() == 0);
}

TEST_CASE("Matrix Market round trip") {
    Rng rng(421);
    Eigen::MatrixXcd m = egfp::testing::random_complex_matrix(rng, 4);
    m(1, 2) = 0.0; // keep a structural zero out of the file
    std::ostringstream os;
    io::write_matrix_market(os, m);
    std::istringstream is(os.str());
    Eigen::MatrixXcd back = io::read_matrix_market(is);
    CHECK((back - m).norm() <= 1e-14 * m.norm());

    std::istringstream bad("nonsense");
    CHECK_THROWS_AS(io::read_matrix_market(bad), std::invalid_argument);
}

TEST_CASE("tag sidecar lists every block") {
    Rng rng(431);
    MatrixPolynomial p = egfp::testing::random_int_poly(rng, 3, 2);
    BlockMatrix b = fiedler_product(IndexTuple::of({2, 0}), p);
    io::json j = io::tag_sidecar(b);
    CHECK(j.at("blocks") == 3);
    CHECK(j.at("block_size") == 2);
    CHECK(j.at("tags").size() == 3);
    // round-trippable tag strings
    for (const auto& row : j.at("tags"))
        for (const auto& cell : row) CHECK_NOTHROW(Tag::parse(cell.get<std::string>()));
}
