#include "util.hpp"

#include "hypercongruence/closest_pair.hpp"
#include "hypercongruence/errors.hpp"
#include "hypercongruence/pipeline.hpp"
#include "hypercongruence/point_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace hcong;
using namespace hcong::test;

TEST_CASE("pipeline on random pairs")
{
    CongruentPair pr = gen_congruent_pair(4096, 71);
    Verdict v = congruence_test_4d(pr.A, pr.B);
    REQUIRE(v.congruent);
    CHECK_FALSE(v.reflected);
    CHECK(std::abs(v.rotation.determinant() - 1.0) < 1e-9);
    CHECK(map_error(pr.A, pr.B, v.rotation, v.translation) < 1e-9);

    Verdict w = congruence_test_4d(pr.A, gen_perturbed(pr.B, 1e-3, 72));
    CHECK_FALSE(w.congruent);
    CHECK_FALSE(w.stage.empty());
}

TEST_CASE("pipeline on the 4-cube")
{
    PointSet4 cube = gen_regular_polytope("4-cube");
    CongruentPair pr = make_congruent_pair(cube, 73);
    Verdict v = congruence_test_4d(pr.A, pr.B);
    REQUIRE(v.congruent);
    CHECK(map_error(pr.A, pr.B, v.rotation, v.translation) < 1e-9);
}

TEST_CASE("reflections")
{
    CongruentPair pr = gen_congruent_pair(200, 74);
    PointSet4 M = pr.B;
    for (auto& x : M.points) x[0] = -x[0];
    CHECK_FALSE(congruence_test_4d(pr.A, M).congruent);
    PipelineOptions o;
    o.allow_reflection = true;
    Verdict v = congruence_test_4d(pr.A, M, o);
    REQUIRE(v.congruent);
    CHECK(v.reflected);
    CHECK(v.rotation.determinant() == doctest::Approx(-1.0));
    CHECK(map_error(pr.A, M, v.rotation, v.translation) < 1e-9);
}

TEST_CASE("degenerate inputs")
{
    std::vector<Vec4> one{Vec4(1, 2, 3, 4)}, other{Vec4(-5, 0, 0, 1)};
    Verdict v = congruence_test_4d(one, other);
    REQUIRE(v.congruent);
    CHECK((v.rotation * one[0] + v.translation - other[0]).norm() < 1e-12);

    std::vector<Vec4> same(5, Vec4(1, 1, 1, 1)), same2(5, Vec4(0, 0, 0, 2));
    CHECK(congruence_test_4d(same, same2).congruent);

    CHECK_THROWS_AS(congruence_test_4d(one, same), std::invalid_argument);
}

TEST_CASE("oracle")
{
    std::mt19937_64 rng(75);
    CongruentPair pr = gen_congruent_pair(7, 76);
    CHECK(oracle_congruent(pr.A, pr.B, false).congruent);
    CHECK_FALSE(oracle_congruent(pr.A, gen_perturbed(pr.B, 1e-3, 77), false).congruent);
    PointSet4 M = pr.B;
    for (auto& x : M.points) x[2] = -x[2];
    CHECK_FALSE(oracle_congruent(pr.A, M, false).congruent);
    CHECK(oracle_congruent(pr.A, M, true).congruent);
    PointSet4 big = gen_congruent_pair(11, 78).A;
    CHECK_THROWS_AS(oracle_congruent(big, big, false), SizeGuardError);
}

TEST_CASE("generators")
{
    PointSet4 grid = gen_torus_grid(4, 4, 1 / std::sqrt(2.0));
    PointSet4 cube = gen_regular_polytope("4-cube");
    REQUIRE(grid.size() == 16);
    Verdict v = congruence_test_4d(grid, cube);
    CHECK(v.congruent);

    PointSet4 c24 = gen_regular_polytope("24-cell");
    REQUIRE(c24.size() == 24);
    ClosestPairGraph g = closest_pair_graph(c24.points);
    for (const auto& nb : g.adjacency()) CHECK(nb.size() == 8);
    for (const auto& p : c24.points) CHECK(p.norm() == doctest::Approx(1.0));

    CHECK(gen_regular_polytope("600-cell").size() == 120);
    CHECK(gen_regular_polytope("120-cell").size() == 600);
    CHECK(gen_regular_polytope("16-cell").size() == 8);
    CHECK(gen_regular_polytope("5-cell").size() == 5);
    CHECK_THROWS(gen_regular_polytope("7-cell"));

    CongruentPair a = gen_congruent_pair(50, 79), b = gen_congruent_pair(50, 79);
    CHECK(a.A.points == b.A.points);
    CHECK(a.B.points == b.B.points);
    CHECK(gen_orbit_helix(100, 2, 0.8, 5).points == gen_orbit_helix(100, 2, 0.8, 5).points);

    HopfSample h = gen_hopf_circles(3, 10, 80);
    CHECK(h.points.size() == 30);
    CHECK(h.circles.size() == 3);
    for (std::size_t i = 0; i < h.circles.size(); ++i)
        for (std::size_t j = i + 1; j < h.circles.size(); ++j)
            CHECK(chirality(h.circles[i], h.circles[j]) != Chirality::NotIsoclinic);
}

TEST_CASE("point files")
{
    PointSet4 s;
    s.points = {Vec4(0.1, -2.5e-17, 1.0 / 3.0, 7), Vec4(1, 2, 3, 4)};
    s.labels = {"red", "blue"};
    std::stringstream io;
    write_points(io, s, "two points");
    PointSet4 r = read_points(io);
    CHECK(r.points == s.points);
    CHECK(r.labels == s.labels);

    std::istringstream plain("# header\n\n1 2 3 4\n5 6 7 8\n");
    PointSet4 p = read_points(plain);
    CHECK(p.size() == 2);
    CHECK_FALSE(p.labeled());

    std::istringstream bad("1 2 3 4\n1 2 x 4\n");
    try {
        read_points(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    std::istringstream short_line("1 2 3\n");
    CHECK_THROWS_AS(read_points(short_line), ParseError);
    CHECK(format_double(0.1) == "0.1");
}
