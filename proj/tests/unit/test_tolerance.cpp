#include "util.hpp"

#include "hypercongruence/condense.hpp"
#include "hypercongruence/tolerance.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hcong;
using namespace hcong::test;

TEST_CASE("tolerance_cluster")
{
    CHECK(tolerance_cluster({1.0, 1.0 + 1e-12, 2.0}, 1e-9) == std::vector<int>{0, 0, 1});
    CHECK(tolerance_cluster({3.0, 1.0, 2.0}, 1e-9) == std::vector<int>{2, 0, 1});
    // chains merge along the sorted order
    CHECK(tolerance_cluster({0.0, 0.6e-9, 1.2e-9}, 1e-9) == std::vector<int>{0, 0, 0});
    CHECK(tolerance_cluster({}, 1e-9).empty());
}

TEST_CASE("circular_cluster merges across the seam")
{
    auto ids = circular_cluster({1e-12, 2 * pi - 1e-12, 1.0}, 1e-9);
    CHECK(ids[0] == ids[1]);
    CHECK(ids[2] != ids[0]);
}

TEST_CASE("keys")
{
    CHECK(compare_keys({1.0, 2.0}, {1.0, 2.0 + 1e-12}, 1e-9) == 0);
    CHECK(compare_keys({1.0, 2.0}, {1.0, 3.0}, 1e-9) == -1);
    CHECK(compare_keys({1.0}, {0.0, 0.0}, 1e-9) == -1);
    CHECK(group_keys({{2.0}, {1.0}, {2.0 + 1e-12}, {1.0, 0.0}}, 1e-9) == std::vector<int>{1, 0, 1, 2});
    auto ord = order_by_keys({{2.0}, {1.0}, {2.0}}, 1e-9);
    CHECK(ord.front() == 1);
}

TEST_CASE("prune_by_key")
{
    PruneResult r = prune_by_key({{1.0}, {2.0}, {1.0}, {3.0}, {3.0}}, 1e-9);
    CHECK(r.members == std::vector<std::size_t>{1});
    CHECK(r.classes == 3);
    CHECK(r.progress);

    PruneResult tie = prune_by_key({{5.0}, {4.0}, {5.0}, {4.0}}, 1e-9);
    CHECK(tie.members == std::vector<std::size_t>{1, 3});

    PruneResult all = prune_by_key({{1.0}, {1.0}}, 1e-9);
    CHECK(all.members.size() == 2);
    CHECK_FALSE(all.progress);

    // the summary does not depend on the input order or on which member
    // represents a class
    PruneResult a = prune_by_key({{1.0}, {2.0 + 1e-12}, {2.0}}, 1e-9);
    PruneResult b = prune_by_key({{2.0}, {1.0}, {2.0 + 1e-12}}, 1e-9);
    CHECK(a.summary == b.summary);
}

TEST_CASE("angles")
{
    CHECK(wrap_angle(-0.5) == doctest::Approx(2 * pi - 0.5));
    CHECK(wrap_angle(2 * pi) == doctest::Approx(0.0));
    CHECK(angle_gap(2 * pi - 0.1, 0.2) == doctest::Approx(0.3));
}

TEST_CASE("match_multisets and dedupe_points")
{
    std::vector<Vec3> a{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 0, 0)};
    std::vector<Vec3> b{Vec3(1, 0, 1e-12), Vec3(0, 0, 0), Vec3(1, 0, 0)};
    CHECK(match_multisets<3>(a, {}, b, {}, 1e-9));
    std::vector<Vec3> c{Vec3(1, 0, 0), Vec3(0, 0, 0), Vec3(0, 0, 0)};
    CHECK_FALSE(match_multisets<3>(a, {}, c, {}, 1e-9));
    CHECK_FALSE(match_multisets<3>(a, {{0}, {1}, {2}}, b, {{0}, {1}, {2}}, 1e-9));
    CHECK(dedupe_points<3>(a, 1e-9).size() == 2);
}

TEST_CASE("canonical_axes")
{
    std::vector<double> pent;
    for (int i = 0; i < 5; ++i) pent.push_back(0.3 + 2 * pi * i / 5);
    std::vector<Label> none(5);
    CHECK(canonical_axes(pent, none, 1e-9).count == 5);

    std::vector<Label> one{{1}, {0}, {0}, {0}, {0}};
    AxesSet u = canonical_axes(pent, one, 1e-9);
    CHECK(u.count == 1);
    bool at_position = false;
    for (double x : pent) at_position = at_position || std::abs(std::remainder(u.axis(0) - x, 2 * pi)) < 1e-9;
    CHECK(at_position);

    std::vector<double> sq{0.0, pi / 2, pi, 3 * pi / 2};
    AxesSet ab = canonical_axes(sq, {{0}, {1}, {0}, {1}}, 1e-9);
    CHECK(ab.count == 2);
    CHECK(std::abs(std::remainder(ab.axis(1) - ab.axis(0), 2 * pi)) == doctest::Approx(pi));

    // rotating the input rotates the axes
    std::vector<double> moved;
    for (double x : pent) moved.push_back(wrap_angle(x + 1.0));
    AxesSet m = canonical_axes(moved, one, 1e-9);
    CHECK(std::abs(std::remainder(m.axis(0) - u.axis(0) - 1.0, 2 * pi)) < 1e-9);
}

TEST_CASE("least_rotation and cyclic_period")
{
    CHECK(least_rotation({3, 1, 2, 1, 2}) == 1);
    CHECK(least_rotation({2, 2, 1}) == 2);
    CHECK(cyclic_period({1, 2, 1, 2}) == 2);
    CHECK(cyclic_period({1, 2, 3}) == 3);
    CHECK(cyclic_period({7, 7, 7}) == 1);
}

TEST_CASE("congruence_2d_labeled")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(0, 2 * pi);
    std::vector<double> a;
    std::vector<Label> la;
    for (int i = 0; i < 9; ++i) {
        a.push_back(U(rng));
        la.push_back({static_cast<double>(i % 3)});
    }
    auto id = congruence_2d_labeled(a, la, a, la, 1e-9);
    REQUIRE(id);
    CHECK(std::abs(std::remainder(*id, 2 * pi)) < 1e-12);

    std::vector<double> b;
    for (double x : a) b.push_back(wrap_angle(x + 0.8));
    auto t = congruence_2d_labeled(a, la, b, la, 1e-9);
    REQUIRE(t);
    CHECK(std::abs(std::remainder(*t - 0.8, 2 * pi)) < 1e-12);

    std::vector<double> hept;
    for (int i = 0; i < 7; ++i) hept.push_back(2 * pi * i / 7);
    std::vector<Label> hl(7, Label{0.0});
    hl[0] = {1.0};
    std::vector<Label> hl2(7, Label{0.0});
    hl2[1] = {1.0};
    auto h = congruence_2d_labeled(hept, hl, hept, hl2, 1e-9);
    REQUIRE(h);
    CHECK(std::abs(std::remainder(*h - 2 * pi / 7, 2 * pi)) < 1e-12);

    std::vector<Label> swapped = la;
    std::swap(swapped[0], swapped[1]);
    CHECK_FALSE(congruence_2d_labeled(a, la, a, swapped, 1e-9));
}

TEST_CASE("cyclic_code is rotation invariant")
{
    std::vector<double> a{0.1, 0.5, 2.0, 4.0};
    std::vector<Label> l{{0}, {1}, {0}, {1}};
    std::vector<double> b;
    for (double x : a) b.push_back(wrap_angle(x - 3.0));
    CHECK(compare_keys(cyclic_code(a, l, 1e-9), cyclic_code(b, l, 1e-9), 1e-9) == 0);
    std::vector<Label> l2{{1}, {0}, {0}, {1}};
    CHECK(compare_keys(cyclic_code(a, l, 1e-9), cyclic_code(a, l2, 1e-9), 1e-9) != 0);
}

TEST_CASE("lockstep run")
{
    LockstepRun run(1e-9);
    run.side(LockstepRun::Side::A);
    run.emit("S1", {1.0});
    run.emit("S2", {2.0});
    run.side(LockstepRun::Side::B);
    run.emit("S1", {1.0});
    CHECK_THROWS_AS(run.emit("S2", {3.0}), Divergence);
    try {
        run.emit("S2", {3.0});
    } catch (const Divergence& d) {
        CHECK(d.stage == "S2");
    }
}
