#include "util.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/geometry.hpp"

#include <doctest.h>

using namespace hcong;
using namespace hcong::test;

TEST_CASE("centroid_normalize")
{
    auto [A, t] = centroid_normalize({Vec4(1, 0, 0, 0), Vec4(-1, 0, 0, 0)});
    CHECK(t.norm() == 0.0);
    CHECK(A.points[0] == Vec4(1, 0, 0, 0));

    auto [B, s] = centroid_normalize({Vec4(2, 0, 0, 0), Vec4(0, 0, 0, 0)});
    CHECK((s - Vec4(1, 0, 0, 0)).norm() < 1e-15);
    CHECK((B.points[0] - Vec4(1, 0, 0, 0)).norm() < 1e-15);
    CHECK((B.points[1] - Vec4(-1, 0, 0, 0)).norm() < 1e-15);

    std::mt19937_64 rng(1);
    std::vector<Vec4> raw;
    for (int i = 0; i < 10; ++i) raw.push_back(gaussian4(rng) * 5.0 + Vec4(3, -2, 7, 1));
    auto [C, c] = centroid_normalize(raw);
    Vec4 sum = Vec4::Zero();
    for (auto& p : C.points) sum += p;
    CHECK(sum.norm() / 10 < 1e-12);
}

TEST_CASE("angle_between_planes")
{
    PlaneSpan P = PlaneSpan::from(e(0), e(1));
    AnglePair a = angle_between_planes(P, P);
    CHECK(a.alpha == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.beta == doctest::Approx(0.0).epsilon(1e-12));

    AnglePair o = angle_between_planes(P, PlaneSpan::from(e(2), e(3)));
    CHECK(o.alpha == doctest::Approx(pi / 2));
    CHECK(o.beta == doctest::Approx(pi / 2));

    std::mt19937_64 rng(2);
    Mat4 G = random_rotation(rng);
    AnglePair c = angle_between_planes(PlaneSpan::from(G.col(0), G.col(1)), clifford_partner(G, 0.3, 1.1));
    CHECK(std::abs(c.alpha - 0.3) < 1e-12);
    CHECK(std::abs(c.beta - 0.3) < 1e-12);
}

TEST_CASE("pluecker coordinates")
{
    PlueckerVector p = pluecker(PlaneSpan::from(e(0), e(1)));
    Vec6 want = Vec6::Zero();
    want[0] = 1;
    CHECK((p.coords - want).norm() < 1e-15);
    PlueckerVector q = pluecker(PlaneSpan::from(e(2), e(3)));
    want = Vec6::Zero();
    want[5] = 1;
    CHECK((q.coords - want).norm() < 1e-15);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        PlaneSpan P = PlaneSpan::from(unit4(rng), unit4(rng));
        const double t = 6.0 * i / 50.0;
        PlaneSpan Q = PlaneSpan::from(P.u * std::cos(t) + P.v * std::sin(t), -P.u * std::sin(t) + P.v * std::cos(t));
        PlueckerVector a = pluecker(P), b = pluecker(Q);
        CHECK((a.coords - b.coords).norm() < 1e-12);
        CHECK(a.coords.norm() == doctest::Approx(1.0));
        const Vec6& x = a.coords;
        CHECK(std::abs(x[0] * x[5] - x[1] * x[4] + x[2] * x[3]) < 1e-12);
    }
}

TEST_CASE("pluecker distance")
{
    PlaneSpan P = PlaneSpan::from(e(0), e(1));
    CHECK(pluecker_distance(P, P) < 1e-15);
    CHECK(pluecker_distance(P, PlaneSpan::from(e(2), e(3))) == doctest::Approx(std::sqrt(2.0)));
    std::mt19937_64 rng(4);
    for (double a : {0.1, 0.7, 1.3}) {
        Mat4 G = random_rotation(rng);
        PlaneSpan C = PlaneSpan::from(G.col(0), G.col(1));
        CHECK(std::abs(pluecker_distance(C, clifford_partner(G, a, 0.4)) - std::sqrt(2.0) * std::sin(a)) < 1e-12);
    }
    // antipodal representatives: reversing orientation changes nothing
    PlaneSpan Q = PlaneSpan::from(unit4(rng), unit4(rng));
    PlaneSpan Qr = PlaneSpan::from(Q.v, Q.u);
    CHECK(std::abs(pluecker_distance(P, Q) - pluecker_distance(P, Qr)) < 1e-15);
}

TEST_CASE("chirality")
{
    CHECK(chirality(PlaneSpan::from(e(0), e(1)), PlaneSpan::from(e(2), e(3))) == Chirality::Both);
    std::mt19937_64 rng(5);
    Mat4 G = random_rotation(rng);
    PlaneSpan C = PlaneSpan::from(G.col(0), G.col(1));
    CHECK(chirality(C, clifford_partner(G, 0.4, 0.9)) == Chirality::Right);
    CHECK(chirality(C, clifford_partner(G, 0.4, 0.9, true)) == Chirality::Left);
    PlaneSpan D = PlaneSpan::from(G * Vec4(std::cos(0.2), 0, std::sin(0.2), 0), G * Vec4(0, std::cos(0.5), 0, std::sin(0.5)));
    CHECK(chirality(C, D) == Chirality::NotIsoclinic);
}

TEST_CASE("hopf map")
{
    PlaneSpan C0 = PlaneSpan::from(e(0), e(1));
    Vec3 n = hopf_image(C0, Vec4(std::cos(0.3), std::sin(0.3), 0, 0));
    CHECK((n - Vec3(0, 0, 1)).norm() < 1e-15);
    Vec3 s = hopf_image(C0, Vec4(0, 0, std::cos(1.0), std::sin(1.0)));
    CHECK((s - Vec3(0, 0, -1)).norm() < 1e-15);

    // every point of a right fibre has the same image; fibre() inverts image()
    std::mt19937_64 rng(6);
    HopfFrame h(C0, false);
    for (int i = 0; i < 20; ++i) {
        Vec4 p = unit4(rng);
        Vec3 hp = h.image(p);
        PlaneSpan F = h.fiber(hp);
        CHECK((F.project(p) - p).norm() < 1e-12);
        CHECK((h.image(F.v) - hp).norm() < 1e-12);
        CHECK(chirality(C0, F) != Chirality::Left);
    }
}

TEST_CASE("decompose_rotation")
{
    RotationDecomposition d = decompose_rotation(block_rotation(0.5, 1.2));
    CHECK(d.phi == doctest::Approx(0.5));
    CHECK(std::abs(d.psi) == doctest::Approx(1.2));
    CHECK(pluecker_distance(d.P, PlaneSpan::from(e(0), e(1))) < 1e-12);
    CHECK(pluecker_distance(d.Q, PlaneSpan::from(e(2), e(3))) < 1e-12);

    RotationDecomposition iso = decompose_rotation(block_rotation(0.7, 0.7));
    CHECK(iso.isoclinic);
    CHECK(iso.chirality == Chirality::Right);

    std::mt19937_64 rng(7);
    Mat4 G = random_rotation(rng);
    RotationDecomposition c = decompose_rotation(G * block_rotation(0.5, 1.2) * G.transpose());
    CHECK(c.phi == doctest::Approx(0.5));
    CHECK(std::abs(c.psi) == doctest::Approx(1.2));
    CHECK(pluecker_distance(c.P, PlaneSpan::from(G.col(0), G.col(1))) < 1e-10);

    CHECK_THROWS_AS(decompose_rotation(Mat4::Identity()), IdentityRotationError);
}

TEST_CASE("mark_pair")
{
    auto has = [](const std::array<Vec4, 4>& m, const Vec4& x) {
        for (const auto& p : m)
            if ((p - x).norm() < 1e-9) return true;
        return false;
    };
    PlaneSpan C = PlaneSpan::from(e(0), e(1));
    auto m = mark_pair(C, PlaneSpan::from(e(0), e(2)));
    CHECK(has(m, e(0)));
    CHECK(has(m, -e(0)));

    PlaneSpan D = PlaneSpan::from(Vec4(std::cos(0.2), 0, std::sin(0.2), 0), Vec4(0, std::cos(0.5), 0, std::sin(0.5)));
    auto k = mark_pair(C, D);
    // brute force: the point of C closest to D
    double best = -1;
    Vec4 arg;
    for (int i = 0; i < 20000; ++i) {
        double t = pi * i / 20000;
        Vec4 x(std::cos(t), std::sin(t), 0, 0);
        double proj = D.project(x).norm();
        if (proj > best) best = proj, arg = x;
    }
    bool near = false;
    for (const auto& p : k) near = near || (p - arg).norm() < 1e-3 || (p + arg).norm() < 1e-3;
    CHECK(near);
    CHECK(((k[0] - e(0)).norm() < 1e-9 || (k[0] + e(0)).norm() < 1e-9));

    std::mt19937_64 rng(8);
    Mat4 R = random_rotation(rng);
    auto r = mark_pair(PlaneSpan::from(R * C.u, R * C.v), PlaneSpan::from(R * D.u, R * D.v));
    for (const auto& p : k) CHECK(has(r, R * p));

    Mat4 G = random_rotation(rng);
    CHECK_THROWS_AS(mark_pair(PlaneSpan::from(G.col(0), G.col(1)), clifford_partner(G, 0.3, 0.1)), CliffordParallelError);
}

TEST_CASE("verify_rotation")
{
    std::mt19937_64 rng(9);
    PointSet4 A;
    for (int i = 0; i < 12; ++i) {
        A.points.push_back(gaussian4(rng));
        A.labels.push_back(i % 2 ? "x" : "y");
    }
    Mat4 R = random_rotation(rng);
    PointSet4 B = moved(A, R);
    CHECK(verify_rotation(A, B, R));
    PointSet4 C = B;
    C.points[3][2] += 1e-3;
    CHECK_FALSE(verify_rotation(A, C, R));
    PointSet4 D = B;
    std::swap(D.labels[0], D.labels[1]);
    CHECK_FALSE(verify_rotation(A, D, R));
}

TEST_CASE("cross4 and complete_basis")
{
    std::mt19937_64 rng(10);
    for (int i = 0; i < 20; ++i) {
        Vec4 a = gaussian4(rng), b = gaussian4(rng), c = gaussian4(rng);
        Vec4 n = cross4(a, b, c);
        CHECK(std::abs(n.dot(a)) < 1e-12);
        CHECK(std::abs(n.dot(b)) < 1e-12);
        CHECK(std::abs(n.dot(c)) < 1e-12);
        Mat4 m;
        m << a, b, c, n;
        CHECK(m.determinant() >= 0);
        Mat4 f = complete_basis({a, b});
        CHECK((f.transpose() * f - Mat4::Identity()).norm() < 1e-12);
        CHECK(f.determinant() == doctest::Approx(1.0));
        CHECK((f.col(0) - a.normalized()).norm() < 1e-12);
    }
}
