#include "hypercongruence/algo_c.hpp"
#include "hypercongruence/algo_k.hpp"
#include "hypercongruence/algo_t.hpp"
#include "hypercongruence/circle_extract.hpp"
#include "hypercongruence/closest_pair.hpp"
#include "hypercongruence/condense.hpp"
#include "hypercongruence/harness.hpp"
#include "hypercongruence/pipeline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace hcong;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double pi = std::numbers::pi;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Row {
    bool pass;
    std::string detail;
};

Vec4 gaussian4(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    return Vec4(g(rng), g(rng), g(rng), g(rng));
}

Vec4 unit4(std::mt19937_64& rng) { return gaussian4(rng).normalized(); }

PointSet4 transformed(const PointSet4& A, const Mat4& M, const Vec4& t)
{
    PointSet4 B = A;
    for (auto& x : B.points) x = M * x + t;
    return B;
}

PointSet4 subsample(const PointSet4& A, std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::size_t> idx(A.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    PointSet4 S;
    for (std::size_t i = 0; i < std::min(n, idx.size()); ++i) S.points.push_back(A.points[idx[i]]);
    return S;
}

// 1. Pipeline against the exhaustive oracle on small instances.

PointSet4 small_instance(int kind, int n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 1 << 20);
    PointSet4 A;
    switch (kind) {
    case 0:  // generic
        for (int i = 0; i < n; ++i) A.points.push_back(gaussian4(rng));
        break;
    case 1: {  // symmetric: subset of a regular polytope
        static const char* names[] = {"5-cell", "16-cell", "4-cube", "24-cell", "600-cell"};
        PointSet4 P = gen_regular_polytope(names[pick(rng) % 5]);
        A = subsample(P, static_cast<std::size_t>(n), rng);
        break;
    }
    case 2: {  // degenerate: lower-dimensional span
        const int dim = 1 + pick(rng) % 3;
        Mat4 G = random_rotation(rng);
        for (int i = 0; i < n; ++i) {
            Vec4 x = gaussian4(rng);
            for (int j = dim; j < 4; ++j) x[j] = 0;
            A.points.push_back(G * x);
        }
        break;
    }
    case 3: {  // integer lattice points with repeated distances and duplicates
        std::uniform_int_distribution<int> c(-1, 1);
        for (int i = 0; i < n; ++i) A.points.push_back(Vec4(c(rng), c(rng), c(rng), c(rng)));
        break;
    }
    default: {  // coincident or on a circle
        if (pick(rng) % 2) {
            Vec4 x = gaussian4(rng);
            for (int i = 0; i < n; ++i) A.points.push_back(x);
        } else {
            for (int i = 0; i < n; ++i) {
                double t = 2 * pi * (pick(rng) % 6) / 6.0;
                A.points.push_back(Vec4(std::cos(t), std::sin(t), 0.5, 0));
            }
        }
    }
    }
    return A;
}

PointSet4 small_partner(const PointSet4& A, int mode, std::mt19937_64& rng)
{
    Mat4 R = random_rotation(rng);
    Vec4 t = gaussian4(rng);
    std::uniform_int_distribution<std::size_t> pick(0, A.size() - 1);
    PointSet4 B;
    switch (mode) {
    case 0:  // congruent
        B = transformed(A, R, t);
        break;
    case 1: {  // chiral: reflected copy
        Mat4 D = Mat4::Identity();
        D(3, 3) = -1;
        B = transformed(A, R * D, t);
        break;
    }
    case 2:  // perturbed copy
        B = gen_perturbed(transformed(A, R, t), 1e-3, rng());
        break;
    case 3: {  // one point replaced
        B = transformed(A, R, t);
        B.points[pick(rng)] = R * gaussian4(rng) + t;
        break;
    }
    default: {  // one point swapped for a lattice neighbour or a polytope vertex
        B = A;
        std::size_t i = pick(rng);
        B.points[i] = -B.points[i];
        B = transformed(B, R, t);
    }
    }
    std::shuffle(B.points.begin(), B.points.end(), rng);
    return B;
}

Row criterion_oracle()
{
    std::mt19937_64 rng(1001);
    const auto t0 = Clock::now();
    int agree = 0, total = 0, positives = 0;
    std::string first_bad;
    for (int i = 0; i < 1000; ++i) {
        const int n = 1 + i % 10;
        const int kind = (i / 10) % 5;
        const int mode = (i / 50) % 5;
        PointSet4 A = small_instance(kind, n, rng);
        PointSet4 B = small_partner(A, mode, rng);
        const bool reflect = (i / 250) % 2 == 1;
        Verdict o = oracle_congruent(A, B, reflect);
        PipelineOptions opts;
        opts.allow_reflection = reflect;
        Verdict p = congruence_test_4d(A, B, opts);
        ++total;
        positives += o.congruent;
        if (o.congruent == p.congruent) {
            ++agree;
        } else if (first_bad.empty()) {
            first_bad = "; first disagreement at instance " + std::to_string(i) + " (n=" + std::to_string(n) +
                        ", kind " + std::to_string(kind) + ", mode " + std::to_string(mode) + ")";
        }
    }
    const double secs = seconds_since(t0);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d/%d agree (%d congruent), %.1f s (limit 60 s)", agree, total, positives, secs);
    return {agree == total && secs < 60.0, buf + first_bad};
}

// 2 and 3. Round trips over the structured families, then the same pairs perturbed.

struct Family {
    std::string name;
    std::function<PointSet4(std::mt19937_64&)> make;
    int count;
};

std::vector<Family> families()
{
    const PointSet4 grid = gen_torus_grid(300, 300, 0.6);
    const PointSet4 helix = gen_orbit_helix(20000, 2, 0.8, 5);
    return {
        {"random", [](std::mt19937_64& r) {
             std::uniform_real_distribution<double> e(4.0, 14.0);
             auto n = static_cast<std::size_t>(std::pow(2.0, e(r)));
             return gen_congruent_pair(n, r()).A;
         }, 140},
        {"4-cube", [](std::mt19937_64&) { return gen_regular_polytope("4-cube"); }, 40},
        {"24-cell", [](std::mt19937_64&) { return gen_regular_polytope("24-cell"); }, 40},
        {"torus grid 300x300", [grid](std::mt19937_64& r) { return subsample(grid, 1 << 14, r); }, 80},
        {"helix l=20000", [helix](std::mt19937_64& r) { return subsample(helix, 1 << 14, r); }, 80},
        {"hopf", [](std::mt19937_64& r) {
             std::uniform_int_distribution<int> m(2, 12), s(8, 600);
             return gen_hopf_circles(m(r), s(r), r()).points;
         }, 100},
        {"full structure", [](std::mt19937_64& r) {
             switch (r() % 4) {
             case 0: return gen_torus_grid(128, 128, 0.6);
             case 1: return gen_hopf_circles(4, 4096, r()).points;
             case 2: return gen_regular_polytope("600-cell");
             default: return gen_regular_polytope("120-cell");
             }
         }, 20},
    };
}

struct PairStats {
    int congruent = 0, rejected = 0, total = 0;
    double worst = 0.0;
    std::string bad_pos, bad_neg;
};

PairStats run_pairs()
{
    PairStats s;
    std::mt19937_64 rng(2002);
    for (const auto& f : families()) {
        for (int i = 0; i < f.count; ++i) {
            PointSet4 A = f.make(rng);
            CongruentPair pr = make_congruent_pair(A, rng());
            ++s.total;
            Verdict v = congruence_test_4d(pr.A, pr.B);
            double err = v.congruent ? map_error(pr.A, pr.B, v.rotation, v.translation) : INFINITY;
            if (v.congruent && err <= 1e-6)
                ++s.congruent;
            else if (s.bad_pos.empty())
                s.bad_pos = f.name + " #" + std::to_string(i) + " n=" + std::to_string(A.size()) + " stage " + v.stage;
            if (v.congruent) s.worst = std::max(s.worst, err);

            PointSet4 B = gen_perturbed(pr.B, 1e-3, rng());
            Verdict w = congruence_test_4d(pr.A, B);
            if (!w.congruent)
                ++s.rejected;
            else if (s.bad_neg.empty())
                s.bad_neg = f.name + " #" + std::to_string(i) + " n=" + std::to_string(A.size());
        }
    }
    return s;
}

// 4. Pluecker distance against sqrt(2(1 - cos a cos b)) on planes with known angles.

Row criterion_pluecker()
{
    std::mt19937_64 rng(4004);
    std::uniform_real_distribution<double> ang(0.0, pi / 2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Mat4 G = random_rotation(rng);
        const double a = ang(rng), b = ang(rng);
        PlaneSpan P = PlaneSpan::from(G.col(0), G.col(1));
        PlaneSpan Q = PlaneSpan::from(G * Vec4(std::cos(a), 0, std::sin(a), 0), G * Vec4(0, std::cos(b), 0, std::sin(b)));
        const double expect = std::sqrt(2.0 * (1.0 - std::cos(a) * std::cos(b)));
        worst = std::max(worst, std::abs(pluecker_distance(P, Q) - expect));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "1000 plane pairs, max |d - closed form| = %.2e (tol 1e-9)", worst);
    return {worst <= 1e-9, buf};
}

// 5. Right Hopf fibres at angle (a, a) map to points at geodesic distance 2a.

Row criterion_hopf()
{
    std::mt19937_64 rng(5005);
    std::uniform_real_distribution<double> ang(0.0, pi / 2), turn(0.0, 2 * pi);
    double worst = 0.0;
    int right = 0;
    for (int i = 0; i < 1000; ++i) {
        Mat4 G = random_rotation(rng);
        auto fibre = [&](double a, double d) {
            Vec4 u1(std::cos(a), 0, std::sin(a) * std::cos(d), std::sin(a) * std::sin(d));
            Vec4 u2(0, std::cos(a), -std::sin(a) * std::sin(d), std::sin(a) * std::cos(d));
            return PlaneSpan::from(G * u1, G * u2);
        };
        PlaneSpan C0 = PlaneSpan::from(G.col(0), G.col(1));
        PlaneSpan C = fibre(ang(rng), turn(rng)), D = fibre(ang(rng), turn(rng));
        right += chirality(C, D) != Chirality::Left && chirality(C, D) != Chirality::NotIsoclinic;
        // Clifford-parallel circles keep a constant angle: measure it from one point.
        Vec4 c = C.u;
        const double alpha = std::acos(std::clamp(D.project(c).norm(), 0.0, 1.0));
        Vec3 hc = hopf_image(C0, c), hd = hopf_image(C0, D.u);
        const double geo = std::atan2(hc.cross(hd).norm(), hc.dot(hd));
        worst = std::max(worst, std::abs(geo - 2 * alpha));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "1000 right pairs (%d tagged right or both), max |geodesic - 2a| = %.2e (tol 1e-9)",
                  right, worst);
    return {worst <= 1e-9 && right == 1000, buf};
}

// 6. Inradii of the fundamental simplices.

Row criterion_coxeter()
{
    int match = 0;
    std::string report;
    bool f4_flagged = false;
    double smallest = INFINITY;
    std::string smallest_name;
    for (const auto& spec : coxeter_table()) {
        Eigen::Matrix4d N;
        for (int i = 0; i < 4; ++i) N.row(i) = spec.normals[static_cast<std::size_t>(i)].transpose();
        const double independent = 1.0 / N.inverse().rowwise().sum().norm();
        const double r = coxeter_inradius(spec);
        const bool ok = std::abs(r - spec.table_R0) <= 1e-8 && std::abs(r - independent) <= 1e-12;
        match += ok;
        if (r < smallest) {
            smallest = r;
            smallest_name = spec.name;
        }
        if (!ok) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "; %s: recomputed %.10f vs table %.10f", spec.name.c_str(), r,
                          spec.table_R0);
            report += buf;
            f4_flagged = f4_flagged || spec.name == "F4";
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/8 rows within 1e-8, smallest recomputed %s = %.10f", match,
                  smallest_name.c_str(), smallest);
    return {match == 7 && f4_flagged, buf + report + (f4_flagged ? " (expected discrepancy)" : "")};
}

// 7. Fixed configurations of the sphere condenser.

std::vector<Vec3> icosahedron()
{
    const double g = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> v;
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            v.push_back(Vec3(0, s1, s2 * g).normalized());
            v.push_back(Vec3(s1, s2 * g, 0).normalized());
            v.push_back(Vec3(s2 * g, 0, s1).normalized());
        }
    return v;
}

// Face directions of dodecahedron(): every one has five nearest vertices.
std::vector<Vec3> dual_icosahedron()
{
    const double g = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> v;
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            v.push_back(Vec3(0, s2 * g, s1).normalized());
            v.push_back(Vec3(s2 * g, s1, 0).normalized());
            v.push_back(Vec3(s1, 0, s2 * g).normalized());
        }
    return v;
}

std::vector<Vec3> dodecahedron()
{
    const double g = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> v;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1}) v.push_back(Vec3(a, b, c).normalized());
    for (int a : {-1, 1})
        for (int b : {-1, 1}) {
            v.push_back(Vec3(0, a / g, b * g).normalized());
            v.push_back(Vec3(a / g, b * g, 0).normalized());
            v.push_back(Vec3(b * g, 0, a / g).normalized());
        }
    return v;
}

// Every point of `got` is within tol of a point of `want` and the sizes agree.
bool same_set(const std::vector<Vec3>& got, const std::vector<Vec3>& want, double tol)
{
    if (got.size() != want.size()) return false;
    for (const auto& p : got) {
        bool hit = false;
        for (const auto& q : want) hit = hit || (p - q).norm() <= tol;
        if (!hit) return false;
    }
    return true;
}

Row criterion_sphere()
{
    std::mt19937_64 rng(7007);
    std::string detail;
    bool ok = true;
    for (int trial = 0; trial < 3; ++trial) {
        Vec4 q = unit4(rng);
        Mat3 S = Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
        auto apply = [&](std::vector<Vec3> v) {
            for (auto& x : v) x = S * x;
            return v;
        };
        // icosahedron: fixed
        auto ico = apply(icosahedron());
        KResult a = condense_sphere(ico);
        ok = ok && a.config == SphereConfig::Icosahedron && same_set(a.points, ico, 1e-9);
        // cube: normalized face centroids, the octahedron
        std::vector<Vec3> cube, octa;
        for (int x : {-1, 1})
            for (int y : {-1, 1})
                for (int z : {-1, 1}) cube.push_back(Vec3(x, y, z).normalized());
        for (int i = 0; i < 3; ++i)
            for (int s : {-1, 1}) octa.push_back(Vec3::Unit(i) * s);
        KResult b = condense_sphere(apply(cube));
        ok = ok && b.config == SphereConfig::Octahedron && same_set(b.points, apply(octa), 1e-9);
        // dodecahedron: face centroids, 12 points of the dual icosahedron
        auto dod = apply(dodecahedron());
        std::vector<Vec3> dual;
        for (const auto& v : dual_icosahedron()) dual.push_back(S * v);
        KResult c = condense_sphere(dod);
        ok = ok && c.config == SphereConfig::Icosahedron && same_set(c.points, dual, 1e-9);
        if (trial == 0) {
            detail = std::string("icosahedron -> ") + std::to_string(a.points.size()) + " " + config_name(a.config) +
                     ", cube -> " + std::to_string(b.points.size()) + " " + config_name(b.config) +
                     ", dodecahedron -> " + std::to_string(c.points.size()) + " " + config_name(c.config);
        }
    }
    return {ok, detail + " (3 random orientations)"};
}

// 8. Few orbit cycles on long helices.

Row criterion_orbit_cycles()
{
    struct H {
        int l, k;
        double r1;
    };
    const Constants k = make_constants();
    std::string detail;
    bool ok = true;
    for (H h : {H{20000, 2, 0.8}, H{16000, 2, 0.9}, H{30000, 3, 0.8}, H{12650, 2, 0.999}}) {
        const double r2 = std::sqrt(1 - h.r1 * h.r1);
        const double delta = 2 * std::sin(pi / h.l) * std::sqrt(h.r1 * h.r1 + h.k * h.k * r2 * r2);
        PointSet4 A = gen_orbit_helix(h.l, h.k, h.r1, 11);
        LockstepRun run(k.eps_key);
        CExit c = algorithm_c(A.points, run, k);
        std::size_t cycles = 0;
        bool edge = c.kind == CExit::Kind::EdgeTransitive;
        if (edge) cycles = algorithm_o(c, run, k).size();
        const bool row = delta < k.delta0 && edge && cycles >= 1 && cycles * 200 <= A.size();
        ok = ok && row;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s(l=%d,k=%d): delta %.2e, %s, %zu circle(s)", detail.empty() ? "" : "; ", h.l,
                      h.k, delta, exit_name(c.kind), cycles);
        detail += buf;
    }
    return {ok, detail + " (bound |A|/200)"};
}

// 9. Canonical sets of labeled torus grids keep the translation symmetry group.

double torus_dist(const Vec2& a, const Vec2& b)
{
    double m = 0;
    for (int i = 0; i < 2; ++i) {
        double d = std::fmod(std::abs(a[i] - b[i]), 2 * pi);
        m = std::max(m, std::min(d, 2 * pi - d));
    }
    return m;
}

// All translations t (as differences of points) with A + t = A, labels included.
std::vector<Vec2> symmetry_group(const std::vector<Vec2>& pts, const std::vector<int>& labels)
{
    std::vector<Vec2> group;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (labels[j] != labels[0]) continue;
        Vec2 t = pts[j] - pts[0];
        bool all = true;
        for (std::size_t i = 0; i < pts.size() && all; ++i) {
            Vec2 q = pts[i] + t;
            bool hit = false;
            for (std::size_t m = 0; m < pts.size() && !hit; ++m)
                hit = labels[m] == labels[i] && torus_dist(q, pts[m]) <= 1e-9;
            all = hit;
        }
        if (all) group.push_back(t);
    }
    return group;
}

bool same_group(const std::vector<Vec2>& a, const std::vector<Vec2>& b)
{
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        bool hit = false;
        for (const auto& y : b) hit = hit || torus_dist(x, y) <= 1e-9;
        if (!hit) return false;
    }
    return true;
}

Row criterion_torus()
{
    std::mt19937_64 rng(9009);
    std::uniform_int_distribution<int> side(1, 6), lab(0, 2);
    std::uniform_real_distribution<double> shift(0.0, 2 * pi);
    int ok = 0, total = 0, nontrivial = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int p = side(rng), q = side(rng);
        // labels periodic with a random sublattice period, or fully random
        const int pp = std::max(1, p / side(rng)), qq = std::max(1, q / side(rng));
        const bool periodic = trial % 3 != 0 && p % pp == 0 && q % qq == 0;
        std::vector<int> pattern(static_cast<std::size_t>(pp * qq));
        for (auto& x : pattern) x = lab(rng);
        const Vec2 off(shift(rng), shift(rng));
        std::vector<Vec2> pts;
        std::vector<int> labels;
        std::vector<TorusPoint> tp;
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j) {
                if (!periodic && lab(rng) == 0 && p * q > 2) continue;
                Vec2 a(std::fmod(off[0] + 2 * pi * i / p, 2 * pi), std::fmod(off[1] + 2 * pi * j / q, 2 * pi));
                int l = periodic ? pattern[static_cast<std::size_t>((i % pp) * qq + j % qq)] : lab(rng);
                pts.push_back(a);
                labels.push_back(l);
                tp.push_back({a, {static_cast<double>(l)}});
            }
        if (pts.empty()) continue;
        ++total;
        std::vector<Vec2> canon = canonical_set_torus(tp, 1e-9);
        auto g_in = symmetry_group(pts, labels);
        auto g_out = symmetry_group(canon, std::vector<int>(canon.size(), 0));
        nontrivial += g_in.size() > 1;
        // the canonical set must also be a subset of the input positions' orbit structure
        bool preserved = true;
        for (const auto& t : g_in)
            for (const auto& c : canon) {
                bool hit = false;
                for (const auto& d : canon) hit = hit || torus_dist(c + t, d) <= 1e-9;
                preserved = preserved && hit;
            }
        ok += same_group(g_in, g_out) && preserved;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d labeled grids (<= 36 points, %d with nontrivial symmetry) keep their group",
                  ok, total, nontrivial);
    return {ok == total, buf};
}

// 10. Log-log slope of wall time against n.

double slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

template <class F>
double best_of(int reps, F&& f)
{
    double best = INFINITY;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

Row criterion_scaling()
{
    std::vector<double> ns, tp, tc;
    bool all_congruent = true;
    for (int e = 10; e <= 17; ++e) {
        const std::size_t n = std::size_t{1} << e;
        CongruentPair pr = gen_congruent_pair(n, 10000 + static_cast<std::uint64_t>(e));
        ns.push_back(static_cast<double>(n));
        tp.push_back(best_of(3, [&] { all_congruent = congruence_test_4d(pr.A, pr.B).congruent && all_congruent; }));
        tc.push_back(best_of(5, [&] { (void)closest_pair_graph(pr.A.points); }));
    }
    const double sp = slope(ns, tp), sc = slope(ns, tc);
    char buf[200];
    std::snprintf(buf, sizeof buf, "pipeline slope %.3f (limit 1.25, %.2f s at 2^17), closest pair slope %.3f (limit 1.20)",
                  sp, tp.back(), sc);
    return {sp <= 1.25 && sc <= 1.20 && all_congruent, buf};
}

// 11. Equivariance under random rotations.

Row criterion_equivariance()
{
    std::mt19937_64 rng(11011);
    std::uniform_real_distribution<double> ang(0.05, pi / 2 - 0.05), turn(0.0, 2 * pi);
    std::vector<PointSet4> sets = {gen_congruent_pair(300, 1).A,  gen_regular_polytope("24-cell"),
                                   gen_torus_grid(12, 15, 0.6),   gen_hopf_circles(4, 30, 2).points,
                                   gen_orbit_helix(2000, 3, 0.7, 3), gen_regular_polytope("4-cube")};
    int runs_ok = 0, ops_ok = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        Mat4 R = random_rotation(rng);
        const PointSet4& A = sets[static_cast<std::size_t>(i) % sets.size()];
        PipelineOptions o;
        o.trace = true;
        Verdict self = congruence_test_4d(A, A, o);
        Verdict rot = congruence_test_4d(transformed(A, R, Vec4::Zero()), transformed(A, R, Vec4::Zero()), o);
        Verdict cross = congruence_test_4d(A, transformed(A, R, Vec4::Zero()), o);
        bool same_stages = self.trace.size() == rot.trace.size();
        for (std::size_t j = 0; same_stages && j < self.trace.size(); ++j)
            same_stages = self.trace[j].substr(0, self.trace[j].find(':')) == rot.trace[j].substr(0, rot.trace[j].find(':'));
        runs_ok += self.congruent && rot.congruent && cross.congruent && same_stages;

        PlaneSpan P = PlaneSpan::from(unit4(rng), unit4(rng)), Q = PlaneSpan::from(unit4(rng), unit4(rng));
        PlaneSpan RP = PlaneSpan::from(R * P.u, R * P.v), RQ = PlaneSpan::from(R * Q.u, R * Q.v);
        double e = std::abs(pluecker_distance(P, Q) - pluecker_distance(RP, RQ));
        auto marks = mark_pair(P, Q), rmarks = mark_pair(RP, RQ);
        for (const auto& m : marks) {
            double best = INFINITY;
            for (const auto& r : rmarks) best = std::min(best, (R * m - r).norm());
            e = std::max(e, best);
        }
        Vec4 x = unit4(rng), y = unit4(rng);
        Vec3 hx = hopf_image(P, x), hy = hopf_image(P, y), rx = hopf_image(RP, R * x), ry = hopf_image(RP, R * y);
        e = std::max(e, std::abs(sphere_distance(hx, hy) - sphere_distance(rx, ry)));
        std::vector<double> angles;
        std::vector<Label> labels;
        const int m = 12;
        for (int j = 0; j < m; ++j) {
            angles.push_back(2 * pi * j / m);
            labels.push_back({static_cast<double>(j % (1 + i % 4))});
        }
        const double th = turn(rng);
        std::vector<double> shifted;
        for (double a : angles) shifted.push_back(wrap_angle(a + th));
        AxesSet ax = canonical_axes(angles, labels, 1e-9), bx = canonical_axes(shifted, labels, 1e-9);
        double base = std::abs(wrap_angle(bx.base_angle - ax.base_angle - th));
        base = std::min(base, 2 * pi - base);
        base = std::fmod(base, 2 * pi / ax.count);
        base = std::min(base, 2 * pi / ax.count - base);
        e = std::max(e, base);
        worst = std::max(worst, e);
        ops_ok += e <= 1e-9 && ax.count == bx.count;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "200 rotations: %d/200 runs with matching stage keys, %d/200 op checks, max op deviation %.2e (tol 1e-9)",
                  runs_ok, ops_ok, worst);
    return {runs_ok == 200 && ops_ok == 200, buf};
}

}  // namespace

int main()
{
    int failed = 0;
    auto report = [&](int id, const char* name, const Row& r) {
        std::printf("[%s] %2d %s: %s\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    };

    report(1, "oracle equivalence", criterion_oracle());
    PairStats s = run_pairs();
    {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%d/%d congruent with map error <= 1e-6 (worst %.2e)", s.congruent, s.total,
                      s.worst);
        report(2, "round-trip soundness", {s.congruent == s.total && s.total == 500,
                                           buf + (s.bad_pos.empty() ? std::string() : "; first failure " + s.bad_pos)});
        std::snprintf(buf, sizeof buf, "%d/%d perturbed pairs rejected", s.rejected, s.total);
        report(3, "negative detection", {s.rejected == s.total,
                                         buf + (s.bad_neg.empty() ? std::string() : "; first miss " + s.bad_neg)});
    }
    report(4, "pluecker closed form", criterion_pluecker());
    report(5, "hopf distance", criterion_hopf());
    report(6, "coxeter inradii", criterion_coxeter());
    report(7, "sphere fixed points", criterion_sphere());
    report(8, "orbit-cycle bound", criterion_orbit_cycles());
    report(9, "torus canonical set", criterion_torus());
    report(10, "scaling", criterion_scaling());
    report(11, "equivariance", criterion_equivariance());
    std::printf("%d of 11 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
