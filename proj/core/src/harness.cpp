#include "hypercongruence/harness.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Centered {
    std::vector<Vec4> p;
    std::vector<double> l;
    Vec4 c = Vec4::Zero();
};

Centered center(const PointSet4& S, const std::map<std::string, double>& ids)
{
    Centered out;
    out.c = mean_of<4>(S.points);
    for (std::size_t i = 0; i < S.size(); ++i) {
        out.p.push_back(S.points[i] - out.c);
        out.l.push_back(S.labeled() ? ids.at(S.labels[i]) : 0.0);
    }
    return out;
}

// Orthonormal frame whose first columns come from Gram-Schmidt of the given
// independent vectors.
Mat4 frame_of(const std::vector<Vec4>& vs)
{
    Mat4 F = Mat4::Zero();
    int k = 0;
    for (const Vec4& v : vs) {
        Vec4 w = v;
        for (int j = 0; j < k; ++j) w -= F.col(j) * F.col(j).dot(w);
        F.col(k++) = w.normalized();
    }
    for (int e = 0; e < 4 && k < 4; ++e) {
        Vec4 w = Vec4::Unit(e);
        for (int j = 0; j < k; ++j) w -= F.col(j) * F.col(j).dot(w);
        if (w.norm() > 1e-6) F.col(k++) = w.normalized();
    }
    return F;
}

bool maps_onto(const Centered& a, const Centered& b, const Mat4& R, double tol)
{
    std::vector<char> used(b.p.size(), 0);
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        Vec4 x = R * a.p[i];
        bool ok = false;
        for (std::size_t j = 0; j < b.p.size() && !ok; ++j) {
            if (used[j] || a.l[i] != b.l[j]) continue;
            if ((x - b.p[j]).norm() <= tol) {
                used[j] = 1;
                ok = true;
            }
        }
        if (!ok) return false;
    }
    return true;
}

void permutations(std::size_t n, std::size_t r, std::vector<std::size_t>& cur, std::vector<char>& used,
                  const std::function<bool(const std::vector<std::size_t>&)>& f, bool& stop)
{
    if (stop) return;
    if (cur.size() == r) {
        stop = f(cur);
        return;
    }
    for (std::size_t j = 0; j < n && !stop; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        cur.push_back(j);
        permutations(n, r, cur, used, f, stop);
        cur.pop_back();
        used[j] = 0;
    }
}

Mat4 quat_left(const Eigen::Vector4d& q)
{
    const double a = q[0], b = q[1], c = q[2], d = q[3];
    Mat4 m;
    m << a, -b, -c, -d, b, a, -d, c, c, d, a, -b, d, -c, b, a;
    return m;
}

Mat4 quat_right(const Eigen::Vector4d& q)
{
    const double a = q[0], b = q[1], c = q[2], d = q[3];
    Mat4 m;
    m << a, -b, -c, -d, b, a, d, -c, c, -d, a, b, d, c, -b, a;
    return m;
}

Vec4 gaussian4(std::mt19937_64& rng)
{
    std::normal_distribution<double> N(0.0, 1.0);
    return {N(rng), N(rng), N(rng), N(rng)};
}

}  // namespace

Verdict oracle_congruent(const PointSet4& A, const PointSet4& B, bool allow_reflection, double eps)
{
    if (A.size() > 10 || B.size() > 10) throw SizeGuardError("oracle: at most 10 points");
    if (A.size() != B.size()) throw std::invalid_argument("oracle: point counts differ");
    if (A.size() == 0) throw std::invalid_argument("oracle: empty input");
    if (A.labeled() != B.labeled()) return Verdict::no("oracle");
    std::map<std::string, double> ids;
    for (const auto& s : A.labels) ids.emplace(s, 0.0);
    for (const auto& s : B.labels) ids.emplace(s, 0.0);
    double next = 0.0;
    for (auto& [s, v] : ids) v = next++;
    Centered a = center(A, ids), b = center(B, ids);
    double scale = 0.0;
    for (const Vec4& p : a.p) scale = std::max(scale, p.norm());
    const double tol = eps * std::max(1.0, scale);

    // a basis of span(A) taken greedily in index order
    std::vector<std::size_t> basis;
    std::vector<Vec4> basis_vecs;
    for (std::size_t i = 0; i < a.p.size() && basis.size() < 4; ++i) {
        Vec4 w = a.p[i];
        for (const Vec4& q : basis_vecs) w -= q * q.dot(w);
        if (w.norm() > 1e-7 * std::max(1.0, scale)) {
            basis.push_back(i);
            basis_vecs.push_back(w.normalized());
        }
    }
    const std::size_t r = basis.size();
    std::vector<Vec4> av;
    for (std::size_t i : basis) av.push_back(a.p[i]);
    Mat4 FA = frame_of(av);

    Verdict found = Verdict::no("oracle");
    auto attempt = [&](const std::vector<std::size_t>& tuple) {
        for (std::size_t x = 0; x < r; ++x) {
            if (a.l[basis[x]] != b.l[tuple[x]]) return false;
            for (std::size_t y = x; y < r; ++y)
                if (std::fabs(a.p[basis[x]].dot(a.p[basis[y]]) - b.p[tuple[x]].dot(b.p[tuple[y]])) > 1e3 * tol * std::max(1.0, scale))
                    return false;
        }
        std::vector<Vec4> bv;
        for (std::size_t j : tuple) bv.push_back(b.p[j]);
        Mat4 FB = frame_of(bv);
        Mat4 R = FB * FA.transpose();
        std::vector<Mat4> cands{R};
        if (r < 4) {
            Mat4 flip = Mat4::Identity();
            flip(3, 3) = -1.0;
            cands.push_back(FB * flip * FA.transpose());
        }
        for (const Mat4& M : cands) {
            bool proper = M.determinant() > 0;
            if (!proper && !allow_reflection) continue;
            if (maps_onto(a, b, M, tol)) {
                found = Verdict::yes(M);
                found.reflected = !proper;
                return true;
            }
        }
        return false;
    };
    if (r == 0) {
        attempt({});
    } else {
        std::vector<std::size_t> cur;
        std::vector<char> used(b.p.size(), 0);
        bool stop = false;
        permutations(b.p.size(), r, cur, used, attempt, stop);
    }
    if (found.congruent) found.translation = b.c - found.rotation * a.c;
    return found;
}

Mat4 random_rotation(std::mt19937_64& rng)
{
    Vec4 p = gaussian4(rng).normalized(), q = gaussian4(rng).normalized();
    return quat_left(p) * quat_right(q);
}

CongruentPair make_congruent_pair(const PointSet4& A, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    CongruentPair out;
    out.A = A;
    out.R = random_rotation(rng);
    out.t = gaussian4(rng);
    std::vector<std::size_t> perm(A.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i : perm) {
        out.B.points.push_back(out.R * A.points[i] + out.t);
        if (A.labeled()) out.B.labels.push_back(A.labels[i]);
    }
    return out;
}

CongruentPair gen_congruent_pair(std::size_t n, std::uint64_t seed)
{
    if (n == 0) throw std::invalid_argument("gen_congruent_pair: n must be positive");
    std::mt19937_64 rng(seed);
    PointSet4 A;
    for (std::size_t i = 0; i < n; ++i) A.points.push_back(gaussian4(rng));
    return make_congruent_pair(A, rng());
}

PointSet4 gen_torus_grid(int p, int q, double r1)
{
    if (p < 3 || q < 3) throw std::invalid_argument("gen_torus_grid: p and q must be at least 3");
    if (!(r1 > 0.0 && r1 < 1.0)) throw std::invalid_argument("gen_torus_grid: r1 must lie in (0, 1)");
    const double r2 = std::sqrt(1.0 - r1 * r1);
    PointSet4 out;
    out.points.reserve(static_cast<std::size_t>(p) * static_cast<std::size_t>(q));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            double a = kTwoPi * i / p, b = kTwoPi * j / q;
            out.points.emplace_back(r1 * std::cos(a), r1 * std::sin(a), r2 * std::cos(b), r2 * std::sin(b));
        }
    return out;
}

PointSet4 gen_orbit_helix(int l, int k, double r1, std::uint64_t seed)
{
    if (l < 8) throw std::invalid_argument("gen_orbit_helix: l must be at least 8");
    if (k <= 0 || k >= l) throw std::invalid_argument("gen_orbit_helix: k must lie in [1, l)");
    if (!(r1 > 0.0 && r1 < 1.0)) throw std::invalid_argument("gen_orbit_helix: r1 must lie in (0, 1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, kTwoPi);
    const double a0 = U(rng), b0 = U(rng);
    const double r2 = std::sqrt(1.0 - r1 * r1);
    PointSet4 out;
    out.points.reserve(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        double a = a0 + kTwoPi * i / l, b = b0 + kTwoPi * static_cast<double>((static_cast<long>(k) * i) % l) / l;
        out.points.emplace_back(r1 * std::cos(a), r1 * std::sin(a), r2 * std::cos(b), r2 * std::sin(b));
    }
    return out;
}

HopfSample gen_hopf_circles(int m, int samples, std::uint64_t seed)
{
    if (m < 1 || samples < 3) throw std::invalid_argument("gen_hopf_circles: need m >= 1 and samples >= 3");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::uniform_real_distribution<double> U(0.0, kTwoPi);
    HopfFrame h(PlaneSpan{}, false);
    HopfSample out;
    for (int c = 0; c < m; ++c) {
        Vec3 s(N(rng), N(rng), N(rng));
        PlaneSpan C = h.fiber(s.normalized());
        out.circles.push_back(C);
        double ph = U(rng);
        for (int j = 0; j < samples; ++j) {
            double t = ph + kTwoPi * j / samples;
            out.points.points.push_back(C.u * std::cos(t) + C.v * std::sin(t));
        }
    }
    return out;
}

namespace {

std::vector<Vec4> signed_perms(const Vec4& base, bool even_only)
{
    std::vector<Vec4> out;
    std::array<int, 4> idx{0, 1, 2, 3};
    do {
        if (even_only) {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (idx[static_cast<std::size_t>(i)] > idx[static_cast<std::size_t>(j)]) ++inv;
            if (inv % 2) continue;
        }
        for (int s = 0; s < 16; ++s) {
            Vec4 v;
            for (int i = 0; i < 4; ++i) v[i] = base[idx[static_cast<std::size_t>(i)]] * ((s >> i) & 1 ? -1.0 : 1.0);
            out.push_back(v);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

std::vector<Vec4> unique_points(const std::vector<Vec4>& pts)
{
    std::vector<Vec4> out;
    for (const Vec4& p : pts) {
        bool dup = false;
        for (const Vec4& q : out)
            if ((p - q).norm() < 1e-9) dup = true;
        if (!dup) out.push_back(p);
    }
    return out;
}

std::vector<Vec4> six_hundred_cell()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec4> v = signed_perms(Vec4(1, 0, 0, 0), false);
    auto h = signed_perms(Vec4(0.5, 0.5, 0.5, 0.5), false);
    v.insert(v.end(), h.begin(), h.end());
    auto e = signed_perms(Vec4(phi / 2, 0.5, 1 / (2 * phi), 0), true);
    v.insert(v.end(), e.begin(), e.end());
    return unique_points(v);
}

}  // namespace

PointSet4 gen_regular_polytope(const std::string& name)
{
    PointSet4 out;
    if (name == "5-cell") {
        const double s = 1.0 / std::sqrt(5.0);
        std::vector<Vec4> v{{1, 1, 1, -s}, {1, -1, -1, -s}, {-1, 1, -1, -s}, {-1, -1, 1, -s}, {0, 0, 0, 4 * s}};
        for (Vec4& p : v) p.normalize();
        out.points = v;
    } else if (name == "4-cube" || name == "tesseract") {
        out.points = unique_points(signed_perms(Vec4(0.5, 0.5, 0.5, 0.5), false));
    } else if (name == "16-cell") {
        out.points = unique_points(signed_perms(Vec4(1, 0, 0, 0), false));
    } else if (name == "24-cell") {
        auto v = unique_points(signed_perms(Vec4(1, 0, 0, 0), false));
        auto h = unique_points(signed_perms(Vec4(0.5, 0.5, 0.5, 0.5), false));
        v.insert(v.end(), h.begin(), h.end());
        out.points = v;
    } else if (name == "600-cell") {
        out.points = six_hundred_cell();
    } else if (name == "120-cell") {
        // centres of the 600 tetrahedral cells of the 600-cell
        std::vector<Vec4> v = six_hundred_cell();
        const std::size_t n = v.size();
        double edge = 1e9;
        for (std::size_t i = 1; i < n; ++i) edge = std::min(edge, (v[0] - v[i]).norm());
        std::vector<std::vector<std::size_t>> nb(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::fabs((v[i] - v[j]).norm() - edge) < 1e-9) {
                    nb[i].push_back(j);
                    nb[j].push_back(i);
                }
        auto adj = [&](std::size_t x, std::size_t y) { return std::find(nb[x].begin(), nb[x].end(), y) != nb[x].end(); };
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b : nb[a]) {
                if (b <= a) continue;
                for (std::size_t c : nb[b]) {
                    if (c <= b || !adj(a, c)) continue;
                    for (std::size_t d : nb[c]) {
                        if (d <= c || !adj(a, d) || !adj(b, d)) continue;
                        out.points.push_back(((v[a] + v[b] + v[c] + v[d]) / 4.0).normalized());
                    }
                }
            }
    } else {
        throw std::invalid_argument("gen_regular_polytope: unknown polytope " + name);
    }
    return out;
}

PointSet4 gen_perturbed(const PointSet4& A, double magnitude, std::uint64_t seed)
{
    if (A.size() == 0) throw std::invalid_argument("gen_perturbed: empty input");
    std::mt19937_64 rng(seed);
    PointSet4 out = A;
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, A.size() - 1)(rng);
    int c = std::uniform_int_distribution<int>(0, 3)(rng);
    out.points[i][c] += (rng() & 1) ? magnitude : -magnitude;
    return out;
}

double map_error(const PointSet4& A, const PointSet4& B, const Mat4& R, const Vec4& t)
{
    const double h = 1e-4;
    SpatialHash<4> hash(h);
    for (std::size_t j = 0; j < B.size(); ++j) hash.insert(B.points[j], static_cast<int>(j));
    double worst = 0.0;
    for (const Vec4& a : A.points) {
        Vec4 x = R * a + t;
        double best = 1e300;
        hash.visit_near(x, [&](int j) { best = std::min(best, (B.points[static_cast<std::size_t>(j)] - x).norm()); });
        if (best > h)
            for (const Vec4& b : B.points) best = std::min(best, (b - x).norm());
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace hcong
