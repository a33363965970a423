#include "hypercongruence/circle_extract.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/tolerance.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace hcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<int> components(std::size_t n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (auto [a, b] : edges) {
        int ra = root(a), rb = root(b);
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
    std::vector<int> comp(n, -1);
    int next = 0;
    std::vector<int> id(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        int r = root(static_cast<int>(i));
        if (id[static_cast<std::size_t>(r)] < 0) id[static_cast<std::size_t>(r)] = next++;
        comp[i] = id[static_cast<std::size_t>(r)];
    }
    return comp;
}

// Orthonormal basis of the span of pts (rank decided at tol).
std::vector<Vec4> span_basis(const std::vector<Vec4>& pts, double tol)
{
    Eigen::MatrixXd m(4, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    std::vector<Vec4> out;
    const double top = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > tol * std::max(1.0, top)) out.push_back(svd.matrixU().col(i));
    return out;
}

Vec4 orthonormal_complement_vector(const std::vector<Vec4>& basis3)
{
    Vec4 n = cross4(basis3[0], basis3[1], basis3[2]);
    return n.normalized();
}

void dedupe_planes(std::vector<PlaneSpan>& planes, double eps)
{
    std::vector<PlaneSpan> out;
    std::vector<PlueckerVector> seen;
    for (const auto& p : planes) {
        PlueckerVector q = pluecker(p, eps);
        bool dup = false;
        for (const auto& s : seen)
            if (pluecker_distance(q, s) <= eps) dup = true;
        if (dup) continue;
        seen.push_back(q);
        out.push_back(p);
    }
    planes = std::move(out);
}

}  // namespace

const std::vector<CoxeterGroupSpec>& coxeter_table()
{
    static const std::vector<CoxeterGroupSpec> table = [] {
        const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
        const double a = std::sqrt(10.0 - 2.0 * s5), b = std::sqrt(6.0 - 2.0 * s5), c = std::sqrt(14.0 - 6.0 * s5);
        const Vec4 e1(1, 0, 0, 0);
        const Vec4 a2(-0.5, s3 / 2, 0, 0);
        const Vec4 a3(0, -1 / s3, s2 / s3, 0);
        const Vec4 c2(-1 / s2, 1 / s2, 0, 0);
        const Vec4 c3(0, -1 / s2, 1 / s2, 0);
        const Vec4 g2(-(1 + s5) / 4, a / 4, 0, 0);
        const Vec4 g3(0, -2 / a, b / a, 0);
        const Vec4 e4(0, 0, 0, 1);
        return std::vector<CoxeterGroupSpec>{
            {"A4", {e1, a2, a3, Vec4(0, 0, -s3 / (2 * s2), s5 / (2 * s2))}, 0.2236067977},
            {"C4", {e1, c2, c3, Vec4(0, 0, -1 / s2, 1 / s2)}, 0.1429000737},
            {"B4", {e1, a2, a3, Vec4(0, -1 / s3, -1 / std::sqrt(6.0), 1 / s2)}, 0.1889822365},
            {"F4", {e1, a2, Vec4(0, -s2 / s3, 1 / s3, 0), Vec4(0, 0, -s3 / 2, 0.5)}, 0.009671356812},
            {"G4", {e1, g2, g3, Vec4(0, 0, -a / (2 * b), c / (2 * b))}, 0.03910328003},
            {"A3xA1", {e1, a2, a3, e4}, 0.3015113445},
            {"C3xA1", {e1, c2, c3, e4}, 0.2108874992},
            {"G3xA1", {e1, g2, g3, e4}, 0.1303737577},
        };
    }();
    return table;
}

double coxeter_inradius(const CoxeterGroupSpec& spec)
{
    Mat4 n;
    for (int i = 0; i < 4; ++i) n.row(i) = spec.normals[static_cast<std::size_t>(i)].transpose();
    Eigen::FullPivLU<Mat4> lu(n);
    if (!lu.isInvertible()) throw DegenerateInputError("coxeter_inradius: singular normal system");
    Vec4 p = lu.solve(Vec4::Constant(-1.0));
    return 1.0 / p.norm();
}

Mat4 fit_rotation(const std::array<Vec4, 3>& from, const std::array<Vec4, 3>& to, double eps)
{
    Mat4 f = complete_basis({from[0], from[1], from[2]}, 1e-9);
    Mat4 t = complete_basis({to[0], to[1], to[2]}, 1e-9);
    Mat4 r = t * f.transpose();
    for (int i = 0; i < 3; ++i) {
        double tol = eps * std::max(1.0, to[static_cast<std::size_t>(i)].norm()) * 1e3;
        if ((r * from[static_cast<std::size_t>(i)] - to[static_cast<std::size_t>(i)]).norm() > tol)
            throw DegenerateInputError("fit_rotation: target not congruent to template");
    }
    return r;
}

Mat4 procrustes_rotation(const std::vector<Vec4>& from, const std::vector<Vec4>& to)
{
    Mat4 h = Mat4::Zero();
    for (std::size_t i = 0; i < from.size(); ++i) h += to[i] * from[i].transpose();
    Eigen::JacobiSVD<Mat4> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat4 d = Mat4::Identity();
    if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) d(3, 3) = -1.0;
    return svd.matrixU() * d * svd.matrixV().transpose();
}

RResult algorithm_r(const CExit& c, LockstepRun& run, const Constants& k)
{
    const double eps = k.eps_key;
    const auto& A = c.points;
    // R1
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : c.graph.arcs()) edges.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<int> comp = components(A.size(), edges);
    std::vector<int> incident(A.size(), 0);
    for (auto [u, v] : edges) incident[static_cast<std::size_t>(u)] = incident[static_cast<std::size_t>(v)] = 1;

    std::map<int, std::vector<int>> members;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (incident[i]) members[comp[i]].push_back(static_cast<int>(i));

    RResult r;
    // R2
    std::vector<Vec4> centers;
    double max_center = 0.0;
    for (auto& [id, mem] : members) {
        std::vector<Vec4> comp_pts;
        for (int i : mem) comp_pts.push_back(A[static_cast<std::size_t>(i)]);
        const Vec4 s = mean_of<4>(comp_pts);
        centers.push_back(s);
        max_center = std::max(max_center, s.norm());
    }
    const double center_tol = 1e-7;
    if (max_center > center_tol) {
        r.step = "R2";
        r.points = centers;
        run.emit("R2", {static_cast<double>(members.size()), max_center},
                 "R2: eccentric component centers, " + std::to_string(members.size()) + " points");
        return r;
    }

    std::vector<std::vector<Vec4>> bases;
    int rank = -1;
    for (auto& [id, mem] : members) {
        std::vector<Vec4> pts;
        for (int i : mem) pts.push_back(A[static_cast<std::size_t>(i)]);
        bases.push_back(span_basis(pts, 1e-7));
        int rk = static_cast<int>(bases.back().size());
        if (rank >= 0 && rk != rank) throw StallError("algorithm R: components of different rank");
        rank = rk;
    }
    if (rank == 2) {
        r.kind = RResult::Kind::Circles;
        r.step = "R3";
        for (auto& b : bases) r.circles.push_back(PlaneSpan::from(b[0], b[1]));
        run.emit("R3", {static_cast<double>(r.circles.size()), static_cast<double>(members.begin()->second.size())},
                 "R3: " + std::to_string(r.circles.size()) + " polygon circumcircles");
        return r;
    }
    if (rank == 3) {
        r.step = "R4";
        for (auto& b : bases) {
            Vec4 n = orthonormal_complement_vector(b);
            r.points.push_back(n);
            r.points.push_back(-n);
        }
        r.points = dedupe_points<4>(r.points, eps);
        run.emit("R4", {static_cast<double>(members.size()), static_cast<double>(r.points.size())},
                 "R4: hyperplane normals, " + std::to_string(r.points.size()) + " points");
        return r;
    }
    if (rank != 4) throw StallError("algorithm R: degenerate component");

    // R5: toroidal grids. Every pairing of the four edge directions into two
    // mutually orthogonal planes contributes its two planes.
    r.kind = RResult::Kind::Circles;
    r.step = "R5";
    std::vector<std::vector<int>> adj(A.size());
    for (auto [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    int pairings_seen = -1;
    for (auto& [id, mem] : members) {
        int u = mem.front();
        const auto& nb = adj[static_cast<std::size_t>(u)];
        if (nb.size() != 4)
            throw std::logic_error("algorithm R: full-dimensional mirror component that is not a toroidal grid");
        std::array<Vec4, 4> d;
        for (int i = 0; i < 4; ++i) d[static_cast<std::size_t>(i)] = (A[static_cast<std::size_t>(nb[static_cast<std::size_t>(i)])] - A[static_cast<std::size_t>(u)]).normalized();
        const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        int found = 0;
        for (auto& p : pairs) {
            bool ortho = true;
            for (int i : {p[0], p[1]})
                for (int j : {p[2], p[3]})
                    if (std::abs(d[static_cast<std::size_t>(i)].dot(d[static_cast<std::size_t>(j)])) > 1e-6) ortho = false;
            if (!ortho) continue;
            ++found;
            r.circles.push_back(PlaneSpan::from(d[static_cast<std::size_t>(p[0])], d[static_cast<std::size_t>(p[1])]));
            r.circles.push_back(PlaneSpan::from(d[static_cast<std::size_t>(p[2])], d[static_cast<std::size_t>(p[3])]));
        }
        if (found == 0)
            throw std::logic_error("algorithm R: full-dimensional mirror component that is not a toroidal grid");
        if (pairings_seen >= 0 && pairings_seen != found) throw StallError("algorithm R: inconsistent grid components");
        pairings_seen = found;
    }
    dedupe_planes(r.circles, eps);
    run.emit("R5", {static_cast<double>(members.size()), static_cast<double>(pairings_seen), static_cast<double>(r.circles.size())},
             "R5: toroidal grids, " + std::to_string(r.circles.size()) + " circles");
    return r;
}

std::vector<OrbitCycle> orbit_cycles(const CExit& c, const Constants& k)
{
    const double eps = k.eps_key;
    const double tol = eps;
    const auto& A = c.points;
    const auto& D = c.graph;
    const auto& succ = c.succ;
    auto P = [&](int v) -> const Vec4& { return A[static_cast<std::size_t>(v)]; };

    auto next_arc = [&](int prev, int cur) {
        auto [u, v] = D.arc(cur);
        ArcFrame fr(P(u), P(v));
        const double t = fr.w_angle(P(D.arc(prev).first));
        int found = -1;
        for (int b : succ[static_cast<std::size_t>(cur)]) {
            double g = angle_gap(t, fr.w_angle(P(D.arc(b).second)));
            if (std::abs(g - c.tau0) <= tol || std::abs(g - c.tau0 - kTwoPi) <= tol) {
                if (found >= 0) throw StallError("algorithm O: ambiguous continuation");
                found = b;
            }
        }
        if (found < 0) throw StallError("algorithm O: orbit cycle does not continue");
        return found;
    };

    std::set<std::pair<int, int>> visited;
    std::set<std::vector<int>> seen_sets;
    std::vector<OrbitCycle> out;
    for (std::size_t e = 0; e < D.size(); ++e) {
        for (int f : succ[e]) {
            std::pair<int, int> start(static_cast<int>(e), f);
            if (visited.count(start)) continue;
            std::vector<int> verts{D.arc(static_cast<int>(e)).first};
            std::pair<int, int> cur = start;
            std::size_t steps = 0;
            do {
                visited.insert(cur);
                verts.push_back(D.arc(cur.first).second);
                int nxt = next_arc(cur.first, cur.second);
                cur = {cur.second, nxt};
                if (++steps > D.size() + 1) throw StallError("algorithm O: orbit cycle does not close");
            } while (cur != start);
            verts.pop_back();
            // verts holds a1 .. a_l with the cycle closing back to a1
            std::vector<int> key(verts);
            std::sort(key.begin(), key.end());
            if (!seen_sets.insert(key).second) continue;

            OrbitCycle oc;
            oc.vertices = verts;
            const std::size_t l = verts.size();
            if (l < 3) throw StallError("algorithm O: degenerate orbit cycle");
            std::vector<Vec4> from, to;
            for (std::size_t i = 0; i < l; ++i) {
                from.push_back(P(verts[i]));
                to.push_back(P(verts[(i + 1) % l]));
            }
            Mat4 r0 = fit_rotation({from[0], from[1], from[2]}, {to[0], to[1], to[2]}, eps);
            Mat4 r = procrustes_rotation(from, to);
            if ((r - r0).cwiseAbs().maxCoeff() > 1e-6) throw StallError("algorithm O: cycle is not an orbit");
            oc.rotation = r;
            RotationDecomposition d = decompose_rotation(r, eps);
            if (std::abs(d.phi) <= tol || std::abs(d.psi) <= tol || d.isoclinic ||
                std::abs(std::abs(d.phi) - std::abs(d.psi)) <= tol)
                throw StallError("algorithm O: orbit lies on a circle");
            oc.circle = d.P;
            out.push_back(std::move(oc));
        }
    }
    return out;
}

std::vector<PlaneSpan> algorithm_o(const CExit& c, LockstepRun& run, const Constants& k)
{
    std::vector<OrbitCycle> cycles = orbit_cycles(c, k);
    std::vector<PlaneSpan> circles;
    std::vector<double> lengths;
    for (const auto& oc : cycles) {
        circles.push_back(oc.circle);
        lengths.push_back(static_cast<double>(oc.vertices.size()));
    }
    dedupe_planes(circles, k.eps_key);
    std::sort(lengths.begin(), lengths.end());
    Key key{static_cast<double>(cycles.size()), static_cast<double>(circles.size())};
    if (!lengths.empty()) {
        key.push_back(lengths.front());
        key.push_back(lengths.back());
    }
    run.emit("O", key, "O: " + std::to_string(cycles.size()) + " orbit cycles, " + std::to_string(circles.size()) + " circles");
    return circles;
}

}  // namespace hcong
