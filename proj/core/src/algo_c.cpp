#include "hypercongruence/algo_c.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/geometry.hpp"
#include "hypercongruence/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAxial = 1e-6;

std::uint64_t pack(int u, int v) { return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v); }

double vertex_angle(const Vec4& apex, const Vec4& a, const Vec4& b)
{
    Vec4 x = (a - apex).normalized();
    Vec4 y = (b - apex).normalized();
    return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
}

std::string counts(std::size_t n, std::size_t m) { return " |A|=" + std::to_string(n) + " |D|=" + std::to_string(m); }

std::vector<std::pair<int, int>> both_directions(const ClosestPairGraph& g)
{
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(2 * g.edges.size());
    for (auto [a, b] : g.edges) {
        arcs.emplace_back(a, b);
        arcs.emplace_back(b, a);
    }
    return arcs;
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx)
{
    std::vector<T> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v[i]);
    return out;
}

struct PSFigure {
    std::vector<double> angles;
    std::vector<Label> labels;  // {0} predecessor, {1} successor
    std::vector<int> arc_of;    // pred: tail arc, succ: successor arc
};

}  // namespace

ArcGraph::ArcGraph(std::size_t n, std::vector<std::pair<int, int>> arcs) : arcs_(std::move(arcs)), out_(n), in_(n)
{
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
    index_.reserve(arcs_.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        auto [u, v] = arcs_[i];
        out_[static_cast<std::size_t>(u)].push_back(static_cast<int>(i));
        in_[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
        index_.emplace(pack(u, v), static_cast<int>(i));
    }
}

int ArcGraph::find(int u, int v) const
{
    auto it = index_.find(pack(u, v));
    return it == index_.end() ? -1 : it->second;
}

ArcGraph ArcGraph::subset(const std::vector<std::size_t>& keep) const { return ArcGraph(vertices(), pick(arcs_, keep)); }

ArcFrame::ArcFrame(const Vec4& u, const Vec4& v)
{
    basis = complete_basis({u + v, v - u});
    mid = 0.5 * (u + v);
    scale = (v - u).norm();
}

Vec4 ArcFrame::coords(const Vec4& x) const { return basis.transpose() * (x - mid) / scale; }

double ArcFrame::w_angle(const Vec4& x) const
{
    return wrap_angle(std::atan2(basis.col(3).dot(x), basis.col(2).dot(x)));
}

Key vertex_figure_code(int v, const std::vector<Vec4>& pts, const ArcGraph& g, double delta, double eps)
{
    std::vector<std::pair<int, double>> nb;  // neighbor, tag
    for (int a : g.out(v)) nb.emplace_back(g.arc(a).second, 1.0);
    for (int a : g.in(v)) {
        int t = g.arc(a).first;
        auto it = std::find_if(nb.begin(), nb.end(), [&](auto& p) { return p.first == t; });
        if (it != nb.end())
            it->second = 2.0;
        else
            nb.emplace_back(t, -1.0);
    }
    const Vec4& p = pts[static_cast<std::size_t>(v)];
    const std::size_t deg = nb.size();
    if (deg == 0) return {0.0};
    if (deg == 1) return {1.0, nb[0].second};
    if (deg == 2) {
        double ta = std::min(nb[0].second, nb[1].second), tb = std::max(nb[0].second, nb[1].second);
        return {2.0, vertex_angle(p, pts[static_cast<std::size_t>(nb[0].first)], pts[static_cast<std::size_t>(nb[1].first)]), ta, tb};
    }

    double best_angle = 10.0;
    std::vector<std::vector<double>> ang(deg, std::vector<double>(deg, 0.0));
    for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = i + 1; j < deg; ++j) {
            ang[i][j] = ang[j][i] =
                vertex_angle(p, pts[static_cast<std::size_t>(nb[i].first)], pts[static_cast<std::size_t>(nb[j].first)]);
            best_angle = std::min(best_angle, ang[i][j]);
        }

    Key best;
    for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = 0; j < deg; ++j) {
            if (i == j || ang[i][j] > best_angle + eps) continue;
            Mat4 f = complete_basis({Vec4(-p), Vec4(pts[static_cast<std::size_t>(nb[i].first)] - p),
                                     Vec4(pts[static_cast<std::size_t>(nb[j].first)] - p)});
            std::vector<Key> rows;
            for (auto& [x, tag] : nb) {
                Vec4 c = f.transpose() * (pts[static_cast<std::size_t>(x)] - p) / delta;
                rows.push_back({c[0], c[1], c[2], c[3], tag});
            }
            Key code{static_cast<double>(deg)};
            for (auto k : order_by_keys(rows, eps)) code.insert(code.end(), rows[k].begin(), rows[k].end());
            if (best.empty() || compare_keys(code, best, eps) < 0) best = std::move(code);
        }
    return best;
}

Key edge_figure_code(int arc, const std::vector<Vec4>& pts, const ArcGraph& g, double eps)
{
    auto [u, v] = g.arc(arc);
    ArcFrame fr(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
    std::vector<double> angles;
    std::vector<Label> labels;
    std::vector<Key> axial;
    auto add = [&](int x, double group) {
        Vec4 c = fr.coords(pts[static_cast<std::size_t>(x)]);
        double r = std::hypot(c[2], c[3]);
        if (r <= kAxial) {
            axial.push_back({group, c[0], c[1]});
        } else {
            angles.push_back(wrap_angle(std::atan2(c[3], c[2])));
            labels.push_back({group, c[0], c[1], r});
        }
    };
    for (int a : g.out(v)) add(g.arc(a).second, 1.0);
    for (int a : g.in(u)) add(g.arc(a).first, 0.0);

    Key code{static_cast<double>(g.out(v).size()), static_cast<double>(g.in(u).size()), static_cast<double>(axial.size())};
    for (auto k : order_by_keys(axial, eps)) code.insert(code.end(), axial[k].begin(), axial[k].end());
    Key cyc = cyclic_code(angles, labels, eps);
    code.insert(code.end(), cyc.begin(), cyc.end());
    return code;
}

bool edge_figure_mirror_symmetric(int arc, const std::vector<Vec4>& pts, const ArcGraph& g, double eps)
{
    auto [u, v] = g.arc(arc);
    if (g.out(v).size() != g.in(u).size()) return false;
    ArcFrame fr(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
    std::vector<Vec4> succ, pred;
    for (int a : g.out(v)) succ.push_back(fr.coords(pts[static_cast<std::size_t>(g.arc(a).second)]));
    for (int a : g.in(u)) {
        Vec4 c = fr.coords(pts[static_cast<std::size_t>(g.arc(a).first)]);
        c[1] = -c[1];
        pred.push_back(c);
    }
    return match_multisets<4>(pred, {}, succ, {}, eps);
}

const char* exit_name(CExit::Kind k)
{
    switch (k) {
    case CExit::Kind::WellSeparated: return "well-separated";
    case CExit::Kind::Mirror: return "mirror";
    case CExit::Kind::EdgeTransitive: return "edge-transitive";
    }
    return "?";
}

namespace {

// Angles at which predecessors and successors of the arc meet it, together
// with the W-positions of both sides.
struct AngleSide {
    std::vector<double> pred_pos, succ_pos;
};

double choose_alpha(int arc, const std::vector<Vec4>& pts, const ArcGraph& g, double eps)
{
    auto [u, v] = g.arc(arc);
    const Vec4& pu = pts[static_cast<std::size_t>(u)];
    const Vec4& pv = pts[static_cast<std::size_t>(v)];
    ArcFrame fr(pu, pv);
    std::vector<double> angle;
    std::vector<int> side;
    std::vector<double> pos;
    for (int a : g.out(v)) {
        int w = g.arc(a).second;
        if (w == u) continue;
        angle.push_back(vertex_angle(pv, pu, pts[static_cast<std::size_t>(w)]));
        side.push_back(1);
        pos.push_back(fr.w_angle(pts[static_cast<std::size_t>(w)]));
    }
    for (int a : g.in(u)) {
        int t = g.arc(a).first;
        if (t == v) continue;
        angle.push_back(vertex_angle(pu, pv, pts[static_cast<std::size_t>(t)]));
        side.push_back(0);
        pos.push_back(fr.w_angle(pts[static_cast<std::size_t>(t)]));
    }
    std::vector<int> cls = tolerance_cluster(angle, eps);
    const int nc = count_classes(cls);
    for (int c = 0; c < nc; ++c) {
        std::vector<double> pa, sa;
        std::vector<Label> pl, sl;
        double alpha = 0.0;
        for (std::size_t i = 0; i < angle.size(); ++i) {
            if (cls[i] != c) continue;
            alpha = angle[i];
            (side[i] ? sa : pa).push_back(pos[i]);
        }
        std::vector<Vec2> pp, sp;
        for (double t : pa) pp.emplace_back(std::cos(t), std::sin(t));
        for (double t : sa) sp.emplace_back(std::cos(t), std::sin(t));
        if (!match_multisets<2>(pp, {}, sp, {}, eps)) return alpha;
    }
    throw StallError("algorithm C: no asymmetric angle");
}

PSFigure ps_figure(int e, const std::vector<Vec4>& pts, const ArcGraph& g, const std::vector<std::vector<int>>& succ,
                   const std::vector<std::vector<int>>& pred)
{
    auto [u, v] = g.arc(e);
    ArcFrame fr(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]);
    PSFigure f;
    for (int a : pred[static_cast<std::size_t>(e)]) {
        f.angles.push_back(fr.w_angle(pts[static_cast<std::size_t>(g.arc(a).first)]));
        f.labels.push_back({0.0});
        f.arc_of.push_back(a);
    }
    for (int a : succ[static_cast<std::size_t>(e)]) {
        f.angles.push_back(fr.w_angle(pts[static_cast<std::size_t>(g.arc(a).second)]));
        f.labels.push_back({1.0});
        f.arc_of.push_back(a);
    }
    return f;
}

bool regular_polygon(std::vector<double> angles, double eps)
{
    const std::size_t k = angles.size();
    if (k <= 1) return true;
    std::sort(angles.begin(), angles.end());
    const double step = kTwoPi / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i)
        if (std::abs(angle_gap(angles[i], angles[(i + 1) % k]) - step) > eps) return false;
    return true;
}

}  // namespace

CExit algorithm_c(const std::vector<Vec4>& points, LockstepRun& run, const Constants& k)
{
    const double eps = k.eps_key;
    std::vector<Vec4> A = points;
    for (;;) {
        // C1
        if (A.size() < 2) {
            run.emit("C1", {static_cast<double>(A.size()), 0.0}, "C1: well-separated" + counts(A.size(), 0));
            CExit x;
            x.points = A;
            return x;
        }
        ClosestPairGraph G = closest_pair_graph(A, k.eps_eq);
        const double delta = G.delta;
        if (delta > k.delta0) {
            run.emit("C1", {static_cast<double>(A.size()), delta}, "C1: well-separated" + counts(A.size(), 0));
            CExit x;
            x.points = A;
            x.delta = delta;
            return x;
        }
        run.emit("C1", {static_cast<double>(A.size()), delta}, "C1: delta below threshold" + counts(A.size(), 0));

        // C2
        ArcGraph D(A.size(), both_directions(G));
        run.emit("C2", {static_cast<double>(D.size())}, "C2: closest-pair graph" + counts(A.size(), D.size()));

        bool restart = false;
        int c3_visits = 0;
        while (!restart) {
            // C3
            ++c3_visits;
            std::vector<Key> deg(A.size());
            for (std::size_t v = 0; v < A.size(); ++v)
                deg[v] = {static_cast<double>(D.in(static_cast<int>(v)).size()),
                          static_cast<double>(D.out(static_cast<int>(v)).size())};
            PruneResult pv = prune_by_key(deg, eps);
            if (pv.progress) {
                run.emit("C3", pv.summary, "C3: prune vertices by degree" + counts(pv.members.size(), D.size()));
                A = pick(A, pv.members);
                restart = true;
                break;
            }
            run.emit("C3", pv.summary,
                     "C3: degrees uniform (pass " + std::to_string(c3_visits) + ")" + counts(A.size(), D.size()));

            // C4
            std::vector<Key> ef(D.size());
            for (std::size_t a = 0; a < D.size(); ++a) ef[a] = edge_figure_code(static_cast<int>(a), A, D, eps);
            PruneResult pa = prune_by_key(ef, eps);
            run.emit("C4", pa.summary,
                     std::string("C4: ") + (pa.progress ? "prune arcs by edge figure" : "edge figures congruent") +
                         counts(A.size(), pa.members.size()));
            if (pa.progress) {
                D = D.subset(pa.members);
                continue;
            }

            // C5
            const bool mirror = edge_figure_mirror_symmetric(0, A, D, k.eps_eq);
            run.emit("C5", {mirror ? 1.0 : 0.0},
                     std::string("C5: ") + (mirror ? "mirror symmetric" : "no mirror symmetry") + counts(A.size(), D.size()));
            if (mirror) {
                CExit x;
                x.kind = CExit::Kind::Mirror;
                x.points = A;
                x.delta = delta;
                x.graph = D;
                return x;
            }

            // C6
            const double alpha = choose_alpha(0, A, D, eps);
            run.emit("C6", {alpha}, "C6: alpha=" + std::to_string(alpha) + counts(A.size(), D.size()));

            // C7
            std::vector<std::vector<int>> succ(D.size());
            for (std::size_t a = 0; a < D.size(); ++a) {
                auto [u, v] = D.arc(static_cast<int>(a));
                for (int b : D.out(v)) {
                    int w = D.arc(b).second;
                    if (w == u) continue;
                    double ang = vertex_angle(A[static_cast<std::size_t>(v)], A[static_cast<std::size_t>(u)],
                                              A[static_cast<std::size_t>(w)]);
                    if (std::abs(ang - alpha) <= eps) succ[a].push_back(b);
                }
            }
            run.emit("C7", {static_cast<double>(succ[0].size())}, "C7: successors" + counts(A.size(), D.size()));

            int c11_visits = 0;
            for (;;) {
                // C8
                std::vector<std::vector<int>> pred(D.size());
                for (std::size_t a = 0; a < D.size(); ++a)
                    for (int b : succ[a]) pred[static_cast<std::size_t>(b)].push_back(static_cast<int>(a));

                // C9
                std::vector<Key> psk(D.size());
                for (std::size_t a = 0; a < D.size(); ++a) {
                    PSFigure f = ps_figure(static_cast<int>(a), A, D, succ, pred);
                    psk[a] = {static_cast<double>(pred[a].size()), static_cast<double>(succ[a].size())};
                    Key cyc = cyclic_code(f.angles, f.labels, eps);
                    psk[a].insert(psk[a].end(), cyc.begin(), cyc.end());
                }
                PruneResult pp = prune_by_key(psk, eps);
                run.emit("C9", pp.summary,
                         std::string("C9: ") + (pp.progress ? "prune arcs by predecessor-successor figure" : "figures congruent") +
                             counts(A.size(), pp.members.size()));
                if (pp.progress) {
                    D = D.subset(pp.members);
                    break;
                }

                // C10
                PSFigure f0 = ps_figure(0, A, D, succ, pred);
                std::vector<double> pa_ang, sa_ang;
                for (std::size_t i = 0; i < f0.angles.size(); ++i) (f0.labels[i][0] == 0.0 ? pa_ang : sa_ang).push_back(f0.angles[i]);
                if (pa_ang.size() != sa_ang.size() || sa_ang.empty())
                    throw StallError("algorithm C: unbalanced predecessor-successor figure");
                const double tol = eps;
                if (regular_polygon(pa_ang, tol) && regular_polygon(sa_ang, tol)) {
                    double tau0 = kTwoPi;
                    for (double t : pa_ang)
                        for (double w : sa_ang) {
                            double g = angle_gap(t, w);
                            if (g > tol && g < kTwoPi - tol) tau0 = std::min(tau0, g);
                        }
                    run.emit("C10", {static_cast<double>(sa_ang.size()), tau0},
                             "C10: edge-transitive k=" + std::to_string(sa_ang.size()) + counts(A.size(), D.size()));
                    CExit x;
                    x.kind = CExit::Kind::EdgeTransitive;
                    x.points = A;
                    x.delta = delta;
                    x.graph = D;
                    x.alpha = alpha;
                    x.tau0 = tau0;
                    x.succ = std::move(succ);
                    return x;
                }
                run.emit("C10", {0.0}, "C10: not regular" + counts(A.size(), D.size()));

                // C11
                ++c11_visits;
                std::size_t kept = 0;
                int axes_count = 0;
                for (std::size_t a = 0; a < D.size(); ++a) {
                    PSFigure f = ps_figure(static_cast<int>(a), A, D, succ, pred);
                    AxesSet ax = canonical_axes(f.angles, f.labels, eps);
                    CircleWord w = circle_word(f.angles, f.labels, eps);
                    const double step = kTwoPi / ax.count;
                    double shift = kTwoPi;
                    for (std::size_t q = 0; q < w.angles.size(); ++q) {
                        bool succ_only = true;
                        for (int m : w.members[q])
                            if (f.labels[static_cast<std::size_t>(m)][0] == 0.0) succ_only = false;
                        if (!succ_only) continue;
                        double d = std::fmod(angle_gap(ax.base_angle, w.angles[q]), step);
                        if (d > step - tol) d = 0.0;
                        shift = std::min(shift, d);
                    }
                    if (shift >= kTwoPi) throw StallError("algorithm C: invariant violated (no successor-only position)");
                    std::vector<int> keep;
                    for (std::size_t i = 0; i < f.angles.size(); ++i) {
                        if (f.labels[i][0] != 1.0) continue;
                        double d = std::fmod(angle_gap(ax.base_angle + shift, f.angles[i]), step);
                        if (d <= tol || d >= step - tol) keep.push_back(f.arc_of[i]);
                    }
                    if (keep.empty() || keep.size() >= succ[a].size())
                        throw StallError("algorithm C: canonical axes did not reduce successors");
                    succ[a] = std::move(keep);
                    if (a == 0) {
                        kept = succ[a].size();
                        axes_count = ax.count;
                    }
                }
                run.emit("C11", {static_cast<double>(axes_count), static_cast<double>(kept)},
                         "C11: prune successors by canonical axes (pass " + std::to_string(c11_visits) + ")" +
                             counts(A.size(), D.size()));
            }
        }
    }
}

std::vector<Vec4> refine_well_separated(const std::vector<Vec4>& points, LockstepRun& run, const Constants& k)
{
    const double eps = k.eps_key;
    std::vector<Vec4> A = points;
    while (A.size() >= 3) {
        ClosestPairGraph G = closest_pair_graph(A, k.eps_eq);
        ArcGraph D(A.size(), both_directions(G));
        std::vector<Key> keys(A.size());
        for (std::size_t v = 0; v < A.size(); ++v) keys[v] = vertex_figure_code(static_cast<int>(v), A, D, G.delta, eps);
        PruneResult pr = prune_by_key(keys, eps);
        Key key{G.delta};
        key.insert(key.end(), pr.summary.begin(), pr.summary.end());
        run.emit("W", key, "W: prune by vertex figure" + counts(pr.members.size(), D.size()));
        if (!pr.progress) break;
        A = pick(A, pr.members);
    }
    return A;
}

}  // namespace hcong
