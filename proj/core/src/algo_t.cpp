#include "hypercongruence/algo_t.hpp"

#include "hypercongruence/condense.hpp"
#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Static 2D kd-tree for nearest and fixed-radius queries.
class KdTree2 {
public:
    explicit KdTree2(std::vector<Vec2> pts) : pts_(std::move(pts)), idx_(pts_.size())
    {
        std::iota(idx_.begin(), idx_.end(), 0);
        build(0, idx_.size(), 0);
    }

    double nearest(const Vec2& q) const
    {
        double best = 1e300;
        nearest(q, 0, idx_.size(), 0, best);
        return std::sqrt(best);
    }

    void within(const Vec2& q, double r, std::vector<int>& out) const { within(q, 0, idx_.size(), 0, r * r, out); }

    const Vec2& point(int i) const { return pts_[static_cast<std::size_t>(i)]; }

private:
    void build(std::size_t lo, std::size_t hi, int axis)
    {
        if (hi - lo <= 1) return;
        std::size_t mid = (lo + hi) / 2;
        std::nth_element(idx_.begin() + static_cast<std::ptrdiff_t>(lo), idx_.begin() + static_cast<std::ptrdiff_t>(mid),
                         idx_.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](int a, int b) { return pts_[static_cast<std::size_t>(a)][axis] < pts_[static_cast<std::size_t>(b)][axis]; });
        build(lo, mid, 1 - axis);
        build(mid + 1, hi, 1 - axis);
    }

    void nearest(const Vec2& q, std::size_t lo, std::size_t hi, int axis, double& best) const
    {
        if (lo >= hi) return;
        std::size_t mid = (lo + hi) / 2;
        const Vec2& p = pts_[static_cast<std::size_t>(idx_[mid])];
        best = std::min(best, (p - q).squaredNorm());
        double d = q[axis] - p[axis];
        if (d < 0) {
            nearest(q, lo, mid, 1 - axis, best);
            if (d * d < best) nearest(q, mid + 1, hi, 1 - axis, best);
        } else {
            nearest(q, mid + 1, hi, 1 - axis, best);
            if (d * d < best) nearest(q, lo, mid, 1 - axis, best);
        }
    }

    void within(const Vec2& q, std::size_t lo, std::size_t hi, int axis, double r2, std::vector<int>& out) const
    {
        if (lo >= hi) return;
        std::size_t mid = (lo + hi) / 2;
        const Vec2& p = pts_[static_cast<std::size_t>(idx_[mid])];
        if ((p - q).squaredNorm() <= r2) out.push_back(idx_[mid]);
        double d = q[axis] - p[axis];
        if (d <= 0 || d * d <= r2) within(q, lo, mid, 1 - axis, r2, out);
        if (d >= 0 || d * d <= r2) within(q, mid + 1, hi, 1 - axis, r2, out);
    }

    std::vector<Vec2> pts_;
    std::vector<int> idx_;
};

Vec2 wrap2(const Vec2& p) { return {wrap_angle(p.x()), wrap_angle(p.y())}; }

const std::array<Vec2, 9>& replica_offsets()
{
    static const std::array<Vec2, 9> off = [] {
        std::array<Vec2, 9> o;
        o[0] = Vec2::Zero();
        int k = 1;
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                if (dx != 0 || dy != 0) o[static_cast<std::size_t>(k++)] = Vec2(dx * kTwoPi, dy * kTwoPi);
        return o;
    }();
    return off;
}

std::vector<Vec2> dedupe_torus(const std::vector<Vec2>& pts, double tol)
{
    std::vector<Vec2> out;
    std::vector<Vec4> emb;
    SpatialHash<4> hash(2.0 * tol);
    for (const Vec2& p : pts) {
        Vec4 e(std::cos(p.x()), std::sin(p.x()), std::cos(p.y()), std::sin(p.y()));
        bool dup = false;
        hash.visit_within(e, tol, [&](int j) {
            if (!dup && (emb[static_cast<std::size_t>(j)] - e).cwiseAbs().maxCoeff() <= tol) dup = true;
        });
        if (dup) continue;
        hash.insert(e, static_cast<int>(emb.size()));
        emb.push_back(e);
        out.push_back(wrap2(p));
    }
    return out;
}

Key shape_key(const std::vector<Vec2>& cell, double tol)
{
    const std::size_t m = cell.size();
    std::size_t start = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (compare_keys({cell[i].x(), cell[i].y()}, {cell[start].x(), cell[start].y()}, tol) < 0) start = i;
    Key k{static_cast<double>(m)};
    for (std::size_t j = 0; j < m; ++j) {
        const Vec2& v = cell[(start + j) % m];
        k.push_back(v.x());
        k.push_back(v.y());
    }
    return k;
}

Vec4 torus_embed(const Vec2& a) { return {std::cos(a.x()), std::sin(a.x()), std::cos(a.y()), std::sin(a.y())}; }

}  // namespace

TorusVoronoi torus_voronoi(const std::vector<Vec2>& sites, double tol)
{
    if (sites.empty()) throw std::invalid_argument("torus_voronoi: no sites");
    const std::size_t m = sites.size();
    std::vector<Vec2> rep;
    rep.reserve(9 * m);
    for (const Vec2& o : replica_offsets())
        for (const Vec2& s : sites) rep.push_back(wrap2(s) + o);
    detail::Delaunay dt(rep);

    TorusVoronoi vor;
    vor.sites.reserve(m);
    vor.cells.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 s = rep[i];
        vor.sites.push_back(s);
        std::vector<Vec2> cell;
        for (const auto& t : dt.star(static_cast<int>(i))) {
            Vec2 a = rep[static_cast<std::size_t>(t[1])] - s, b = rep[static_cast<std::size_t>(t[2])] - s;
            double d = 2.0 * (a.x() * b.y() - a.y() * b.x());
            Vec2 c((b.y() * a.squaredNorm() - a.y() * b.squaredNorm()) / d,
                   (a.x() * b.squaredNorm() - b.x() * a.squaredNorm()) / d);
            if (cell.empty() || (c - cell.back()).cwiseAbs().maxCoeff() > tol) cell.push_back(c);
        }
        while (cell.size() > 1 && (cell.front() - cell.back()).cwiseAbs().maxCoeff() <= tol) cell.pop_back();
        vor.cells[i] = std::move(cell);
    }
    return vor;
}

std::vector<Vec2> canonical_set_torus(const std::vector<TorusPoint>& input, double tol)
{
    if (input.empty()) throw std::invalid_argument("canonical_set_torus: empty input");
    std::vector<Vec2> pos;
    std::vector<Label> lab;
    for (const auto& p : input) {
        pos.push_back(wrap2(p.angles));
        lab.push_back(p.label);
    }

    for (;;) {
        // T1
        PruneResult pr = prune_by_key(lab, tol);
        std::vector<Vec2> sites;
        for (std::size_t i : pr.members) sites.push_back(pos[i]);
        sites = dedupe_torus(sites, tol);

        // T2, T3
        while (sites.size() > 1) {
            TorusVoronoi vor = torus_voronoi(sites, tol);
            std::vector<Key> shapes;
            for (const auto& c : vor.cells) shapes.push_back(shape_key(c, tol));
            PruneResult sp = prune_by_key(shapes, tol);
            if (!sp.progress) break;
            std::vector<Vec2> next;
            for (std::size_t i : sp.members) next.push_back(sites[i]);
            sites = std::move(next);
        }

        // T4: cell contents, boundary points go to every incident cell
        const std::size_t m = sites.size();
        std::vector<Vec2> rep;
        rep.reserve(9 * m);
        for (const Vec2& o : replica_offsets())
            for (const Vec2& s : sites) rep.push_back(s + o);
        KdTree2 tree(rep);
        std::vector<std::vector<Key>> items(m);
        std::vector<int> hits;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            double d = tree.nearest(pos[i]);
            hits.clear();
            tree.within(pos[i], d + tol, hits);
            for (int h : hits) {
                Vec2 rel = pos[i] - tree.point(h);
                Key t{rel.x(), rel.y()};
                t.insert(t.end(), lab[i].begin(), lab[i].end());
                items[static_cast<std::size_t>(h) % m].push_back(std::move(t));
            }
        }
        std::vector<Key> content(m);
        for (std::size_t s = 0; s < m; ++s) {
            content[s].push_back(static_cast<double>(items[s].size()));
            for (std::size_t j : order_by_keys(items[s], tol)) {
                content[s].push_back(static_cast<double>(items[s][j].size()));
                content[s].insert(content[s].end(), items[s][j].begin(), items[s][j].end());
            }
        }

        // T5, T6
        std::vector<int> rank = group_keys(content, tol);
        if (count_classes(rank) <= 1) return sites;
        pos = sites;
        lab.assign(m, {});
        for (std::size_t s = 0; s < m; ++s) lab[s] = {static_cast<double>(rank[s])};
    }
}

bool torus_sets_equal(const std::vector<TorusPoint>& A, const std::vector<TorusPoint>& B, double tol)
{
    if (A.size() != B.size()) return false;
    std::vector<Vec4> ea, eb;
    std::vector<Label> la, lb;
    for (const auto& p : A) {
        ea.push_back(torus_embed(p.angles));
        la.push_back(p.label);
    }
    for (const auto& p : B) {
        eb.push_back(torus_embed(p.angles));
        lb.push_back(p.label);
    }
    return match_multisets<4>(ea, la, eb, lb, tol);
}

std::optional<Vec2> torus_translation_congruent(const std::vector<TorusPoint>& A, const std::vector<TorusPoint>& B,
                                                double tol)
{
    if (A.size() != B.size()) return std::nullopt;
    if (A.empty()) return Vec2::Zero();
    std::vector<Vec2> ca = canonical_set_torus(A, tol);
    std::vector<Vec2> cb = canonical_set_torus(B, tol);
    if (ca.size() != cb.size()) return std::nullopt;
    Vec2 t = wrap2(cb.front() - ca.front());
    std::vector<TorusPoint> moved = A;
    for (auto& p : moved) p.angles = wrap2(p.angles + t);
    if (!torus_sets_equal(moved, B, tol)) return std::nullopt;
    return t;
}

namespace {

struct PlaneSplit {
    std::vector<double> ang1, ang2;
    std::vector<Label> lab1, lab2;
    std::vector<Label> origin;
    std::vector<Vec2> torus;
    std::vector<Label> torus_lab;
};

PlaneSplit split_planes(const Cloud4& C, const Mat4& frame, double rtol)
{
    PlaneSplit s;
    for (std::size_t i = 0; i < C.size(); ++i) {
        Vec4 x = frame * C.p[i];
        double r1 = std::hypot(x[0], x[1]), r2 = std::hypot(x[2], x[3]);
        const Label& l = C.l.empty() ? Label{} : C.l[i];
        if (r1 <= rtol && r2 <= rtol) {
            s.origin.push_back(l);
        } else if (r2 <= rtol) {
            s.ang1.push_back(wrap_angle(std::atan2(x[1], x[0])));
            Label k{r1};
            k.insert(k.end(), l.begin(), l.end());
            s.lab1.push_back(std::move(k));
        } else if (r1 <= rtol) {
            s.ang2.push_back(wrap_angle(std::atan2(x[3], x[2])));
            Label k{r2};
            k.insert(k.end(), l.begin(), l.end());
            s.lab2.push_back(std::move(k));
        } else {
            s.torus.emplace_back(wrap_angle(std::atan2(x[1], x[0])), wrap_angle(std::atan2(x[3], x[2])));
            Label k{r1, r2};
            k.insert(k.end(), l.begin(), l.end());
            s.torus_lab.push_back(std::move(k));
        }
    }
    return s;
}

std::vector<double> radii2(const std::vector<Label>& labs)
{
    std::vector<double> w;
    w.reserve(labs.size());
    for (const Label& l : labs) w.push_back(l[0] * l[0]);
    return w;
}

double offset(double angle, const AxesSet& ax, double tol)
{
    double step = kTwoPi / ax.count;
    double o = std::fmod(wrap_angle(angle - ax.base_angle), step);
    if (o > step - tol) o = 0.0;
    return o;
}

}  // namespace

Verdict two_plus_two_reduce(const Cloud4& A, const Cloud4& B, const PlaneSpan& P, const PlaneSpan& Q, double eps)
{
    if (A.size() != B.size()) return Verdict::no("2+2");
    const double tol = 1e3 * eps;
    const double rtol = 1e2 * eps;
    Mat4 FA = complete_basis({P.u, P.v});
    Mat4 FB = complete_basis({Q.u, Q.v});
    Mat4 S = Mat4::Zero();
    S(0, 1) = S(1, 0) = S(2, 3) = S(3, 2) = 1.0;

    PlaneSplit sb = split_planes(B, FB.transpose(), rtol);
    for (int c = 0; c < 2; ++c) {
        const Mat4 M = c == 0 ? Mat4::Identity() : S;
        PlaneSplit sa = split_planes(A, M * FA.transpose(), rtol);
        if (sa.origin.size() != sb.origin.size() || sa.ang1.size() != sb.ang1.size() || sa.ang2.size() != sb.ang2.size())
            continue;
        {
            std::vector<Label> both = sa.origin;
            both.insert(both.end(), sb.origin.begin(), sb.origin.end());
            std::vector<int> g = group_keys(both, eps);
            std::vector<int> ga(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(sa.origin.size()));
            std::vector<int> gb(g.begin() + static_cast<std::ptrdiff_t>(sa.origin.size()), g.end());
            std::sort(ga.begin(), ga.end());
            std::sort(gb.begin(), gb.end());
            if (ga != gb) continue;
        }
        std::optional<double> phi = 0.0, psi = 0.0;
        std::optional<AxesSet> axa1, axb1, axa2, axb2;
        if (!sa.ang1.empty()) {
            phi = congruence_2d_labeled(sa.ang1, sa.lab1, sb.ang1, sb.lab1, tol, radii2(sa.lab1), radii2(sb.lab1));
            if (!phi) continue;
            axa1 = canonical_axes(sa.ang1, sa.lab1, tol);
            axb1 = canonical_axes(sb.ang1, sb.lab1, tol);
        }
        if (!sa.ang2.empty()) {
            psi = congruence_2d_labeled(sa.ang2, sa.lab2, sb.ang2, sb.lab2, tol, radii2(sa.lab2), radii2(sb.lab2));
            if (!psi) continue;
            axa2 = canonical_axes(sa.ang2, sa.lab2, tol);
            axb2 = canonical_axes(sb.ang2, sb.lab2, tol);
        }
        if (!sa.torus.empty()) {
            auto torus_points = [&](const PlaneSplit& s, const std::optional<AxesSet>& a1, const std::optional<AxesSet>& a2) {
                std::vector<TorusPoint> out(s.torus.size());
                for (std::size_t i = 0; i < s.torus.size(); ++i) {
                    out[i].angles = s.torus[i];
                    Label l{s.torus_lab[i][0], s.torus_lab[i][1]};
                    if (a1) l.push_back(offset(s.torus[i].x(), *a1, tol));
                    if (a2) l.push_back(offset(s.torus[i].y(), *a2, tol));
                    l.insert(l.end(), s.torus_lab[i].begin() + 2, s.torus_lab[i].end());
                    out[i].label = std::move(l);
                }
                return out;
            };
            auto t = torus_translation_congruent(torus_points(sa, axa1, axa2), torus_points(sb, axb1, axb2), tol);
            if (!t) continue;
            phi = t->x();
            psi = t->y();
        }
        Mat4 R = FB * block_rotation(*phi, *psi) * M * FA.transpose();
        if (verify_rotation(A, B, R, eps)) return Verdict::yes(R);
    }
    return Verdict::no("2+2");
}

}  // namespace hcong
