#include "hypercongruence/hull3.hpp"

#include "hypercongruence/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <list>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace hcong {

namespace {

struct Face {
    std::array<int, 3> v;
    Vec3 n;
    double d = 0.0;
    std::vector<int> outside;
    bool alive = true;
};

class QuickHull {
public:
    QuickHull(const std::vector<Vec3>& p, double tol) : p_(p), tol_(tol) {}

    std::vector<Face> run()
    {
        init();
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            if (!faces_[f].alive || faces_[f].outside.empty()) continue;
            add_point(f);
            // faces appended during add_point are processed by the outer loop
        }
        std::vector<Face> out;
        for (auto& f : faces_)
            if (f.alive) out.push_back(f);
        return out;
    }

private:
    double dist(const Face& f, int i) const { return f.n.dot(p_[static_cast<std::size_t>(i)]) - f.d; }

    int make_face(int a, int b, int c)
    {
        Face f;
        f.v = {a, b, c};
        Vec3 n = (p_[static_cast<std::size_t>(b)] - p_[static_cast<std::size_t>(a)])
                     .cross(p_[static_cast<std::size_t>(c)] - p_[static_cast<std::size_t>(a)]);
        f.n = n.normalized();
        f.d = f.n.dot(p_[static_cast<std::size_t>(a)]);
        faces_.push_back(f);
        return static_cast<int>(faces_.size()) - 1;
    }

    static std::uint64_t key(int a, int b)
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
    }

    void link(int f)
    {
        auto& v = faces_[static_cast<std::size_t>(f)].v;
        for (int k = 0; k < 3; ++k) edges_[key(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>((k + 1) % 3)])] = f;
    }

    void init()
    {
        const int n = static_cast<int>(p_.size());
        auto P = [&](int i) -> const Vec3& { return p_[static_cast<std::size_t>(i)]; };
        int i0 = 0;
        for (int i = 1; i < n; ++i)
            if (P(i)[0] < P(i0)[0] || (P(i)[0] == P(i0)[0] && i < i0)) i0 = i;
        int i1 = -1;
        double best = -1;
        for (int i = 0; i < n; ++i) {
            double d = (P(i) - P(i0)).norm();
            if (d > best) best = d, i1 = i;
        }
        int i2 = -1;
        best = -1;
        Vec3 dir = (P(i1) - P(i0)).normalized();
        for (int i = 0; i < n; ++i) {
            Vec3 w = P(i) - P(i0);
            double d = (w - dir * dir.dot(w)).norm();
            if (d > best) best = d, i2 = i;
        }
        Vec3 nn = (P(i1) - P(i0)).cross(P(i2) - P(i0)).normalized();
        int i3 = -1;
        best = -1;
        for (int i = 0; i < n; ++i) {
            double d = std::abs(nn.dot(P(i) - P(i0)));
            if (d > best) best = d, i3 = i;
        }
        if (best <= tol_) throw DegenerateInputError("convex_hull3: flat point set");
        Vec3 c = (P(i0) + P(i1) + P(i2) + P(i3)) / 4.0;
        std::array<std::array<int, 3>, 4> tri = {{{i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}}};
        for (auto t : tri) {
            int f = make_face(t[0], t[1], t[2]);
            Face& ff = faces_[static_cast<std::size_t>(f)];
            if (ff.n.dot(c) - ff.d > 0) {
                std::swap(ff.v[1], ff.v[2]);
                ff.n = -ff.n;
                ff.d = -ff.d;
            }
            link(f);
        }
        std::set<int> used{i0, i1, i2, i3};
        for (int i = 0; i < n; ++i) {
            if (used.count(i)) continue;
            assign(i, 0, 4);
        }
    }

    void assign(int i, std::size_t from, std::size_t to, const std::vector<std::size_t>* only = nullptr)
    {
        double best = tol_;
        int bf = -1;
        auto test = [&](std::size_t f) {
            if (!faces_[f].alive) return;
            double d = dist(faces_[f], i);
            if (d > best) best = d, bf = static_cast<int>(f);
        };
        if (only)
            for (auto f : *only) test(f);
        else
            for (std::size_t f = from; f < to; ++f) test(f);
        if (bf >= 0) faces_[static_cast<std::size_t>(bf)].outside.push_back(i);
    }

    void add_point(std::size_t f0)
    {
        Face& f = faces_[f0];
        int apex = f.outside.front();
        double best = dist(f, apex);
        for (int i : f.outside)
            if (dist(f, i) > best) best = dist(f, i), apex = i;

        // the faces seeing the apex form a connected cap around f0
        std::vector<std::size_t> visible{f0};
        std::set<std::size_t> in_cap{f0};
        for (std::size_t q = 0; q < visible.size(); ++q) {
            auto v = faces_[visible[q]].v;
            for (int k = 0; k < 3; ++k) {
                auto it = edges_.find(key(v[static_cast<std::size_t>((k + 1) % 3)], v[static_cast<std::size_t>(k)]));
                if (it == edges_.end()) continue;
                auto g = static_cast<std::size_t>(it->second);
                if (in_cap.count(g) || !faces_[g].alive || dist(faces_[g], apex) <= tol_) continue;
                in_cap.insert(g);
                visible.push_back(g);
            }
        }

        std::vector<std::pair<int, int>> horizon;
        for (auto g : visible) {
            auto v = faces_[g].v;
            for (int k = 0; k < 3; ++k) {
                int a = v[static_cast<std::size_t>(k)], b = v[static_cast<std::size_t>((k + 1) % 3)];
                auto it = edges_.find(key(b, a));
                if (it == edges_.end() || !in_cap.count(static_cast<std::size_t>(it->second))) horizon.emplace_back(a, b);
            }
        }
        std::vector<int> pending;
        for (auto g : visible) {
            faces_[g].alive = false;
            auto v = faces_[g].v;
            for (int k = 0; k < 3; ++k) {
                auto it = edges_.find(key(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>((k + 1) % 3)]));
                if (it != edges_.end() && static_cast<std::size_t>(it->second) == g) edges_.erase(it);
            }
            for (int i : faces_[g].outside)
                if (i != apex) pending.push_back(i);
            faces_[g].outside.clear();
        }
        std::vector<std::size_t> created;
        for (auto [a, b] : horizon) {
            int f = make_face(a, b, apex);
            link(f);
            created.push_back(static_cast<std::size_t>(f));
        }
        for (int i : pending) assign(i, 0, 0, &created);
    }

    const std::vector<Vec3>& p_;
    double tol_;
    std::vector<Face> faces_;
    std::unordered_map<std::uint64_t, int> edges_;
};

}  // namespace

int rank3(const std::vector<Vec3>& pts, double tol)
{
    if (pts.empty()) return 0;
    Eigen::MatrixXd m(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > tol) ++r;
    return r;
}

Hull3 convex_hull3(const std::vector<Vec3>& pts, double tol)
{
    std::vector<Face> tri = QuickHull(pts, tol).run();

    // merge coplanar neighbours
    const std::size_t m = tri.size();
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::map<std::pair<int, int>, int> owner;
    for (std::size_t f = 0; f < m; ++f)
        for (int k = 0; k < 3; ++k) owner[{tri[f].v[static_cast<std::size_t>(k)], tri[f].v[static_cast<std::size_t>((k + 1) % 3)]}] = static_cast<int>(f);
    for (std::size_t f = 0; f < m; ++f)
        for (int k = 0; k < 3; ++k) {
            int a = tri[f].v[static_cast<std::size_t>(k)], b = tri[f].v[static_cast<std::size_t>((k + 1) % 3)];
            auto it = owner.find({b, a});
            if (it == owner.end()) continue;
            const Face& g = tri[static_cast<std::size_t>(it->second)];
            bool coplanar = true;
            for (int q : g.v)
                if (std::abs(tri[f].n.dot(pts[static_cast<std::size_t>(q)]) - tri[f].d) > tol) coplanar = false;
            for (int q : tri[f].v)
                if (std::abs(g.n.dot(pts[static_cast<std::size_t>(q)]) - g.d) > tol) coplanar = false;
            if (coplanar) {
                int ra = root(static_cast<int>(f)), rb = root(it->second);
                if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
            }
        }

    std::vector<char> is_vertex(pts.size(), 0);
    for (const auto& f : tri)
        for (int q : f.v) is_vertex[static_cast<std::size_t>(q)] = 1;
    std::vector<int> loose;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!is_vertex[i]) loose.push_back(static_cast<int>(i));

    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t f = 0; f < m; ++f) groups[root(static_cast<int>(f))].push_back(f);

    Hull3 h;
    for (auto& [r, fs] : groups) {
        Vec3 n = Vec3::Zero();
        for (auto f : fs) n += tri[f].n;
        n.normalize();
        double d = 0.0;
        std::set<int> vs;
        for (auto f : fs)
            for (int q : tri[f].v) vs.insert(q);
        for (int q : vs) d += n.dot(pts[static_cast<std::size_t>(q)]);
        d /= static_cast<double>(vs.size());
        for (int i : loose)
            if (std::abs(n.dot(pts[static_cast<std::size_t>(i)]) - d) <= tol) vs.insert(i);
        Vec3 c = Vec3::Zero();
        for (int q : vs) c += pts[static_cast<std::size_t>(q)];
        c /= static_cast<double>(vs.size());
        Vec3 e1 = (pts[static_cast<std::size_t>(*vs.begin())] - c);
        e1 = (e1 - n * n.dot(e1)).normalized();
        Vec3 e2 = n.cross(e1);
        std::vector<std::pair<double, int>> ord;
        for (int q : vs) {
            Vec3 w = pts[static_cast<std::size_t>(q)] - c;
            ord.emplace_back(std::atan2(e2.dot(w), e1.dot(w)), q);
        }
        std::sort(ord.begin(), ord.end());
        std::vector<int> poly;
        for (auto& [a, q] : ord) poly.push_back(q);
        h.faces.push_back(std::move(poly));
        h.normals.push_back(n);
    }
    return h;
}

}  // namespace hcong
