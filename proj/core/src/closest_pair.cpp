#include "hypercongruence/closest_pair.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/tolerance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace hcong {

namespace {

constexpr std::size_t kBruteGuard = 4096;

template <int D>
class Solver {
public:
    using Point = Eigen::Matrix<double, D, 1>;

    Solver(const std::vector<Point>& pts, double eps) : pts_(pts), eps_(eps) {}

    ClosestPairGraph run(std::size_t n_items, bool antipodal)
    {
        std::vector<int> order(pts_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            for (int k = 0; k < D; ++k)
                if (pts_[a][k] != pts_[b][k]) return pts_[a][k] < pts_[b][k];
            return a < b;
        });
        n_items_ = n_items;
        antipodal_ = antipodal;
        std::vector<int> scratch(order.size());
        double delta = solve(order.data(), scratch.data(), order.size());
        return finish(delta);
    }

    ClosestPairGraph brute(std::size_t n_items, bool antipodal)
    {
        n_items_ = n_items;
        antipodal_ = antipodal;
        double delta = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts_.size(); ++i)
            for (std::size_t j = i + 1; j < pts_.size(); ++j) consider(static_cast<int>(i), static_cast<int>(j), delta);
        return finish(delta);
    }

private:
    bool twins(int a, int b) const
    {
        return antipodal_ && static_cast<std::size_t>(std::abs(a - b)) == n_items_;
    }

    void consider(int a, int b, double& delta)
    {
        if (twins(a, b)) return;
        double d = (pts_[a] - pts_[b]).norm();
        if (d <= delta + eps_) cand_.push_back({d, a, b});
        delta = std::min(delta, d);
    }

    // Points of idx are sorted by coordinate 0 on entry.
    double solve(int* idx, int* scratch, std::size_t n)
    {
        double delta = std::numeric_limits<double>::infinity();
        if (n <= 4) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) consider(idx[i], idx[j], delta);
            return delta;
        }
        const std::size_t half = n / 2;
        const double mid = pts_[idx[half]][0];
        delta = std::min(solve(idx, scratch, half), solve(idx + half, scratch, n - half));
        const double width = delta + eps_;

        std::size_t m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(pts_[idx[i]][0] - mid) <= width) scratch[m++] = static_cast<int>(i);
        if (m < 2) return delta;

        constexpr int H = D - 1 < 3 ? D - 1 : 3;
        using Sub = Eigen::Matrix<double, H, 1>;
        SpatialHash<H> hash(width);
        for (std::size_t k = 0; k < m; ++k) {
            if (static_cast<std::size_t>(scratch[k]) >= half) continue;
            hash.insert(Sub(pts_[idx[scratch[k]]].template segment<H>(1)), idx[scratch[k]]);
        }
        double best = delta;
        for (std::size_t k = 0; k < m; ++k) {
            if (static_cast<std::size_t>(scratch[k]) < half) continue;
            const int b = idx[scratch[k]];
            hash.visit_near(Sub(pts_[b].template segment<H>(1)), [&](int a) { consider(a, b, best); });
        }
        return std::min(delta, best);
    }

    ClosestPairGraph finish(double delta)
    {
        if (!(delta < std::numeric_limits<double>::infinity())) throw DegenerateInputError("closest pair: fewer than 2 points");
        if (delta < eps_) throw DuplicatePointsError("closest pair: duplicate points");
        ClosestPairGraph g;
        g.n = n_items_;
        g.delta = delta;
        for (const auto& c : cand_) {
            if (c.d > delta + eps_) continue;
            int a = static_cast<int>(static_cast<std::size_t>(c.a) % n_items_);
            int b = static_cast<int>(static_cast<std::size_t>(c.b) % n_items_);
            if (a > b) std::swap(a, b);
            g.edges.emplace_back(a, b);
        }
        std::sort(g.edges.begin(), g.edges.end());
        g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
        return g;
    }

    struct Cand {
        double d;
        int a, b;
    };

    const std::vector<Point>& pts_;
    double eps_;
    std::size_t n_items_ = 0;
    bool antipodal_ = false;
    std::vector<Cand> cand_;
};

std::vector<Vec6> with_antipodes(const std::vector<Vec6>& points)
{
    std::vector<Vec6> all(points);
    all.reserve(2 * points.size());
    for (const Vec6& p : points) all.push_back(-p);
    return all;
}

void require_two(std::size_t n)
{
    if (n < 2) throw DegenerateInputError("closest pair: fewer than 2 points");
}

}  // namespace

std::vector<std::vector<int>> ClosestPairGraph::adjacency() const
{
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

int ClosestPairGraph::max_degree() const
{
    std::vector<int> deg(n, 0);
    for (auto [a, b] : edges) {
        ++deg[static_cast<std::size_t>(a)];
        ++deg[static_cast<std::size_t>(b)];
    }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

ClosestPairGraph closest_pair_graph(const std::vector<Vec4>& points, double eps)
{
    require_two(points.size());
    return Solver<4>(points, eps).run(points.size(), false);
}

ClosestPairGraph closest_pair_graph(const std::vector<Vec6>& points, bool antipodal, double eps)
{
    require_two(points.size());
    if (!antipodal) return Solver<6>(points, eps).run(points.size(), false);
    std::vector<Vec6> all = with_antipodes(points);
    return Solver<6>(all, eps).run(points.size(), true);
}

ClosestPairGraph brute_graph(const std::vector<Vec4>& points, double eps)
{
    require_two(points.size());
    if (points.size() > kBruteGuard) throw SizeGuardError("brute_graph: more than 4096 points");
    return Solver<4>(points, eps).brute(points.size(), false);
}

ClosestPairGraph brute_graph(const std::vector<Vec6>& points, bool antipodal, double eps)
{
    require_two(points.size());
    if (points.size() > kBruteGuard) throw SizeGuardError("brute_graph: more than 4096 points");
    if (!antipodal) return Solver<6>(points, eps).brute(points.size(), false);
    std::vector<Vec6> all = with_antipodes(points);
    return Solver<6>(all, eps).brute(points.size(), true);
}

}  // namespace hcong
