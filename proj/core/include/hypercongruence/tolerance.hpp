#pragma once

#include "hypercongruence/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace hcong {

using Key = std::vector<double>;

// Sorted-gap clustering: values closer than eps along the sorted order share a
// class. Class ids grow with value.
std::vector<int> tolerance_cluster(const std::vector<double>& values, double eps);

// Clustering of angles in [0, 2pi); the classes at both ends of the range merge
// when they meet across the seam.
std::vector<int> circular_cluster(const std::vector<double>& angles, double eps);

// -1, 0, +1 under tolerant lexicographic order (shorter keys first).
int compare_keys(const Key& a, const Key& b, double eps);
inline bool keys_equal(const Key& a, const Key& b, double eps) { return compare_keys(a, b, eps) == 0; }

// Hierarchical tolerance grouping of keys. Class ids are dense and ordered
// lexicographically by class.
std::vector<int> group_keys(const std::vector<Key>& keys, double eps);

int count_classes(const std::vector<int>& ids);

// Index order that lists keys class by class, in class order.
std::vector<std::size_t> order_by_keys(const std::vector<Key>& keys, double eps);

struct PruneResult {
    std::vector<std::size_t> members;
    int classes = 0;
    bool progress = false;
    // (class count, then per class: size, key length, key values) in class order
    Key summary;
};

// Smallest class; ties go to the lexicographically smallest key.
PruneResult prune_by_key(const std::vector<Key>& keys, double eps);

std::string key_text(const Key& k, int max_items = 8);

double wrap_angle(double a);
double angle_gap(double from, double to);

// Uniform-grid hash over D-dimensional points with cell size h.
template <int D>
class SpatialHash {
public:
    using Point = Eigen::Matrix<double, D, 1>;
    using Cell = std::array<std::int64_t, D>;

    SpatialHash(double h) : h_(h) {}

    Cell cell_of(const Point& p) const
    {
        Cell c;
        for (int i = 0; i < D; ++i) c[i] = static_cast<std::int64_t>(std::floor(p[i] / h_));
        return c;
    }

    void insert(const Point& p, int id) { map_[cell_of(p)].push_back(id); }

    // Ids in all cells meeting the cube of half-width h around p.
    template <class F>
    void visit_near(const Point& p, F&& f) const
    {
        visit_within(p, h_, f);
    }

    // Ids in all cells meeting the cube of half-width r around p.
    template <class F>
    void visit_within(const Point& p, double r, F&& f) const
    {
        Cell lo, hi;
        for (int i = 0; i < D; ++i) {
            lo[i] = static_cast<std::int64_t>(std::floor((p[i] - r) / h_));
            hi[i] = static_cast<std::int64_t>(std::floor((p[i] + r) / h_));
        }
        Cell c = lo;
        visit_rec(lo, hi, c, 0, f);
    }

private:
    struct CellHash {
        std::size_t operator()(const Cell& c) const
        {
            std::uint64_t h = 1469598103934665603ull;
            for (auto v : c) {
                h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
            return static_cast<std::size_t>(h);
        }
    };

    template <class F>
    void visit_rec(const Cell& lo, const Cell& hi, Cell& c, int dim, F& f) const
    {
        if (dim == D) {
            auto it = map_.find(c);
            if (it != map_.end())
                for (int id : it->second) f(id);
            return;
        }
        for (c[dim] = lo[dim]; c[dim] <= hi[dim]; ++c[dim]) visit_rec(lo, hi, c, dim + 1, f);
        c[dim] = lo[dim];
    }

    double h_;
    std::unordered_map<Cell, std::vector<int>, CellHash> map_;
};

// Greedy tolerant matching of two labeled multisets (max-norm distance <= eps,
// labels equal under eps). Labels may be empty vectors.
template <int D>
bool match_multisets(const std::vector<Eigen::Matrix<double, D, 1>>& a, const std::vector<Label>& la,
                     const std::vector<Eigen::Matrix<double, D, 1>>& b, const std::vector<Label>& lb, double eps)
{
    if (a.size() != b.size()) return false;
    const bool labeled = !la.empty() || !lb.empty();
    if (labeled && (la.size() != a.size() || lb.size() != b.size())) return false;
    SpatialHash<D> hash(2.0 * eps);
    for (std::size_t i = 0; i < b.size(); ++i) hash.insert(b[i], static_cast<int>(i));
    std::vector<char> used(b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        int found = -1;
        hash.visit_within(a[i], eps, [&](int j) {
            if (found >= 0 || used[j]) return;
            if ((a[i] - b[j]).cwiseAbs().maxCoeff() > eps) return;
            if (labeled && !keys_equal(la[i], lb[j], eps)) return;
            found = j;
        });
        if (found < 0) return false;
        used[found] = 1;
    }
    return true;
}

// Removes points within eps (max-norm) of an earlier point.
template <int D>
std::vector<Eigen::Matrix<double, D, 1>> dedupe_points(const std::vector<Eigen::Matrix<double, D, 1>>& pts, double eps)
{
    std::vector<Eigen::Matrix<double, D, 1>> out;
    SpatialHash<D> hash(2.0 * eps);
    for (const auto& p : pts) {
        bool dup = false;
        hash.visit_within(p, eps, [&](int j) {
            if (!dup && (out[j] - p).cwiseAbs().maxCoeff() <= eps) dup = true;
        });
        if (dup) continue;
        hash.insert(p, static_cast<int>(out.size()));
        out.push_back(p);
    }
    return out;
}

}  // namespace hcong
