#include "hypercongruence/tolerance.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>

namespace hcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

std::vector<int> tolerance_cluster(const std::vector<double>& values, double eps)
{
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && a < b);
    });
    std::vector<int> ids(values.size(), 0);
    int cls = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k > 0 && values[idx[k]] - values[idx[k - 1]] > eps) ++cls;
        ids[idx[k]] = cls;
    }
    return ids;
}

std::vector<int> circular_cluster(const std::vector<double>& angles, double eps)
{
    std::vector<int> ids = tolerance_cluster(angles, eps);
    if (angles.empty()) return ids;
    double lo = *std::min_element(angles.begin(), angles.end());
    double hi = *std::max_element(angles.begin(), angles.end());
    int last = *std::max_element(ids.begin(), ids.end());
    if (last > 0 && lo + kTwoPi - hi <= eps) {
        for (int& id : ids)
            if (id == last) id = 0;
    }
    return ids;
}

int compare_keys(const Key& a, const Key& b, double eps)
{
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d < -eps) return -1;
        if (d > eps) return 1;
    }
    return 0;
}

std::vector<int> group_keys(const std::vector<Key>& keys, double eps)
{
    std::vector<int> ids(keys.size(), 0);
    std::vector<std::size_t> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a].size() != keys[b].size()) return keys[a].size() < keys[b].size();
        return a < b;
    });

    int next = 0;
    std::function<void(std::vector<std::size_t>&, std::size_t)> split = [&](std::vector<std::size_t>& grp,
                                                                           std::size_t dim) {
        const std::size_t len = keys[grp.front()].size();
        if (dim == len || grp.size() == 1) {
            for (auto i : grp) ids[i] = next;
            ++next;
            return;
        }
        std::sort(grp.begin(), grp.end(), [&](std::size_t a, std::size_t b) {
            double va = keys[a][dim], vb = keys[b][dim];
            return va < vb || (va == vb && a < b);
        });
        std::size_t start = 0;
        for (std::size_t k = 1; k <= grp.size(); ++k) {
            if (k == grp.size() || keys[grp[k]][dim] - keys[grp[k - 1]][dim] > eps) {
                std::vector<std::size_t> sub(grp.begin() + static_cast<std::ptrdiff_t>(start),
                                             grp.begin() + static_cast<std::ptrdiff_t>(k));
                split(sub, dim + 1);
                start = k;
            }
        }
    };

    std::size_t start = 0;
    for (std::size_t k = 1; k <= idx.size(); ++k) {
        if (k == idx.size() || keys[idx[k]].size() != keys[idx[k - 1]].size()) {
            std::vector<std::size_t> grp(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                         idx.begin() + static_cast<std::ptrdiff_t>(k));
            split(grp, 0);
            start = k;
        }
    }
    return ids;
}

int count_classes(const std::vector<int>& ids)
{
    if (ids.empty()) return 0;
    return *std::max_element(ids.begin(), ids.end()) + 1;
}

std::vector<std::size_t> order_by_keys(const std::vector<Key>& keys, double eps)
{
    std::vector<int> ids = group_keys(keys, eps);
    std::vector<std::size_t> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    return idx;
}

PruneResult prune_by_key(const std::vector<Key>& keys, double eps)
{
    PruneResult r;
    if (keys.empty()) return r;
    std::vector<int> ids = group_keys(keys, eps);
    r.classes = count_classes(ids);
    std::vector<std::size_t> size(static_cast<std::size_t>(r.classes), 0);
    std::vector<Key> rep(static_cast<std::size_t>(r.classes));
    std::vector<char> seen(rep.size(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto c = static_cast<std::size_t>(ids[i]);
        ++size[c];
        if (!seen[c]) {
            rep[c] = keys[i];
            seen[c] = 1;
        } else if (rep[c].size() == keys[i].size()) {
            for (std::size_t j = 0; j < rep[c].size(); ++j) rep[c][j] = std::min(rep[c][j], keys[i][j]);
        }
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < size.size(); ++c)
        if (size[c] < size[best]) best = c;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (static_cast<std::size_t>(ids[i]) == best) r.members.push_back(i);
    r.progress = r.classes > 1;
    r.summary.push_back(r.classes);
    for (std::size_t c = 0; c < size.size(); ++c) {
        r.summary.push_back(static_cast<double>(size[c]));
        const Key& k = rep[c];
        r.summary.push_back(static_cast<double>(k.size()));
        r.summary.insert(r.summary.end(), k.begin(), k.end());
    }
    return r;
}

std::string key_text(const Key& k, int max_items)
{
    std::string s = "[";
    for (std::size_t i = 0; i < k.size() && static_cast<int>(i) < max_items; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "", k[i]);
        s += buf;
    }
    if (static_cast<int>(k.size()) > max_items) s += ",...";
    return s + "]";
}

double wrap_angle(double a)
{
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

double angle_gap(double from, double to) { return wrap_angle(to - from); }

}  // namespace hcong
