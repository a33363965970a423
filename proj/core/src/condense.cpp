#include "hypercongruence/condense.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hcong {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::size_t> failure_function(const std::vector<long>& s)
{
    std::vector<std::size_t> f(s.size() + 1, 0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        while (k > 0 && s[i] != s[k]) k = f[k];
        if (s[i] == s[k]) ++k;
        f[i + 1] = k;
    }
    return f;
}

struct Tokens {
    CircleWord word;
    std::vector<double> gaps;
    std::vector<long> symbols;
};

Tokens tokenize(const std::vector<double>& angles, const std::vector<Label>& labels, double eps)
{
    Tokens t;
    t.word = circle_word(angles, labels, eps);
    const std::size_t m = t.word.angles.size();
    t.gaps.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        t.gaps[i] = m == 1 ? kTwoPi : angle_gap(t.word.angles[i], t.word.angles[(i + 1) % m]);
    std::vector<int> lab = group_keys(t.word.labels, eps);
    std::vector<int> gap = tolerance_cluster(t.gaps, eps);
    long ng = count_classes(gap);
    t.symbols.resize(m);
    for (std::size_t i = 0; i < m; ++i) t.symbols[i] = lab[i] * ng + gap[i];
    return t;
}

}  // namespace

double AxesSet::axis(int j) const { return wrap_angle(base_angle + j * kTwoPi / count); }

CircleWord circle_word(const std::vector<double>& angles, const std::vector<Label>& labels, double eps,
                       const std::vector<double>& weights)
{
    CircleWord w;
    if (angles.empty()) return w;
    std::vector<double> a(angles.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = wrap_angle(angles[i]);
    std::vector<int> cls = circular_cluster(a, eps);
    const int nc = count_classes(cls);
    w.members.assign(static_cast<std::size_t>(nc), {});
    for (std::size_t i = 0; i < a.size(); ++i) w.members[static_cast<std::size_t>(cls[i])].push_back(static_cast<int>(i));
    w.angles.resize(static_cast<std::size_t>(nc));
    w.labels.resize(static_cast<std::size_t>(nc));
    w.weights.assign(static_cast<std::size_t>(nc), 0.0);
    for (int c = 0; c < nc; ++c) {
        auto& mem = w.members[static_cast<std::size_t>(c)];
        // circular mean of the members keeps the position equivariant
        double sx = 0, sy = 0;
        for (int i : mem) {
            const double wi = weights.empty() ? 1.0 : weights[static_cast<std::size_t>(i)];
            sx += wi * std::cos(a[static_cast<std::size_t>(i)]);
            sy += wi * std::sin(a[static_cast<std::size_t>(i)]);
            w.weights[static_cast<std::size_t>(c)] += wi;
        }
        w.angles[static_cast<std::size_t>(c)] = wrap_angle(std::atan2(sy, sx));
        std::vector<Key> ls;
        for (int i : mem) ls.push_back(labels.empty() ? Key{} : labels[static_cast<std::size_t>(i)]);
        std::vector<std::size_t> ord = order_by_keys(ls, eps);
        Key& out = w.labels[static_cast<std::size_t>(c)];
        out.push_back(static_cast<double>(mem.size()));
        for (auto k : ord) {
            out.push_back(static_cast<double>(ls[k].size()));
            out.insert(out.end(), ls[k].begin(), ls[k].end());
        }
    }
    std::vector<std::size_t> ord(static_cast<std::size_t>(nc));
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](std::size_t x, std::size_t y) { return w.angles[x] < w.angles[y]; });
    CircleWord sorted;
    for (auto k : ord) {
        sorted.angles.push_back(w.angles[k]);
        sorted.labels.push_back(std::move(w.labels[k]));
        sorted.weights.push_back(w.weights[k]);
        sorted.members.push_back(std::move(w.members[k]));
    }
    return sorted;
}

std::size_t least_rotation(const std::vector<long>& s)
{
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::vector<long> d(s);
    d.insert(d.end(), s.begin(), s.end());
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        long i = f[j - k - 1];
        while (i != -1 && d[j] != d[k + static_cast<std::size_t>(i) + 1]) {
            if (d[j] < d[k + static_cast<std::size_t>(i) + 1]) k = j - static_cast<std::size_t>(i) - 1;
            i = f[static_cast<std::size_t>(i)];
        }
        if (i == -1 && d[j] != d[k + static_cast<std::size_t>(i) + 1]) {
            if (d[j] < d[k + static_cast<std::size_t>(i) + 1]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

std::size_t cyclic_period(const std::vector<long>& s)
{
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::vector<std::size_t> f = failure_function(s);
    std::size_t p = n - f[n];
    return n % p == 0 ? p : n;
}

AxesSet canonical_axes(const std::vector<double>& angles, const std::vector<Label>& labels, double eps)
{
    if (angles.empty()) throw std::invalid_argument("canonical_axes: empty input");
    Tokens t = tokenize(angles, labels, eps);
    std::size_t start = least_rotation(t.symbols);
    std::size_t period = cyclic_period(t.symbols);
    AxesSet ax;
    ax.count = static_cast<int>(t.symbols.size() / period);
    ax.base_angle = t.word.angles[start % period];
    return ax;
}

Key cyclic_code(const std::vector<double>& angles, const std::vector<Label>& labels, double eps)
{
    if (angles.empty()) return {0.0};
    Tokens t = tokenize(angles, labels, eps);
    const std::size_t m = t.symbols.size();
    std::size_t start = least_rotation(t.symbols);
    Key code{static_cast<double>(m)};
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t i = (start + j) % m;
        code.push_back(static_cast<double>(t.word.labels[i].size()));
        code.insert(code.end(), t.word.labels[i].begin(), t.word.labels[i].end());
        code.push_back(t.gaps[i]);
    }
    return code;
}

std::optional<double> congruence_2d_labeled(const std::vector<double>& a_angles, const std::vector<Label>& a_labels,
                                            const std::vector<double>& b_angles, const std::vector<Label>& b_labels,
                                            double eps, const std::vector<double>& a_weights,
                                            const std::vector<double>& b_weights)
{
    if (a_angles.size() != b_angles.size()) return std::nullopt;
    if (a_angles.empty()) return 0.0;
    CircleWord wa = circle_word(a_angles, a_labels, eps, a_weights);
    CircleWord wb = circle_word(b_angles, b_labels, eps, b_weights);
    const std::size_t m = wa.angles.size();
    if (wb.angles.size() != m) return std::nullopt;

    std::vector<Key> labs(wa.labels);
    labs.insert(labs.end(), wb.labels.begin(), wb.labels.end());
    std::vector<double> gaps(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        gaps[i] = m == 1 ? kTwoPi : angle_gap(wa.angles[i], wa.angles[(i + 1) % m]);
        gaps[m + i] = m == 1 ? kTwoPi : angle_gap(wb.angles[i], wb.angles[(i + 1) % m]);
    }
    std::vector<int> lab = group_keys(labs, eps);
    std::vector<int> gap = tolerance_cluster(gaps, eps);
    long ng = count_classes(gap);
    std::vector<long> sa(m), sb(m);
    for (std::size_t i = 0; i < m; ++i) {
        sa[i] = lab[i] * ng + gap[i];
        sb[i] = lab[m + i] * ng + gap[m + i];
    }
    // find sa as a substring of sb+sb
    std::vector<std::size_t> f = failure_function(sa);
    std::size_t k = 0;
    for (std::size_t j = 0; j < 2 * m - 1; ++j) {
        long c = sb[j % m];
        while (k > 0 && c != sa[k]) k = f[k];
        if (c == sa[k]) ++k;
        if (k == m) {
            std::size_t shift = (j + 1 - m) % m;
            double sx = 0, sy = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const double t = wb.angles[(shift + i) % m] - wa.angles[i];
                const double wi = wa.weights[i] + wb.weights[(shift + i) % m];
                sx += wi * std::cos(t);
                sy += wi * std::sin(t);
            }
            return wrap_angle(std::atan2(sy, sx));
        }
    }
    return std::nullopt;
}

void LockstepRun::side(Side s)
{
    if (s == Side::A) {
        phase_start_ = history_.size();
    } else {
        cursor_ = phase_start_;
    }
    side_ = s;
}

void LockstepRun::emit(const std::string& stage, const Key& key, const std::string& note)
{
    if (side_ == Side::A) {
        history_.push_back({stage, key});
        if (trace_) lines_.push_back(note.empty() ? stage + ": " + key_text(key) : note);
        return;
    }
    if (cursor_ >= history_.size()) diverge(stage);
    const Entry& e = history_[cursor_];
    if (e.stage != stage || !keys_equal(e.key, key, eps_)) diverge(stage);
    ++cursor_;
}

void LockstepRun::sync()
{
    if (side_ == Side::B && cursor_ != history_.size())
        diverge(cursor_ < history_.size() ? history_[cursor_].stage : std::string("sync"));
    side_ = Side::A;
    phase_start_ = history_.size();
}

void LockstepRun::diverge(const std::string& stage)
{
    if (trace_) lines_.push_back("diverged at " + stage);
    throw Divergence(stage);
}

}  // namespace hcong
