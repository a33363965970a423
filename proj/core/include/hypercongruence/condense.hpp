#pragma once

#include "hypercongruence/tolerance.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcong {

struct AxesSet {
    double base_angle = 0.0;
    int count = 1;

    double axis(int j) const;
};

// Points on a circle given by angle and label. Points sharing an angle (within
// eps) form one position whose label is the sorted multiset of their labels.
struct CircleWord {
    std::vector<double> angles;     // position angles, increasing
    std::vector<Key> labels;        // position labels
    std::vector<double> weights;    // summed member weights
    std::vector<std::vector<int>> members;
};

// Position angles are weighted circular means (unit weights when empty).
CircleWord circle_word(const std::vector<double>& angles, const std::vector<Label>& labels, double eps,
                       const std::vector<double>& weights = {});

// Start of the lexicographically least rotation (Booth) and the smallest period.
std::size_t least_rotation(const std::vector<long>& s);
std::size_t cyclic_period(const std::vector<long>& s);

AxesSet canonical_axes(const std::vector<double>& angles, const std::vector<Label>& labels, double eps);

// The minimal cyclic (label, gap) string written out with real values; equal
// codes mean the labeled circle configurations agree up to rotation.
Key cyclic_code(const std::vector<double>& angles, const std::vector<Label>& labels, double eps);

// Rotation angle t with B = A + t as labeled sets on the circle, if any. The
// angle is averaged over all matched positions; pass squared radii as weights
// to get the least-squares fit.
std::optional<double> congruence_2d_labeled(const std::vector<double>& a_angles, const std::vector<Label>& a_labels,
                                            const std::vector<double>& b_angles, const std::vector<Label>& b_labels,
                                            double eps, const std::vector<double>& a_weights = {},
                                            const std::vector<double>& b_weights = {});

struct Divergence : std::runtime_error {
    explicit Divergence(std::string s) : std::runtime_error("lockstep divergence at " + s), stage(std::move(s)) {}
    std::string stage;
};

// Records the stage keys of the run on A and checks the run on B against them.
class LockstepRun {
public:
    enum class Side { A, B };

    struct Entry {
        std::string stage;
        Key key;
    };

    explicit LockstepRun(double eps, bool trace = false) : eps_(eps), trace_(trace) {}

    void side(Side s);
    Side current() const { return side_; }
    void emit(const std::string& stage, const Key& key, const std::string& note = {});
    void sync();
    [[noreturn]] void diverge(const std::string& stage);

    const std::vector<Entry>& history() const { return history_; }
    const std::vector<std::string>& trace() const { return lines_; }
    double eps() const { return eps_; }

private:
    double eps_;
    bool trace_;
    Side side_ = Side::A;
    std::size_t phase_start_ = 0;
    std::size_t cursor_ = 0;
    std::vector<Entry> history_;
    std::vector<std::string> lines_;
};

}  // namespace hcong
