#pragma once

#include "hypercongruence/closest_pair.hpp"
#include "hypercongruence/condense.hpp"
#include "hypercongruence/types.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hcong {

// Directed subgraph of a closest-pair graph with per-arc successor sets.
class ArcGraph {
public:
    ArcGraph() = default;
    ArcGraph(std::size_t n, std::vector<std::pair<int, int>> arcs);

    std::size_t vertices() const { return out_.size(); }
    std::size_t size() const { return arcs_.size(); }
    const std::pair<int, int>& arc(int i) const { return arcs_[static_cast<std::size_t>(i)]; }
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
    const std::vector<int>& out(int v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& in(int v) const { return in_[static_cast<std::size_t>(v)]; }
    int find(int u, int v) const;
    bool has(int u, int v) const { return find(u, v) >= 0; }

    ArcGraph subset(const std::vector<std::size_t>& keep) const;

private:
    std::vector<std::pair<int, int>> arcs_;
    std::vector<std::vector<int>> out_, in_;
    std::unordered_map<std::uint64_t, int> index_;
};

// Frame of an arc uv: e1 along u+v, e2 along v-u, (e3, e4) spanning the
// orthogonal plane W with the whole frame positively oriented. Coordinates are
// taken relative to the midpoint and divided by the edge length.
struct ArcFrame {
    Mat4 basis;
    Vec4 mid;
    double scale = 1.0;

    ArcFrame(const Vec4& u, const Vec4& v);
    Vec4 coords(const Vec4& x) const;
    double w_angle(const Vec4& x) const;
};

Key vertex_figure_code(int v, const std::vector<Vec4>& pts, const ArcGraph& g, double delta, double eps);
Key edge_figure_code(int arc, const std::vector<Vec4>& pts, const ArcGraph& g, double eps);
bool edge_figure_mirror_symmetric(int arc, const std::vector<Vec4>& pts, const ArcGraph& g, double eps);

struct CExit {
    enum class Kind { WellSeparated, Mirror, EdgeTransitive };

    Kind kind = Kind::WellSeparated;
    std::vector<Vec4> points;
    double delta = 0.0;
    ArcGraph graph;
    // edge-transitive payload
    double alpha = 0.0;
    double tau0 = 0.0;
    std::vector<std::vector<int>> succ;  // arc index -> successor arc indices
};

const char* exit_name(CExit::Kind k);

CExit algorithm_c(const std::vector<Vec4>& points, LockstepRun& run, const Constants& k);

// Repeated pruning of a well-separated set by vertex figures of its
// closest-pair graph, until no class is smaller than the whole set.
std::vector<Vec4> refine_well_separated(const std::vector<Vec4>& points, LockstepRun& run, const Constants& k);

}  // namespace hcong
