#pragma once

#include "hypercongruence/types.hpp"

#include <utility>
#include <vector>

namespace hcong {

struct ClosestPairGraph {
    std::size_t n = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    double delta = 0.0;

    std::vector<std::vector<int>> adjacency() const;
    int max_degree() const;
};

// Divide and conquer on the first coordinate. Edges are all pairs within eps
// of the minimum distance. In antipodal mode each item stands for {x, -x} and
// distances are minimized over the signs.
ClosestPairGraph closest_pair_graph(const std::vector<Vec4>& points, double eps = 1e-9);
ClosestPairGraph closest_pair_graph(const std::vector<Vec6>& points, bool antipodal, double eps = 1e-9);

// All-pairs reference with the same contract; n <= 4096.
ClosestPairGraph brute_graph(const std::vector<Vec4>& points, double eps = 1e-9);
ClosestPairGraph brute_graph(const std::vector<Vec6>& points, bool antipodal, double eps = 1e-9);

}  // namespace hcong
