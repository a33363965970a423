#pragma once

#include "hypercongruence/types.hpp"

#include <vector>

namespace hcong {

// Convex hull of a full-dimensional 3D point set. Coplanar triangles are
// merged into convex polygons listed counterclockwise seen from outside;
// points lying on a facet plane are kept as polygon vertices.
struct Hull3 {
    std::vector<std::vector<int>> faces;
    std::vector<Vec3> normals;
};

Hull3 convex_hull3(const std::vector<Vec3>& pts, double tol);

int rank3(const std::vector<Vec3>& pts, double tol);

}  // namespace hcong
