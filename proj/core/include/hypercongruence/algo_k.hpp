#pragma once

#include "hypercongruence/tolerance.hpp"
#include "hypercongruence/types.hpp"

#include <string>
#include <vector>

namespace hcong {

enum class SphereConfig { Point, Antipodal, Tetrahedron, Octahedron, Icosahedron };

const char* config_name(SphereConfig c);

struct KResult {
    std::vector<Vec3> points;
    SphereConfig config = SphereConfig::Point;
    Key trace;  // point counts after every condensing step
};

// Condenses points on the 2-sphere to at most 12 representatives.
KResult condense_sphere(const std::vector<Vec3>& F, double eps = 1e-9);

}  // namespace hcong
