#pragma once

#include "hypercongruence/algo_c.hpp"
#include "hypercongruence/geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace hcong {

struct CoxeterGroupSpec {
    std::string name;
    std::array<Vec4, 4> normals;
    double table_R0 = 0.0;  // value printed in the reference table
};

const std::vector<CoxeterGroupSpec>& coxeter_table();

// Moves every mirror inward by 1, intersects, and returns 1/|p|.
double coxeter_inradius(const CoxeterGroupSpec& spec);

// The rotation taking three points (spanning a 3-space with the origin) onto
// three congruent points.
Mat4 fit_rotation(const std::array<Vec4, 3>& from, const std::array<Vec4, 3>& to, double eps = 1e-9);

// Least-squares rotation with R * from[i] ~ to[i].
Mat4 procrustes_rotation(const std::vector<Vec4>& from, const std::vector<Vec4>& to);

struct RResult {
    enum class Kind { Points, Circles };

    Kind kind = Kind::Points;
    std::vector<Vec4> points;
    std::vector<PlaneSpan> circles;
    std::string step;  // R2..R5
};

RResult algorithm_r(const CExit& c, LockstepRun& run, const Constants& k);

struct OrbitCycle {
    std::vector<int> vertices;
    Mat4 rotation;
    PlaneSpan circle;
};

std::vector<OrbitCycle> orbit_cycles(const CExit& c, const Constants& k);
std::vector<PlaneSpan> algorithm_o(const CExit& c, LockstepRun& run, const Constants& k);

}  // namespace hcong
