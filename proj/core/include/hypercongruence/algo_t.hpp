#pragma once

#include "hypercongruence/geometry.hpp"
#include "hypercongruence/tolerance.hpp"

#include <optional>
#include <vector>

namespace hcong {

struct TorusPoint {
    Vec2 angles = Vec2::Zero();  // in [0, 2pi)^2
    Label label;
};

// Voronoi cells of sites on the square torus [0, 2pi)^2, computed in the plane
// on the 3x3 replication. Cell vertices are counterclockwise and relative to
// the site.
struct TorusVoronoi {
    std::vector<Vec2> sites;
    std::vector<std::vector<Vec2>> cells;
};

TorusVoronoi torus_voronoi(const std::vector<Vec2>& sites, double tol);

// Canonical subset of the (labeled) torus set: preserved by every translation
// symmetry, on which the symmetries act transitively, and equivariant.
std::vector<Vec2> canonical_set_torus(const std::vector<TorusPoint>& pts, double eps);

// t with A + t = B (mod 2pi) as labeled sets, if any.
std::optional<Vec2> torus_translation_congruent(const std::vector<TorusPoint>& A, const std::vector<TorusPoint>& B,
                                                double eps);

bool torus_sets_equal(const std::vector<TorusPoint>& A, const std::vector<TorusPoint>& B, double eps);

// Congruence of A and B by a rotation mapping the plane P to Q; A, B centered.
Verdict two_plus_two_reduce(const Cloud4& A, const Cloud4& B, const PlaneSpan& P, const PlaneSpan& Q, double eps);

}  // namespace hcong
