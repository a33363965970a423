#pragma once

#include "hypercongruence/geometry.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hcong {

// Exhaustive test for n <= 10: maps a basis tuple of A onto every tuple of B
// with the same Gram matrix and verifies. Throws SizeGuardError above 10.
Verdict oracle_congruent(const PointSet4& A, const PointSet4& B, bool allow_reflection, double eps = 1e-9);

Mat4 random_rotation(std::mt19937_64& rng);

struct CongruentPair {
    PointSet4 A, B;
    Mat4 R = Mat4::Identity();
    Vec4 t = Vec4::Zero();
};

// Gaussian points; B = R A + t shuffled.
CongruentPair gen_congruent_pair(std::size_t n, std::uint64_t seed);

// B = R A + t shuffled, for a given A.
CongruentPair make_congruent_pair(const PointSet4& A, std::uint64_t seed);

// p-gon x q-gon on the torus with radii r1 and sqrt(1 - r1^2).
PointSet4 gen_torus_grid(int p, int q, double r1);

// Orbit of (r1, 0, r2, 0) rotated by a seeded phase under R_{2pi/l, 2pi k/l}.
PointSet4 gen_orbit_helix(int l, int k, double r1, std::uint64_t seed);

struct HopfSample {
    PointSet4 points;
    std::vector<PlaneSpan> circles;
};

// m random fibres of one Hopf bundle with `samples` equally spaced points each.
HopfSample gen_hopf_circles(int m, int samples, std::uint64_t seed);

// "5-cell", "4-cube" (or "tesseract"), "16-cell", "24-cell", "600-cell", "120-cell".
PointSet4 gen_regular_polytope(const std::string& name);

// One coordinate of one point moved by +-magnitude.
PointSet4 gen_perturbed(const PointSet4& A, double magnitude, std::uint64_t seed);

// Max over a in A of the distance from R a + t to the nearest point of B.
double map_error(const PointSet4& A, const PointSet4& B, const Mat4& R, const Vec4& t);

}  // namespace hcong
