#pragma once

#include "hypercongruence/harness.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace hcong::test {

constexpr double pi = std::numbers::pi;

inline Vec4 gaussian4(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    return Vec4(g(rng), g(rng), g(rng), g(rng));
}

inline Vec4 unit4(std::mt19937_64& rng) { return gaussian4(rng).normalized(); }

inline Vec4 e(int i) { return Vec4::Unit(i); }

// Circle D forming a right (or left) pair at angle (a, a) with span(v1, v2),
// in the positively oriented frame given by the columns of G.
inline PlaneSpan clifford_partner(const Mat4& G, double a, double d, bool left = false)
{
    Vec4 u1 = G.col(0) * std::cos(a) + (G.col(2) * std::cos(d) + G.col(3) * std::sin(d)) * std::sin(a);
    Vec4 u2 = left ? Vec4(G.col(1) * std::cos(a) + (G.col(2) * std::sin(d) - G.col(3) * std::cos(d)) * std::sin(a))
                   : Vec4(G.col(1) * std::cos(a) + (G.col(3) * std::cos(d) - G.col(2) * std::sin(d)) * std::sin(a));
    return PlaneSpan::from(u1, u2);
}

inline PointSet4 moved(const PointSet4& A, const Mat4& R, const Vec4& t = Vec4::Zero())
{
    PointSet4 B = A;
    for (auto& x : B.points) x = R * x + t;
    return B;
}

}  // namespace hcong::test
