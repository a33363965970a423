#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace hcong {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Numeric label attached to a point. Compared component-wise under tolerance.
using Label = std::vector<double>;

struct Constants {
    double delta0 = 0.0005;
    double delta1 = 0.07;
    double delta_min = 0.0;
    double alpha_min = 0.0;
    int K2 = 5;
    int K3 = 12;
    int K5_upper = 44;
    int polygon_min = 12000;
    int grid_p_min = 8886;
    int circle_factor = 200;
    int class_cap = 12;
    int pair_fanout = 25;
    int marks_per_pair = 4;
    int C1 = 0;
    double n0 = 0.0;
    double eps_eq = 1e-9;
    // comparison tolerance for structural keys (scaled lengths, angles)
    double eps_key = 1e-6;
};

Constants make_constants(double eps_eq = 1e-9);

const Constants& default_constants();

struct PointSet4 {
    std::vector<Vec4> points;
    std::vector<std::string> labels;
    std::size_t origin_count = 0;

    std::size_t size() const { return points.size(); }
    bool labeled() const { return !labels.empty(); }
};

// Points with numeric labels; the working representation inside the pipeline.
struct Cloud4 {
    std::vector<Vec4> p;
    std::vector<Label> l;

    std::size_t size() const { return p.size(); }
};

struct Cloud3 {
    std::vector<Vec3> p;
    std::vector<Label> l;

    std::size_t size() const { return p.size(); }
};

}  // namespace hcong

namespace hcong {

struct Verdict {
    bool congruent = false;
    Mat4 rotation = Mat4::Identity();
    Vec4 translation = Vec4::Zero();  // B = rotation * A + translation
    bool reflected = false;           // rotation is improper (det -1)
    std::string stage;                // divergence point when not congruent
    std::vector<std::string> trace;

    static Verdict yes(const Mat4& r) { Verdict v; v.congruent = true; v.rotation = r; return v; }
    static Verdict no(std::string s) { Verdict v; v.stage = std::move(s); return v; }
};

}  // namespace hcong
