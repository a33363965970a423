#pragma once

#include "hypercongruence/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace hcong {

struct AnglePair {
    double alpha = 0.0;
    double beta = 0.0;
};

struct PlaneSpan {
    Vec4 u = Vec4::UnitX();
    Vec4 v = Vec4::UnitY();

    // Orthonormalizes (a, b); throws DegenerateInputError when dependent.
    static PlaneSpan from(const Vec4& a, const Vec4& b);
    Eigen::Matrix<double, 4, 2> matrix() const;
    Vec4 project(const Vec4& x) const { return u * u.dot(x) + v * v.dot(x); }
};

struct PlueckerVector {
    Vec6 coords = Vec6::Zero();
};

enum class Chirality { Left, Right, Both, NotIsoclinic };

const char* chirality_name(Chirality c);

struct Rotation4 {
    Mat4 matrix = Mat4::Identity();
};

bool is_rotation(const Mat4& m, double eps);

Mat4 block_rotation(double phi, double psi);

// Generalized cross product: orthogonal to a, b, c with det[a b c n] >= 0.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

// Columns: Gram-Schmidt of `given`, completed to a positively oriented
// orthonormal basis. With four given vectors the orientation is left as is.
Mat4 complete_basis(const std::vector<Vec4>& given, double eps = 1e-12);

// Mean accumulated in extended precision, so that re-centering a large set
// does not add summation noise of order n * ulp.
template <int D>
Eigen::Matrix<double, D, 1> mean_of(const std::vector<Eigen::Matrix<double, D, 1>>& pts)
{
    Eigen::Matrix<long double, D, 1> s = Eigen::Matrix<long double, D, 1>::Zero();
    for (const auto& p : pts) s += p.template cast<long double>();
    if (!pts.empty()) s /= static_cast<long double>(pts.size());
    return s.template cast<double>();
}

std::pair<PointSet4, Vec4> centroid_normalize(const std::vector<Vec4>& raw, const std::vector<std::string>& labels = {},
                                              double eps = 1e-9);

AnglePair angle_between_planes(const PlaneSpan& P, const PlaneSpan& Q);

PlueckerVector pluecker(const PlaneSpan& P, double eps = 1e-9);
double pluecker_distance(const PlueckerVector& p, const PlueckerVector& q);
double pluecker_distance(const PlaneSpan& P, const PlaneSpan& Q);
double pluecker_closed_form(const AnglePair& a);

Chirality chirality(const PlaneSpan& P, const PlaneSpan& Q, double eps = 1e-9);

// Hopf map of the right (or left) bundle containing C0, in a frame that puts
// C0 in the x1y1-plane.
class HopfFrame {
public:
    HopfFrame(const PlaneSpan& c0, bool left);
    Vec3 image(const Vec4& p) const;
    Vec3 image(const PlaneSpan& circle) const { return image(circle.u); }
    PlaneSpan fiber(const Vec3& s) const;
    const Mat4& basis() const { return basis_; }

private:
    Mat4 basis_;
};

Vec3 hopf_image(const PlaneSpan& c0, const Vec4& p);

double sphere_distance(const Vec3& a, const Vec3& b);

struct RotationDecomposition {
    double phi = 0.0;   // angle in P, in [0, pi]; |phi| <= |psi|
    double psi = 0.0;   // angle in Q, in [-pi, pi]
    PlaneSpan P;
    PlaneSpan Q;
    bool isoclinic = false;
    Chirality chirality = Chirality::NotIsoclinic;
};

// Throws IdentityRotationError for the identity and the central inversion.
RotationDecomposition decompose_rotation(const Mat4& R, double eps = 1e-9);

// Two antipodal points on C closest to D and two on D closest to C.
std::array<Vec4, 4> mark_pair(const PlaneSpan& C, const PlaneSpan& D, double eps = 1e-9);

bool verify_rotation(const PointSet4& A, const PointSet4& B, const Mat4& R, double eps = 1e-9);
bool verify_rotation(const Cloud4& A, const Cloud4& B, const Mat4& R, double eps = 1e-9);

}  // namespace hcong
