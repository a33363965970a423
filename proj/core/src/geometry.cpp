#include "hypercongruence/geometry.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/tolerance.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace hcong {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Label> label_ids(const std::vector<std::string>& a, const std::vector<std::string>& b, bool first)
{
    std::map<std::string, double> dict;
    for (const auto& s : a) dict.emplace(s, 0.0);
    for (const auto& s : b) dict.emplace(s, 0.0);
    double next = 0.0;
    for (auto& [k, v] : dict) v = next++;
    const auto& src = first ? a : b;
    std::vector<Label> out;
    out.reserve(src.size());
    for (const auto& s : src) out.push_back({dict[s]});
    return out;
}

}  // namespace

PlaneSpan PlaneSpan::from(const Vec4& a, const Vec4& b)
{
    double na = a.norm();
    if (na < 1e-12) throw DegenerateInputError("plane span: zero vector");
    Vec4 u = a / na;
    Vec4 w = b - u * u.dot(b);
    double nw = w.norm();
    if (nw < 1e-12 * std::max(1.0, b.norm())) throw DegenerateInputError("plane span: dependent vectors");
    PlaneSpan s;
    s.u = u;
    s.v = w / nw;
    return s;
}

Eigen::Matrix<double, 4, 2> PlaneSpan::matrix() const
{
    Eigen::Matrix<double, 4, 2> m;
    m.col(0) = u;
    m.col(1) = v;
    return m;
}

const char* chirality_name(Chirality c)
{
    switch (c) {
    case Chirality::Left: return "left";
    case Chirality::Right: return "right";
    case Chirality::Both: return "both";
    case Chirality::NotIsoclinic: return "not-isoclinic";
    }
    return "?";
}

bool is_rotation(const Mat4& m, double eps)
{
    if ((m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff() > eps) return false;
    return std::abs(m.determinant() - 1.0) <= eps;
}

Mat4 block_rotation(double phi, double psi)
{
    Mat4 r = Mat4::Zero();
    r(0, 0) = std::cos(phi);
    r(0, 1) = -std::sin(phi);
    r(1, 0) = std::sin(phi);
    r(1, 1) = std::cos(phi);
    r(2, 2) = std::cos(psi);
    r(2, 3) = -std::sin(psi);
    r(3, 2) = std::sin(psi);
    r(3, 3) = std::cos(psi);
    return r;
}

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c)
{
    Vec4 n;
    for (int i = 0; i < 4; ++i) {
        Mat4 m;
        m.row(0) = a;
        m.row(1) = b;
        m.row(2) = c;
        m.row(3) = Vec4::Unit(i);
        n[i] = m.determinant();
    }
    return n;
}

Mat4 complete_basis(const std::vector<Vec4>& given, double eps)
{
    std::vector<Vec4> cols;
    for (const Vec4& g : given) {
        Vec4 w = g;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec4& c : cols) w -= c * c.dot(w);
        double n = w.norm();
        if (n <= eps * std::max(1.0, g.norm())) throw DegenerateInputError("complete_basis: dependent vectors");
        cols.push_back(w / n);
    }
    while (cols.size() < 3) {
        Vec4 best = Vec4::Zero();
        double best_norm = -1.0;
        for (int i = 0; i < 4; ++i) {
            Vec4 w = Vec4::Unit(i);
            for (int pass = 0; pass < 2; ++pass)
                for (const Vec4& c : cols) w -= c * c.dot(w);
            if (w.norm() > best_norm + 1e-12) {
                best_norm = w.norm();
                best = w;
            }
        }
        cols.push_back(best / best_norm);
    }
    if (cols.size() == 3) {
        Vec4 n = cross4(cols[0], cols[1], cols[2]);
        cols.push_back(n / n.norm());
    }
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.col(i) = cols[static_cast<std::size_t>(i)];
    return m;
}

std::pair<PointSet4, Vec4> centroid_normalize(const std::vector<Vec4>& raw, const std::vector<std::string>& labels,
                                              double eps)
{
    if (raw.empty()) throw std::invalid_argument("centroid_normalize: empty input");
    if (!labels.empty() && labels.size() != raw.size())
        throw std::invalid_argument("centroid_normalize: label count differs from point count");
    const Vec4 c = mean_of<4>(raw);
    PointSet4 out;
    out.labels = labels;
    out.points.reserve(raw.size());
    for (const Vec4& p : raw) {
        out.points.push_back(p - c);
        if (out.points.back().norm() <= eps) ++out.origin_count;
    }
    return {out, c};
}

AnglePair angle_between_planes(const PlaneSpan& P, const PlaneSpan& Q)
{
    const auto mp = P.matrix();
    const auto mq = Q.matrix();
    Eigen::Matrix2d m = mp.transpose() * mq;
    Eigen::JacobiSVD<Eigen::Matrix2d> cs(m);
    Eigen::Matrix<double, 4, 2> resid = mq - mp * m;
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> sn(resid);
    double cmax = std::clamp(cs.singularValues()[0], 0.0, 1.0);
    double cmin = std::clamp(cs.singularValues()[1], 0.0, 1.0);
    double smax = std::clamp(sn.singularValues()[0], 0.0, 1.0);
    double smin = std::clamp(sn.singularValues()[1], 0.0, 1.0);
    AnglePair a;
    a.alpha = std::atan2(smin, cmax);
    a.beta = std::atan2(smax, cmin);
    if (a.alpha > a.beta) std::swap(a.alpha, a.beta);
    return a;
}

PlueckerVector pluecker(const PlaneSpan& P, double eps)
{
    const Vec4& x = P.u;
    const Vec4& y = P.v;
    PlueckerVector r;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) r.coords[k++] = x[i] * y[j] - x[j] * y[i];
    r.coords.normalize();
    for (int i = 0; i < 6; ++i) {
        if (std::abs(r.coords[i]) > eps) {
            if (r.coords[i] < 0) r.coords = -r.coords;
            break;
        }
    }
    return r;
}

double pluecker_distance(const PlueckerVector& p, const PlueckerVector& q)
{
    return std::min((p.coords - q.coords).norm(), (p.coords + q.coords).norm());
}

double pluecker_distance(const PlaneSpan& P, const PlaneSpan& Q) { return pluecker_distance(pluecker(P), pluecker(Q)); }

double pluecker_closed_form(const AnglePair& a)
{
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::cos(a.alpha) * std::cos(a.beta))));
}

Chirality chirality(const PlaneSpan& P, const PlaneSpan& Q, double eps)
{
    AnglePair a = angle_between_planes(P, Q);
    if (a.beta - a.alpha > eps) return Chirality::NotIsoclinic;
    if (a.beta <= eps || a.alpha >= kPi / 2 - eps) return Chirality::Both;
    Vec4 v1 = P.u, v2 = P.v;
    Vec4 p1 = Q.project(v1), p2 = Q.project(v2);
    Vec4 w1 = p1 - P.project(p1), w2 = p2 - P.project(p2);
    Mat4 m;
    m.col(0) = v1;
    m.col(1) = v2;
    m.col(2) = w1;
    m.col(3) = w2;
    return m.determinant() > 0 ? Chirality::Right : Chirality::Left;
}

HopfFrame::HopfFrame(const PlaneSpan& c0, bool left)
{
    basis_ = complete_basis({c0.u, c0.v});
    if (left) basis_.col(3) = -basis_.col(3);
}

Vec3 HopfFrame::image(const Vec4& p) const
{
    Vec4 q = basis_.transpose() * p;
    q.normalize();
    const double x = q[0], y = q[1], z = q[2], w = q[3];
    Vec3 h(2 * (x * w - y * z), 2 * (y * w + x * z), 1 - 2 * (z * z + w * w));
    return h.normalized();
}

PlaneSpan HopfFrame::fiber(const Vec3& s) const
{
    Vec3 t = s.normalized();
    const double gamma = std::atan2(std::hypot(t[0], t[1]), t[2]) / 2.0;
    const double delta = std::atan2(t[0], t[1]);
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    const double cd = std::cos(delta), sd = std::sin(delta);
    Vec4 u(cg, 0.0, cd * sg, sd * sg);
    Vec4 v(0.0, cg, -sd * sg, cd * sg);
    PlaneSpan f;
    f.u = basis_ * u;
    f.v = basis_ * v;
    return f;
}

Vec3 hopf_image(const PlaneSpan& c0, const Vec4& p) { return HopfFrame(c0, false).image(p); }

double sphere_distance(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

RotationDecomposition decompose_rotation(const Mat4& R, double eps)
{
    if ((R - Mat4::Identity()).cwiseAbs().maxCoeff() <= eps) throw IdentityRotationError("decompose_rotation: identity");
    if ((R + Mat4::Identity()).cwiseAbs().maxCoeff() <= eps)
        throw IdentityRotationError("decompose_rotation: central inversion");

    Eigen::RealSchur<Mat4> schur(R);
    const Mat4& T = schur.matrixT();
    const Mat4& U = schur.matrixU();

    struct Plane {
        Vec4 a, b;
        double angle;
    };
    std::vector<Plane> planes;
    std::vector<std::pair<int, double>> singles;
    for (int i = 0; i < 4;) {
        if (i < 3 && T(i + 1, i) != 0.0) {
            double c = 0.5 * (T(i, i) + T(i + 1, i + 1));
            double s = 0.5 * (T(i + 1, i) - T(i, i + 1));
            planes.push_back({U.col(i), U.col(i + 1), std::atan2(s, c)});
            i += 2;
        } else {
            singles.emplace_back(i, T(i, i));
            i += 1;
        }
    }
    for (double sign : {1.0, -1.0}) {
        std::vector<int> cols;
        for (auto& [i, val] : singles)
            if ((val > 0) == (sign > 0)) cols.push_back(i);
        for (std::size_t k = 0; k + 1 < cols.size(); k += 2)
            planes.push_back({U.col(cols[k]), U.col(cols[k + 1]), sign > 0 ? 0.0 : kPi});
    }
    if (planes.size() != 2) throw std::domain_error("decompose_rotation: input is not a rotation");

    for (auto& p : planes) {
        if (p.angle < 0) {
            p.b = -p.b;
            p.angle = -p.angle;
        }
    }
    if (planes[1].angle < planes[0].angle) std::swap(planes[0], planes[1]);
    Mat4 f;
    f.col(0) = planes[0].a;
    f.col(1) = planes[0].b;
    f.col(2) = planes[1].a;
    f.col(3) = planes[1].b;
    if (f.determinant() < 0) {
        planes[1].b = -planes[1].b;
        planes[1].angle = -planes[1].angle;
    }

    RotationDecomposition d;
    d.phi = planes[0].angle;
    d.psi = planes[1].angle;
    d.P = PlaneSpan::from(planes[0].a, planes[0].b);
    d.Q = PlaneSpan::from(planes[1].a, planes[1].b);
    if (std::abs(std::abs(d.phi) - std::abs(d.psi)) <= eps) {
        d.isoclinic = true;
        if (std::abs(d.phi - d.psi) <= eps)
            d.chirality = Chirality::Right;
        else
            d.chirality = Chirality::Left;
    }
    return d;
}

std::array<Vec4, 4> mark_pair(const PlaneSpan& C, const PlaneSpan& D, double eps)
{
    Eigen::Matrix2d m = C.matrix().transpose() * D.matrix();
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    if (std::abs(sv[0] - sv[1]) <= eps) throw CliffordParallelError("mark_pair: Clifford-parallel circles");
    Vec4 c = C.matrix() * svd.matrixU().col(0);
    Vec4 d = D.matrix() * svd.matrixV().col(0);
    c.normalize();
    d.normalize();
    return {c, Vec4(-c), d, Vec4(-d)};
}

bool verify_rotation(const Cloud4& A, const Cloud4& B, const Mat4& R, double eps)
{
    if (A.size() != B.size()) return false;
    std::vector<Vec4> ra;
    ra.reserve(A.size());
    for (const Vec4& p : A.p) ra.push_back(R * p);
    return match_multisets<4>(ra, A.l, B.p, B.l, eps);
}

bool verify_rotation(const PointSet4& A, const PointSet4& B, const Mat4& R, double eps)
{
    if (A.size() != B.size()) return false;
    if (A.labeled() != B.labeled()) return false;
    Cloud4 a{A.points, {}}, b{B.points, {}};
    if (A.labeled()) {
        a.l = label_ids(A.labels, B.labels, true);
        b.l = label_ids(A.labels, B.labels, false);
    }
    return verify_rotation(a, b, R, eps);
}

}  // namespace hcong
