#include "hypercongruence/lower_dim.hpp"

#include "hypercongruence/algo_k.hpp"
#include "hypercongruence/condense.hpp"
#include "hypercongruence/geometry.hpp"
#include "hypercongruence/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace hcong {

namespace {

Mat3 axis_frame(const Vec3& a)
{
    Vec3 z = a.normalized();
    int k = 0;
    z.cwiseAbs().minCoeff(&k);
    Vec3 e1 = Vec3::Unit(k) - z * z[k];
    e1.normalize();
    Mat3 f;
    f.col(0) = e1;
    f.col(1) = z.cross(e1);
    f.col(2) = z;
    return f;
}

Mat3 pair_frame(const Vec3& p, const Vec3& q)
{
    Mat3 f;
    f.col(0) = p;
    f.col(1) = (q - p * p.dot(q)).normalized();
    f.col(2) = f.col(0).cross(f.col(1));
    return f;
}

Mat3 rot_z(double t)
{
    Mat3 r = Mat3::Identity();
    r(0, 0) = r(1, 1) = std::cos(t);
    r(0, 1) = -std::sin(t);
    r(1, 0) = std::sin(t);
    return r;
}

Cloud3 centered(const Cloud3& C)
{
    Cloud3 out = C;
    const Vec3 c = mean_of<3>(C.p);
    for (Vec3& p : out.p) p -= c;
    return out;
}

bool same_3d(const Cloud3& A, const Cloud3& B, const Mat3& S, double eps)
{
    std::vector<Vec3> moved;
    moved.reserve(A.size());
    for (const Vec3& p : A.p) moved.push_back(S * p);
    return match_multisets<3>(moved, A.l, B.p, B.l, eps);
}

// Shell of the least frequent (label, radius) class, scaled to the unit sphere.
// Among equally small classes the outermost one wins; its directions are the
// best conditioned.
std::vector<Vec3> shell(const Cloud3& C, double eps)
{
    std::vector<Key> keys;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < C.size(); ++i) {
        double r = C.p[i].norm();
        if (r <= eps) continue;
        Key k{-r};
        if (!C.l.empty()) k.insert(k.end(), C.l[i].begin(), C.l[i].end());
        keys.push_back(std::move(k));
        ids.push_back(i);
    }
    std::vector<Vec3> out;
    if (keys.empty()) return out;
    for (std::size_t j : prune_by_key(keys, eps).members) out.push_back(C.p[ids[j]].normalized());
    return out;
}

std::optional<Mat3> around_axis(const Cloud3& A, const Cloud3& B, const Vec3& a, const Vec3& b, double eps)
{
    Mat3 fa = axis_frame(a), fb = axis_frame(b);
    auto cyl = [&](const Cloud3& C, const Mat3& f, std::vector<double>& ang, std::vector<Label>& lab,
                   std::vector<double>& wt, std::vector<Vec3>& axis_pts, std::vector<Label>& axis_lab) {
        for (std::size_t i = 0; i < C.size(); ++i) {
            Vec3 x = f.transpose() * C.p[i];
            double rho = std::hypot(x[0], x[1]);
            Label l{x[2]};
            if (!C.l.empty()) l.insert(l.end(), C.l[i].begin(), C.l[i].end());
            if (rho <= eps) {
                axis_pts.emplace_back(0.0, 0.0, x[2]);
                axis_lab.push_back(C.l.empty() ? Label{} : C.l[i]);
                continue;
            }
            l.insert(l.begin() + 1, rho);
            ang.push_back(wrap_angle(std::atan2(x[1], x[0])));
            lab.push_back(std::move(l));
            wt.push_back(rho * rho);
        }
    };
    std::vector<double> aa, ba, aw, bw;
    std::vector<Label> al, bl, aal, bal;
    std::vector<Vec3> ap, bp;
    cyl(A, fa, aa, al, aw, ap, aal);
    cyl(B, fb, ba, bl, bw, bp, bal);
    if (!match_multisets<3>(ap, aal, bp, bal, eps)) return std::nullopt;
    auto t = congruence_2d_labeled(aa, al, ba, bl, 1e2 * eps, aw, bw);
    if (!t) return std::nullopt;
    return fb * rot_z(*t) * fa.transpose();
}

}  // namespace

std::optional<Mat3> congruence_3d_labeled(const Cloud3& A_in, const Cloud3& B_in, double eps)
{
    if (A_in.size() != B_in.size()) return std::nullopt;
    if (A_in.size() == 0) return Mat3::Identity();
    Cloud3 A = centered(A_in), B = centered(B_in);
    std::vector<Vec3> fa = shell(A, eps), fb = shell(B, eps);
    if (fa.size() != fb.size()) return std::nullopt;
    if (fa.empty()) {
        if (same_3d(A, B, Mat3::Identity(), eps)) return Mat3::Identity();
        return std::nullopt;
    }
    KResult ka = condense_sphere(fa, eps), kb = condense_sphere(fb, eps);
    if (ka.config != kb.config || ka.points.size() != kb.points.size()) return std::nullopt;

    if (ka.config == SphereConfig::Point || ka.config == SphereConfig::Antipodal) {
        std::vector<Vec3> cands{kb.points.front()};
        if (kb.config == SphereConfig::Antipodal) cands.push_back(-kb.points.front());
        for (const Vec3& b : cands) {
            auto S = around_axis(A, B, ka.points.front(), b, eps);
            if (S && same_3d(A, B, *S, 1e2 * eps)) return S;
        }
        return std::nullopt;
    }

    const Vec3 p0 = ka.points[0];
    std::size_t j = 1;
    while (j < ka.points.size() && std::fabs(std::fabs(p0.dot(ka.points[j])) - 1.0) <= 1e-6) ++j;
    if (j == ka.points.size()) return std::nullopt;
    const Vec3 p1 = ka.points[j];
    const double c = p0.dot(p1);
    Mat3 ga = pair_frame(p0, p1);
    for (const Vec3& q0 : kb.points)
        for (const Vec3& q1 : kb.points) {
            if (std::fabs(q0.dot(q1) - c) > 1e-6) continue;
            Mat3 S = pair_frame(q0, q1) * ga.transpose();
            if (same_3d(A, B, S, 1e2 * eps)) return S;
        }
    return std::nullopt;
}

Verdict one_plus_three_reduce(const Cloud4& A, const Cloud4& B, const std::vector<Vec4>& A0, const std::vector<Vec4>& B0,
                              double eps)
{
    if (A.size() != B.size() || A0.empty() || A0.size() != B0.size()) return Verdict::no("1+3");
    Vec4 a0 = A0.front();
    for (const Vec4& a : A0)
        if (std::lexicographical_compare(a.data(), a.data() + 4, a0.data(), a0.data() + 4)) a0 = a;
    auto project = [](const Cloud4& C, const Mat4& f) {
        Cloud3 out;
        out.p.reserve(C.size());
        out.l.reserve(C.size());
        for (std::size_t i = 0; i < C.size(); ++i) {
            Vec4 x = f.transpose() * C.p[i];
            out.p.emplace_back(x[1], x[2], x[3]);
            Label l{x[0]};
            if (!C.l.empty()) l.insert(l.end(), C.l[i].begin(), C.l[i].end());
            out.l.push_back(std::move(l));
        }
        return out;
    };
    Mat4 fa = complete_basis({a0.normalized()});
    Cloud3 A3 = project(A, fa);
    std::vector<Mat4> found(B0.size());
    auto hit = parallel_first(B0.size(), [&](std::size_t i) {
        const Vec4& b = B0[i];
        if (std::fabs(b.norm() - a0.norm()) > 1e3 * eps) return false;
        Mat4 fb = complete_basis({b.normalized()});
        auto S = congruence_3d_labeled(A3, project(B, fb), eps);
        if (!S) return false;
        Mat4 lift = Mat4::Identity();
        lift.block<3, 3>(1, 1) = *S;
        found[i] = fb * lift * fa.transpose();
        return verify_rotation(A, B, found[i], eps);
    });
    if (hit) return Verdict::yes(found[*hit]);
    return Verdict::no("1+3");
}

}  // namespace hcong
