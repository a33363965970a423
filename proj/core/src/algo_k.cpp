#include "hypercongruence/algo_k.hpp"

#include "hypercongruence/errors.hpp"
#include "hypercongruence/geometry.hpp"
#include "hypercongruence/hull3.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace hcong {

namespace {

Vec3 unit(const Vec3& v) { return v / v.norm(); }

std::vector<Vec3> face_centroids(const std::vector<Vec3>& F, const Hull3& h, const std::vector<std::size_t>& which)
{
    std::vector<Vec3> out;
    for (auto f : which) {
        Vec3 c = Vec3::Zero();
        for (int q : h.faces[f]) c += F[static_cast<std::size_t>(q)];
        out.push_back(unit(c));
    }
    return out;
}

}  // namespace

const char* config_name(SphereConfig c)
{
    switch (c) {
    case SphereConfig::Point: return "point";
    case SphereConfig::Antipodal: return "antipodal pair";
    case SphereConfig::Tetrahedron: return "tetrahedron";
    case SphereConfig::Octahedron: return "octahedron";
    case SphereConfig::Icosahedron: return "icosahedron";
    }
    return "?";
}

KResult condense_sphere(const std::vector<Vec3>& input, double eps)
{
    if (input.empty()) throw std::invalid_argument("condense_sphere: empty input");
    const double tol = std::max(eps, 1e-10) * 10.0;
    KResult res;
    std::vector<Vec3> F;
    for (const Vec3& p : input) F.push_back(unit(p));
    F = dedupe_points<3>(F, tol);

    for (int guard = 0; guard < 256; ++guard) {
        res.trace.push_back(static_cast<double>(F.size()));
        if (F.size() == 1) {
            res.points = F;
            res.config = SphereConfig::Point;
            return res;
        }
        const Vec3 c = mean_of<3>(F);
        if (c.norm() > tol) {
            F = {unit(c)};
            continue;
        }
        int rk = rank3(F, tol);
        if (rk <= 1) {
            res.points = F;
            res.config = SphereConfig::Antipodal;
            return res;
        }
        if (rk == 2) {
            Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, static_cast<Eigen::Index>(F.size()));
            for (std::size_t i = 0; i < F.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = F[i];
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
            Vec3 n = svd.matrixU().col(2);
            res.points = {n, Vec3(-n)};
            res.config = SphereConfig::Antipodal;
            res.trace.push_back(2.0);
            return res;
        }

        Hull3 h = convex_hull3(F, tol);
        const std::size_t n = F.size();
        std::vector<std::set<int>> nb(n);
        std::map<std::pair<int, int>, double> edges;
        for (const auto& f : h.faces)
            for (std::size_t i = 0; i < f.size(); ++i) {
                int a = f[i], b = f[(i + 1) % f.size()];
                nb[static_cast<std::size_t>(a)].insert(b);
                nb[static_cast<std::size_t>(b)].insert(a);
                edges[{std::min(a, b), std::max(a, b)}] = (F[static_cast<std::size_t>(a)] - F[static_cast<std::size_t>(b)]).norm();
            }

        // vertex degree
        std::vector<Key> vk(n);
        for (std::size_t i = 0; i < n; ++i) vk[i] = {static_cast<double>(nb[i].size())};
        PruneResult pv = prune_by_key(vk, 0.5);
        if (pv.progress) {
            std::vector<Vec3> next;
            for (auto i : pv.members) next.push_back(F[i]);
            F = next;
            continue;
        }

        // face degree
        std::vector<Key> fk(h.faces.size());
        for (std::size_t f = 0; f < h.faces.size(); ++f) fk[f] = {static_cast<double>(h.faces[f].size())};
        PruneResult pf = prune_by_key(fk, 0.5);
        if (pf.progress) {
            F = face_centroids(F, h, pf.members);
            continue;
        }
        const std::size_t face_deg = h.faces.front().size();
        if (face_deg > 3) {
            std::vector<std::size_t> all(h.faces.size());
            for (std::size_t f = 0; f < all.size(); ++f) all[f] = f;
            F = face_centroids(F, h, all);
            continue;
        }

        // triangles: equal edge lengths?
        std::vector<std::pair<int, int>> elist;
        std::vector<double> elen;
        for (auto& [e, l] : edges) {
            elist.push_back(e);
            elen.push_back(l);
        }
        std::vector<int> ecls = tolerance_cluster(elen, tol);
        const int nec = count_classes(ecls);
        if (nec > 1) {
            std::vector<Key> ek(elen.size());
            for (std::size_t i = 0; i < elen.size(); ++i) ek[i] = {static_cast<double>(ecls[i])};
            PruneResult pe = prune_by_key(ek, 0.5);
            if (pe.members.size() < n) {
                std::vector<Vec3> mids;
                for (auto i : pe.members)
                    mids.push_back(unit(F[static_cast<std::size_t>(elist[i].first)] + F[static_cast<std::size_t>(elist[i].second)]));
                F = mids;
                continue;
            }
            std::map<std::pair<int, int>, int> cls_of;
            for (std::size_t i = 0; i < elist.size(); ++i) cls_of[elist[i]] = ecls[i];
            std::vector<Key> tk(h.faces.size());
            for (std::size_t f = 0; f < h.faces.size(); ++f) {
                const auto& t = h.faces[f];
                Key k;
                for (std::size_t i = 0; i < 3; ++i) {
                    int a = t[i], b = t[(i + 1) % 3];
                    k.push_back(cls_of[{std::min(a, b), std::max(a, b)}]);
                }
                std::sort(k.begin(), k.end());
                tk[f] = k;
            }
            PruneResult pt = prune_by_key(tk, 0.5);
            if (!pt.progress) throw StallError("condense_sphere: congruent faces with unequal edges");
            F = face_centroids(F, h, pt.members);
            continue;
        }

        res.points = F;
        if (n == 4)
            res.config = SphereConfig::Tetrahedron;
        else if (n == 6)
            res.config = SphereConfig::Octahedron;
        else if (n == 12)
            res.config = SphereConfig::Icosahedron;
        else
            throw StallError("condense_sphere: unexpected regular configuration");
        return res;
    }
    throw StallError("condense_sphere: no convergence");
}

}  // namespace hcong
