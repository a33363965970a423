#include "hypercongruence/pipeline.hpp"

#include "hypercongruence/algo_c.hpp"
#include "hypercongruence/algo_m.hpp"
#include "hypercongruence/algo_t.hpp"
#include "hypercongruence/circle_extract.hpp"
#include "hypercongruence/errors.hpp"
#include "hypercongruence/geometry.hpp"
#include "hypercongruence/lower_dim.hpp"
#include "hypercongruence/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hcong {

namespace {

struct Terminal {
    bool circles = false;
    std::vector<Vec4> points;
    std::vector<PlaneSpan> planes;
};

std::vector<Label> joint_ids(const std::vector<std::string>& mine, const std::vector<std::string>& a,
                             const std::vector<std::string>& b)
{
    std::map<std::string, double> dict;
    for (const auto& s : a) dict.emplace(s, 0.0);
    for (const auto& s : b) dict.emplace(s, 0.0);
    double next = 0.0;
    for (auto& [s, v] : dict) v = next++;
    std::vector<Label> out;
    for (const auto& s : mine) out.push_back({dict[s]});
    return out;
}

// Coincident points become one point labeled (multiplicity, sorted labels).
Cloud4 merge_duplicates(const Cloud4& C, double eps)
{
    SpatialHash<4> hash(2.0 * eps);
    Cloud4 out;
    std::vector<std::vector<double>> members;
    for (std::size_t i = 0; i < C.size(); ++i) {
        int found = -1;
        hash.visit_within(C.p[i], eps, [&](int j) {
            if (found < 0 && (out.p[static_cast<std::size_t>(j)] - C.p[i]).cwiseAbs().maxCoeff() <= eps) found = j;
        });
        if (found < 0) {
            found = static_cast<int>(out.p.size());
            hash.insert(C.p[i], found);
            out.p.push_back(C.p[i]);
            members.emplace_back();
        }
        const Label& l = C.l[i];
        members[static_cast<std::size_t>(found)].insert(members[static_cast<std::size_t>(found)].end(), l.begin(), l.end());
    }
    for (auto& m : members) {
        std::sort(m.begin(), m.end());
        Label l{static_cast<double>(m.size())};
        l.insert(l.end(), m.begin(), m.end());
        out.l.push_back(std::move(l));
    }
    return out;
}

Terminal condense(const Cloud4& W, LockstepRun& run, const Constants& k, int max_restarts)
{
    const double eps = k.eps_key;
    Cloud4 cur = W;
    for (int restart = 0;; ++restart) {
        if (restart > max_restarts) throw StallError("pipeline: restart guard exceeded");
        std::vector<Key> keys(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            keys[i] = {cur.p[i].norm()};
            if (!cur.l.empty()) keys[i].insert(keys[i].end(), cur.l[i].begin(), cur.l[i].end());
        }
        PruneResult pr = prune_by_key(keys, eps);
        std::vector<Vec4> pts;
        for (std::size_t i : pr.members) pts.push_back(cur.p[i].normalized());
        run.emit("P", pr.summary,
                 "P: prune by norm and label, " + std::to_string(pr.classes) + " classes, |A|=" + std::to_string(pts.size()));
        try {
            CExit ex = algorithm_c(pts, run, k);
            std::vector<PlaneSpan> circles;
            if (ex.kind == CExit::Kind::WellSeparated) {
                Terminal t;
                t.points = ex.points.size() >= 3 ? refine_well_separated(ex.points, run, k) : ex.points;
                run.emit("1+3", {static_cast<double>(t.points.size())}, "1+3: |A0|=" + std::to_string(t.points.size()));
                return t;
            }
            if (ex.kind == CExit::Kind::Mirror) {
                RResult r = algorithm_r(ex, run, k);
                if (r.kind == RResult::Kind::Points) {
                    cur = Cloud4{r.points, {}};
                    continue;
                }
                circles = r.circles;
            } else {
                circles = algorithm_o(ex, run, k);
            }
            MResult m = algorithm_m(circles, run, k);
            if (m.kind == MResult::Kind::Markers) {
                cur = Cloud4{m.markers, {}};
                continue;
            }
            Terminal t;
            t.circles = true;
            t.planes = m.circles;
            run.emit("2+2", {static_cast<double>(t.planes.size())}, "2+2: " + std::to_string(t.planes.size()) + " circles");
            return t;
        } catch (const StallError& e) {
            Terminal t;
            t.points = pts;
            run.emit("1+3", {-1.0, static_cast<double>(pts.size())},
                     "1+3: fallback after stall (" + std::string(e.what()) + "), |A0|=" + std::to_string(pts.size()));
            return t;
        } catch (const DuplicatePointsError& e) {
            Terminal t;
            t.points = pts;
            run.emit("1+3", {-2.0, static_cast<double>(pts.size())},
                     "1+3: fallback on coincident points, |A0|=" + std::to_string(pts.size()));
            return t;
        }
    }
}

bool lex_less(const Vec6& a, const Vec6& b, double eps)
{
    for (int i = 0; i < 6; ++i) {
        if (a[i] < b[i] - eps) return true;
        if (a[i] > b[i] + eps) return false;
    }
    return false;
}

// Rotation R with R A = B for centered, scaled, merged clouds.
Verdict decide(const Cloud4& A, const Cloud4& B, const Constants& k, const PipelineOptions& opts, std::vector<std::string>& trace)
{
    LockstepRun run(k.eps_key, opts.trace);
    Verdict v;
    try {
        run.side(LockstepRun::Side::A);
        Terminal ta = condense(A, run, k, opts.max_restarts);
        run.side(LockstepRun::Side::B);
        Terminal tb = condense(B, run, k, opts.max_restarts);
        run.sync();
        if (!ta.circles) {
            v = one_plus_three_reduce(A, B, ta.points, tb.points, k.eps_eq);
        } else {
            std::size_t base = 0;
            for (std::size_t i = 1; i < ta.planes.size(); ++i)
                if (lex_less(pluecker(ta.planes[i], k.eps_eq).coords, pluecker(ta.planes[base], k.eps_eq).coords, k.eps_eq))
                    base = i;
            std::vector<Verdict> found(tb.planes.size());
            auto hit = parallel_first(tb.planes.size(), [&](std::size_t i) {
                found[i] = two_plus_two_reduce(A, B, ta.planes[base], tb.planes[i], k.eps_eq);
                return found[i].congruent;
            });
            v = hit ? found[*hit] : Verdict::no("2+2");
        }
    } catch (const Divergence& d) {
        v = Verdict::no(d.stage);
    }
    trace = run.trace();
    return v;
}

}  // namespace

Verdict congruence_test_4d(const PointSet4& A_raw, const PointSet4& B_raw, const PipelineOptions& opts)
{
    if (A_raw.size() != B_raw.size()) throw std::invalid_argument("congruence_test_4d: point counts differ");
    if (A_raw.size() == 0) throw std::invalid_argument("congruence_test_4d: empty input");
    if (A_raw.labeled() != B_raw.labeled()) throw std::invalid_argument("congruence_test_4d: only one set is labeled");
    if (!(opts.eps_eq > 0)) throw std::invalid_argument("congruence_test_4d: tolerance must be positive");
    const Constants k = opts.constants ? *opts.constants : make_constants(opts.eps_eq);
    const double eps = k.eps_eq;

    auto [A, ca] = centroid_normalize(A_raw.points, A_raw.labels, eps);
    auto [B, cb] = centroid_normalize(B_raw.points, B_raw.labels, eps);
    double sa = 0.0, sb = 0.0;
    for (const Vec4& p : A.points) sa = std::max(sa, p.norm());
    for (const Vec4& p : B.points) sb = std::max(sb, p.norm());

    Cloud4 fa, fb;
    fa.p = A.points;
    fb.p = B.points;
    if (A.labeled()) {
        fa.l = joint_ids(A.labels, A.labels, B.labels);
        fb.l = joint_ids(B.labels, A.labels, B.labels);
    } else {
        fa.l.assign(fa.size(), Label{});
        fb.l.assign(fb.size(), Label{});
    }

    auto finish = [&](Verdict v) {
        if (v.congruent) v.translation = cb - v.rotation * ca;
        return v;
    };
    if (std::fabs(sa - sb) > eps * std::max(1.0, sa)) return Verdict::no("scale");
    if (sa <= eps) {
        Verdict v = verify_rotation(fa, fb, Mat4::Identity(), eps) ? Verdict::yes(Mat4::Identity()) : Verdict::no("labels");
        return finish(v);
    }
    for (auto& p : fa.p) p /= sa;
    for (auto& p : fb.p) p /= sa;

    Cloud4 ma = merge_duplicates(fa, eps), mb = merge_duplicates(fb, eps);
    // points at the centroid are fixed by every rotation
    auto split_origin = [&](const Cloud4& m, Cloud4& rest, std::vector<Label>& origin) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m.p[i].norm() <= eps)
                origin.push_back(m.l[i]);
            else {
                rest.p.push_back(m.p[i]);
                rest.l.push_back(m.l[i]);
            }
        }
    };
    Cloud4 wa, wb;
    std::vector<Label> oa, ob;
    split_origin(ma, wa, oa);
    split_origin(mb, wb, ob);
    if (oa.size() != ob.size() || wa.size() != wb.size()) return Verdict::no("origin");
    if (!oa.empty() && !keys_equal(oa.front(), ob.front(), eps)) return Verdict::no("origin");

    std::vector<std::string> trace;
    Verdict v = decide(wa, wb, k, opts, trace);
    if (v.congruent && !verify_rotation(fa, fb, v.rotation, eps)) v = Verdict::no("verify");
    if (!v.congruent && opts.allow_reflection) {
        Mat4 D = Mat4::Identity();
        D(3, 3) = -1.0;
        Cloud4 rb = wb;
        for (auto& p : rb.p) p = D * p;
        std::vector<std::string> rtrace;
        Verdict r = decide(wa, rb, k, opts, rtrace);
        if (r.congruent) {
            r.rotation = D * r.rotation;
            r.reflected = true;
            if (!verify_rotation(fa, fb, r.rotation, eps)) r = Verdict::no("verify");
        }
        if (opts.trace) {
            trace.push_back("reflect: retry with B mirrored");
            trace.insert(trace.end(), rtrace.begin(), rtrace.end());
        }
        if (r.congruent) v = r;
    }
    v.trace = std::move(trace);
    return finish(v);
}

Verdict congruence_test_4d(const std::vector<Vec4>& A, const std::vector<Vec4>& B, const PipelineOptions& opts)
{
    PointSet4 a, b;
    a.points = A;
    b.points = B;
    return congruence_test_4d(a, b, opts);
}

}  // namespace hcong
