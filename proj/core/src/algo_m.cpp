#include "hypercongruence/algo_m.hpp"

#include "hypercongruence/algo_k.hpp"
#include "hypercongruence/closest_pair.hpp"
#include "hypercongruence/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace hcong {

namespace {

enum class State { None, Left, Right };

const char* state_name(State s) { return s == State::None ? "none" : s == State::Left ? "left" : "right"; }

bool lex_less(const PlueckerVector& a, const PlueckerVector& b, double eps)
{
    for (int i = 0; i < 6; ++i) {
        if (a.coords[i] < b.coords[i] - eps) return true;
        if (a.coords[i] > b.coords[i] + eps) return false;
    }
    return false;
}

}  // namespace

MResult algorithm_m(const std::vector<PlaneSpan>& input, LockstepRun& run, const Constants& k)
{
    const double eps = k.eps_key;
    if (input.empty()) throw std::invalid_argument("algorithm_m: no circles");
    // M1
    std::vector<PlaneSpan> P = input;
    std::vector<int> cls(P.size());
    std::iota(cls.begin(), cls.end(), 0);
    State state = State::None;

    for (int round = 0;; ++round) {
        // M2
        std::map<int, int> size_of;
        for (int c : cls) ++size_of[c];
        std::map<int, int> freq;  // class size -> number of classes
        for (auto& [c, s] : size_of) ++freq[s];
        int keep_size = freq.begin()->first, best = freq.begin()->second;
        for (auto& [s, f] : freq)
            if (f < best) keep_size = s, best = f;
        Key m2{static_cast<double>(freq.size())};
        for (auto& [s, f] : freq) {
            m2.push_back(s);
            m2.push_back(f);
        }
        {
            std::vector<PlaneSpan> np;
            std::vector<int> nc;
            for (std::size_t i = 0; i < P.size(); ++i)
                if (size_of[cls[i]] == keep_size) {
                    np.push_back(P[i]);
                    nc.push_back(cls[i]);
                }
            P = std::move(np);
            cls = std::move(nc);
        }
        run.emit("M2", m2, "M2: keep classes of size " + std::to_string(keep_size) + ", |P|=" + std::to_string(P.size()));

        // M3
        if (static_cast<int>(P.size()) <= k.C1 || P.size() < 2) {
            run.emit("M3", {static_cast<double>(P.size())}, "M3: few circles, |P|=" + std::to_string(P.size()));
            MResult r;
            r.kind = MResult::Kind::FewCircles;
            r.circles = P;
            return r;
        }
        // M4
        if (keep_size == 1) state = State::None;

        // M5
        std::vector<PlueckerVector> pl(P.size());
        std::vector<Vec6> pv(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) {
            pl[i] = pluecker(P[i], eps);
            pv[i] = pl[i].coords;
        }
        ClosestPairGraph H = closest_pair_graph(pv, true, k.eps_eq);

        // M6
        std::vector<std::pair<int, int>> EL, ER, EN;
        for (auto [a, b] : H.edges) {
            Chirality ch = chirality(P[static_cast<std::size_t>(a)], P[static_cast<std::size_t>(b)], eps);
            if (ch == Chirality::NotIsoclinic)
                EN.emplace_back(a, b);
            else if (ch == Chirality::Left || (ch == Chirality::Both && state == State::Left))
                EL.emplace_back(a, b);
            else
                ER.emplace_back(a, b);
        }
        run.emit("M6", {H.delta, static_cast<double>(EL.size()), static_cast<double>(ER.size()), static_cast<double>(EN.size())},
                 "M6: H delta=" + std::to_string(H.delta) + " |EL|=" + std::to_string(EL.size()) + " |ER|=" +
                     std::to_string(ER.size()) + " |EN|=" + std::to_string(EN.size()) + " chirality=" + state_name(state));

        std::vector<std::pair<int, int>> N;
        if (!EN.empty()) {
            // M7
            N = EN;
        } else if ((!EL.empty() && state == State::Right) || (!ER.empty() && state == State::Left)) {
            // M8 / M9: pair each cross-chirality neighbour with the closest
            // circles of the own bundle class
            const auto& E = state == State::Right ? EL : ER;
            std::vector<std::vector<int>> members;
            std::map<int, int> slot;
            for (std::size_t i = 0; i < P.size(); ++i) {
                auto [it, fresh] = slot.emplace(cls[i], static_cast<int>(members.size()));
                if (fresh) members.emplace_back();
                members[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
            }
            std::set<std::pair<int, int>> out;
            auto closest_in_class = [&](int c) {
                std::vector<int> best_ids;
                double best = 1e300;
                for (int o : members[static_cast<std::size_t>(slot[cls[static_cast<std::size_t>(c)]])]) {
                    if (o == c) continue;
                    double d = pluecker_distance(pl[static_cast<std::size_t>(c)], pl[static_cast<std::size_t>(o)]);
                    if (d < best - eps) {
                        best = d;
                        best_ids = {o};
                    } else if (d <= best + eps) {
                        best_ids.push_back(o);
                    }
                }
                return best_ids;
            };
            for (auto [a, b] : E) {
                for (auto [c, d] : {std::pair<int, int>{a, b}, std::pair<int, int>{b, a}}) {
                    for (int cp : closest_in_class(c)) {
                        if (chirality(P[static_cast<std::size_t>(cp)], P[static_cast<std::size_t>(d)], eps) !=
                            Chirality::NotIsoclinic)
                            continue;
                        out.insert({std::min(cp, d), std::max(cp, d)});
                    }
                }
            }
            N.assign(out.begin(), out.end());
            if (N.empty()) throw StallError("algorithm M: no non-parallel pairs from equivalent circles");
        } else {
            // M10 / M11: merge classes connected in E_L (resp. E_R) and
            // condense every merged class through its Hopf map
            const bool left = !EL.empty() && state != State::Right;
            const auto& E = left ? EL : ER;
            std::map<int, int> parent;
            for (int c : cls) parent[c] = c;
            std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
            for (auto [a, b] : E) {
                int ra = root(cls[static_cast<std::size_t>(a)]), rb = root(cls[static_cast<std::size_t>(b)]);
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
            std::map<int, std::vector<int>> merged;
            for (std::size_t i = 0; i < P.size(); ++i) merged[root(cls[i])].push_back(static_cast<int>(i));
            std::size_t before_kept = 0;
            {
                std::set<int> kept(cls.begin(), cls.end());
                before_kept = kept.size();
            }

            std::vector<PlaneSpan> np;
            std::vector<int> nc;
            Key ktrace;
            int next = 0;
            for (auto& [r, mem] : merged) {
                int base = mem.front();
                for (int i : mem)
                    if (lex_less(pl[static_cast<std::size_t>(i)], pl[static_cast<std::size_t>(base)], eps)) base = i;
                HopfFrame h(P[static_cast<std::size_t>(base)], left);
                std::vector<Vec3> img;
                for (int i : mem) img.push_back(h.image(P[static_cast<std::size_t>(i)]));
                KResult kr = condense_sphere(img, k.eps_eq);
                ktrace.push_back(static_cast<double>(kr.points.size()));
                for (const Vec3& s : kr.points) {
                    np.push_back(h.fiber(s));
                    nc.push_back(next);
                }
                ++next;
            }
            std::string which = left ? "M10" : "M11";
            Key key{static_cast<double>(before_kept), static_cast<double>(merged.size()), static_cast<double>(np.size())};
            run.emit(which, key,
                     which + ": merge " + std::to_string(before_kept) + " classes into " + std::to_string(merged.size()) +
                         ", |P|=" + std::to_string(np.size()));
            if (merged.size() == before_kept) {
                // classes stopped shrinking: the remaining family is small
                run.emit("M3", {static_cast<double>(P.size())}, "M3: stalled, |P|=" + std::to_string(P.size()));
                MResult r;
                r.kind = MResult::Kind::FewCircles;
                r.circles = P;
                return r;
            }
            P = std::move(np);
            cls = std::move(nc);
            state = left ? State::Left : State::Right;
            continue;
        }

        // M12
        std::vector<Vec4> marks;
        for (auto [a, b] : N) {
            auto m = mark_pair(P[static_cast<std::size_t>(a)], P[static_cast<std::size_t>(b)], eps);
            marks.insert(marks.end(), m.begin(), m.end());
        }
        marks = dedupe_points<4>(marks, eps);
        run.emit("M12", {static_cast<double>(N.size()), static_cast<double>(marks.size())},
                 "M12: " + std::to_string(N.size()) + " pairs, " + std::to_string(marks.size()) + " markers");
        MResult r;
        r.kind = MResult::Kind::Markers;
        r.markers = std::move(marks);
        r.pairs = N.size();
        return r;
    }
}

}  // namespace hcong
