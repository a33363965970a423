#include "hypercongruence/closest_pair.hpp"
#include "hypercongruence/harness.hpp"
#include "hypercongruence/pipeline.hpp"
#include "hypercongruence/point_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

using namespace hcong;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t max_generated_points = std::uint64_t{1} << 24;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    double tolerance = 1e-9;
    bool reflect = false;
    bool json = false;
    bool trace = false;
    std::uint64_t seed = 1;
};

void print_verdict(const Verdict& v, const Flags& f)
{
    if (f.json) {
        json j;
        j["verdict"] = v.congruent ? "congruent" : "not congruent";
        if (v.congruent) {
            json rows = json::array();
            for (int i = 0; i < 4; ++i)
                rows.push_back({v.rotation(i, 0), v.rotation(i, 1), v.rotation(i, 2), v.rotation(i, 3)});
            j["rotation"] = rows;
            j["translation"] = {v.translation[0], v.translation[1], v.translation[2], v.translation[3]};
            j["reflected"] = v.reflected;
        } else {
            j["stage"] = v.stage;
        }
        if (f.trace) j["stage_trace"] = v.trace;
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (f.trace)
        for (const auto& line : v.trace) std::cout << "# " << line << "\n";
    if (!v.congruent) {
        std::cout << "not congruent";
        if (!v.stage.empty()) std::cout << " (diverged at " << v.stage << ")";
        std::cout << "\n";
        return;
    }
    std::cout << (v.reflected ? "congruent (with reflection)\n" : "congruent\n");
    std::cout << "rotation:\n";
    for (int i = 0; i < 4; ++i) {
        std::cout << " ";
        for (int j = 0; j < 4; ++j) std::cout << " " << format_double(v.rotation(i, j));
        std::cout << "\n";
    }
    std::cout << "translation:";
    for (int i = 0; i < 4; ++i) std::cout << " " << format_double(v.translation[i]);
    std::cout << "\n";
}

double number(const std::vector<std::string>& p, std::size_t i, double fallback)
{
    if (i >= p.size()) return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(p[i], &used);
        if (used != p[i].size()) throw std::invalid_argument(p[i]);
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad parameter '" + p[i] + "'");
    }
}

std::int64_t integer(const std::vector<std::string>& p, std::size_t i, std::int64_t fallback)
{
    double v = number(p, i, static_cast<double>(fallback));
    if (v != std::floor(v)) throw UsageError("expected an integer, got '" + p[i] + "'");
    return static_cast<std::int64_t>(v);
}

std::int64_t required(const std::vector<std::string>& p, std::size_t i, const char* name)
{
    if (i >= p.size()) throw UsageError(std::string("missing parameter ") + name);
    return integer(p, i, 0);
}

void guard(std::uint64_t n)
{
    if (n > max_generated_points)
        throw UsageError("instance of " + std::to_string(n) + " points exceeds the limit of " +
                         std::to_string(max_generated_points));
}

PointSet4 generate(const std::string& family, const std::vector<std::string>& p, std::uint64_t seed)
{
    if (family == "random") {
        std::int64_t n = required(p, 0, "N");
        if (n < 1) throw UsageError("N must be positive");
        guard(static_cast<std::uint64_t>(n));
        return gen_congruent_pair(static_cast<std::size_t>(n), seed).A;
    }
    if (family == "torus-grid") {
        std::int64_t a = required(p, 0, "P"), b = required(p, 1, "Q");
        if (a < 3 || b < 3) throw UsageError("P and Q must be at least 3");
        guard(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
        double r1 = number(p, 2, 0.6);
        if (!(r1 > 0 && r1 < 1)) throw UsageError("R1 must lie in (0, 1)");
        return gen_torus_grid(static_cast<int>(a), static_cast<int>(b), r1);
    }
    if (family == "helix") {
        std::int64_t l = required(p, 0, "L"), k = integer(p, 1, 2);
        if (l < 8) throw UsageError("L must be at least 8");
        guard(static_cast<std::uint64_t>(l));
        double r1 = number(p, 2, 0.8);
        if (!(r1 > 0 && r1 < 1)) throw UsageError("R1 must lie in (0, 1)");
        return gen_orbit_helix(static_cast<int>(l), static_cast<int>(k), r1, seed);
    }
    if (family == "hopf") {
        std::int64_t m = required(p, 0, "M"), s = required(p, 1, "SAMPLES");
        if (m < 1 || s < 3) throw UsageError("need M >= 1 and SAMPLES >= 3");
        guard(static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(s));
        return gen_hopf_circles(static_cast<int>(m), static_cast<int>(s), seed).points;
    }
    if (family == "polytope") {
        if (p.empty()) throw UsageError("missing polytope name");
        try {
            return gen_regular_polytope(p[0]);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("unknown family '" + family + "'");
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

template <class F>
double best_time(int reps, F&& f)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Congruence testing for point sets in four dimensions"};
    app.require_subcommand(1);
    Flags f;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--tolerance", f.tolerance, "Equality tolerance")->check(CLI::PositiveNumber);
        sub->add_flag("--reflect", f.reflect, "Allow improper orthogonal maps");
        sub->add_flag("--json", f.json, "Machine-readable output");
        sub->add_flag("--trace", f.trace, "Print the stage trace");
        sub->add_option("--seed", f.seed, "Random seed");
    };

    std::string file_a, file_b;
    auto* test = app.add_subcommand("test", "Decide whether B is a rotated and translated copy of A");
    test->add_option("A", file_a)->required();
    test->add_option("B", file_b)->required();
    common(test);

    auto* oracle = app.add_subcommand("oracle", "Brute-force decision for at most 10 points");
    oracle->add_option("A", file_a)->required();
    oracle->add_option("B", file_b)->required();
    common(oracle);

    std::string family, out, pair_out;
    std::vector<std::string> params;
    bool mirror = false;
    double perturb = 0.0;
    auto* gen = app.add_subcommand("generate", "Write an instance: random N | torus-grid P Q [R1] | "
                                               "helix L [K] [R1] | hopf M SAMPLES | polytope NAME");
    gen->add_option("family", family)->required();
    gen->add_option("params", params);
    gen->add_option("-o,--out", out, "Output file (default stdout)");
    gen->add_option("--pair", pair_out, "Also write a rotated, translated and shuffled copy");
    gen->add_flag("--mirror", mirror, "Reflect the copy written by --pair");
    gen->add_option("--perturb", perturb, "Move one coordinate of the copy by this amount");
    common(gen);

    int min_exp = 10, max_exp = 17, reps = 3;
    std::string bench_stage = "pipeline";
    auto* bench = app.add_subcommand("bench", "Time random rotated pairs of size 2^k and fit the log-log slope");
    bench->add_option("--min-exp", min_exp)->check(CLI::Range(1, 24));
    bench->add_option("--max-exp", max_exp)->check(CLI::Range(1, 24));
    bench->add_option("--reps", reps)->check(CLI::Range(1, 100));
    bench->add_option("--stage", bench_stage)->check(CLI::IsMember({"pipeline", "closest-pair"}));
    common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*test || *oracle) {
            PointSet4 A = read_points_file(file_a), B = read_points_file(file_b);
            if (A.size() != B.size())
                throw UsageError("point counts differ (" + std::to_string(A.size()) + " vs " +
                                 std::to_string(B.size()) + ")");
            Verdict v;
            if (*test) {
                PipelineOptions o;
                o.eps_eq = f.tolerance;
                o.allow_reflection = f.reflect;
                o.trace = f.trace;
                v = congruence_test_4d(A, B, o);
            } else {
                v = oracle_congruent(A, B, f.reflect, f.tolerance);
            }
            print_verdict(v, f);
            return v.congruent ? 0 : 1;
        }

        if (*gen) {
            PointSet4 A = generate(family, params, f.seed);
            std::string note = "hcong generate " + family;
            for (const auto& p : params) note += " " + p;
            note += " --seed " + std::to_string(f.seed);
            if (out.empty())
                write_points(std::cout, A, note);
            else
                write_points_file(out, A, note);
            if (!pair_out.empty()) {
                PointSet4 src = A;
                if (mirror)
                    for (auto& x : src.points) x[3] = -x[3];
                CongruentPair pr = make_congruent_pair(src, f.seed + 1);
                if (perturb != 0.0) pr.B = gen_perturbed(pr.B, perturb, f.seed + 2);
                write_points_file(pair_out, pr.B, note + " (copy)");
            }
            return 0;
        }

        if (*bench) {
            if (min_exp > max_exp) throw UsageError("--min-exp exceeds --max-exp");
            std::vector<double> ns, ts;
            std::cout << "n,seconds\n";
            for (int e = min_exp; e <= max_exp; ++e) {
                const std::size_t n = std::size_t{1} << e;
                CongruentPair pr = gen_congruent_pair(n, f.seed + static_cast<std::uint64_t>(e));
                double t;
                if (bench_stage == "pipeline") {
                    PipelineOptions o;
                    o.eps_eq = f.tolerance;
                    bool ok = true;
                    t = best_time(reps, [&] { ok = congruence_test_4d(pr.A, pr.B, o).congruent && ok; });
                    if (!ok) throw std::runtime_error("benchmark pair rejected at n = " + std::to_string(n));
                } else {
                    std::vector<Vec4> pts = pr.A.points;
                    t = best_time(reps, [&] { (void)closest_pair_graph(pts, f.tolerance); });
                }
                ns.push_back(static_cast<double>(n));
                ts.push_back(t);
                std::cout << n << "," << format_double(t) << "\n" << std::flush;
            }
            std::cout << "slope," << format_double(fit_slope(ns, ts)) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "hcong: parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hcong: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
