// Acceptance run: one PASS/FAIL line per criterion. Tolerances and runtime
// limits are pinned below; exit status is nonzero if any criterion fails.

#include "fracperi/cli.hpp"
#include "fracperi/convex_body.hpp"
#include "fracperi/frac1d.hpp"
#include "fracperi/frac_perimeter.hpp"
#include "fracperi/io.hpp"
#include "fracperi/isoperimetric.hpp"
#include "fracperi/limits_sobolev.hpp"
#include "fracperi/parallel.hpp"
#include "fracperi/region.hpp"
#include "oracle_1d.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

using namespace fracperi;
using namespace fracperi::testing;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SymmetricBody disc256() { return SymmetricBody::polygon(regular_polygon(256)); }

struct NamedBody {
    const char* name;
    SymmetricBody body;
};

std::vector<NamedBody> limit_bodies() { return {{"disc", disc256()}, {"square", square_body()}, {"diamond", diamond_body()}}; }

// 1. Closed form against nested numeric quadrature.
Verdict closed_form_1d()
{
    constexpr double kTol = 1e-8;
    constexpr double kMaxSeconds = 10.0;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    std::vector<IntervalUnion> unions;
    for (int i = 0; i < 50; ++i) unions.push_back(random_union(rng));
    const std::vector<double> ss{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> worst(unions.size(), 0.0);
    parallel_for(unions.size(), [&](std::size_t i) {
        for (double s : ss) {
            const double exact = frac_perimeter_1d(unions[i], s);
            worst[i] = std::max(worst[i], std::abs(exact - numeric_frac_perimeter_1d(unions[i], s)) / exact);
        }
    });
    const double w = *std::max_element(worst.begin(), worst.end());
    const double t = seconds_since(t0);
    return {w <= kTol && t < kMaxSeconds, fmt("max rel err %.2e (tol %.0e), %.1f s (limit %.0f s)", w, kTol, t, kMaxSeconds)};
}

// 2. Limits of the 1D closed form for (0,1) u (2,3).
Verdict limits_1d()
{
    constexpr double kTol = 1e-2;
    const IntervalUnion a({{0, 1}, {2, 3}});
    std::vector<double> x, y;
    for (double s : kDefaultGridToOne) x.push_back(1 - s), y.push_back((1 - s) * frac_perimeter_1d(a, s));
    const double to_one = linear_extrapolate(x, y);
    x.clear(), y.clear();
    for (double s : kDefaultGridToZero) x.push_back(s), y.push_back(s * frac_perimeter_1d(a, s));
    const double to_zero = linear_extrapolate(x, y);
    const double e1 = std::abs(to_one - 4.0) / 4.0, e0 = std::abs(to_zero - 4.0) / 4.0;
    return {e1 <= kTol && e0 <= kTol,
            fmt("(1-s)P_s -> %.6f, sP_s -> %.6f, target 4, rel err %.1e / %.1e (tol %.0e)", to_one, to_zero, e1, e0, kTol)};
}

// 3. Envelopes near s = 1 and for small s.
Verdict envelopes_1d()
{
    std::mt19937_64 rng(103);
    int checks = 0, violations = 0;
    double tightest = 0.0;
    for (int i = 0; i < 100; ++i) {
        const IntervalUnion a = random_union(rng);
        for (int k = 50; k <= 99; ++k) {
            const double s = k / 100.0;
            const double ratio = (1 - s) * frac_perimeter_1d(a, s) / near_one_envelope(a);
            tightest = std::max(tightest, ratio);
            violations += ratio > 1.0;
            ++checks;
        }
        const double ratio = frac_perimeter_1d(a, 0.1) / small_s_envelope(a, 0.1, 0.4);
        tightest = std::max(tightest, ratio);
        violations += ratio > 1.0;
        ++checks;
    }
    return {violations == 0, fmt("%d violations in %d checks, largest value/bound %.3f", violations, checks, tightest)};
}

// 4. Moment body support values.
Verdict moment_body_exactness()
{
    constexpr double kSquareTol = 1e-12;
    constexpr double kDiscTol = 1e-10;
    const SymmetricBody mk = moment_body(square_body());
    const double h1 = support(mk, {1, 0});
    const double hd = support(mk, Vec2{1, 1} / std::sqrt(2.0));
    const double e1 = std::abs(h1 - 3.0), ed = std::abs(hd - 4.0 / std::sqrt(2.0));
    const SymmetricBody mb = moment_body(SymmetricBody::ball(1.0), 256);
    double eb = 0.0;
    for (double v : mb.as_support().values) eb = std::max(eb, std::abs(v - 2.0));
    return {e1 <= kSquareTol && ed <= kSquareTol && eb <= kDiscTol,
            fmt("square: |h(e1)-3| %.1e, |h(diag)-4/sqrt2| %.1e (tol %.0e); disc: max |h-2| %.1e over 256 dirs (tol %.0e)",
                e1, ed, kSquareTol, eb, kDiscTol)};
}

Verdict limit_sweeps(bool toward_one)
{
    constexpr double kTol = 1e-2;
    constexpr double kMaxSeconds = 60.0;
    const PolygonRegion e = square_region(1.0);
    bool pass = true;
    std::string detail;
    for (const auto& [name, k] : limit_bodies()) {
        const auto t0 = Clock::now();
        const SweepResult r = toward_one ? limit_s_to_1(e, k) : limit_s_to_0(e, k);
        const double t = seconds_since(t0);
        pass = pass && r.rel_gap <= kTol && t < kMaxSeconds;
        detail += fmt("%s %.4f vs %.4f (gap %.2e, %.2f s); ", name, r.extrapolated, r.target, r.rel_gap, t);
    }
    return {pass, detail + fmt("tol %.0e, limit %.0f s per pair", kTol, kMaxSeconds)};
}

// 7. Line, ray and Monte Carlo estimators agree.
Verdict cross_method()
{
    constexpr double kRelTol = 5e-3;
    constexpr double kStdErrs = 3.0;
    constexpr long kSamples = 100000;
    constexpr double kMaxSeconds = 300.0;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(4);
    const std::vector<PolygonRegion> shapes{
        square_region(0.5),
        square_with_hole(),
        l_hexagon(),
        PolygonRegion({regular_polygon(12)}),
        PolygonRegion({random_star_loop(rng, 9)}),
        PolygonRegion({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{1.5, 0}, {2.5, 0}, {2.5, 0.5}, {1.5, 0.5}}}),
    };
    const std::vector<SymmetricBody> bodies{SymmetricBody::ball(1.0), square_body(),
                                            SymmetricBody::polygon(std::vector<Vec2>{{2.0, 0.3}, {-0.4, 0.9}})};
    const std::vector<double> ss{0.2, 0.5, 0.8};
    struct Case {
        double rel = 0, z = 0;
    };
    std::vector<Case> cases(shapes.size() * bodies.size() * ss.size());
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const PolygonRegion& e = shapes[i / 9];
        const SymmetricBody& k = bodies[i / 3 % 3];
        const double s = ss[i % 3];
        const double bp = frac_perimeter_bp(e, k, s).value;
        const double ray = frac_perimeter_ray(e, k, s).value;
        const EnergyBreakdown mc = mc_frac_perimeter(e, k, s, kSamples, 1000 + i);
        cases[i] = {std::abs(bp - ray) / bp, std::abs(mc.value - bp) / mc.error_estimate};
    }
    double rel = 0, z = 0;
    for (const Case& c : cases) rel = std::max(rel, c.rel), z = std::max(z, c.z);
    const double t = seconds_since(t0);
    return {rel <= kRelTol && z <= kStdErrs && t < kMaxSeconds,
            fmt("%zu cases: max |bp-ray|/bp %.2e (tol %.0e), max |mc-bp|/SE %.2f (tol %.0f), %.0f s (limit %.0f s)",
                cases.size(), rel, kRelTol, z, kStdErrs, t, kMaxSeconds)};
}

// 8. Both sides of the projection identity.
Verdict projection_identity()
{
    constexpr double kTol = 1e-9;
    std::mt19937_64 rng(108);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const PolygonRegion e = i % 2 ? PolygonRegion({random_star_loop(rng, 7 + i)})
                                       : PolygonRegion({random_convex_loop(rng, 6 + i, {uniform(rng, -2, 2), 1.0})});
        for (int j = 0; j < 20; ++j) {
            const DirectionalVariation d = directional_variation(e, unit_from_angle(uniform(rng, 0, 2 * std::numbers::pi)));
            worst = std::max(worst, std::abs(d.boundary_side - d.crossing_side) / d.boundary_side);
        }
    }
    return {worst <= kTol, fmt("200 pairs: max rel deviation %.1e (tol %.0e)", worst, kTol)};
}

// 9. Anisotropic isoperimetric (Wulff) inequality and its equality case.
Verdict wulff()
{
    constexpr double kTol = 1e-9;
    std::mt19937_64 rng(109);
    int violations = 0;
    double worst_equality = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SymmetricBody k = random_polygon_body(rng);
        const PolygonRegion e({random_convex_loop(rng, 3 + i % 8, {uniform(rng, -3, 3), uniform(rng, -3, 3)})});
        const double bound = 2.0 * std::sqrt(volume(k) * area(e));
        violations += anisotropic_perimeter(e, k) < bound * (1 - 1e-12);

        const double lambda = uniform(rng, 0.2, 5.0);
        std::vector<Vec2> scaled;
        for (const Vec2& v : k.as_polygon().vertices) scaled.push_back(v * lambda + Vec2{1.0, -2.0});
        const PolygonRegion wulff_shape({scaled});
        const double eq = 2.0 * std::sqrt(volume(k) * area(wulff_shape));
        worst_equality = std::max(worst_equality, std::abs(anisotropic_perimeter(wulff_shape, k) - eq) / eq);
    }
    return {violations == 0 && worst_equality <= kTol,
            fmt("100 pairs: %d violations; equality case max rel deviation %.1e (tol %.0e)", violations,
                worst_equality, kTol)};
}

// 10. (1 - s) times the fractional Sobolev seminorm tends to 2 |f|_BV(MK).
Verdict sobolev_limits()
{
    constexpr double kTol = 2e-2;
    constexpr double kMaxSeconds = 120.0;
    const auto t0 = Clock::now();
    const std::vector<std::pair<const char*, StepFunction>> functions{
        {"indicator", StepFunction::indicator(square_region(1.0))},
        {"two-level", StepFunction({1.0, 2.0}, {square_region(1.0), square_region(0.5, {0.2, -0.1})})},
    };
    bool pass = true;
    std::string detail;
    for (const auto& [fname, f] : functions)
        for (const auto& [kname, k] : {NamedBody{"disc", disc256()}, NamedBody{"square", square_body()}}) {
            const SweepResult r = sobolev_limit(f, k);
            pass = pass && r.rel_gap <= kTol;
            detail += fmt("%s/%s gap %.2e; ", fname, kname, r.rel_gap);
        }
    const double t = seconds_since(t0);
    return {pass && t < kMaxSeconds, detail + fmt("tol %.0e, %.1f s (limit %.0f s)", kTol, t, kMaxSeconds)};
}

// Nested level sets: shrunken copies of a star-shaped or convex loop about its centre.
StepFunction random_step_function(std::mt19937_64& rng)
{
    const int levels = 1 + static_cast<int>(rng() % 3);
    const Vec2 c{uniform(rng, -1, 1), uniform(rng, -1, 1)};
    std::vector<Vec2> base;
    do {
        base = rng() % 2 ? random_star_loop(rng, 9, c) : random_convex_loop(rng, 8, c);
    } while (!contains(PolygonRegion({base}), c));
    std::vector<double> t;
    std::vector<PolygonRegion> regions;
    double level = 0.0, scale = 1.0;
    for (int k = 0; k < levels; ++k) {
        level += uniform(rng, 0.2, 2.0);
        t.push_back(level);
        std::vector<Vec2> loop;
        for (const Vec2& p : base) loop.push_back(c + (p - c) * scale);
        regions.emplace_back(std::vector<std::vector<Vec2>>{loop});
        scale *= uniform(rng, 0.3, 0.8);
    }
    return StepFunction(std::move(t), std::move(regions));
}

// 11. Fractional Sobolev inequality with the bracketed constant.
Verdict sobolev_inequality()
{
    constexpr double kMaxSeconds = 120.0;
    const auto t0 = Clock::now();
    const std::vector<double> ss{0.3, 0.6, 0.9};
    const std::vector<NamedBody> bodies = limit_bodies();
    std::vector<double> lower(bodies.size() * ss.size());
    parallel_for(lower.size(), [&](std::size_t i) { lower[i] = gamma_bracket(bodies[i / 3].body, ss[i % 3]).lower; });
    std::mt19937_64 rng(111);
    int violations = 0, checks = 0;
    double min_margin = 1e300;
    for (int n = 0; n < 20; ++n) {
        const StepFunction f = random_step_function(rng);
        const std::size_t b = n % bodies.size();
        for (std::size_t j = 0; j < ss.size(); ++j) {
            const double s = ss[j];
            const double lhs = frac_sobolev_seminorm(f, bodies[b].body, s);
            const double rhs = 2.0 * lower[b * 3 + j] * lp_norm(f, 2.0 / (2.0 - s));
            violations += lhs < rhs;
            min_margin = std::min(min_margin, lhs / rhs);
            ++checks;
        }
    }
    const double t = seconds_since(t0);
    return {violations == 0 && t < kMaxSeconds,
            fmt("%d violations in %d checks, min lhs/rhs %.4f, %.1f s (limit %.0f s)", violations, checks, min_margin,
                t, kMaxSeconds)};
}

// 12. Annealed minimizers approach the scaled moment body.
Verdict minimizer_experiment()
{
    constexpr double kSlack = 1.2;
    constexpr double kRatioFactor = 1.03;
    constexpr double kMaxSeconds = 600.0;
    const auto t0 = Clock::now();
    AnnealConfig cfg;
    cfg.grid = 48;
    cfg.seed = 7;
    const ConvergenceResult r = minimizer_convergence_experiment(square_body(), {0.7, 0.8, 0.9}, cfg);
    const GammaBracket b = gamma_bracket(square_body(), 0.9);
    double witness = 0.0;
    for (const GammaWitness& w : b.witnesses)
        if (w.name == "moment body") witness = w.ratio;
    const double achieved = r.rows.back().ratio;
    const bool ratio_ok = achieved <= kRatioFactor * witness;
    // Context only: the same witness after pixelization on the annealing grid.
    AnnealConfig at_09 = cfg;
    at_09.s = 0.9;
    const PixelSet pixel_mk = pixelize(boundary_polygon(moment_body(square_body())), square_body(), at_09);
    const double pixel_witness = isoperimetric_ratio(pixel_mk, square_body(), 0.9);
    const double t = seconds_since(t0);
    std::string detail = "distances";
    for (const ConvergenceRow& row : r.rows) detail += fmt(" s=%.1f:%.4f", row.s, row.distance);
    detail += fmt(" (non-increasing within %.0f%%: %s); ratio at s=0.9 %.3f vs %.2f x moment-body witness %.3f (%s; "
                  "pixelized moment body %.3f); %.0f s (limit %.0f s)",
                  (kSlack - 1) * 100, r.pass ? "yes" : "no", achieved, kRatioFactor, witness, ratio_ok ? "ok" : "exceeded",
                  pixel_witness, t, kMaxSeconds);
    return {r.pass && ratio_ok && t < kMaxSeconds, detail};
}

// 13. Repeated CLI invocations give identical bytes.
Verdict cli_determinism()
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fracperi_acceptance";
    fs::create_directories(dir);
    const auto path = [&](const char* name) { return (dir / name).string(); };
    write_text_file(path("square.json"), R"({"type":"polygon","vertices":[[1,1],[1,-1]]})");
    write_text_file(path("ball.json"), R"({"type":"ball","radius":1})");
    write_text_file(path("E.json"), R"({"type":"polygon","loops":[[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]]})");
    write_text_file(path("f.json"), R"({"type":"step","levels":[
        {"t":1,"region":{"type":"polygon","loops":[[[-1,-1],[1,-1],[1,1],[-1,1]]]}},
        {"t":2,"region":{"type":"polygon","loops":[[[-0.3,-0.6],[0.7,-0.6],[0.7,0.4],[-0.3,0.4]]]}}]})");
    const std::vector<std::vector<std::string>> invocations{
        {"body", "moment", "--in", path("square.json"), "--out", path("out.json")},
        {"body", "centroid", "--in", path("ball.json"), "--out", path("out.json")},
        {"body", "polar", "--in", path("square.json"), "--out", path("out.json")},
        {"--json", "body", "info", "--in", path("square.json")},
        {"perim", "frac", "--region", path("E.json"), "--body", path("ball.json"), "--s", "0.5", "--method", "bp"},
        {"perim", "frac", "--region", path("E.json"), "--body", path("square.json"), "--s", "0.5", "--method", "ray"},
        {"--json", "perim", "frac", "--region", path("E.json"), "--body", path("square.json"), "--s", "0.3",
         "--method", "mc", "--seed", "9"},
        {"perim", "aniso", "--region", path("E.json"), "--body", path("square.json")},
        {"sweep", "s1", "--region", path("E.json"), "--body", path("ball.json"), "--out", path("out.csv")},
        {"sweep", "s0", "--region", path("E.json"), "--body", path("square.json"), "--out", path("out.csv")},
        {"sweep", "sobolev", "--function", path("f.json"), "--body", path("square.json"), "--out", path("out.csv")},
        {"sobolev", "seminorm", "--function", path("f.json"), "--body", path("ball.json"), "--s", "0.6"},
        {"sobolev", "bv", "--function", path("f.json"), "--body", path("square.json")},
        {"sobolev", "lp", "--function", path("f.json"), "--p", "1.5"},
        {"gamma", "bracket", "--body", path("square.json"), "--s", "0.9"},
        {"gamma", "anneal", "--body", path("square.json"), "--s", "0.9", "--grid", "48", "--seed", "7", "--out",
         path("out.json"), "--trace", path("out.csv")},
        {"--json", "gamma", "converge", "--body", path("square.json"), "--s", "0.7,0.8,0.9", "--epochs", "10"},
    };
    const auto snapshot = [&](const std::vector<std::string>& args) {
        fs::remove(path("out.json"));
        fs::remove(path("out.csv"));
        std::ostringstream out, err;
        std::string all = std::to_string(run(args, out, err)) + "\n" + out.str() + err.str();
        for (const char* f : {"out.json", "out.csv"}) {
            std::ifstream in(path(f), std::ios::binary);
            all += std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        return all;
    };
    int identical = 0, failed_runs = 0;
    for (const auto& args : invocations) {
        const std::string a = snapshot(args);
        identical += a == snapshot(args);
        failed_runs += a.front() != '0';
    }
    return {identical == static_cast<int>(invocations.size()) && failed_runs == 0,
            fmt("%d of %zu invocations byte-identical (%d nonzero exits)", identical, invocations.size(), failed_runs)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"1D closed form vs numeric quadrature", closed_form_1d},
        {"1D limits s->1 and s->0", limits_1d},
        {"1D envelopes", envelopes_1d},
        {"moment body exactness", moment_body_exactness},
        {"s->1 limit: (1-s)P_s(E,K) -> P(E,MK)", [] { return limit_sweeps(true); }},
        {"s->0 limit: sP_s(E,K) -> 2 Vol(K) Vol(E)", [] { return limit_sweeps(false); }},
        {"cross-method consistency", cross_method},
        {"projection identity", projection_identity},
        {"Wulff inequality", wulff},
        {"Sobolev limit", sobolev_limits},
        {"fractional Sobolev inequality", sobolev_inequality},
        {"minimizer convergence to the moment body", minimizer_experiment},
        {"CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
