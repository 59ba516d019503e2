#include "fracperi/cli.hpp"

#include "fracperi/errors.hpp"
#include "fracperi/frac_perimeter.hpp"
#include "fracperi/io.hpp"
#include "fracperi/isoperimetric.hpp"
#include "fracperi/limits_sobolev.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>

namespace fracperi {

namespace {

using Report = nlohmann::ordered_json;

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// Human form: one "key: value" line per leaf, nested keys joined with dots.
void print_human(std::ostream& os, const Report& r, const std::string& prefix)
{
    if (r.is_object()) {
        for (const auto& [key, v] : r.items()) print_human(os, v, prefix.empty() ? key : prefix + "." + key);
    } else if (r.is_array()) {
        for (std::size_t i = 0; i < r.size(); ++i) print_human(os, r[i], prefix + "[" + std::to_string(i) + "]");
    } else if (r.is_number_float()) {
        os << prefix << ": " << format_double(r.get<double>()) << '\n';
    } else if (r.is_string()) {
        os << prefix << ": " << r.get<std::string>() << '\n';
    } else {
        os << prefix << ": " << r.dump() << '\n';
    }
}

struct Context {
    std::ostream& out;
    bool json = false;

    void emit(const Report& r) const
    {
        if (json)
            out << r.dump(2) << '\n';
        else
            print_human(out, r, "");
    }
};

struct QuadratureOptions {
    int n_theta = 512;
    double tol = 1e-3;
    int offsets = 8;

    void add(CLI::App* app)
    {
        app->add_option("--ntheta", n_theta, "angular nodes on the full circle")->capture_default_str();
        app->add_option("--tol", tol, "relative tolerance of the adaptive refinement")->capture_default_str();
        app->add_option("--offsets", offsets, "Gauss nodes per offset segment")->capture_default_str();
    }
    QuadratureSpec spec(std::uint64_t seed = 0) const
    {
        QuadratureSpec q;
        q.n_theta = n_theta;
        q.rel_tol = tol;
        q.offsets_per_segment = offsets;
        q.seed = seed;
        q.validate();
        return q;
    }
};

PolygonRegion read_polygon_region(const std::string& path)
{
    Region r = region_from_json(read_json_file(path));
    if (auto* p = std::get_if<PolygonRegion>(&r)) return *p;
    if (auto* px = std::get_if<PixelSet>(&r)) return pixels_to_polygon(*px);
    throw ValidationError(path + ": expected a planar region");
}

SymmetricBody read_body(const std::string& path) { return body_from_json(read_json_file(path)); }

void write_or_print(const Context& ctx, const std::string& path, const std::string& text)
{
    if (path.empty())
        ctx.out << text;
    else
        write_text_file(path, text);
}

Report breakdown_report(const EnergyBreakdown& b)
{
    Report r;
    r["value"] = b.value;
    r["error_estimate"] = b.error_estimate;
    r["method"] = b.method;
    r["nodes"] = {{"angular", b.angular_nodes}, {"spatial", b.spatial_nodes}};
    return r;
}

Report sweep_report(const SweepResult& s)
{
    Report r;
    r["extrapolated"] = s.extrapolated;
    r["target"] = s.target;
    r["rel_gap"] = s.rel_gap;
    return r;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) throw ValidationError("cannot parse number list \"" + text + "\"");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

void add_body_commands(CLI::App& app, Context& ctx, std::function<void()>& action)
{
    auto* body = app.add_subcommand("body", "convex body operations")->require_subcommand(1);
    struct Opts {
        std::string in, out;
        int m = 720;
    };
    auto opts = std::make_shared<Opts>();
    auto leaf = [&, opts](const char* name, const char* help, std::function<SymmetricBody(const SymmetricBody&)> op) {
        auto* c = body->add_subcommand(name, help);
        c->add_option("--in", opts->in, "body JSON")->required();
        c->add_option("--out", opts->out, "output body JSON (stdout if omitted)");
        c->add_option("--m", opts->m, "support sample directions")->capture_default_str();
        c->callback([&, opts, op] {
            action = [&, opts, op] {
                const SymmetricBody result = op(read_body(opts->in));
                write_or_print(ctx, opts->out, dump_json(body_to_json(result)));
            };
        });
    };
    leaf("moment", "moment body", [opts](const SymmetricBody& k) { return moment_body(k, opts->m); });
    leaf("centroid", "centroid body", [opts](const SymmetricBody& k) { return centroid_body(k, opts->m); });
    leaf("polar", "polar body", [](const SymmetricBody& k) { return polar(k); });

    auto* info = body->add_subcommand("info", "volume, gauge extrema and support values");
    info->add_option("--in", opts->in, "body JSON")->required();
    info->callback([&, opts] {
        action = [&, opts] {
            const SymmetricBody k = read_body(opts->in);
            const GaugeExtrema g = gauge_extrema(k);
            Report r;
            r["volume"] = volume(k);
            r["c1"] = g.c1;
            r["c2"] = g.c2;
            r["support_e1"] = support(k, {1.0, 0.0});
            r["support_e2"] = support(k, {0.0, 1.0});
            ctx.emit(r);
        };
    });
}

void add_perim_commands(CLI::App& app, Context& ctx, std::function<void()>& action)
{
    auto* perim = app.add_subcommand("perim", "perimeters of a region")->require_subcommand(1);
    struct Opts {
        std::string region, body, method = "bp";
        double s = 0.5;
        std::uint64_t seed = 0;
        long samples = 100000;
        QuadratureOptions q;
    };
    auto opts = std::make_shared<Opts>();

    auto* frac = perim->add_subcommand("frac", "fractional s-perimeter P_s(E, K)");
    frac->add_option("--region", opts->region, "region JSON")->required();
    frac->add_option("--body", opts->body, "body JSON (not needed for interval unions)");
    frac->add_option("--s", opts->s, "fractional order in (0, 1)")->required();
    frac->add_option("--method", opts->method, "bp | ray | mc")
        ->check(CLI::IsMember({"bp", "ray", "mc"}))
        ->capture_default_str();
    frac->add_option("--seed", opts->seed, "Monte Carlo seed")->capture_default_str();
    frac->add_option("--samples", opts->samples, "Monte Carlo samples")->capture_default_str();
    opts->q.add(frac);
    frac->callback([&, opts] {
        action = [&, opts] {
            const Region region = region_from_json(read_json_file(opts->region));
            if (const auto* a = std::get_if<IntervalUnion>(&region)) {
                EnergyBreakdown b;
                b.value = frac_perimeter_1d(*a, opts->s);
                b.method = "closed-form";
                ctx.emit(breakdown_report(b));
                return;
            }
            if (opts->body.empty()) throw ValidationError("--body is required for planar regions");
            const SymmetricBody k = read_body(opts->body);
            if (const auto* px = std::get_if<PixelSet>(&region)) {
                ctx.emit(breakdown_report(pixel_energy(*px, k, opts->s)));
                return;
            }
            const PolygonRegion& e = std::get<PolygonRegion>(region);
            const QuadratureSpec q = opts->q.spec(opts->seed);
            EnergyBreakdown b;
            if (opts->method == "bp")
                b = frac_perimeter_bp(e, k, opts->s, q);
            else if (opts->method == "ray")
                b = frac_perimeter_ray(e, k, opts->s, q);
            else
                b = mc_frac_perimeter(e, k, opts->s, opts->samples, opts->seed);
            ctx.emit(breakdown_report(b));
        };
    });

    auto* aniso = perim->add_subcommand("aniso", "anisotropic perimeter P(E, L) and area");
    aniso->add_option("--region", opts->region, "region JSON")->required();
    aniso->add_option("--body", opts->body, "body JSON")->required();
    aniso->callback([&, opts] {
        action = [&, opts] {
            const PolygonRegion e = read_polygon_region(opts->region);
            const SymmetricBody l = read_body(opts->body);
            Report r;
            r["value"] = anisotropic_perimeter(e, l);
            r["area"] = area(e);
            r["euclidean_perimeter"] = perimeter(e);
            ctx.emit(r);
        };
    });
}

void add_sweep_commands(CLI::App& app, Context& ctx, std::function<void()>& action)
{
    auto* sweep = app.add_subcommand("sweep", "limit sweeps in s")->require_subcommand(1);
    struct Opts {
        std::string region, function, body, out, grid;
        QuadratureOptions q;
    };
    auto opts = std::make_shared<Opts>();
    auto leaf = [&, opts](const char* name, const char* help, bool function_input,
                          std::function<SweepResult(const SymmetricBody&, const std::vector<double>*)> op) {
        auto* c = sweep->add_subcommand(name, help);
        if (function_input)
            c->add_option("--function", opts->function, "step function JSON")->required();
        else
            c->add_option("--region", opts->region, "region JSON")->required();
        c->add_option("--body", opts->body, "body JSON")->required();
        c->add_option("--grid", opts->grid, "comma-separated s values (default grid if omitted)");
        c->add_option("--out", opts->out, "CSV output (stdout if omitted)");
        opts->q.add(c);
        c->callback([&, opts, op] {
            action = [&, opts, op] {
                const SymmetricBody k = read_body(opts->body);
                std::vector<double> grid;
                if (!opts->grid.empty()) grid = parse_list(opts->grid);
                const SweepResult r = op(k, opts->grid.empty() ? nullptr : &grid);
                if (opts->out.empty()) {
                    ctx.out << sweep_csv(r);
                } else {
                    write_text_file(opts->out, sweep_csv(r));
                    ctx.emit(sweep_report(r));
                }
            };
        });
    };
    leaf("s1", "(1 - s) P_s(E, K) as s -> 1", false, [opts](const SymmetricBody& k, const std::vector<double>* g) {
        const PolygonRegion e = read_polygon_region(opts->region);
        return limit_s_to_1(e, k, g ? *g : kDefaultGridToOne, opts->q.spec());
    });
    leaf("s0", "s P_s(E, K) as s -> 0", false, [opts](const SymmetricBody& k, const std::vector<double>* g) {
        const PolygonRegion e = read_polygon_region(opts->region);
        return limit_s_to_0(e, k, g ? *g : kDefaultGridToZero, opts->q.spec());
    });
    leaf("sobolev", "(1 - s) seminorm as s -> 1", true, [opts](const SymmetricBody& k, const std::vector<double>* g) {
        const StepFunction f = step_from_json(read_json_file(opts->function));
        return sobolev_limit(f, k, g ? *g : kDefaultGridToOne, opts->q.spec());
    });
}

void add_sobolev_commands(CLI::App& app, Context& ctx, std::function<void()>& action)
{
    auto* sob = app.add_subcommand("sobolev", "seminorms of step functions")->require_subcommand(1);
    struct Opts {
        std::string function, body;
        double s = 0.5;
        double p = 1.0;
        QuadratureOptions q;
    };
    auto opts = std::make_shared<Opts>();

    auto* frac = sob->add_subcommand("seminorm", "fractional Sobolev seminorm");
    frac->add_option("--function", opts->function, "step function JSON")->required();
    frac->add_option("--body", opts->body, "body JSON")->required();
    frac->add_option("--s", opts->s, "fractional order in (0, 1)")->required();
    opts->q.add(frac);
    frac->callback([&, opts] {
        action = [&, opts] {
            const StepFunction f = step_from_json(read_json_file(opts->function));
            Report r;
            r["value"] = frac_sobolev_seminorm(f, read_body(opts->body), opts->s, opts->q.spec());
            ctx.emit(r);
        };
    });

    auto* bv = sob->add_subcommand("bv", "anisotropic BV seminorm");
    bv->add_option("--function", opts->function, "step function JSON")->required();
    bv->add_option("--body", opts->body, "body JSON")->required();
    bv->callback([&, opts] {
        action = [&, opts] {
            const StepFunction f = step_from_json(read_json_file(opts->function));
            Report r;
            r["value"] = bv_seminorm(f, read_body(opts->body));
            ctx.emit(r);
        };
    });

    auto* lp = sob->add_subcommand("lp", "L^p norm");
    lp->add_option("--function", opts->function, "step function JSON")->required();
    lp->add_option("--p", opts->p, "exponent >= 1")->required();
    lp->callback([&, opts] {
        action = [&, opts] {
            const StepFunction f = step_from_json(read_json_file(opts->function));
            Report r;
            r["value"] = lp_norm(f, opts->p);
            ctx.emit(r);
        };
    });
}

void add_gamma_commands(CLI::App& app, Context& ctx, std::function<void()>& action)
{
    auto* gamma = app.add_subcommand("gamma", "isoperimetric constant")->require_subcommand(1);
    struct Opts {
        std::string body, out, trace, s_list = "0.7,0.8,0.9";
        double s = 0.9;
        AnnealConfig cfg;
        QuadratureOptions q;
    };
    auto opts = std::make_shared<Opts>();
    auto anneal_options = [opts](CLI::App* c) {
        c->add_option("--grid", opts->cfg.grid, "cells per side")->capture_default_str();
        c->add_option("--seed", opts->cfg.seed, "random seed")->capture_default_str();
        c->add_option("--epochs", opts->cfg.epochs, "annealing epochs")->capture_default_str();
        c->add_option("--flips", opts->cfg.flips_per_epoch, "proposals per epoch")->capture_default_str();
        c->add_option("--temperature", opts->cfg.initial_temperature, "initial relative temperature")
            ->capture_default_str();
        c->add_option("--cooling", opts->cfg.cooling, "per-epoch cooling factor")->capture_default_str();
    };

    auto* bracket = gamma->add_subcommand("bracket", "lower and upper bounds");
    bracket->add_option("--body", opts->body, "body JSON")->required();
    bracket->add_option("--s", opts->s, "fractional order in (0, 1)")->required();
    opts->q.add(bracket);
    bracket->callback([&, opts] {
        action = [&, opts] {
            const GammaBracket b = gamma_bracket(read_body(opts->body), opts->s, opts->q.spec());
            Report r;
            r["lower"] = b.lower;
            r["upper"] = b.upper;
            r["lower_error"] = b.lower_error;
            r["upper_error"] = b.upper_error;
            r["upper_witness"] = b.upper_witness;
            r["c1"] = b.c1;
            r["c2"] = b.c2;
            r["euclidean_disc_ratio"] = b.euclidean_disc_ratio;
            Report w = Report::object();
            for (const GammaWitness& g : b.witnesses) w[g.name] = {{"ratio", g.ratio}, {"error_estimate", g.error_estimate}};
            r["witnesses"] = w;
            ctx.emit(r);
        };
    });

    auto* anneal = gamma->add_subcommand("anneal", "annealed pixel minimizer");
    anneal->add_option("--body", opts->body, "body JSON")->required();
    anneal->add_option("--s", opts->s, "fractional order in (0, 1)")->required();
    anneal->add_option("--out", opts->out, "best configuration as pixel region JSON");
    anneal->add_option("--trace", opts->trace, "trace CSV");
    anneal_options(anneal);
    anneal->callback([&, opts] {
        action = [&, opts] {
            AnnealConfig cfg = opts->cfg;
            cfg.s = opts->s;
            const AnnealResult a = anneal_minimizer(read_body(opts->body), cfg);
            if (!opts->out.empty()) write_text_file(opts->out, dump_json(region_to_json(a.best)));
            if (!opts->trace.empty()) write_text_file(opts->trace, trace_csv(a.trace));
            Report r;
            r["ratio"] = a.ratio;
            r["initial_ratio"] = a.initial_ratio;
            r["area"] = area(a.best);
            r["epochs"] = static_cast<long>(a.trace.size());
            ctx.emit(r);
        };
    });

    auto* converge = gamma->add_subcommand("converge", "minimizer distance to the scaled moment body");
    converge->add_option("--body", opts->body, "body JSON")->required();
    converge->add_option("--s", opts->s_list, "comma-separated s values")->capture_default_str();
    anneal_options(converge);
    converge->callback([&, opts] {
        action = [&, opts] {
            const ConvergenceResult c =
                minimizer_convergence_experiment(read_body(opts->body), parse_list(opts->s_list), opts->cfg);
            Report r;
            Report rows = Report::array();
            for (const ConvergenceRow& row : c.rows)
                rows.push_back({{"s", row.s}, {"ratio", row.ratio}, {"distance", row.distance}});
            r["rows"] = rows;
            r["non_increasing"] = c.pass;
            ctx.emit(r);
        };
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app("Anisotropic fractional perimeters and their limits", "fracperi");
    app.fallthrough();
    app.require_subcommand(1);
    Context ctx{out};
    app.add_flag("--json", ctx.json, "machine-readable JSON output");
    std::function<void()> action;
    add_body_commands(app, ctx, action);
    add_perim_commands(app, ctx, action);
    add_sweep_commands(app, ctx, action);
    add_sobolev_commands(app, ctx, action);
    add_gamma_commands(app, ctx, action);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    try {
        if (action) action();
        return kExitOk;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitValidation;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace fracperi
