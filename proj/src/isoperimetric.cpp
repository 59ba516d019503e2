#include "fracperi/isoperimetric.hpp"

#include "fracperi/errors.hpp"
#include "fracperi/frac1d.hpp"
#include "fracperi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fracperi {

namespace {

double area_factor(double a, double s) { return std::pow(a, -(2.0 - s) / 2.0); }

struct Ratio {
    double value;
    double error;
};

Ratio polygon_ratio(const PolygonRegion& e, const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    const EnergyBreakdown b = frac_perimeter_bp(e, k, s, q);
    const double f = area_factor(area(e), s);
    return {b.value * f, b.error_estimate * f};
}

double body_diameter(const SymmetricBody& k)
{
    double r = 0.0;
    for (const Vec2& v : boundary_polygon(k)) r = std::max(r, norm(v));
    return 2.0 * r;
}

double domain_half_width(const SymmetricBody& k, const AnnealConfig& cfg)
{
    return cfg.half_width > 0.0 ? cfg.half_width : 4.0 * body_diameter(k);
}

double loop_signed_area(const std::vector<Vec2>& loop)
{
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) a += cross(loop[i], loop[(i + 1) % loop.size()]);
    return 0.5 * a;
}

}  // namespace

double isoperimetric_ratio(const PolygonRegion& e, const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    return polygon_ratio(e, k, s, q).value;
}

double isoperimetric_ratio(const PixelSet& e, const SymmetricBody& k, double s)
{
    return pixel_energy(e, k, s).value * area_factor(area(e), s);
}

GammaBracket gamma_bracket(const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    check_s(s);
    q.validate();
    GammaBracket out;
    const GaugeExtrema ge = gauge_extrema(k);
    out.c1 = ge.c1;
    out.c2 = ge.c2;

    // Balls minimize the Euclidean ratio; the sandwich transfers it to K.
    const PolygonRegion disc({regular_polygon(256)});
    const Ratio euclid = polygon_ratio(disc, SymmetricBody::ball(1.0), s, q);
    out.euclidean_disc_ratio = euclid.value;
    const double scale = std::pow(ge.c2, -(2.0 + s));
    out.lower = scale * euclid.value;
    out.lower_error = scale * euclid.error;

    const std::pair<const char*, PolygonRegion> candidates[] = {
        {"body", PolygonRegion({boundary_polygon(k)})},
        {"moment body", PolygonRegion({boundary_polygon(moment_body(k))})},
        {"disc", disc},
    };
    out.upper = INFINITY;
    for (const auto& [name, region] : candidates) {
        const Ratio r = polygon_ratio(region, k, s, q);
        out.witnesses.push_back({name, r.value, r.error});
        if (r.value < out.upper) {
            out.upper = r.value;
            out.upper_error = r.error;
            out.upper_witness = name;
        }
    }
    const double slack = 2.0 * q.rel_tol * out.upper + out.lower_error + out.upper_error;
    if (out.lower > out.upper + slack)
        throw NumericalError("gamma bracket inverted: lower exceeds upper beyond the quadrature tolerance");
    return out;
}

void AnnealConfig::validate() const
{
    if (grid < 16) throw ParameterError("anneal: grid must be >= 16");
    if (!(half_width >= 0.0) || !std::isfinite(half_width)) throw ParameterError("anneal: half_width must be >= 0");
    check_s(s);
    if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature))
        throw ParameterError("anneal: initial temperature must be positive");
    if (!(cooling > 0.0 && cooling < 1.0)) throw ParameterError("anneal: cooling must lie in (0, 1)");
    if (flips_per_epoch < 1) throw ParameterError("anneal: flips_per_epoch must be >= 1");
    if (epochs < 1) throw ParameterError("anneal: epochs must be >= 1");
}

PixelSet pixelize(const std::vector<Vec2>& shape, const SymmetricBody& k, const AnnealConfig& cfg)
{
    cfg.validate();
    const double w = domain_half_width(k, cfg);
    const double h = 2.0 * w / cfg.grid;
    const PolygonRegion base({shape});
    // A quarter of the domain area.
    const double lambda = std::sqrt(0.25 * 4.0 * w * w / area(base));
    const PolygonRegion scaled = base.scaled(lambda);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(cfg.grid) * cfg.grid, 0);
    PixelSet out({-w, -w}, h, cfg.grid, cfg.grid, std::vector<std::uint8_t>(mask.size(), 1));
    for (int j = 0; j < cfg.grid; ++j)
        for (int i = 0; i < cfg.grid; ++i) out.set(i, j, contains(scaled, out.cell_center(i, j)));
    if (out.count() == 0) out.set(cfg.grid / 2, cfg.grid / 2, true);
    return out;
}

PixelSet initial_configuration(const SymmetricBody& k, const AnnealConfig& cfg)
{
    return pixelize(boundary_polygon(k), k, cfg);
}

AnnealResult anneal_minimizer(const SymmetricBody& k, const AnnealConfig& cfg)
{
    cfg.validate();
    const int n = cfg.grid;
    const double s = cfg.s;
    const double exponent = -(2.0 - s) / 2.0;
    PixelSet state = initial_configuration(k, cfg);
    const auto model = PixelEnergyModel::cached(state.h(), s, k, n - 1);
    const double t0 = model->self_energy();

    // field[p] = sum over q in E, q != p, of w(p - q).
    std::vector<double> field(static_cast<std::size_t>(n) * n);
    double energy = 0.0;
    long count = 0;
    auto rebuild = [&] {
        std::fill(field.begin(), field.end(), 0.0);
        for (int qj = 0; qj < n; ++qj)
            for (int qi = 0; qi < n; ++qi) {
                if (!state.at(qi, qj)) continue;
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i) field[static_cast<std::size_t>(j) * n + i] += model->pair(i - qi, j - qj);
            }
        energy = pixel_energy(state, k, s).value;
        count = static_cast<long>(state.count());
    };
    auto frontier = [&](int i, int j) {
        const bool in = state.at(i, j);
        const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const int a = i + di[d], b = j + dj[d];
            const bool nb = a >= 0 && b >= 0 && a < n && b < n && state.at(a, b);
            if (nb != in) return true;
        }
        return false;
    };

    rebuild();
    AnnealResult result{state, 0.0, energy * std::pow(state.h() * state.h() * count, exponent), {}};
    double best = result.initial_ratio;
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    double temperature = cfg.initial_temperature;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        long accepted = 0;
        for (long f = 0; f < cfg.flips_per_epoch; ++f) {
            int i, j;
            do {
                i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            } while (!frontier(i, j));
            const bool present = state.at(i, j);
            if (present && count == 1) continue;
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double delta = present ? -t0 + 2.0 * field[idx] : t0 - 2.0 * field[idx];
            const long new_count = count + (present ? -1 : 1);
            const double rel = (energy + delta) / energy * std::pow(double(new_count) / double(count), exponent) - 1.0;
            const double draw = uniform();
            if (rel > 0.0 && draw >= std::exp(-rel / temperature)) continue;

            state.set(i, j, !present);
            const double sign = present ? -1.0 : 1.0;
            for (int b = 0; b < n; ++b)
                for (int a = 0; a < n; ++a) field[static_cast<std::size_t>(b) * n + a] += sign * model->pair(a - i, b - j);
            energy += delta;
            count = new_count;
            ++accepted;
            const double ratio = energy * std::pow(state.h() * state.h() * count, exponent);
            if (ratio < best) {
                best = ratio;
                result.best = state;
            }
        }
        // Drop accumulated rounding before the next epoch.
        rebuild();
        result.trace.push_back({epoch, temperature, energy * std::pow(state.h() * state.h() * count, exponent), best,
                                static_cast<double>(accepted) / static_cast<double>(cfg.flips_per_epoch)});
        temperature *= cfg.cooling;
    }
    result.ratio = isoperimetric_ratio(result.best, k, s);
    return result;
}

double normalized_symmetric_difference(const PolygonRegion& e, const std::vector<Vec2>& target)
{
    const PolygonRegion t({target});
    const double target_area = area(t);
    const Vec2 ct = centroid(t), ce = centroid(e);
    const double lambda = std::sqrt(target_area / area(e));
    const PolygonRegion moved = e.transformed(lambda, 0, 0, lambda, ct - lambda * ce);
    std::vector<Vec2> clip = target;
    if (loop_signed_area(clip) < 0.0) std::reverse(clip.begin(), clip.end());
    double common = 0.0;
    for (const auto& loop : moved.loops())
        common += (loop_signed_area(loop) > 0.0 ? 1.0 : -1.0) * clipped_area(loop, clip);
    return std::max(0.0, 2.0 * (1.0 - common / target_area));
}

ConvergenceResult minimizer_convergence_experiment(const SymmetricBody& k, std::vector<double> s_list,
                                                   const AnnealConfig& cfg)
{
    if (s_list.size() < 3) throw ParameterError("convergence experiment: need at least 3 values of s");
    std::sort(s_list.begin(), s_list.end());
    if (std::adjacent_find(s_list.begin(), s_list.end()) != s_list.end())
        throw ParameterError("convergence experiment: repeated s value");
    for (double s : s_list)
        if (!(s >= 0.6 && s <= 0.95)) throw ParameterError("convergence experiment: s must lie in [0.6, 0.95]");
    cfg.validate();

    const std::vector<Vec2> mk = boundary_polygon(moment_body(k));
    ConvergenceResult out;
    out.rows.resize(s_list.size());
    parallel_for(s_list.size(), [&](std::size_t i) {
        AnnealConfig c = cfg;
        c.s = s_list[i];
        const AnnealResult r = anneal_minimizer(k, c);
        out.rows[i] = {c.s, r.ratio, normalized_symmetric_difference(pixels_to_polygon(r.best), mk)};
    });
    out.pass = true;
    for (std::size_t i = 0; i + 1 < out.rows.size(); ++i)
        if (out.rows[i + 1].distance > 1.2 * out.rows[i].distance) out.pass = false;
    return out;
}

}  // namespace fracperi
