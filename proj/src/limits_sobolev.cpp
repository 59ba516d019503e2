#include "fracperi/limits_sobolev.hpp"

#include "fracperi/errors.hpp"
#include "fracperi/frac1d.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fracperi {

namespace {

constexpr int kNestingSamples = 1000;
constexpr std::size_t kFitPoints = 3;

// Interior points of e: uniform in the bounding box with rejection.
std::vector<Vec2> sample_inside(const PolygonRegion& e, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(e.bbox_min().x, e.bbox_max().x), uy(e.bbox_min().y, e.bbox_max().y);
    std::vector<Vec2> pts;
    while (static_cast<int>(pts.size()) < count) {
        const Vec2 p{ux(rng), uy(rng)};
        if (contains(e, p)) pts.push_back(p);
    }
    return pts;
}

void check_grid(const std::vector<double>& grid, double lo, double hi, const char* what)
{
    if (grid.size() < kFitPoints) throw ParameterError(std::string(what) + ": need at least 3 values of s");
    for (double s : grid)
        if (!(s >= lo && s <= hi)) throw ParameterError(std::string(what) + ": s outside the admissible range");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParameterError(std::string(what) + ": repeated s value");
}

// Rows sorted by s; fit uses the kFitPoints rows nearest to the limit point.
template <class Eval>
SweepResult sweep(std::vector<double> grid, bool toward_one, double target, Eval eval)
{
    std::sort(grid.begin(), grid.end());
    SweepResult out;
    for (double s : grid) {
        const EnergyBreakdown b = eval(s);
        const double factor = toward_one ? 1.0 - s : s;
        out.rows.push_back({s, b.value, factor * b.value, factor * b.error_estimate});
    }
    out.target = target;
    out.toward_one = toward_one;
    const auto gap = [&](double v) { return std::abs(v - target) / std::abs(target); };
    for (std::size_t j = 0; j < out.rows.size(); ++j) {
        // Walk the rows in the order of approach; fit the latest few.
        const std::size_t first = j + 1 > kFitPoints ? j + 1 - kFitPoints : 0;
        std::vector<double> x, y;
        for (std::size_t i = first; i <= j; ++i) {
            const SweepRow& r = toward_one ? out.rows[i] : out.rows[out.rows.size() - 1 - i];
            x.push_back(toward_one ? 1.0 - r.s : r.s);
            y.push_back(r.scaled);
        }
        SweepRow& row = toward_one ? out.rows[j] : out.rows[out.rows.size() - 1 - j];
        row.rel_gap = gap(x.size() == 1 ? y[0] : linear_extrapolate(x, y));
    }
    std::vector<double> x, y;
    for (std::size_t i = 0; i < kFitPoints; ++i) {
        const SweepRow& r = toward_one ? out.rows[out.rows.size() - kFitPoints + i] : out.rows[i];
        x.push_back(toward_one ? 1.0 - r.s : r.s);
        y.push_back(r.scaled);
    }
    out.extrapolated = linear_extrapolate(x, y);
    out.rel_gap = gap(out.extrapolated);
    return out;
}

}  // namespace

StepFunction::StepFunction(std::vector<double> thresholds, std::vector<PolygonRegion> regions)
    : thresholds_(std::move(thresholds)), regions_(std::move(regions))
{
    if (thresholds_.empty()) throw ValidationError("step function needs at least one level");
    if (thresholds_.size() != regions_.size()) throw ValidationError("step function: one region per threshold");
    for (std::size_t k = 0; k < thresholds_.size(); ++k) {
        if (!(thresholds_[k] > (k == 0 ? 0.0 : thresholds_[k - 1])) || !std::isfinite(thresholds_[k]))
            throw ValidationError("step function: thresholds must be positive and strictly increasing");
        if (regions_[k].edges().empty()) throw ValidationError("step function: empty level set");
    }
    for (std::size_t k = 0; k + 1 < regions_.size(); ++k) {
        // Any inner level lies in every outer one once consecutive pairs nest.
        for (const Vec2& p : sample_inside(regions_[k + 1], kNestingSamples, k + 1))
            if (!contains(regions_[k], p)) throw ValidationError("step function: level sets are not nested");
    }
}

StepFunction StepFunction::indicator(const PolygonRegion& e, double c)
{
    return StepFunction({c}, {e});
}

double linear_extrapolate(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("linear_extrapolate: need matching points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (!(sxx > 0.0)) throw ParameterError("linear_extrapolate: abscissae must differ");
    return my - sxy / sxx * mx;
}

SweepResult limit_s_to_1(const PolygonRegion& e, const SymmetricBody& k, const std::vector<double>& s_grid,
                         const QuadratureSpec& q)
{
    check_grid(s_grid, 0.7, 0.999, "limit_s_to_1");
    const double target = anisotropic_perimeter(e, moment_body(k));
    return sweep(s_grid, true, target, [&](double s) { return frac_perimeter_bp(e, k, s, q); });
}

SweepResult limit_s_to_0(const PolygonRegion& e, const SymmetricBody& k, const std::vector<double>& s_grid,
                         const QuadratureSpec& q)
{
    check_grid(s_grid, 0.001, 0.2, "limit_s_to_0");
    const double target = 2.0 * volume(k) * area(e);
    return sweep(s_grid, false, target, [&](double s) { return frac_perimeter_bp(e, k, s, q); });
}

double bv_seminorm(const StepFunction& f, const SymmetricBody& l)
{
    double total = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < f.levels(); ++k) {
        total += (f.thresholds()[k] - prev) * anisotropic_perimeter(f.regions()[k], l);
        prev = f.thresholds()[k];
    }
    return total;
}

namespace {

EnergyBreakdown sobolev_breakdown(const StepFunction& f, const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    EnergyBreakdown out;
    out.method = "bp";
    double prev = 0.0;
    for (std::size_t i = 0; i < f.levels(); ++i) {
        const double dt = f.thresholds()[i] - prev;
        const EnergyBreakdown b = frac_perimeter_bp(f.regions()[i], k, s, q);
        out.value += 2.0 * dt * b.value;
        out.error_estimate += 2.0 * dt * b.error_estimate;
        out.angular_nodes = std::max(out.angular_nodes, b.angular_nodes);
        out.spatial_nodes += b.spatial_nodes;
        prev = f.thresholds()[i];
    }
    return out;
}

}  // namespace

double frac_sobolev_seminorm(const StepFunction& f, const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    return sobolev_breakdown(f, k, s, q).value;
}

SweepResult sobolev_limit(const StepFunction& f, const SymmetricBody& k, const std::vector<double>& s_grid,
                          const QuadratureSpec& q)
{
    check_grid(s_grid, 0.7, 0.999, "sobolev_limit");
    const double target = 2.0 * bv_seminorm(f, moment_body(k));
    return sweep(s_grid, true, target, [&](double s) { return sobolev_breakdown(f, k, s, q); });
}

double lp_norm(const StepFunction& f, double p)
{
    if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("lp_norm: p must be >= 1");
    double total = 0.0;
    for (std::size_t k = 0; k < f.levels(); ++k) {
        const double shell = area(f.regions()[k]) - (k + 1 < f.levels() ? area(f.regions()[k + 1]) : 0.0);
        total += shell * std::pow(f.thresholds()[k], p);
    }
    return std::pow(total, 1.0 / p);
}

}  // namespace fracperi
