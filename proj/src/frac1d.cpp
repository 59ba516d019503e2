#include "fracperi/frac1d.hpp"

#include "fracperi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracperi {
namespace {

constexpr double kMeasureZero = 1e-12;

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> items)
{
    for (const Interval& iv : items) {
        if (!std::isfinite(iv.a) || !std::isfinite(iv.b)) throw ValidationError("interval endpoints must be finite");
        if (!(iv.a < iv.b)) throw ValidationError("interval needs a < b");
    }
    std::sort(items.begin(), items.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });
    for (const Interval& iv : items) {
        if (!items_.empty() && iv.a - items_.back().b < kMeasureZero) {
            items_.back().b = std::max(items_.back().b, iv.b);
        } else {
            items_.push_back(iv);
        }
    }
    std::erase_if(items_, [](const Interval& iv) { return iv.b - iv.a <= kMeasureZero; });
}

double IntervalUnion::length() const
{
    double total = 0.0;
    for (const Interval& iv : items_) total += iv.b - iv.a;
    return total;
}

double IntervalUnion::diameter() const
{
    return items_.empty() ? 0.0 : items_.back().b - items_.front().a;
}

IntervalUnion IntervalUnion::scaled(double lambda) const
{
    if (!(lambda > 0.0)) throw ParameterError("scale factor must be positive");
    std::vector<Interval> out;
    for (const Interval& iv : items_) out.push_back({lambda * iv.a, lambda * iv.b});
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::translated(double shift) const
{
    std::vector<Interval> out;
    for (const Interval& iv : items_) out.push_back({iv.a + shift, iv.b + shift});
    return IntervalUnion(std::move(out));
}

void check_s(double s)
{
    if (!(s >= kMinS && s <= kMaxS))
        throw ParameterError("s = " + std::to_string(s) + " outside [1e-4, 1 - 1e-4]");
}

int reduced_boundary_count(const IntervalUnion& a)
{
    return 2 * static_cast<int>(a.items().size());
}

double kernel_antiderivative(double d, double s)
{
    if (d <= 0.0) return 0.0;
    return std::exp((1.0 - s) * std::log(d)) / (s * (1.0 - s));
}

double line_energy(std::span<const double> e, double s)
{
    // Intervals I_i = (e[2i], e[2i+1]); gaps are the complementary pieces,
    // the two outer ones half-infinite.
    const std::size_t m = e.size() / 2;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = e[2 * i];
        const double b = e[2 * i + 1];
        // Left outer gap (-inf, e[0]) and right outer gap (e[2m-1], inf).
        total += kernel_antiderivative(b - e[0], s) - kernel_antiderivative(a - e[0], s);
        total += kernel_antiderivative(e[2 * m - 1] - a, s) - kernel_antiderivative(e[2 * m - 1] - b, s);
        // Bounded gaps (e[2j+1], e[2j+2]).
        for (std::size_t j = 0; j + 1 < m; ++j) {
            const double c = e[2 * j + 1];
            const double d = e[2 * j + 2];
            if (d <= a) {
                total += kernel_antiderivative(a - c, s) + kernel_antiderivative(b - d, s) -
                         kernel_antiderivative(a - d, s) - kernel_antiderivative(b - c, s);
            } else {
                total += kernel_antiderivative(c - a, s) + kernel_antiderivative(d - b, s) -
                         kernel_antiderivative(c - b, s) - kernel_antiderivative(d - a, s);
            }
        }
    }
    return total;
}

double frac_perimeter_1d(const IntervalUnion& a, double s)
{
    check_s(s);
    if (a.empty()) throw ParameterError("frac_perimeter_1d: empty interval union");
    std::vector<double> endpoints;
    endpoints.reserve(2 * a.items().size());
    for (const Interval& iv : a.items()) {
        endpoints.push_back(iv.a);
        endpoints.push_back(iv.b);
    }
    return line_energy(endpoints, s);
}

double cross_energy_1d(const IntervalUnion& a, double s)
{
    return frac_perimeter_1d(a, s);
}

double near_one_envelope(const IntervalUnion& a)
{
    return 8.0 * reduced_boundary_count(a) * std::max(1.0, a.diameter());
}

double small_s_envelope(const IntervalUnion& a, double s, double s_prime)
{
    if (!(0.0 < s && s < s_prime && s_prime < 0.5)) throw ParameterError("small_s_envelope needs 0 < s < s' < 1/2");
    const double diam = a.diameter();
    return 4.0 / s * std::max(1.0, diam) + diam * diam + frac_perimeter_1d(a, s_prime);
}

}  // namespace fracperi
