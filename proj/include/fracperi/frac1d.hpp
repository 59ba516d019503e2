#pragma once

#include <span>
#include <vector>

namespace fracperi {

struct Interval {
    double a;
    double b;
};

/// Finite union of open intervals, sorted, pairwise separated by positive gaps.
/// Construction merges overlaps and gaps shorter than 1e-12 and drops
/// intervals of length <= 1e-12 (measure-zero changes).
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> items);

    const std::vector<Interval>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    double length() const;
    double diameter() const;
    IntervalUnion scaled(double lambda) const;
    IntervalUnion translated(double shift) const;

private:
    std::vector<Interval> items_;
};

/// Lowest and highest s accepted by public entry points.
inline constexpr double kMinS = 1e-4;
inline constexpr double kMaxS = 1.0 - 1e-4;
/// Throws ParameterError unless s lies in [kMinS, kMaxS].
void check_s(double s);

/// card of the reduced boundary: two endpoints per interval.
int reduced_boundary_count(const IntervalUnion& a);

/// Antiderivative kernel G(d) = d^(1-s) / (s (1-s)), G(0) = 0.
double kernel_antiderivative(double d, double s);

/// Exact fractional s-perimeter of an interval union: sum over interval/gap
/// pairs of the closed-form cross energy. Nonempty union and s in range.
double frac_perimeter_1d(const IntervalUnion& a, double s);

/// Same value as frac_perimeter_1d; the per-line integrand used by the
/// line-integral planar method.
double cross_energy_1d(const IntervalUnion& a, double s);

/// Unchecked kernel on sorted endpoints a1 < b1 < a2 < b2 < ... (even count).
double line_energy(std::span<const double> endpoints, double s);

/// Envelope valid for 1/2 <= s < 1: 8 card(boundary) max{1, diam}.
double near_one_envelope(const IntervalUnion& a);
/// Envelope valid for 0 < s < s' < 1/2: (4/s) max{1, diam} + diam^2 + P_{s'}(A).
double small_s_envelope(const IntervalUnion& a, double s, double s_prime);

}  // namespace fracperi
