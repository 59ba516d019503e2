#pragma once

// Independent numeric oracle for 1D fractional perimeters: every interval/gap
// interaction int_I int_J |x - y|^-(1+s) is reduced to corner integrals
// F(P, Q) = int_0^P int_0^Q (p + q)^-(1+s) dq dp, which are evaluated by nested
// double exponential quadrature after a Duffy split that moves the corner
// singularity into an integrable endpoint factor.

#include "fracperi/frac1d.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

namespace fracperi::testing {

// Termination tolerance of each nested rule; three orders below the 1e-8
// accuracy the oracle is used for.
inline constexpr double kOracleTol = 1e-11;

/// Triangle {0 < p < P, 0 < q < c p}: with q = c p t the integrand becomes
/// c p^-s (1 + c t)^-(1+s) on [0,P] x [0,1].
inline double duffy_triangle(double P, double c, double s)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    auto outer = [&](double p) {
        auto inner = [&](double t) { return c * std::pow(1.0 + c * t, -1.0 - s); };
        return std::pow(p, -s) * ts.integrate(inner, 0.0, 1.0, kOracleTol);
    };
    return ts.integrate(outer, 0.0, P, kOracleTol);
}

inline double corner_integral(double P, double Q, double s)
{
    if (P <= 0.0) return 0.0;
    if (std::isinf(Q)) {
        // [0,P]^2 plus the nonsingular strip q > P.
        boost::math::quadrature::tanh_sinh<double> ts;
        boost::math::quadrature::exp_sinh<double> es;
        auto outer = [&](double p) {
            auto inner = [&](double q) { return std::pow(p + q, -1.0 - s); };
            return es.integrate(inner, P, std::numeric_limits<double>::infinity(), kOracleTol);
        };
        return corner_integral(P, P, s) + ts.integrate(outer, 0.0, P, kOracleTol);
    }
    return duffy_triangle(P, Q / P, s) + duffy_triangle(Q, P / Q, s);
}

/// int_0^P int_0^Q (p + q + g)^-(1+s) dq dp for separation g >= 0.
inline double facing_pair_integral(double P, double Q, double g, double s)
{
    return corner_integral(P + g, Q, s) - corner_integral(g, Q, s);
}

/// Sum over interval/gap pairs, with the two unbounded outer gaps.
inline double numeric_frac_perimeter_1d(const IntervalUnion& a, double s)
{
    const auto& it = a.items();
    const double inf = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t i = 0; i < it.size(); ++i) {
        const double len = it[i].b - it[i].a;
        // The unbounded gaps start at a_1 and b_m.
        total += facing_pair_integral(len, inf, it[i].a - it.front().a, s);
        total += facing_pair_integral(len, inf, it.back().b - it[i].b, s);
        for (std::size_t j = 0; j + 1 < it.size(); ++j) {
            const double c = it[j].b, d = it[j + 1].a;
            if (d <= it[i].a) total += facing_pair_integral(len, d - c, it[i].a - d, s);
            else total += facing_pair_integral(len, d - c, c - it[i].b, s);
        }
    }
    return total;
}

}  // namespace fracperi::testing
