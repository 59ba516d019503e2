#pragma once

#include "fracperi/convex_body.hpp"
#include "fracperi/frac_perimeter.hpp"
#include "fracperi/region.hpp"

#include <vector>

namespace fracperi {

/// Nonnegative step function f = sum_k (t_k - t_{k-1}) 1_{E_k} with t_0 = 0,
/// so that {f > t} = E_k for t in [t_{k-1}, t_k). Levels must be nested,
/// E_1 ⊇ E_2 ⊇ ...; nesting is checked on 1000 sample points per pair.
class StepFunction {
public:
    StepFunction(std::vector<double> thresholds, std::vector<PolygonRegion> regions);
    /// c 1_E for c > 0.
    static StepFunction indicator(const PolygonRegion& e, double c = 1.0);

    const std::vector<double>& thresholds() const { return thresholds_; }
    const std::vector<PolygonRegion>& regions() const { return regions_; }
    std::size_t levels() const { return thresholds_.size(); }

private:
    std::vector<double> thresholds_;
    std::vector<PolygonRegion> regions_;
};

struct SweepRow {
    double s;
    double raw;       ///< P_s or the fractional seminorm
    double scaled;    ///< (1 - s) raw or s raw
    double error_estimate;  ///< quadrature error of `scaled`
    /// Relative gap to the target of the extrapolation from this row and the
    /// (up to two) preceding rows in the order of approach to the limit.
    double rel_gap = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;   ///< ordered by increasing s
    double extrapolated = 0.0;
    double target = 0.0;
    double rel_gap = 0.0;
    bool toward_one = true;       ///< limit point s = 1 (else s = 0)
};

/// Value at x = 0 of the least-squares line through (x_i, y_i).
double linear_extrapolate(const std::vector<double>& x, const std::vector<double>& y);

inline const std::vector<double> kDefaultGridToOne{0.9, 0.95, 0.99};
inline const std::vector<double> kDefaultGridToZero{0.1, 0.05, 0.01};

/// (1 - s) P_s(E, K) over s_grid ⊂ [0.7, 0.999], extrapolated linearly in 1 - s
/// from the three largest s; target P(E, MK).
SweepResult limit_s_to_1(const PolygonRegion& e, const SymmetricBody& k,
                         const std::vector<double>& s_grid = kDefaultGridToOne, const QuadratureSpec& q = {});
/// s P_s(E, K) over s_grid ⊂ [0.001, 0.2], extrapolated linearly in s from the
/// three smallest s; target 2 vol(K) area(E).
SweepResult limit_s_to_0(const PolygonRegion& e, const SymmetricBody& k,
                         const std::vector<double>& s_grid = kDefaultGridToZero, const QuadratureSpec& q = {});

/// int_0^inf P({f > t}, L) dt.
double bv_seminorm(const StepFunction& f, const SymmetricBody& l);
/// int int |f(x) - f(y)| / ||x - y||_K^(2+s) = 2 int_0^inf P_s({f > t}, K) dt.
double frac_sobolev_seminorm(const StepFunction& f, const SymmetricBody& k, double s, const QuadratureSpec& q = {});
/// (1 - s) times the seminorm; target 2 ||f||_{BV, MK}.
SweepResult sobolev_limit(const StepFunction& f, const SymmetricBody& k,
                          const std::vector<double>& s_grid = kDefaultGridToOne, const QuadratureSpec& q = {});
/// (int |f|^p)^(1/p), p > 1 (p = 1 is accepted too).
double lp_norm(const StepFunction& f, double p);

}  // namespace fracperi
