#pragma once

#include "fracperi/convex_body.hpp"
#include "fracperi/region.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fracperi {

/// Node counts and tolerances for the planar quadratures.
struct QuadratureSpec {
    int n_theta = 512;               ///< angular nodes on the full circle, even, >= 32
    int offsets_per_segment = 8;     ///< Gauss nodes between consecutive offset events, >= 2
    double grading_exponent = 2.0;   ///< clustering of offset nodes toward events, >= 1
    int area_refinement = 16;        ///< Gauss-Jacobi nodes per side of each area cell (ray method)
    double rel_tol = 1e-3;           ///< refine until error_estimate <= rel_tol * value (at most twice)
    std::uint64_t seed = 0;          ///< Monte Carlo only

    void validate() const;
};

struct EnergyBreakdown {
    double value = 0.0;
    std::string method;
    double error_estimate = 0.0;
    /// Angular nodes, and offset (bp), area (ray) or sample (mc) nodes actually used.
    long angular_nodes = 0;
    long spatial_nodes = 0;
};

/// P_s(E, K) as (1/2) int_{S^1} ||u||_K^-(2+s) int_{u-perp} P_s(E cap line) dy du, with
/// the per-line energy in closed form. error_estimate is |full - half resolution|.
EnergyBreakdown frac_perimeter_bp(const PolygonRegion& e, const SymmetricBody& k, double s,
                                  const QuadratureSpec& q = {});

/// P_s(E, K) as int_E int_{S^1} ||u||_K^-(2+s) R_s(x, u) du dx with the radial kernel
/// summed over complement segments of each ray.
EnergyBreakdown frac_perimeter_ray(const PolygonRegion& e, const SymmetricBody& k, double s,
                                   const QuadratureSpec& q = {});

/// Monte Carlo estimate of the ray-casting integral; error_estimate is the
/// standard error. Bit-identical for a fixed seed. n_samples >= 1000.
EnergyBreakdown mc_frac_perimeter(const PolygonRegion& e, const SymmetricBody& k, double s, long n_samples,
                                  std::uint64_t seed);

/// Pair interactions of grid cells of size h under the kernel ||x - y||_K^-(2+s).
/// t0 = P_s(cell, K); w(d) = int_cell int_{cell + h d} kernel. Built once per
/// (h, s, K) and cached; thread-safe lookups.
class PixelEnergyModel {
public:
    /// `reach` bounds the tabulated offsets |dx|, |dy| <= reach.
    PixelEnergyModel(double h, double s, const SymmetricBody& k, int reach);

    double h() const { return h_; }
    double s() const { return s_; }
    int reach() const { return reach_; }
    double self_energy() const { return t0_; }
    /// w(dx, dy); zero for (0, 0).
    double pair(int dx, int dy) const;

    /// Returns a shared model for (h, s, K, reach), building it on first use.
    static std::shared_ptr<const PixelEnergyModel> cached(double h, double s, const SymmetricBody& k, int reach);

private:
    double h_;
    double s_;
    int reach_;
    double t0_ = 0.0;
    std::vector<double> table_;
};

/// Near-field radius (in cells) inside which pair terms are integrated rather
/// than approximated by the midpoint kernel value.
inline constexpr double kNearFieldCells = 4.0;

EnergyBreakdown pixel_energy(const PixelSet& e, const SymmetricBody& k, double s);
/// Energy change from toggling cell (i, j); O(|E|). Throws if the flip empties E.
double pixel_flip_delta(const PixelSet& e, const SymmetricBody& k, double s, int i, int j);

}  // namespace fracperi
