#pragma once

#include "fracperi/convex_body.hpp"
#include "fracperi/frac_perimeter.hpp"
#include "fracperi/region.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fracperi {

/// P_s(E, K) area(E)^-((2-s)/2): scale invariant. Polygons use the line method.
double isoperimetric_ratio(const PolygonRegion& e, const SymmetricBody& k, double s, const QuadratureSpec& q = {});
double isoperimetric_ratio(const PixelSet& e, const SymmetricBody& k, double s);

struct GammaWitness {
    std::string name;
    double ratio;
    double error_estimate;
};

/// Two-sided estimate of gamma_s(K) = inf_E P_s(E, K) area(E)^-((2-s)/2).
struct GammaBracket {
    double lower = 0.0;
    double upper = 0.0;
    double lower_error = 0.0;   ///< propagated quadrature error of `lower`
    double upper_error = 0.0;
    double c1 = 0.0;            ///< gauge extrema of K on the unit circle
    double c2 = 0.0;
    double euclidean_disc_ratio = 0.0;
    std::vector<GammaWitness> witnesses;   ///< "body", "moment body", "disc"
    std::string upper_witness;
};

/// lower = c2^-(2+s) ratio(disc 256-gon, Ball(1)); upper = min over the body
/// itself, the moment-body hull and the disc of ratio(., K). Both sides carry
/// quadrature error, so an inversion is only reported (NumericalError) when
/// lower exceeds upper by more than 2 rel_tol.
GammaBracket gamma_bracket(const SymmetricBody& k, double s, const QuadratureSpec& q = {});

struct AnnealConfig {
    int grid = 48;                       ///< cells per side, >= 16
    double half_width = 0.0;             ///< of the square domain; 0 means 4 diam(K)
    double s = 0.9;
    double initial_temperature = 2e-3;   ///< relative: uphill move dR/R accepted w.p. exp(-(dR/R)/T)
    double cooling = 0.9;                ///< per epoch, in (0, 1)
    long flips_per_epoch = 4000;
    int epochs = 60;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TraceRow {
    int epoch;
    double temperature;
    double current_ratio;
    double best_ratio;
    double accept_rate;
};

struct AnnealResult {
    PixelSet best;
    double ratio;            ///< of `best`, recomputed from scratch
    double initial_ratio;
    std::vector<TraceRow> trace;
};

/// Initial state: K's boundary polygon scaled to a quarter of the domain area
/// and pixelized (cell centres inside).
PixelSet initial_configuration(const SymmetricBody& k, const AnnealConfig& cfg);
/// Pixelizes `shape` (centred at the origin), scaled to a quarter of the
/// domain area, on the annealing grid of cfg.
PixelSet pixelize(const std::vector<Vec2>& shape, const SymmetricBody& k, const AnnealConfig& cfg);

/// Simulated annealing over single-cell flips on the frontier of E, with
/// Metropolis acceptance on the relative change of the ratio and geometric
/// cooling. Returns the best configuration seen; deterministic for a seed.
AnnealResult anneal_minimizer(const SymmetricBody& k, const AnnealConfig& cfg);

struct ConvergenceRow {
    double s;
    double ratio;
    double distance;   ///< area(E Δ c MK) / area(c MK) after area matching and centring
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    bool pass = false;   ///< d non-increasing up to 20% slack between consecutive s
};

/// Normalized symmetric difference between E (rescaled to the area of the
/// convex polygon `target` and centred at its centroid) and `target`.
double normalized_symmetric_difference(const PolygonRegion& e, const std::vector<Vec2>& target);

/// Anneals at each s (ascending, within [0.6, 0.95], at least 3 values) with
/// the template config and compares each minimizer to the moment body.
ConvergenceResult minimizer_convergence_experiment(const SymmetricBody& k, std::vector<double> s_list,
                                                   const AnnealConfig& cfg);

}  // namespace fracperi
