#pragma once

// Shared kernels for the planar quadrature engines.

#include "fracperi/region.hpp"

#include <span>
#include <vector>

namespace fracperi::detail {

/// Crossing parameters r > 0 of the ray x + r u with the boundary, sorted.
/// Half-open vertex rule, so vertex hits are counted consistently.
void ray_crossings(std::span<const Segment> edges, Vec2 x, Vec2 u, std::vector<double>& out);

/// Radial kernel R_s(x, u) = sum_k (a_k^-s - b_k^-s) / s over the complement
/// segments of the ray; the unbounded segment contributes a^-s / s.
double radial_kernel(std::span<const Segment> edges, Vec2 x, Vec2 u, double s, std::vector<double>& scratch);

}  // namespace fracperi::detail
