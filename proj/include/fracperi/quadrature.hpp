#pragma once

#include <vector>

namespace fracperi {

/// Nodes and weights of a 1D rule on [0, 1].
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta on [-1, 1],
/// computed by Golub-Welsch. alpha = beta = 0 is Gauss-Legendre. Cached.
const Rule1D& gauss_jacobi(int n, double alpha, double beta);

/// n-point Gauss-Legendre rule mapped to [0, 1].
const Rule1D& gauss_legendre_unit(int n);

/// Gauss-Legendre on [0, 1] pushed through the regularized incomplete beta map
/// I_t(p, p), which clusters nodes toward both ends like t^p. p = 1 is the
/// plain rule. Cached per (n, p).
const Rule1D& graded_unit_rule(int n, double p);

/// Gauss-Jacobi on [0, 1] for the weight t^a (1 - t)^b; the returned weights
/// already include the weight function, so sum_i w_i f(t_i) ~ int f t^a (1-t)^b.
/// The caller passes f / (t^a (1 - t)^b) evaluated at the nodes.
const Rule1D& jacobi_unit_rule(int n, double a, double b);

}  // namespace fracperi
