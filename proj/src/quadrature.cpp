#include "fracperi/quadrature.hpp"

#include "fracperi/errors.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fracperi {
namespace {

Rule1D golub_welsch_jacobi(int n, double alpha, double beta)
{
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * k + ab;
        diag[k] = (k == 0) ? (beta - alpha) / (ab + 2.0)
                           : (beta * beta - alpha * alpha) / (t * (t + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        double b2;
        if (k == 1) {
            // k + alpha + beta cancels against (t - 1); written out to stay finite at ab = -1.
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
        }
        sub[k - 1] = std::sqrt(b2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                                std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

template <class Key, class Make>
const Rule1D& cached(std::map<Key, Rule1D>& cache, std::mutex& m, const Key& key, Make make)
{
    std::lock_guard lock(m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make()).first;
    return it->second;
}

}  // namespace

const Rule1D& gauss_jacobi(int n, double alpha, double beta)
{
    if (n < 1) throw ParameterError("gauss_jacobi: need at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0)) throw ParameterError("gauss_jacobi: exponents must exceed -1");
    static std::map<std::tuple<int, double, double>, Rule1D> cache;
    static std::mutex m;
    return cached(cache, m, std::tuple{n, alpha, beta}, [&] { return golub_welsch_jacobi(n, alpha, beta); });
}

const Rule1D& gauss_legendre_unit(int n)
{
    static std::map<int, Rule1D> cache;
    static std::mutex m;
    return cached(cache, m, n, [&] {
        Rule1D r = gauss_jacobi(n, 0.0, 0.0);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
            r.weights[i] *= 0.5;
        }
        return r;
    });
}

const Rule1D& graded_unit_rule(int n, double p)
{
    if (!(p >= 1.0)) throw ParameterError("graded_unit_rule: grading exponent must be >= 1");
    static std::map<std::pair<int, double>, Rule1D> cache;
    static std::mutex m;
    const Rule1D& base = gauss_legendre_unit(n);
    return cached(cache, m, std::pair{n, p}, [&] {
        Rule1D r = base;
        if (p == 1.0) return r;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double t = base.nodes[i];
            r.nodes[i] = boost::math::ibeta(p, p, t);
            r.weights[i] = base.weights[i] * boost::math::ibeta_derivative(p, p, t);
        }
        return r;
    });
}

const Rule1D& jacobi_unit_rule(int n, double a, double b)
{
    static std::map<std::tuple<int, double, double>, Rule1D> cache;
    static std::mutex m;
    // (1 - x)^alpha (1 + x)^beta with t = (1 + x) / 2: beta pairs with t, alpha with 1 - t.
    const Rule1D& base = gauss_jacobi(n, b, a);
    return cached(cache, m, std::tuple{n, a, b}, [&] {
        Rule1D r = base;
        const double scale = std::pow(2.0, -a - b - 1.0);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            r.nodes[i] = 0.5 * (base.nodes[i] + 1.0);
            r.weights[i] = base.weights[i] * scale;
        }
        return r;
    });
}

}  // namespace fracperi
