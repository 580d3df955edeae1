#include "measuregraph/quadrature.hpp"

#include "measuregraph/errors.hpp"

#include <cmath>
#include <numbers>

namespace measuregraph {

void gauss_legendre_1d(std::size_t order, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    require(order >= 1, "quadrature order must be positive");
    x.assign(order, 0.0);
    w.assign(order, 0.0);
    const std::size_t n = order;
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        x[i] = mid - hw * z;
        x[n - 1 - i] = mid + hw * z;
        w[i] = w[n - 1 - i] = hw * wi;
    }
}

QuadratureRule QuadratureRule::gauss_legendre(std::size_t order, std::size_t dim) {
    require(dim >= 1, "quadrature dimension must be positive");
    std::vector<double> x, w;
    gauss_legendre_1d(order, 0.0, 1.0, x, w);
    QuadratureRule rule;
    rule.dim = dim;
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= order;
    rule.nodes.resize(total * dim);
    rule.weights.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        double weight = 1.0;
        for (std::size_t d = 0; d < dim; ++d) {
            std::size_t k = rem % order;
            rem /= order;
            rule.nodes[idx * dim + d] = x[k];
            weight *= w[k];
        }
        rule.weights[idx] = weight;
    }
    return rule;
}

} // namespace measuregraph
