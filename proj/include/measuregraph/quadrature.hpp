#ifndef MEASUREGRAPH_QUADRATURE_HPP
#define MEASUREGRAPH_QUADRATURE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace measuregraph {

// Nodes and weights for integrating against a label measure.
// Nodes are stored flat, dim doubles per node.
struct QuadratureRule {
    std::size_t dim = 1;
    std::vector<double> nodes;
    std::vector<double> weights;
    bool atomic = false;
    double tail_mass = 0.0;   // truncated mass lumped on the last node (infinite atomic supports)

    std::size_t size() const noexcept { return weights.size(); }
    std::span<const double> node(std::size_t i) const noexcept {
        return {nodes.data() + i * dim, dim};
    }

    // Gauss-Legendre on [0,1]^dim, tensor product for dim > 1
    static QuadratureRule gauss_legendre(std::size_t order, std::size_t dim = 1);
};

// Gauss-Legendre nodes/weights on [a, b]
void gauss_legendre_1d(std::size_t order, double a, double b, std::vector<double>& x, std::vector<double>& w);

} // namespace measuregraph

#endif
