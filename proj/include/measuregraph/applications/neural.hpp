#ifndef MEASUREGRAPH_APPLICATIONS_NEURAL_HPP
#define MEASUREGRAPH_APPLICATIONS_NEURAL_HPP

#include "measuregraph/distributions.hpp"
#include "measuregraph/graph.hpp"

#include "json.hpp"

#include <cstdint>
#include <vector>

namespace measuregraph {

// Hidden layers 1..n; neurons draw layers iid from nu and connect x -> y with probability
// p(x) when layer(y) = layer(x) + 1. Input and output layers are not modelled.
struct NnConfig {
    std::size_t layers = 1;
    std::vector<double> nu;   // layer probabilities, length n; empty for uniform
    std::vector<double> p;    // p(x, x + 1) for x = 1..n-1; a single value applies to all
    CountingDistribution kappa = CountingDistribution::poisson(1.0);
};

struct NnArchitecture {
    NnConfig config;
    std::vector<double> nu;            // resolved layer probabilities
    std::vector<double> p;             // resolved, length n - 1
    LabeledGraph graph;                // labels are layers, directed
    double expected_edges = 0.0;       // (c^2 + delta^2 - c) sum p(x) nu{x} nu{x+1}
    // mean degree functions of the layer label: c p(x) nu{x+1} 1(x < n) and c p(x-1) nu{x-1} 1(x > 1)
    std::vector<double> out_degree, in_degree;
    // mean degrees of a realized neuron in layer x: the factor c becomes E[K(K-1)]/c
    std::vector<double> vertex_out_degree, vertex_in_degree;
    double expected_params = 0.0;      // E e + c (1 - nu{1})
    double edges = 0.0;                // realized e(G)
    std::size_t upper_neurons = 0;     // realized neurons in layers > 1
    double params = 0.0;               // e(G) + upper_neurons
    std::vector<std::size_t> layer_counts;
};

NnArchitecture nn_wire(const NnConfig& config, std::uint64_t seed);

nlohmann::json nn_to_json(const NnArchitecture& a);

} // namespace measuregraph

#endif
