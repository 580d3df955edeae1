#ifndef MEASUREGRAPH_GRAPH_GENERATION_HPP
#define MEASUREGRAPH_GRAPH_GENERATION_HPP

#include "measuregraph/graph.hpp"
#include "measuregraph/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace measuregraph {

// Samples vertices from the spec's measure and every pair's edge value. Pair (i, j) draws from
// the stream derive_seed(seed, i, j), so a graph is reproducible from (spec, seed).
LabeledGraph generate(const ModelSpec& spec, std::uint64_t seed);

// DAG: the spec's Bernoulli kernel restricted to label pairs x < y.
ModelSpec dag_spec(const ModelSpec& spec);
LabeledGraph generate_dag(const ModelSpec& spec, std::uint64_t seed);

enum class RewireMode {
    AllTouching,   // resample every edge with an endpoint in J
    Block          // resample only edges inside J x J
};

// Resamples the labels of n random vertices and the edges selected by mode.
LabeledGraph rewire(const LabeledGraph& g, const ModelSpec& spec, std::size_t n, std::uint64_t seed,
                    RewireMode mode = RewireMode::AllTouching);

// Edges from every vertex to an extra vertex labelled z, then the ordered triangle sum
// over pairs of distinct vertices: sum_{i != j} w_ij w_jz w_zi.
double sample_triangle_weight(const ModelSpec& spec, LabelView z, std::uint64_t seed);

using DegreeSequence = std::vector<std::int64_t>;

// D*_k = |{i : D_i >= k}| for k = 1..n
DegreeSequence conjugate(const DegreeSequence& d);

enum class GraphicalCriterion {
    CM,   // configuration model: even total
    GR,   // Gale-Ryser: symmetric 0/1 matrix, loops allowed
    EG    // Erdos-Gallai: simple undirected graph
};

struct GraphicalityReport {
    bool graphical = true;
    std::optional<std::size_t> violated_k;   // first failing prefix length (1-based), if any
    std::string detail;
};

GraphicalityReport check_graphical(const DegreeSequence& d, GraphicalCriterion criterion);
bool is_graphical(const DegreeSequence& d, GraphicalCriterion criterion);

enum class RealizationMode {
    Simple,          // Havel-Hakimi, EG-graphical input
    BipartiteFlow,   // max-flow 0/1 matrix, symmetrized; GR-graphical input, loops allowed
    Configuration    // stub matching; loops and multi-edges allowed, a loop adds 2 to A_ii
};

// Vertex i of the result has degree D_i (row sum), in the input order.
LabeledGraph realize_degree_sequence(const DegreeSequence& d, RealizationMode mode, std::uint64_t seed);

// Multinomial allocation of n_edges over the cells of p (sum 1). The symmetric variant splits
// n_edges / 2 over the upper triangle and mirrors it; with loops a diagonal draw adds 2 to A_ii.
LabeledGraph fixed_edge_multigraph(std::int64_t n_edges, const Eigen::MatrixXd& p, bool symmetric, bool loops,
                                   std::uint64_t seed);

struct ThinningResult {
    Eigen::VectorXd weights;    // W_x ~ Bernoulli(p_x)
    Eigen::MatrixXd thinned;    // diag(W) A diag(W)
    double total = 0.0;         // entrywise sum
};

ThinningResult bernoulli_thin(const Eigen::MatrixXd& a, const std::vector<double>& p, std::uint64_t seed);

// Same draw of W as bernoulli_thin without materializing the array: only retained indices are visited.
struct ThinnedTotal {
    double total = 0.0;
    std::vector<std::size_t> retained;
};
ThinnedTotal thinned_total(const std::function<double(std::size_t, std::size_t)>& a, const std::vector<double>& p,
                           std::uint64_t seed);

// All-ones array on {1..N} with p_x = x^-s: mean total weight on {1..N} and on all of N.
struct ZetaThinningMean {
    double truncated = 0.0;
    double full = 0.0;   // zeta(s) - zeta(2s) + zeta(s)^2
    double tail = 0.0;   // full - truncated
};
ZetaThinningMean zeta_thinning_mean(double s, std::size_t n);

// Poisson edge weights with mean D_i D_j / m between vertices labelled by their target degrees.
LabeledGraph soft_fixed_degree(const DegreeSequence& d, std::uint64_t seed);

} // namespace measuregraph

#endif
