#ifndef MEASUREGRAPH_GRAPH_HPP
#define MEASUREGRAPH_GRAPH_HPP

#include "json.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace measuregraph {

struct Provenance {
    std::string spec_hash;
    std::uint64_t seed = 0;
};

// Vertex labels plus a weighted adjacency array. Undirected graphs keep a symmetric array;
// a loop contributes A_ii once to the row sum. FAIW graphs also carry the atom weights W,
// and every entry then counts with multiplicity W_i W_j.
struct LabeledGraph {
    std::vector<double> labels;   // flat, dim per vertex
    std::size_t dim = 1;
    Eigen::MatrixXd adjacency;
    bool directed = false;
    bool self_edges = false;
    std::vector<double> vertex_weights;
    Provenance provenance;

    std::size_t size() const noexcept { return static_cast<std::size_t>(adjacency.rows()); }
    std::span<const double> label(std::size_t i) const noexcept { return {labels.data() + i * dim, dim}; }
    double multiplicity(std::size_t i, std::size_t j) const noexcept {
        return vertex_weights.empty() ? 1.0 : vertex_weights[i] * vertex_weights[j];
    }

    // Active edges. normalized: undirected pairs once (loops once); otherwise every ordered pair.
    double edge_count(bool normalized = true) const;
    double edge_weight(bool normalized = true) const;
    std::vector<double> out_degrees() const;   // row sums
    std::vector<double> in_degrees() const;    // column sums
    std::size_t active_vertices() const;       // vertices touching at least one active edge

    void validate() const;
};

bool is_acyclic(const LabeledGraph& g);

nlohmann::json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& j);
std::string graph_to_edge_list(const LabeledGraph& g);
// Reads "i j weight" lines. Vertex count is one more than the largest index unless given.
LabeledGraph graph_from_edge_list(const std::string& text, bool directed = false, std::size_t vertices = 0);

} // namespace measuregraph

#endif
