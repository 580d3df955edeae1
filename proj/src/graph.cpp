#include "measuregraph/graph.hpp"

#include "measuregraph/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace measuregraph {

using nlohmann::json;

double LabeledGraph::edge_count(bool normalized) const {
    const std::size_t n = size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (normalized && !directed) ? i : 0; j < n; ++j)
            if (adjacency(i, j) > 0.0) total += multiplicity(i, j);
    return total;
}

double LabeledGraph::edge_weight(bool normalized) const {
    const std::size_t n = size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (normalized && !directed) ? i : 0; j < n; ++j) total += adjacency(i, j);
    return total;
}

std::vector<double> LabeledGraph::out_degrees() const {
    std::vector<double> d(size());
    for (std::size_t i = 0; i < size(); ++i) d[i] = adjacency.row(i).sum();
    return d;
}

std::vector<double> LabeledGraph::in_degrees() const {
    std::vector<double> d(size());
    for (std::size_t i = 0; i < size(); ++i) d[i] = adjacency.col(i).sum();
    return d;
}

std::size_t LabeledGraph::active_vertices() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        bool active = false;
        for (std::size_t j = 0; j < size() && !active; ++j)
            active = adjacency(i, j) > 0.0 || adjacency(j, i) > 0.0;
        if (active) ++count;
    }
    return count;
}

void LabeledGraph::validate() const {
    require(adjacency.rows() == adjacency.cols(), "graph: adjacency must be square");
    require(labels.size() == size() * dim, "graph: one label per vertex");
    require(vertex_weights.empty() || vertex_weights.size() == size(), "graph: one weight per vertex");
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            require(adjacency(i, j) >= 0.0, "graph: weights must be nonnegative");
            if (!directed) require(adjacency(i, j) == adjacency(j, i), "graph: undirected adjacency must be symmetric");
        }
        if (!self_edges) require(adjacency(i, i) == 0.0, "graph: self edges present but disallowed");
    }
}

bool is_acyclic(const LabeledGraph& g) {
    // Kahn's algorithm
    const std::size_t n = g.size();
    std::vector<std::size_t> indeg(n, 0), queue;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.adjacency(i, j) > 0.0) ++indeg[j];
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) queue.push_back(i);
    std::size_t seen = 0;
    while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        ++seen;
        for (std::size_t j = 0; j < n; ++j)
            if (g.adjacency(v, j) > 0.0 && --indeg[j] == 0) queue.push_back(j);
    }
    return seen == n;
}

json graph_to_json(const LabeledGraph& g) {
    json vertices = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.dim == 1) vertices.push_back(g.labels[i]);
        else vertices.push_back(std::vector<double>(g.label(i).begin(), g.label(i).end()));
    }
    json edges = json::array();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = g.directed ? 0 : i; j < g.size(); ++j)
            if (g.adjacency(i, j) != 0.0) edges.push_back(json::array({i, j, g.adjacency(i, j)}));
    json out = {{"vertices", vertices},
                {"edges", edges},
                {"directed", g.directed},
                {"self_edges", g.self_edges},
                {"provenance", {{"spec_hash", g.provenance.spec_hash}, {"seed", g.provenance.seed}}}};
    if (!g.vertex_weights.empty()) out["vertex_weights"] = g.vertex_weights;
    return out;
}

LabeledGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ValidationError("graph: expected an object with 'vertices' and 'edges'");
    LabeledGraph g;
    const json& v = j["vertices"];
    if (!v.is_array()) throw ValidationError("graph.vertices: expected an array");
    std::size_t n = v.size();
    g.dim = 1;
    if (n > 0 && v[0].is_array()) g.dim = v[0].size();
    for (const auto& e : v) {
        if (e.is_array()) {
            if (e.size() != g.dim) throw ValidationError("graph.vertices: inconsistent label dimension");
            for (const auto& x : e) g.labels.push_back(x.get<double>());
        } else {
            if (!e.is_number()) throw ValidationError("graph.vertices: labels must be numbers");
            g.labels.push_back(e.get<double>());
        }
    }
    g.directed = j.value("directed", false);
    g.self_edges = j.value("self_edges", false);
    g.adjacency = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3) throw ValidationError("graph.edges: expected [i, j, weight] triples");
        auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
        double w = e[2].get<double>();
        if (a >= n || b >= n) throw ValidationError("graph.edges: vertex index out of range");
        g.adjacency(a, b) = w;
        if (!g.directed) g.adjacency(b, a) = w;
    }
    if (j.contains("vertex_weights")) g.vertex_weights = j["vertex_weights"].get<std::vector<double>>();
    if (j.contains("provenance")) {
        const json& p = j["provenance"];
        g.provenance.spec_hash = p.value("spec_hash", "");
        g.provenance.seed = p.value("seed", std::uint64_t{0});
    }
    g.validate();
    return g;
}

std::string graph_to_edge_list(const LabeledGraph& g) {
    std::ostringstream os;
    char buf[64];
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = g.directed ? 0 : i; j < g.size(); ++j)
            if (g.adjacency(i, j) != 0.0) {
                std::snprintf(buf, sizeof buf, "%.17g", g.adjacency(i, j));
                os << i << ' ' << j << ' ' << buf << '\n';
            }
    return os.str();
}

LabeledGraph graph_from_edge_list(const std::string& text, bool directed, std::size_t vertices) {
    struct Entry { std::size_t i, j; double w; };
    std::vector<Entry> entries;
    std::istringstream is(text);
    std::string line;
    std::size_t n = vertices;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Entry e{};
        if (!(ls >> e.i >> e.j >> e.w)) throw ValidationError("edge list: malformed line '" + line + "'");
        n = std::max({n, e.i + 1, e.j + 1});
        entries.push_back(e);
    }
    LabeledGraph g;
    g.directed = directed;
    g.adjacency = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) g.labels.push_back(static_cast<double>(i));
    for (const auto& e : entries) {
        g.adjacency(e.i, e.j) = e.w;
        if (!directed) g.adjacency(e.j, e.i) = e.w;
        if (e.i == e.j) g.self_edges = true;
    }
    return g;
}

} // namespace measuregraph
