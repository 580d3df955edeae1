#include "measuregraph/graph_generation.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace measuregraph {

namespace {

// stream namespaces under the graph seed; 0..2 are taken by the point samplers
constexpr std::uint64_t kEdgeStream = 3;
constexpr std::uint64_t kThinStream = 4;
constexpr std::uint64_t kPhantomStream = 5;
constexpr std::uint64_t kRewireLabelStream = 6;
constexpr std::uint64_t kRewirePickStream = 7;
constexpr std::uint64_t kRealizeStream = 8;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Draws the edge value(s) of pair (i, j), i <= j, into g.adjacency.
void sample_pair(const ModelSpec& spec, LabeledGraph& g, std::size_t i, std::size_t j, std::uint64_t seed) {
    const RandomTransform& t = spec.transform();
    const WeightFunction w = spec.weight();
    LabelView xi = g.label(i), xj = g.label(j);
    if (i == j) {
        Rng rng(derive_seed(seed, kEdgeStream, i, i));
        g.adjacency(ix(i), ix(i)) = apply_weight(w, t.sample(xi, xi, Site::Self, rng).first);
        return;
    }
    if (t.pair_states()) {
        Rng rng(derive_seed(seed, kEdgeStream, i, j));
        auto [a, b] = t.sample(xi, xj, Site::Pair, rng);
        g.adjacency(ix(i), ix(j)) = a;
        g.adjacency(ix(j), ix(i)) = b;
        return;
    }
    Rng rng(derive_seed(seed, kEdgeStream, i, j));
    const double v = apply_weight(w, t.sample(xi, xj, Site::Pair, rng).first);
    g.adjacency(ix(i), ix(j)) = v;
    if (spec.directed()) {
        Rng back(derive_seed(seed, kEdgeStream, j, i));
        g.adjacency(ix(j), ix(i)) = apply_weight(w, t.sample(xj, xi, Site::Pair, back).first);
    } else {
        g.adjacency(ix(j), ix(i)) = v;
    }
}

LabeledGraph empty_graph(const ModelSpec& spec, std::uint64_t seed) {
    LabeledGraph g;
    g.directed = spec.directed();
    g.self_edges = spec.self_edges();
    g.provenance = {spec.hash(), seed};
    if (spec.is_stc()) {
        PointRealization pts = sample_stc(spec.stc(), seed);
        g.labels = std::move(pts.labels);
        g.dim = pts.dim;
    } else {
        PointRealization pts = sample_faiw(spec.faiw(), seed);
        g.labels = std::move(pts.labels);
        g.dim = pts.dim;
        g.vertex_weights = std::move(pts.weights);
    }
    const std::size_t n = g.dim == 0 ? 0 : g.labels.size() / g.dim;
    g.adjacency = Eigen::MatrixXd::Zero(ix(n), ix(n));
    return g;
}

std::int64_t draw_binomial(std::int64_t n, double p, Rng& rng) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return std::binomial_distribution<std::int64_t>(n, p)(rng);
}

// Sequential conditional binomials; probabilities need not be normalized.
std::vector<std::int64_t> multinomial(std::int64_t n, const std::vector<double>& p, Rng& rng) {
    std::vector<std::int64_t> out(p.size(), 0);
    double rest = std::accumulate(p.begin(), p.end(), 0.0);
    std::int64_t left = n;
    for (std::size_t k = 0; k < p.size() && left > 0; ++k) {
        if (p[k] <= 0.0) continue;
        const double q = rest > 0.0 ? std::min(1.0, p[k] / rest) : 1.0;
        out[k] = draw_binomial(left, q, rng);
        left -= out[k];
        rest -= p[k];
    }
    // rounding can leave draws when the tail mass underflows; give them to the last positive cell
    if (left > 0)
        for (std::size_t k = p.size(); k-- > 0;)
            if (p[k] > 0.0) {
                out[k] += left;
                break;
            }
    return out;
}

void validate_sequence(const DegreeSequence& d) {
    for (auto v : d) require(v >= 0, "degree sequence: entries must be nonnegative");
}

DegreeSequence sorted_desc(DegreeSequence d) {
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
}

} // namespace

LabeledGraph generate(const ModelSpec& spec, std::uint64_t seed) {
    LabeledGraph g = empty_graph(spec, seed);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) sample_pair(spec, g, i, j, seed);
    return g;
}

ModelSpec dag_spec(const ModelSpec& spec) {
    require(spec.is_stc(), "dag: requires a stone-throwing measure");
    require(spec.label_dim() == 1, "dag: requires one-dimensional labels");
    const auto* b = std::get_if<RandomTransform::Bernoulli>(&spec.transform().kind());
    require(b != nullptr, "dag: requires a Bernoulli edge transform");
    ModelSpec out(spec.measure(),
                  RandomTransform::bernoulli(b->f.with_order(Kernel::Order::LessThan).with_zero_diagonal(true)),
                  spec.weight(), true);
    out.quadrature_order = spec.quadrature_order;
    return out;
}

LabeledGraph generate_dag(const ModelSpec& spec, std::uint64_t seed) {
    const bool already = spec.directed() && spec.transform().kernel() &&
                         spec.transform().kernel()->order() == Kernel::Order::LessThan;
    return generate(already ? spec : dag_spec(spec), seed);
}

LabeledGraph rewire(const LabeledGraph& g, const ModelSpec& spec, std::size_t n, std::uint64_t seed,
                    RewireMode mode) {
    require(spec.is_stc(), "rewire: requires a stone-throwing measure");
    require(g.provenance.spec_hash.empty() || g.provenance.spec_hash == spec.hash(),
            "rewire: graph was not generated from this spec");
    require(g.dim == spec.label_dim(), "rewire: label dimension differs from the spec");
    require(n <= g.size(), "rewire: cannot resample more vertices than the graph has");
    const std::size_t k = g.size();

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    Rng pick(derive_seed(seed, kRewirePickStream));
    for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> u(i, k - 1);
        std::swap(order[i], order[u(pick)]);
    }
    std::vector<char> in_j(k, 0);
    for (std::size_t i = 0; i < n; ++i) in_j[order[i]] = 1;

    LabeledGraph out = g;
    out.provenance.seed = seed;
    for (std::size_t v = 0; v < k; ++v) {
        if (!in_j[v]) continue;
        Rng rng(derive_seed(seed, kRewireLabelStream, v));
        spec.stc().nu.sample(rng, std::span<double>(out.labels.data() + v * out.dim, out.dim));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            const bool touch = mode == RewireMode::AllTouching ? (in_j[i] || in_j[j]) : (in_j[i] && in_j[j]);
            if (touch) sample_pair(spec, out, i, j, seed);
        }
    return out;
}

double sample_triangle_weight(const ModelSpec& spec, LabelView z, std::uint64_t seed) {
    require(spec.is_stc(), "triangle: requires a stone-throwing measure");
    require(z.size() == spec.label_dim(), "triangle: label dimension differs from the spec");
    LabeledGraph g = generate(spec, seed);
    const std::size_t n = g.size();
    const RandomTransform& t = spec.transform();
    std::vector<double> to_z(n), from_z(n);
    for (std::size_t i = 0; i < n; ++i) {
        LabelView x = g.label(i);
        if (t.pair_states()) {
            Rng rng(derive_seed(seed, kPhantomStream, i));
            auto [a, b] = t.sample(x, z, Site::Pair, rng);
            to_z[i] = a;
            from_z[i] = b;
        } else {
            Rng rng(derive_seed(seed, kPhantomStream, i, 0));
            to_z[i] = apply_weight(spec.weight(), t.sample(x, z, Site::Pair, rng).first);
            if (spec.directed()) {
                Rng back(derive_seed(seed, kPhantomStream, i, 1));
                from_z[i] = apply_weight(spec.weight(), t.sample(z, x, Site::Pair, back).first);
            } else {
                from_z[i] = to_z[i];
            }
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (from_z[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) total += g.adjacency(ix(i), ix(j)) * to_z[j] * from_z[i];
    }
    return total;
}

DegreeSequence conjugate(const DegreeSequence& d) {
    validate_sequence(d);
    const std::size_t n = d.size();
    DegreeSequence out(n, 0);
    for (auto v : d)
        for (std::int64_t k = 1; k <= v && static_cast<std::size_t>(k) <= n; ++k) ++out[k - 1];
    return out;
}

GraphicalityReport check_graphical(const DegreeSequence& input, GraphicalCriterion criterion) {
    validate_sequence(input);
    const DegreeSequence d = sorted_desc(input);
    const std::int64_t total = std::accumulate(d.begin(), d.end(), std::int64_t{0});
    GraphicalityReport r;
    if (criterion == GraphicalCriterion::CM || criterion == GraphicalCriterion::EG) {
        if (total % 2 != 0) {
            r.graphical = false;
            r.detail = "degree sum " + std::to_string(total) + " is odd";
            return r;
        }
        if (criterion == GraphicalCriterion::CM) return r;
    }
    const std::size_t n = d.size();
    if (criterion == GraphicalCriterion::GR) {
        const DegreeSequence star = conjugate(d);
        std::int64_t lhs = 0, rhs = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            lhs += d[k - 1];
            rhs += star[k - 1];
            if (lhs > rhs) {
                r.graphical = false;
                r.violated_k = k;
                r.detail = "prefix " + std::to_string(k) + ": sum D = " + std::to_string(lhs) +
                           " exceeds sum D* = " + std::to_string(rhs);
                return r;
            }
        }
        if (lhs != rhs) {
            r.graphical = false;
            r.violated_k = n;
            r.detail = "degree exceeds the number of vertices";
        }
        return r;
    }
    std::int64_t lhs = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        lhs += d[k - 1];
        std::int64_t rhs = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(k - 1);
        for (std::size_t i = k; i < n; ++i) rhs += std::min<std::int64_t>(d[i], static_cast<std::int64_t>(k));
        if (lhs > rhs) {
            r.graphical = false;
            r.violated_k = k;
            r.detail = "prefix " + std::to_string(k) + ": sum D = " + std::to_string(lhs) + " exceeds bound " +
                       std::to_string(rhs);
            return r;
        }
    }
    return r;
}

bool is_graphical(const DegreeSequence& d, GraphicalCriterion criterion) {
    return check_graphical(d, criterion).graphical;
}

namespace {

Eigen::MatrixXd havel_hakimi(const DegreeSequence& d, Rng& rng) {
    const std::size_t n = d.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ix(n), ix(n));
    std::vector<std::int64_t> rest(d.begin(), d.end());
    std::vector<std::size_t> tiebreak(n);
    std::iota(tiebreak.begin(), tiebreak.end(), 0);
    std::shuffle(tiebreak.begin(), tiebreak.end(), rng);
    std::vector<std::size_t> idx(n);
    for (;;) {
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t u, std::size_t v) {
            return rest[u] != rest[v] ? rest[u] > rest[v] : tiebreak[u] < tiebreak[v];
        });
        const std::size_t v = idx[0];
        const std::int64_t k = rest[v];
        if (k == 0) break;
        if (static_cast<std::size_t>(k) >= n) throw ValidationError("realize: sequence is not graphical (Erdos-Gallai)");
        rest[v] = 0;
        for (std::int64_t t = 1; t <= k; ++t) {
            const std::size_t u = idx[static_cast<std::size_t>(t)];
            if (rest[u] == 0) throw ValidationError("realize: sequence is not graphical (Erdos-Gallai)");
            --rest[u];
            a(ix(u), ix(v)) = a(ix(v), ix(u)) = 1.0;
        }
    }
    return a;
}

Eigen::MatrixXd configuration(const DegreeSequence& d, Rng& rng) {
    const std::size_t n = d.size();
    std::vector<std::size_t> stubs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::int64_t k = 0; k < d[i]; ++k) stubs.push_back(i);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ix(n), ix(n));
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
        const std::size_t u = stubs[s], v = stubs[s + 1];
        if (u == v) {
            a(ix(u), ix(u)) += 2.0;
        } else {
            a(ix(u), ix(v)) += 1.0;
            a(ix(v), ix(u)) += 1.0;
        }
    }
    return a;
}

// 0/1 matrix with row and column sums d via Edmonds-Karp on the bipartite network.
Eigen::MatrixXd bipartite_flow_matrix(const DegreeSequence& d) {
    const std::size_t n = d.size();
    const std::size_t src = 2 * n, sink = 2 * n + 1, nodes = 2 * n + 2;
    struct Arc { std::size_t to; std::int64_t cap; };
    std::vector<Arc> arcs;
    std::vector<std::vector<std::size_t>> out(nodes);
    auto add = [&](std::size_t u, std::size_t v, std::int64_t cap) {
        out[u].push_back(arcs.size());
        arcs.push_back({v, cap});
        out[v].push_back(arcs.size());
        arcs.push_back({u, 0});
    };
    for (std::size_t i = 0; i < n; ++i) add(src, i, d[i]);
    std::vector<std::vector<std::size_t>> cell(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cell[i][j] = arcs.size();
            add(i, n + j, 1);
        }
    for (std::size_t j = 0; j < n; ++j) add(n + j, sink, d[j]);

    std::int64_t flow = 0;
    std::vector<std::size_t> via(nodes);
    std::vector<char> seen(nodes);
    for (;;) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<std::size_t> queue{src};
        seen[src] = 1;
        for (std::size_t h = 0; h < queue.size() && !seen[sink]; ++h) {
            const std::size_t u = queue[h];
            for (std::size_t e : out[u]) {
                if (arcs[e].cap > 0 && !seen[arcs[e].to]) {
                    seen[arcs[e].to] = 1;
                    via[arcs[e].to] = e;
                    queue.push_back(arcs[e].to);
                }
            }
        }
        if (!seen[sink]) break;
        std::int64_t push = std::numeric_limits<std::int64_t>::max();
        for (std::size_t v = sink; v != src; v = arcs[via[v] ^ 1].to) push = std::min(push, arcs[via[v]].cap);
        for (std::size_t v = sink; v != src; v = arcs[via[v] ^ 1].to) {
            arcs[via[v]].cap -= push;
            arcs[via[v] ^ 1].cap += push;
        }
        flow += push;
    }
    const std::int64_t total = std::accumulate(d.begin(), d.end(), std::int64_t{0});
    if (flow != total) throw ValidationError("realize: sequence is not graphical (Gale-Ryser)");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ix(n), ix(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (arcs[cell[i][j]].cap == 0) a(ix(i), ix(j)) = 1.0;
    return a;
}

// Symmetric 0/1 matrix (loops allowed) with the same row sums as the 0/1 matrix a whose
// row and column sums agree. Pairs with a_ij + a_ji = 2 are kept; the pairs with sum 1
// form an Eulerian graph, and alternate edges of each Euler circuit are kept. An odd
// circuit gives its start vertex one edge too many or too few, fixed through the loop.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a) {
    const std::size_t n = static_cast<std::size_t>(a.rows());
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(ix(n), ix(n));
    struct Edge { std::size_t u, v; };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> inc(n);
    for (std::size_t i = 0; i < n; ++i) {
        s(ix(i), ix(i)) = a(ix(i), ix(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = a(ix(i), ix(j)) + a(ix(j), ix(i));
            if (m == 2.0) {
                s(ix(i), ix(j)) = s(ix(j), ix(i)) = 1.0;
            } else if (m == 1.0) {
                inc[i].push_back(edges.size());
                inc[j].push_back(edges.size());
                edges.push_back({i, j});
            }
        }
    }
    std::vector<char> used(edges.size(), 0);
    std::vector<std::size_t> next(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        // Hierholzer, iterative; circuit collects edge ids in traversal order
        auto advance = [&](std::size_t v) -> std::optional<std::size_t> {
            while (next[v] < inc[v].size()) {
                std::size_t e = inc[v][next[v]++];
                if (!used[e]) return e;
            }
            return std::nullopt;
        };
        if (!advance(start).has_value()) continue;
        --next[start];   // undo the probe; the edge is still unused
        std::vector<std::pair<std::size_t, std::size_t>> stack{{start, SIZE_MAX}};
        std::vector<std::size_t> circuit;
        while (!stack.empty()) {
            const std::size_t v = stack.back().first;
            if (auto e = advance(v)) {
                used[*e] = 1;
                const std::size_t w = edges[*e].u == v ? edges[*e].v : edges[*e].u;
                stack.push_back({w, *e});
            } else {
                if (stack.back().second != SIZE_MAX) circuit.push_back(stack.back().second);
                stack.pop_back();
            }
        }
        std::reverse(circuit.begin(), circuit.end());
        const std::size_t len = circuit.size();
        std::size_t parity = 0;   // keep positions with index % 2 == parity
        if (len % 2 == 1) {
            if (a(ix(start), ix(start)) == 0.0) {
                parity = 1;   // start loses one edge, gains a loop
                s(ix(start), ix(start)) = 1.0;
            } else {
                parity = 0;   // start gains one edge, loses its loop
                s(ix(start), ix(start)) = 0.0;
            }
        }
        for (std::size_t k = 0; k < len; ++k) {
            if (k % 2 != parity) continue;
            const Edge& e = edges[circuit[k]];
            s(ix(e.u), ix(e.v)) = s(ix(e.v), ix(e.u)) = 1.0;
        }
    }
    return s;
}

} // namespace

LabeledGraph realize_degree_sequence(const DegreeSequence& d, RealizationMode mode, std::uint64_t seed) {
    validate_sequence(d);
    const std::size_t n = d.size();
    Rng rng(derive_seed(seed, kRealizeStream));
    LabeledGraph g;
    g.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.labels[i] = static_cast<double>(d[i]);
    g.provenance.seed = seed;
    switch (mode) {
    case RealizationMode::Simple: {
        GraphicalityReport r = check_graphical(d, GraphicalCriterion::EG);
        if (!r.graphical) throw ValidationError("realize: not graphical (Erdos-Gallai): " + r.detail);
        g.adjacency = havel_hakimi(d, rng);
        break;
    }
    case RealizationMode::Configuration: {
        GraphicalityReport r = check_graphical(d, GraphicalCriterion::CM);
        if (!r.graphical) throw ValidationError("realize: " + r.detail);
        g.adjacency = configuration(d, rng);
        g.self_edges = true;
        break;
    }
    case RealizationMode::BipartiteFlow: {
        GraphicalityReport r = check_graphical(d, GraphicalCriterion::GR);
        if (!r.graphical) throw ValidationError("realize: not graphical (Gale-Ryser): " + r.detail);
        // random relabelling so ties are not always resolved the same way
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        DegreeSequence pd(n);
        for (std::size_t i = 0; i < n; ++i) pd[i] = d[perm[i]];
        Eigen::MatrixXd s = symmetrize(bipartite_flow_matrix(pd));
        g.adjacency = Eigen::MatrixXd::Zero(ix(n), ix(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g.adjacency(ix(perm[i]), ix(perm[j])) = s(ix(i), ix(j));
        g.self_edges = true;
        break;
    }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (std::llround(g.adjacency.row(ix(i)).sum()) != d[i])
            throw NumericalError("realize: internal error, degree mismatch at vertex " + std::to_string(i));
    return g;
}

LabeledGraph fixed_edge_multigraph(std::int64_t n_edges, const Eigen::MatrixXd& p, bool symmetric, bool loops,
                                   std::uint64_t seed) {
    require(n_edges >= 0, "multigraph: edge count must be nonnegative");
    require(p.rows() == p.cols() && p.rows() > 0, "multigraph: probability array must be square and nonempty");
    require((p.array() >= 0.0).all(), "multigraph: probabilities must be nonnegative");
    require(std::abs(p.sum() - 1.0) <= 1e-9, "multigraph: probabilities must sum to 1");
    const std::size_t n = static_cast<std::size_t>(p.rows());
    Rng rng(derive_seed(seed, kEdgeStream));
    LabeledGraph g;
    g.labels.resize(n);
    std::iota(g.labels.begin(), g.labels.end(), 1.0);
    g.adjacency = Eigen::MatrixXd::Zero(ix(n), ix(n));
    g.provenance.seed = seed;
    if (!symmetric) {
        if (!loops) require(p.diagonal().isZero(0.0), "multigraph: diagonal mass with loops disallowed");
        std::vector<double> q(p.data(), p.data() + p.size());
        std::vector<std::int64_t> counts = multinomial(n_edges, q, rng);
        for (std::size_t k = 0; k < counts.size(); ++k) g.adjacency.data()[k] = static_cast<double>(counts[k]);
        g.directed = true;
        g.self_edges = loops;
        return g;
    }
    require(n_edges % 2 == 0, "multigraph: symmetric variant needs an even edge count");
    require(p.isApprox(p.transpose(), 1e-12) || (p - p.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
            "multigraph: symmetric variant needs a symmetric probability array");
    if (!loops) require(p.diagonal().isZero(0.0), "multigraph: diagonal mass with loops disallowed");
    std::vector<double> q;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = loops ? i : i + 1; j < n; ++j) {
            q.push_back(i == j ? p(ix(i), ix(i)) : p(ix(i), ix(j)) + p(ix(j), ix(i)));
            cells.push_back({i, j});
        }
    std::vector<std::int64_t> counts = multinomial(n_edges / 2, q, rng);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        auto [i, j] = cells[k];
        const double c = static_cast<double>(counts[k]);
        if (i == j) g.adjacency(ix(i), ix(i)) = 2.0 * c;
        else g.adjacency(ix(i), ix(j)) = g.adjacency(ix(j), ix(i)) = c;
    }
    g.self_edges = loops;
    return g;
}

namespace {

std::vector<char> draw_retained(const std::vector<double>& p, std::uint64_t seed) {
    std::vector<char> keep(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
        require(p[x] >= 0.0 && p[x] <= 1.0, "thinning: probabilities must lie in [0,1]");
        Rng rng(derive_seed(seed, kThinStream, x));
        keep[x] = rng.bernoulli(p[x]) ? 1 : 0;
    }
    return keep;
}

} // namespace

ThinningResult bernoulli_thin(const Eigen::MatrixXd& a, const std::vector<double>& p, std::uint64_t seed) {
    require(a.rows() == a.cols(), "thinning: array must be square");
    require(static_cast<std::size_t>(a.rows()) == p.size(), "thinning: one probability per index");
    std::vector<char> keep = draw_retained(p, seed);
    ThinningResult r;
    r.weights = Eigen::VectorXd::Zero(a.rows());
    for (std::size_t x = 0; x < p.size(); ++x) r.weights(ix(x)) = keep[x];
    r.thinned = w_transform(r.weights, a);
    r.total = r.thinned.sum();
    return r;
}

ThinnedTotal thinned_total(const std::function<double(std::size_t, std::size_t)>& a, const std::vector<double>& p,
                           std::uint64_t seed) {
    std::vector<char> keep = draw_retained(p, seed);
    ThinnedTotal r;
    for (std::size_t x = 0; x < p.size(); ++x)
        if (keep[x]) r.retained.push_back(x);
    for (std::size_t x : r.retained)
        for (std::size_t y : r.retained) r.total += a(x, y);
    return r;
}

ZetaThinningMean zeta_thinning_mean(double s, std::size_t n) {
    require(s > 1.0, "zeta thinning: exponent must exceed 1");
    require(n >= 1, "zeta thinning: need at least one index");
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t x = n; x >= 1; --x) {   // small terms first
        const double px = std::pow(static_cast<double>(x), -s);
        s1 += px;
        s2 += px * px;
    }
    ZetaThinningMean out;
    out.truncated = s1 + s1 * s1 - s2;
    const double z = zeta(s);
    out.full = z - zeta(2.0 * s) + z * z;
    out.tail = out.full - out.truncated;
    return out;
}

LabeledGraph soft_fixed_degree(const DegreeSequence& d, std::uint64_t seed) {
    validate_sequence(d);
    const std::size_t n = d.size();
    const double m = static_cast<double>(std::accumulate(d.begin(), d.end(), std::int64_t{0}));
    require(m > 0.0, "soft fixed degree: degree sum must be positive");
    LabeledGraph g;
    g.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.labels[i] = static_cast<double>(d[i]);
    g.adjacency = Eigen::MatrixXd::Zero(ix(n), ix(n));
    g.self_edges = true;
    g.provenance.seed = seed;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double mean = static_cast<double>(d[i]) * static_cast<double>(d[j]) / m;
            if (mean <= 0.0) continue;
            Rng rng(derive_seed(seed, kEdgeStream, i, j));
            const double v = static_cast<double>(std::poisson_distribution<std::int64_t>(mean)(rng));
            g.adjacency(ix(i), ix(j)) = g.adjacency(ix(j), ix(i)) = v;
        }
    return g;
}

} // namespace measuregraph
