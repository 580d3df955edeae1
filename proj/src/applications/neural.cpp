#include "measuregraph/applications/neural.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/rng.hpp"

#include <cmath>
#include <numeric>

namespace measuregraph {

using nlohmann::json;

namespace {

constexpr std::uint64_t kCountStream = 0;
constexpr std::uint64_t kLabelStream = 1;
constexpr std::uint64_t kEdgeStream = 3;

std::size_t sample_layer(const std::vector<double>& cdf, Rng& rng) {
    const double u = rng.uniform();
    std::size_t x = 0;
    while (x + 1 < cdf.size() && u >= cdf[x]) ++x;
    return x + 1;
}

} // namespace

NnArchitecture nn_wire(const NnConfig& config, std::uint64_t seed) {
    const std::size_t n = config.layers;
    require(n >= 1, "nn: need at least one hidden layer");
    NnArchitecture a;
    a.config = config;
    if (config.nu.empty()) {
        a.nu.assign(n, 1.0 / static_cast<double>(n));
    } else {
        require(config.nu.size() == n, "nn: layer distribution must have one entry per layer");
        double s = 0.0;
        for (double v : config.nu) {
            require(v >= 0.0 && std::isfinite(v), "nn: layer probabilities must be nonnegative");
            s += v;
        }
        require(s > 0.0, "nn: layer probabilities sum to zero");
        for (double v : config.nu) a.nu.push_back(v / s);
    }
    if (config.p.size() == 1) a.p.assign(n - 1, config.p[0]);
    else {
        require(config.p.size() == n - 1, "nn: need one connection probability per consecutive layer pair");
        a.p = config.p;
    }
    for (double v : a.p) require(v >= 0.0 && v <= 1.0, "nn: connection probabilities must lie in [0, 1]");

    const double c = config.kappa.mean(), d2 = config.kappa.variance();
    const double mu_star = c > 0.0 ? config.kappa.factorial_moment(2) / c : 0.0;
    for (std::size_t x = 0; x + 1 < n; ++x) a.expected_edges += a.p[x] * a.nu[x] * a.nu[x + 1];
    a.expected_edges *= c * c + d2 - c;
    a.out_degree.assign(n, 0.0);
    a.in_degree.assign(n, 0.0);
    a.vertex_out_degree.assign(n, 0.0);
    a.vertex_in_degree.assign(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        if (x + 1 < n) {
            a.out_degree[x] = c * a.p[x] * a.nu[x + 1];
            a.vertex_out_degree[x] = mu_star * a.p[x] * a.nu[x + 1];
        }
        if (x > 0) {
            a.in_degree[x] = c * a.p[x - 1] * a.nu[x - 1];
            a.vertex_in_degree[x] = mu_star * a.p[x - 1] * a.nu[x - 1];
        }
    }
    a.expected_params = a.expected_edges + c * (1.0 - a.nu[0]);

    std::vector<double> cdf(n);
    std::partial_sum(a.nu.begin(), a.nu.end(), cdf.begin());
    Rng count_rng(derive_seed(seed, kCountStream));
    const auto k = static_cast<std::size_t>(config.kappa.sample(count_rng));
    LabeledGraph& g = a.graph;
    g.dim = 1;
    g.directed = true;
    g.provenance.seed = seed;
    g.adjacency = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    a.layer_counts.assign(n, 0);
    std::vector<std::size_t> layer(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rng rng(derive_seed(seed, kLabelStream, i));
        layer[i] = sample_layer(cdf, rng);
        g.labels.push_back(static_cast<double>(layer[i]));
        ++a.layer_counts[layer[i] - 1];
        if (layer[i] > 1) ++a.upper_neurons;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (layer[j] != layer[i] + 1) continue;
            Rng rng(derive_seed(seed, kEdgeStream, i, j));
            if (rng.bernoulli(a.p[layer[i] - 1])) {
                g.adjacency(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
                a.edges += 1.0;
            }
        }
    a.params = a.edges + static_cast<double>(a.upper_neurons);
    return a;
}

json nn_to_json(const NnArchitecture& a) {
    return json{{"layers", a.config.layers},
                {"nu", a.nu},
                {"p", a.p},
                {"kappa", a.config.kappa.name()},
                {"expected_edges", a.expected_edges},
                {"out_degree", a.out_degree},
                {"in_degree", a.in_degree},
                {"vertex_out_degree", a.vertex_out_degree},
                {"vertex_in_degree", a.vertex_in_degree},
                {"expected_params", a.expected_params},
                {"edges", a.edges},
                {"upper_neurons", a.upper_neurons},
                {"params", a.params},
                {"layer_counts", a.layer_counts},
                {"graph", graph_to_json(a.graph)}};
}

} // namespace measuregraph
