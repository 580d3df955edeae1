#include "measuregraph/applications/spin.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/parallel.hpp"
#include "measuregraph/random_measures.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace measuregraph {

namespace {

std::vector<std::int64_t> support_sizes(const SpinNetwork& net, std::size_t budget) {
    std::vector<std::int64_t> sizes;
    double states = 1.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        auto top = net.spins[i].support_max();
        if (!top) throw BudgetError("spin: site " + std::to_string(i + 1) +
                                    " has unbounded spin support; use the Monte Carlo estimate");
        sizes.push_back(*top + 1);
        states *= static_cast<double>(*top + 1);
    }
    if (states > static_cast<double>(budget)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", states);
        throw BudgetError("spin: " + std::string(buf) +
                          " configurations exceed the enumeration budget of " + std::to_string(budget) +
                          "; use the Monte Carlo estimate");
    }
    return sizes;
}

// Visits every configuration in mixed-radix order with its probability.
template <class F>
void enumerate(const SpinNetwork& net, std::size_t budget, F&& visit) {
    const std::vector<std::int64_t> sizes = support_sizes(net, budget);
    const std::size_t n = net.size();
    std::vector<std::vector<double>> pmf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::int64_t k = 0; k < sizes[i]; ++k) pmf[i].push_back(net.spins[i].pmf(k));
    std::vector<std::int64_t> w(n, 0);
    for (;;) {
        double p = 1.0;
        for (std::size_t i = 0; i < n; ++i) p *= pmf[i][static_cast<std::size_t>(w[i])];
        visit(w, p);
        std::size_t i = 0;
        while (i < n && ++w[i] == sizes[i]) w[i++] = 0;
        if (i == n) break;
    }
}

double laplace_energy(const Eigen::MatrixXd& b, const Eigen::VectorXd& k, const std::vector<std::int64_t>& w) {
    Eigen::VectorXd wv(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) wv(static_cast<Eigen::Index>(i)) = static_cast<double>(w[i]);
    double e = w_transform(wv, b).sum();
    if (k.size() > 0) e += wv.dot(k);
    return e;
}

} // namespace

bool SpinNetwork::interacts(std::int64_t x, std::int64_t y) const {
    const std::int64_t d = std::llabs(x - y);
    return d == 0 ? include_self : d <= radius;
}

void SpinNetwork::validate() const {
    require(!spins.empty(), "spin: lattice must have at least one site");
    require(static_cast<bool>(interaction), "spin: interaction function missing");
    require(radius >= 0, "spin: neighborhood radius must be nonnegative");
    require(field.empty() || field.size() == spins.size(), "spin: one external field value per site");
}

Eigen::MatrixXd SpinNetwork::potential() const {
    validate();
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (interacts(i + 1, j + 1)) b(i, j) = interaction(i + 1, j + 1);
    return b;
}

double spin_energy(const SpinNetwork& net, const std::vector<std::int64_t>& w) {
    net.validate();
    require(w.size() == net.size(), "spin: configuration length differs from the lattice size");
    const auto n = static_cast<std::int64_t>(net.size());
    double e = 0.0;
    for (std::int64_t x = 1; x <= n; ++x) {
        const double wx = static_cast<double>(w[static_cast<std::size_t>(x - 1)]);
        if (wx == 0.0) continue;
        const std::int64_t lo = std::max<std::int64_t>(1, x - net.radius), hi = std::min(n, x + net.radius);
        for (std::int64_t y = lo; y <= hi; ++y) {
            if (!net.interacts(x, y)) continue;
            e += wx * static_cast<double>(w[static_cast<std::size_t>(y - 1)]) * net.interaction(x, y);
        }
        if (!net.field.empty()) e += wx * net.field[static_cast<std::size_t>(x - 1)];
    }
    return e;
}

double spin_mean_energy(const SpinNetwork& net) {
    const Eigen::MatrixXd b = net.potential();
    double e = 0.0;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const auto& ki = net.spins[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            const double z = i == j ? ki.mean() * ki.mean() + ki.variance()
                                    : ki.mean() * net.spins[static_cast<std::size_t>(j)].mean();
            e += z * b(i, j);
        }
        if (!net.field.empty()) e += ki.mean() * net.field[static_cast<std::size_t>(i)];
    }
    return e;
}

std::vector<double> spin_partition(const SpinNetwork& net, const std::vector<double>& betas, PartitionPath path,
                                   std::size_t budget) {
    net.validate();
    for (double b : betas) require(b >= 0.0, "spin: beta must be nonnegative");
    const Eigen::MatrixXd b = net.potential();
    Eigen::VectorXd k;
    if (!net.field.empty()) k = Eigen::Map<const Eigen::VectorXd>(net.field.data(), static_cast<Eigen::Index>(net.field.size()));
    std::vector<double> z(betas.size(), 0.0);
    enumerate(net, budget, [&](const std::vector<std::int64_t>& w, double p) {
        if (p == 0.0) return;
        const double e = path == PartitionPath::Gibbs ? spin_energy(net, w) : laplace_energy(b, k, w);
        for (std::size_t i = 0; i < betas.size(); ++i) z[i] += p * std::exp(-betas[i] * e);
    });
    return z;
}

double spin_partition(const SpinNetwork& net, double beta, PartitionPath path, std::size_t budget) {
    return spin_partition(net, std::vector<double>{beta}, path, budget)[0];
}

GibbsTable spin_gibbs(const SpinNetwork& net, double beta, std::size_t budget) {
    net.validate();
    require(beta >= 0.0, "spin: beta must be nonnegative");
    GibbsTable t;
    enumerate(net, budget, [&](const std::vector<std::int64_t>& w, double p) {
        const double v = p == 0.0 ? 0.0 : p * std::exp(-beta * spin_energy(net, w));
        t.states.push_back(w);
        t.probability.push_back(v);
        t.partition += v;
    });
    require(t.partition > 0.0, "spin: partition function vanishes");
    for (double& v : t.probability) v /= t.partition;
    return t;
}

std::vector<std::int64_t> sample_spins(const SpinNetwork& net, std::uint64_t seed) {
    std::vector<std::int64_t> w(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        Rng rng(derive_seed(seed, 2, i));
        w[i] = net.spins[i].sample(rng);
    }
    return w;
}

McEstimate spin_laplace_mc(const SpinNetwork& net, double beta, std::size_t samples, std::uint64_t seed) {
    net.validate();
    require(samples >= 2, "spin: need at least two Monte Carlo samples");
    std::vector<double> v(samples);
    parallel_for(samples, [&](std::size_t r) {
        v[r] = std::exp(-beta * spin_energy(net, sample_spins(net, derive_seed(seed, r))));
    });
    double mean = 0.0, ss = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(samples);
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

LabeledGraph spin_graph(const SpinNetwork& net, const std::vector<std::int64_t>& w) {
    require(w.size() == net.size(), "spin: configuration length differs from the lattice size");
    LabeledGraph g;
    Eigen::VectorXd wv(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        g.labels.push_back(static_cast<double>(i + 1));
        wv(static_cast<Eigen::Index>(i)) = static_cast<double>(w[i]);
        g.vertex_weights.push_back(static_cast<double>(w[i]));
    }
    g.adjacency = w_transform(wv, net.potential());
    g.directed = !g.adjacency.isApprox(g.adjacency.transpose());
    g.self_edges = net.include_self;
    return g;
}

} // namespace measuregraph
