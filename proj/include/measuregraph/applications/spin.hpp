#ifndef MEASUREGRAPH_APPLICATIONS_SPIN_HPP
#define MEASUREGRAPH_APPLICATIONS_SPIN_HPP

#include "measuregraph/distributions.hpp"
#include "measuregraph/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace measuregraph {

// One-dimensional lattice {1..L} with independent integer spins W_x ~ spins[x-1].
// Interaction set: 0 < |x - y| <= radius, plus the diagonal when include_self.
struct SpinNetwork {
    std::vector<CountingDistribution> spins;
    std::function<double(std::int64_t, std::int64_t)> interaction;   // f(x, y) on sites
    std::int64_t radius = 1;
    bool include_self = false;
    std::vector<double> field;   // external interaction k(x); empty for none

    std::size_t size() const noexcept { return spins.size(); }
    bool interacts(std::int64_t x, std::int64_t y) const;
    // local potential array B = f 1_A on the lattice
    Eigen::MatrixXd potential() const;
    void validate() const;
};

// sum over interacting ordered pairs of W_x W_y f(x, y), plus sum W_x k(x)
double spin_energy(const SpinNetwork& net, const std::vector<std::int64_t>& w);

// sum over pairs of Z_xy f(x, y) with Z_xx = c^2 + delta^2, Z_xy = c_x c_y, plus sum c_x k(x)
double spin_mean_energy(const SpinNetwork& net);

constexpr std::size_t kSpinStateBudget = std::size_t{1} << 20;

enum class PartitionPath {
    Gibbs,     // energies by the neighbor loop
    Laplace    // energies as the entry sum of the W-transform of B
};

// Z(beta) = sum_w P(W = w) exp(-beta E_w) by enumeration.
double spin_partition(const SpinNetwork& net, double beta, PartitionPath path = PartitionPath::Gibbs,
                      std::size_t budget = kSpinStateBudget);
std::vector<double> spin_partition(const SpinNetwork& net, const std::vector<double>& betas,
                                   PartitionPath path = PartitionPath::Gibbs, std::size_t budget = kSpinStateBudget);

struct GibbsTable {
    std::vector<std::vector<std::int64_t>> states;
    std::vector<double> probability;   // P(W = w) exp(-beta E_w) / Z
    double partition = 0.0;
};
GibbsTable spin_gibbs(const SpinNetwork& net, double beta, std::size_t budget = kSpinStateBudget);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

// Monte Carlo estimate of E exp(-beta E_W) with W drawn from the spin laws.
McEstimate spin_laplace_mc(const SpinNetwork& net, double beta, std::size_t samples, std::uint64_t seed);

std::vector<std::int64_t> sample_spins(const SpinNetwork& net, std::uint64_t seed);

// Spin-weighted potential array diag(W) B diag(W) as a graph on the lattice.
LabeledGraph spin_graph(const SpinNetwork& net, const std::vector<std::int64_t>& w);

} // namespace measuregraph

#endif
