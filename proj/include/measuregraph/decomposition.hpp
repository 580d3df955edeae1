#ifndef MEASUREGRAPH_DECOMPOSITION_HPP
#define MEASUREGRAPH_DECOMPOSITION_HPP

#include "measuregraph/model.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace measuregraph {

using PairKernel = std::function<double(LabelView, LabelView)>;

// Mean edge weight between distinct points, as a two-argument kernel on labels.
PairKernel mean_weight_kernel(const ModelSpec& spec);

// W = W0 + W1(x) + W2(y) + W12(x, y) with nu-mean-zero components, sampled on a quadrature grid.
struct SobolDecomposition {
    QuadratureRule rule;
    double w0 = 0.0;
    std::vector<double> w1, w2;   // on the grid
    Eigen::MatrixXd w12;          // on grid x grid
    double var_w1 = 0.0, var_w2 = 0.0, var_w12 = 0.0, var_w = 0.0;
    std::optional<double> s1, s2, s12;   // absent when Var W = 0
    double effective_dimension = 0.0;

    // components off the grid, by quadrature against the stored kernel
    double component_1(LabelView x) const;
    double component_2(LabelView y) const;
    double component_12(LabelView x, LabelView y) const;

    PairKernel kernel;
};

SobolDecomposition sobol(const PairKernel& w, const LabelDistribution& nu, std::size_t order = 64);
SobolDecomposition sobol(const ModelSpec& spec);

// Normalized mean out- and in-degree functions on the grid: W0 + W1 and W0 + W2.
struct SobolDegrees {
    std::vector<double> out, in;
};
SobolDegrees sobol_degrees(const SobolDecomposition& d);

// Singular triples of the kernel operator on L2(nu), from diag(sqrt w) W diag(sqrt w).
// Singular functions are grid-orthonormal: sum_i w_i f_n(x_i) f_m(x_i) = 1(n = m).
struct SpectralDecomposition {
    QuadratureRule rule;
    std::vector<double> sigma;   // nonincreasing
    Eigen::MatrixXd left;        // column n is f_n on the grid
    Eigen::MatrixXd right;       // column n is g_n on the grid
    bool symmetric = false;
    std::optional<std::string> warning;

    // sum_n sigma_n f_n(x_i) g_n(x_j) over the retained rank
    Eigen::MatrixXd reconstruct() const;
};

SpectralDecomposition spectral(const PairKernel& w, const LabelDistribution& nu, std::size_t rank,
                               std::size_t order = 64);

nlohmann::json sobol_to_json(const SobolDecomposition& d);
nlohmann::json spectral_to_json(const SpectralDecomposition& d);

} // namespace measuregraph

#endif
