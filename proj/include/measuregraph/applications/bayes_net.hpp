#ifndef MEASUREGRAPH_APPLICATIONS_BAYES_NET_HPP
#define MEASUREGRAPH_APPLICATIONS_BAYES_NET_HPP

#include "measuregraph/graph.hpp"
#include "measuregraph/model.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace measuregraph {

// Quantile cut points of one data column; bin(x) = #{cuts <= x}.
struct QuantileBins {
    std::vector<double> cuts;
    static QuantileBins fit(const Eigen::VectorXd& column, std::size_t bins);
    std::size_t bin(double x) const;
    std::size_t count() const noexcept { return cuts.size() + 1; }
};

// Maps the parent columns of each data row to a parent cell in [0, cells). Replaces the
// default product of per-parent quantile bins when set (e.g. K-means labels).
using ParentPartition = std::function<std::vector<std::size_t>(const Eigen::MatrixXd& parent_values, std::size_t& cells)>;

// Counting transition kernel of one vertex: table(cell, bin) = D(A_cell x B_bin) / D(A_cell x F).
struct VertexKernel {
    std::size_t vertex = 0;
    std::vector<std::size_t> parents;   // increasing vertex index
    std::size_t cells = 1;              // parent cells before merging
    std::vector<std::size_t> cell_map;  // parent cell -> nonempty cell whose row is used
    Eigen::MatrixXd table;              // cells x r, rows sum to 1
};

struct BayesNet {
    Eigen::MatrixXd dag;                      // 0/1, edge i -> j means i is a parent of j
    std::size_t q = 2, r = 2;
    std::vector<QuantileBins> child_bins;     // r bins per column
    std::vector<QuantileBins> parent_bins;    // q bins per column
    std::vector<VertexKernel> kernels;
    std::vector<std::string> warnings;        // merged empty parent cells
    ParentPartition partition;                // empty: quantile product cells

    std::size_t parent_cell(const VertexKernel& k, const Eigen::RowVectorXd& row) const;
};

constexpr double kBnProbabilityFloor = 1e-300;

// data: rows are samples, column v is vertex v of the DAG.
BayesNet bn_build_kernels(const Eigen::MatrixXd& dag, const Eigen::MatrixXd& data, std::size_t q, std::size_t r,
                          ParentPartition partition = {});

// sum over rows and vertices of log max(Q(parent cell, bin), floor)
double bn_likelihood(const BayesNet& net, const Eigen::MatrixXd& data);

// Plug-in log-likelihood of a DAG: kernels built from and evaluated on the same data.
double bn_dag_loglik(const Eigen::MatrixXd& dag, const Eigen::MatrixXd& data, std::size_t q, std::size_t r);

struct BnMhConfig {
    std::size_t iterations = 500;
    std::size_t rewire_n = 1;
    std::size_t q = 2, r = 2;
};

struct BnMhResult {
    LabeledGraph initial;
    LabeledGraph best;
    double best_loglik = 0.0;
    std::vector<double> loglik;    // state after each step, index 0 = initial
    std::vector<char> accepted;    // per step
};

// Metropolis-Hastings over STC random DAGs. Proposals rewire the current graph under the
// prior, so the acceptance ratio reduces to the likelihood ratio.
BnMhResult bn_mh_infer(const ModelSpec& spec, const Eigen::MatrixXd& data, const BnMhConfig& config,
                       std::uint64_t seed);

// Every DAG on n labelled vertices (n <= 5), as 0/1 matrices.
std::vector<Eigen::MatrixXd> enumerate_dags(std::size_t n);

// Numeric CSV, rows = samples; a non-numeric first line is taken as a header.
Eigen::MatrixXd read_bn_csv(const std::string& text);

nlohmann::json bn_to_json(const BayesNet& net);

} // namespace measuregraph

#endif
