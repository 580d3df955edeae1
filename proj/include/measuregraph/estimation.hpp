#ifndef MEASUREGRAPH_ESTIMATION_HPP
#define MEASUREGRAPH_ESTIMATION_HPP

#include "measuregraph/analytics.hpp"
#include "measuregraph/graph.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace measuregraph {

// Unlabelled 0/1 adjacency matrices of independent graphs from one model.
struct ObservedGraphSet {
    std::vector<Eigen::MatrixXd> adjacency;
    std::vector<std::int64_t> vertex_counts;
    std::vector<std::vector<std::int64_t>> degrees;
    bool symmetric = true;
    bool zero_diagonal = true;

    explicit ObservedGraphSet(std::vector<Eigen::MatrixXd> matrices);
    static ObservedGraphSet from_graphs(const std::vector<LabeledGraph>& graphs);

    std::size_t size() const noexcept { return adjacency.size(); }
    std::int64_t max_degree() const;
    double mean_degree() const;   // pooled over every vertex of every graph
};

// Dense 0/1 matrices, comma or whitespace separated; blank lines separate graphs.
std::vector<Eigen::MatrixXd> read_adjacency_csv(const std::string& text);

struct CountingFit {
    double c = 0.0;
    double variance = 0.0;     // unbiased sample variance (0 for a single observation)
    PtKind kind = PtKind::Poisson;
    bool degenerate = false;   // zero variance: point mass
    bool dirac = false;        // single observation taken as a fixed count
    double dispersion = 0.0;   // sum (K - mean)^2 / mean
    CountingDistribution law = CountingDistribution::dirac(0);
};

// Poisson unless the dispersion index falls outside the central 1 - alpha chi-square band,
// then Binomial (under-dispersed) or negative binomial (over-dispersed).
CountingFit fit_counting(const std::vector<std::int64_t>& counts, double alpha = 0.05);

// f = sum theta_ij phi_i(x) phi_j(y) with orthonormal shifted Legendre phi on [0,1].
// Separable mode keeps beta (length m) and theta = beta beta^T.
struct GraphonParam {
    std::size_t m = 1;
    bool separable = true;
    std::vector<double> beta;    // separable mode
    std::vector<double> theta;   // m x m row-major, always filled

    static GraphonParam separable_from(std::vector<double> beta);
    static GraphonParam full_from(std::size_t m, std::vector<double> theta);
    double operator()(double x, double y) const;
    Kernel kernel() const;
};

struct Feasibility {
    bool feasible = true;
    double min_value = 0.0, max_value = 0.0;
    double at_x = 0.0, at_y = 0.0;   // location of the worst violation
};

// 101 x 101 uniform grid plus the quadrature nodes, tolerance 1e-9.
Feasibility check_feasible(const GraphonParam& p, std::size_t order = 32);

// f(., y) is nonincreasing for every y, or nondecreasing for every y, on a 101-point grid.
bool is_monotone(const GraphonParam& p);

struct LikelihoodConfig {
    std::size_t order = 32;   // quadrature order for the degree law
    double floor = 1e-300;    // probability floor before the log
};

// Sum over all observed degrees of log P(Y = d), Y from the vertex-perspective degree law of
// an STC graph with count law kappa, Lebesgue labels and Bernoulli(f) edges.
double pseudo_loglik(const GraphonParam& p, const ObservedGraphSet& obs, const CountingDistribution& kappa,
                     const LikelihoodConfig& config = {});

enum class MonotoneHint { Increasing, Decreasing, None };

struct MhConfig {
    std::size_t m = 3;
    std::size_t iterations = 500;
    double sigma = 0.01;
    bool separable = true;
    MonotoneHint hint = MonotoneHint::None;
    bool monotone = false;   // restrict the chain to graphons monotone in x
    std::size_t stall_limit = 100;
    LikelihoodConfig likelihood;
};

struct MhTrace {
    std::vector<std::vector<double>> iterates;   // free parameters (beta or upper-triangular theta)
    std::vector<double> loglik;
    std::vector<char> accepted;
    std::size_t best = 0;
};

struct SymmetryResolution {
    GraphonParam chosen;
    GraphonParam reflected;   // f(1 - x, 1 - y)
    bool ambiguous = false;   // no hint, or the hint does not separate the candidates
};

// Candidates f(x, y) and f(1 - x, 1 - y); picks the one whose diagonal trend matches the hint.
SymmetryResolution resolve_symmetry(const GraphonParam& f, MonotoneHint hint);
GraphonParam reflect(const GraphonParam& f);

struct MhResult {
    GraphonParam theta_hat;   // after symmetry resolution
    GraphonParam raw;         // argmax of the recorded likelihoods
    SymmetryResolution symmetry;
    CountingFit counting;
    double beta11 = 0.0;      // pinned (nu x nu) f = E Y / E[K - 1 | size-biased]
    MhTrace trace;
};

MhResult mh_estimate(const ObservedGraphSet& obs, const MhConfig& config, std::uint64_t seed);

// Relative errors on [0,1]^2 by Gauss-Legendre quadrature:
// L1: int |f - g| / int |g|; L2: int (f - g)^2 / int g^2.
double relative_l1_error(const std::function<double(double, double)>& f,
                         const std::function<double(double, double)>& truth, std::size_t order = 64);
double relative_l2_error(const std::function<double(double, double)>& f,
                         const std::function<double(double, double)>& truth, std::size_t order = 64);

nlohmann::json trace_to_json(const MhTrace& t);
nlohmann::json param_to_json(const GraphonParam& p);

std::string to_string(MonotoneHint h);
MonotoneHint parse_hint(const std::string& s);

} // namespace measuregraph

#endif
