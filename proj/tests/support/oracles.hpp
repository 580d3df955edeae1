#ifndef MEASUREGRAPH_TESTS_ORACLES_HPP
#define MEASUREGRAPH_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

double binomial_pmf(std::int64_t n, double p, std::int64_t k);
double poisson_pmf(double c, std::int64_t k);

// Running mean and standard error of the mean.
struct MeanAccumulator {
    std::size_t n = 0;
    double mean = 0.0, m2 = 0.0;
    void add(double x);
    double stderr_() const;
    // (mean - expected) / stderr, 0 when both spread and difference vanish
    double z(double expected) const;
};

using Sequence = std::vector<std::int64_t>;

// Sorted nonincreasing degree sequences of every simple graph on n vertices.
std::set<Sequence> simple_graph_sequences(std::size_t n);
// Same for every symmetric 0/1 matrix (diagonal free), row sums.
std::set<Sequence> symmetric_matrix_sequences(std::size_t n);
// Every nonincreasing sequence of length n with entries in [0, max_entry].
std::vector<Sequence> nonincreasing_sequences(std::size_t n, std::int64_t max_entry);

// Zero-diagonal 0/1 matrices on three vertices without directed cycles (filtered from all 64).
std::vector<Eigen::MatrixXd> three_vertex_dags();

// Plug-in log-likelihood from raw counts: child bins r and parent bins q per column, cut at
// sorted[min(n-1, k n / bins)], bin = number of cuts <= x; parent cell = tuple of parent bins.
double bn_loglik_counts(const Eigen::MatrixXd& dag, const Eigen::MatrixXd& data, std::size_t q, std::size_t r);

// W(x, y) = exp(-a (x + y)) on [0,1]^2 with Lebesgue labels.
struct SobolClosedForm {
    double s1, s2, s12, effective_dimension;
};
SobolClosedForm sobol_exponential(double a);
// 2 (e^a - 1) / ((a + 2) e^a + a - 2)
double sobol_exponential_s1_alt(double a);

// Total variation distance between two probability vectors (shorter one zero-padded).
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

} // namespace oracle

#endif
