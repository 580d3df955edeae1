#ifndef MEASUREGRAPH_RANDOM_MEASURES_HPP
#define MEASUREGRAPH_RANDOM_MEASURES_HPP

#include "measuregraph/distributions.hpp"
#include "measuregraph/edge_transforms.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace measuregraph {

using LabelFn = std::function<double(LabelView)>;

// Stone-throwing construction: K ~ kappa points, iid labels ~ nu.
struct StcMeasure {
    CountingDistribution kappa;
    LabelDistribution nu;
};

// Fixed atoms with independent integer random weights W_x ~ kappa_x.
struct FaiwMeasure {
    std::vector<double> atoms;    // flat, dim per atom
    std::size_t dim = 1;
    std::vector<CountingDistribution> weights;

    FaiwMeasure(std::vector<double> atoms_, std::vector<CountingDistribution> weights_, std::size_t dim_ = 1);
    std::size_t size() const noexcept { return weights.size(); }
    LabelView atom(std::size_t i) const noexcept { return {atoms.data() + i * dim, dim}; }
};

struct PointRealization {
    std::vector<double> labels;    // flat, dim per point (STC) or the atoms (FAIW)
    std::size_t dim = 1;
    std::vector<double> weights;   // FAIW weights; empty for STC
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return dim == 0 ? 0 : labels.size() / dim; }
    LabelView label(std::size_t i) const noexcept { return {labels.data() + i * dim, dim}; }
};

PointRealization sample_stc(const StcMeasure& m, std::uint64_t seed);
PointRealization sample_faiw(const FaiwMeasure& m, std::uint64_t seed);

struct IntegralStats {
    double mean = 0.0;
    double variance = 0.0;
    double covariance = 0.0;   // Cov(Nf, Ng)
};

IntegralStats stc_integral_stats(const StcMeasure& m, const LabelFn& f, const LabelFn& g, std::size_t order = 64);

// Restriction of N to a set A with a = nu(A).
struct Trace {
    double a = 1.0;
    std::function<cplx(cplx)> pgf;             // psi(1 - a + a t)
    std::optional<CountingDistribution> law;   // closed form when kappa is Poisson-type or Dirac
    double count_mean = 0.0;
    double count_variance = 0.0;
};

Trace trace(const StcMeasure& m, double a);
Trace trace(const StcMeasure& m, const LabelFn& indicator, std::size_t order = 64);
// mean and variance of N_A f, i.e. of the trace integrated against f
IntegralStats trace_integral_stats(const StcMeasure& m, const LabelFn& indicator, const LabelFn& f,
                                   std::size_t order = 64);

struct ProductMean {
    double diagonal = 0.0;       // c (nu x I) f
    double off_diagonal = 0.0;   // (c^2 + delta^2 - c) (nu x nu) f
    double total = 0.0;
    double normalized = 0.0;     // diagonal + off_diagonal / 2
};

// Pair function evaluated at a site; see Site for the diagonal conventions.
using PairFn = std::function<double(LabelView, LabelView, Site)>;

ProductMean product_mean(const StcMeasure& m, const Kernel& f, std::size_t order = 64);
ProductMean product_mean(const StcMeasure& m, const PairFn& f, std::size_t order = 64);
// Same for fixed atoms: Z_xx = c_x^2 + delta_x^2 on the diagonal, c_x c_y off it.
ProductMean faiw_product_mean(const FaiwMeasure& m, const Kernel& f);
ProductMean faiw_product_mean(const FaiwMeasure& m, const PairFn& f);

Eigen::MatrixXd w_transform(const Eigen::VectorXd& w, const Eigen::MatrixXd& b);

LabelDistribution empirical_measure(std::vector<double> points, std::size_t dim = 1);

} // namespace measuregraph

#endif
