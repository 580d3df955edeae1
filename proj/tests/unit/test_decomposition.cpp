#include "doctest.h"
#include "oracles.hpp"

#include "measuregraph/analytics.hpp"
#include "measuregraph/decomposition.hpp"

#include <cmath>

using namespace measuregraph;

namespace {

PairKernel expo(double a) {
    return [a](LabelView x, LabelView y) { return std::exp(-a * (x[0] + y[0])); };
}

double grid_dot(const SobolDecomposition& d, const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += d.rule.weights[i] * u[i] * v[i];
    return s;
}

} // namespace

TEST_CASE("sobol: constant kernel") {
    auto d = sobol([](LabelView, LabelView) { return 0.3; }, LabelDistribution::lebesgue());
    CHECK(d.w0 == doctest::Approx(0.3));
    CHECK(d.var_w == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.effective_dimension == 0.0);
    CHECK_FALSE(d.s1.has_value());
    auto deg = sobol_degrees(d);
    for (double v : deg.out) CHECK(v == doctest::Approx(0.3));
    for (double v : deg.in) CHECK(v == doctest::Approx(0.3));
}

TEST_CASE("sobol: exponential kernel closed forms") {
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        auto d = sobol(expo(a), LabelDistribution::lebesgue());
        auto ref = oracle::sobol_exponential(a);
        CHECK(ref.s1 == doctest::Approx(oracle::sobol_exponential_s1_alt(a)).epsilon(1e-13));
        REQUIRE(d.s1.has_value());
        CHECK(std::abs(*d.s1 - ref.s1) < 1e-6);
        CHECK(std::abs(*d.s2 - ref.s2) < 1e-6);
        CHECK(std::abs(*d.s12 - ref.s12) < 1e-6);
        CHECK(*d.s1 + *d.s2 + *d.s12 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(d.var_w - (d.var_w1 + d.var_w2 + d.var_w12)) <= 1e-8 * d.var_w);
        CHECK(std::abs(grid_dot(d, d.w1, std::vector<double>(d.w1.size(), 1.0))) < 1e-9);
    }
    CHECK(oracle::sobol_exponential(1.0).s1 == doctest::Approx(0.4803).epsilon(1e-4));
    CHECK(oracle::sobol_exponential(1.0).s12 == doctest::Approx(0.0394).epsilon(1e-3));
}

TEST_CASE("sobol: effective dimension grows with a") {
    double prev = 0.0;
    for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
        auto d = sobol(expo(a), LabelDistribution::lebesgue(), 128);
        CHECK(d.effective_dimension >= prev - 1e-9);
        CHECK(d.effective_dimension <= 2.0);
        prev = d.effective_dimension;
    }
    CHECK(prev >= 1.9);
}

TEST_CASE("sobol: additive kernel") {
    auto d = sobol([](LabelView x, LabelView y) { return x[0] + y[0] * y[0]; }, LabelDistribution::lebesgue());
    REQUIRE(d.s12.has_value());
    CHECK(std::abs(*d.s12) < 1e-12);
    CHECK(d.effective_dimension == doctest::Approx(1.0).epsilon(1e-12));
    auto deg = sobol_degrees(d);
    for (std::size_t i = 0; i < d.rule.size(); ++i)
        CHECK(deg.out[i] == doctest::Approx(d.rule.node(i)[0] + 1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("sobol: orthogonality of components") {
    auto d = sobol([](LabelView x, LabelView y) { return std::exp(-x[0]) / (1.0 + x[0] * y[0]) + y[0]; },
                   LabelDistribution::lebesgue());
    const std::size_t n = d.rule.size();
    const std::vector<double> ones(n, 1.0);
    // <W1(x), W2(y)> over nu x nu factors into the two means
    CHECK(std::abs(grid_dot(d, d.w1, ones) * grid_dot(d, d.w2, ones)) < 1e-16);
    // W12 integrates to zero along each argument, so it is orthogonal to W1 and W2 jointly
    double w1_w12 = 0.0, w2_w12 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col(n), row(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = d.w12(i, j);
            row[i] = d.w12(j, i);
        }
        CHECK(std::abs(grid_dot(d, ones, col)) < 1e-12);
        CHECK(std::abs(grid_dot(d, ones, row)) < 1e-12);
        w1_w12 += d.rule.weights[j] * grid_dot(d, d.w1, col);
        w2_w12 += d.rule.weights[j] * grid_dot(d, d.w2, row);
    }
    CHECK(std::abs(w1_w12) < 1e-12);
    CHECK(std::abs(w2_w12) < 1e-12);
    CHECK(std::abs(d.var_w - (d.var_w1 + d.var_w2 + d.var_w12)) <= 1e-8 * d.var_w);
}

TEST_CASE("sobol degrees match analytics") {
    const double c = 20.0, b = 1.0;
    ModelSpec spec(StcMeasure{CountingDistribution::poisson(c), LabelDistribution::lebesgue()},
                   RandomTransform::bernoulli(Kernel::power_law(b)));
    auto d = sobol(spec);
    auto deg = sobol_degrees(d);
    for (std::size_t i = 0; i < d.rule.size(); i += 5) {
        const double x = d.rule.node(i)[0];
        CHECK(std::abs(c * deg.out[i] - c / ((1 + b) * (1 + b * x) * (1 + b * x))) < 1e-8);
        CHECK(std::abs(c * deg.out[i] - degree_stats(spec, x).mean) < 1e-8);
    }
}

TEST_CASE("spectral") {
    auto sep = spectral([](LabelView x, LabelView y) { return std::exp(-x[0]) * std::exp(-y[0]); },
                        LabelDistribution::lebesgue(), 4);
    // sigma_1 = nu(g^2) for W = g x g
    CHECK(sep.sigma[0] == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-12));
    CHECK(sep.sigma[1] / sep.sigma[0] <= 1e-10);
    CHECK(sep.symmetric);

    auto con = spectral([](LabelView, LabelView) { return 0.3; }, LabelDistribution::lebesgue(), 3);
    CHECK(con.sigma[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(con.sigma[1] < 1e-12);

    PairKernel w = [](LabelView x, LabelView y) { return 1.0 / (1.0 + x[0] + 2.0 * y[0]); };
    auto full = spectral(w, LabelDistribution::lebesgue(), 16, 16);
    Eigen::MatrixXd grid(16, 16);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) grid(i, j) = w(full.rule.node(i), full.rule.node(j));
    CHECK((full.reconstruct() - grid).cwiseAbs().maxCoeff() < 1e-8);
    for (std::size_t k = 1; k < full.sigma.size(); ++k) CHECK(full.sigma[k] <= full.sigma[k - 1]);
    Eigen::VectorXd wt = Eigen::Map<const Eigen::VectorXd>(full.rule.weights.data(), 16);
    Eigen::MatrixXd gram = full.left.transpose() * wt.asDiagonal() * full.left;
    CHECK((gram - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-8);

    auto clipped = spectral(w, LabelDistribution::lebesgue(), 40, 16);
    CHECK(clipped.warning.has_value());
    CHECK(clipped.sigma.size() == 16);

    // symmetric kernel: left and right singular functions agree
    auto sym = spectral([](LabelView x, LabelView y) { return std::exp(-std::abs(x[0] - y[0])); },
                        LabelDistribution::lebesgue(), 3, 24);
    CHECK((sym.left - sym.right).cwiseAbs().maxCoeff() < 1e-8);
    for (double s : sym.sigma) CHECK(s >= -1e-10);
}
