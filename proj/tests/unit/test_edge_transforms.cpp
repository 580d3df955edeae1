#include "doctest.h"
#include "oracles.hpp"

#include "measuregraph/edge_transforms.hpp"
#include "measuregraph/errors.hpp"

#include <cmath>

using namespace measuregraph;

namespace {
double at(const Kernel& k, double x, double y) { return k(x, y); }
} // namespace

TEST_CASE("kernel evaluation") {
    CHECK(at(Kernel::constant(0.3), 0.1, 0.8) == 0.3);
    CHECK(at(Kernel::constant(0.3), 0.4, 0.4) == 0.0);
    CHECK(at(Kernel::power_law(1.0, false), 0.0, 0.0) == 1.0);
    CHECK(at(Kernel::power_law(2.0), 0.5, 1.0) == doctest::Approx(1.0 / (4.0 * 9.0)));
    CHECK(at(Kernel::exponential(2.0), 0.25, 0.5) == doctest::Approx(std::exp(-1.5)));
    Kernel block(Kernel::Block{{0.5}, {0.1, 0.2, 0.2, 0.4}});
    CHECK(at(block, 0.25, 0.75) == 0.2);
    CHECK(at(block, 0.75, 0.9) == 0.4);
    CHECK(block.symmetric());
    Kernel ordered = Kernel::constant(0.5).with_order(Kernel::Order::LessThan);
    CHECK(at(ordered, 0.2, 0.3) == 0.5);
    CHECK(at(ordered, 0.3, 0.2) == 0.0);
}

TEST_CASE("shifted legendre basis is orthonormal") {
    std::vector<double> x, w;
    gauss_legendre_1d(32, 0.0, 1.0, x, w);
    for (std::size_t i = 1; i <= 4; ++i)
        for (std::size_t j = 1; j <= 4; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * shifted_legendre(i, x[k]) * shifted_legendre(j, x[k]);
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
}

TEST_CASE("sample_edge") {
    const double x = 0.2, y = 0.7;
    LabelView lx(&x, 1), ly(&y, 1);
    Rng rng(5);
    auto always = RandomTransform::bernoulli(Kernel::constant(1.0));
    for (int i = 0; i < 100; ++i) CHECK(always.sample(lx, ly, Site::Pair, rng).first == 1.0);
    auto never = RandomTransform::poisson(Kernel::constant(0.0));
    for (int i = 0; i < 100; ++i) CHECK(never.sample(lx, ly, Site::Pair, rng).first == 0.0);
    auto bin = RandomTransform::binomial(5, Kernel::constant(0.4));
    oracle::MeanAccumulator acc;
    for (int i = 0; i < 100000; ++i) acc.add(bin.sample(lx, ly, Site::Pair, rng).first);
    CHECK(std::abs(acc.z(2.0)) < 3.0);
}

TEST_CASE("transform means") {
    const double x = 0.2, y = 0.7;
    LabelView lx(&x, 1), ly(&y, 1);
    auto mean = [&](const RandomTransform& t) { return t.law(lx, ly, Site::Pair).mean(WeightFunction::Identity); };
    CHECK(mean(RandomTransform::bernoulli(Kernel::power_law(1.0))) ==
          doctest::Approx(at(Kernel::power_law(1.0), x, y)));
    CHECK(mean(RandomTransform::binomial(3, Kernel::constant(0.5))) == doctest::Approx(1.5));
    CHECK(mean(RandomTransform::poisson(Kernel::constant(2.5))) == doctest::Approx(2.5));
    // indicator weight of a Poisson count: P(phi > 0)
    CHECK(RandomTransform::poisson(Kernel::constant(2.5)).law(lx, ly, Site::Pair).mean(WeightFunction::Indicator) ==
          doctest::Approx(1.0 - std::exp(-2.5)));
}

TEST_CASE("digraphon state masses") {
    const double x = 0.2, y = 0.7;
    LabelView lx(&x, 1), ly(&y, 1);
    auto t = RandomTransform::digraphon(Kernel::constant(0.2), Kernel::constant(0.3), 0.7);
    auto l = t.law(lx, ly, Site::Pair);
    CHECK(l.q[0] + l.q[1] + l.q[2] + l.q[3] == doctest::Approx(1.0));
    CHECK(l.q[3] == doctest::Approx(0.3));
    CHECK(l.mean(WeightFunction::Identity, StateSet::mutual()) == doctest::Approx(0.3));
    CHECK(l.mean(WeightFunction::Identity, StateSet{0xF}) == doctest::Approx(1.0));
    auto self = t.law(lx, lx, Site::Self);
    CHECK(self.q[3] == doctest::Approx(0.7));
    // MC of the joint state frequencies
    Rng rng(9);
    double both = 0.0, fwd = 0.0;
    const int reps = 50000;
    for (int i = 0; i < reps; ++i) {
        auto [a, b] = t.sample(lx, ly, Site::Pair, rng);
        both += a * b;
        fwd += a * (1 - b);
    }
    CHECK(std::abs(both / reps - 0.3) < 4 * std::sqrt(0.21 / reps));
    CHECK(std::abs(fwd / reps - 0.2) < 4 * std::sqrt(0.16 / reps));
}

TEST_CASE("invalid kernels") {
    CHECK_THROWS_AS(RandomTransform::bernoulli(Kernel::constant(1.5)), ValidationError);
    CHECK_THROWS_AS(Kernel(Kernel::Block{{0.5}, {0.1, 0.2, 0.3}}), ValidationError);
    CHECK_THROWS_AS(RandomTransform::digraphon(Kernel::constant(0.5), Kernel::constant(0.5), 0.1), ValidationError);
}
