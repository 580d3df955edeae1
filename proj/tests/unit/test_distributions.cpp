#include "doctest.h"
#include "oracles.hpp"

#include "measuregraph/distributions.hpp"
#include "measuregraph/errors.hpp"
#include "measuregraph/special.hpp"

#include <cmath>
#include <numbers>

using namespace measuregraph;

TEST_CASE("pgf values") {
    CHECK(CountingDistribution::poisson(2.0).pgf(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(CountingDistribution::dirac(3).pgf(0.5) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(CountingDistribution::binomial(2, 0.5).pgf(0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(CountingDistribution::negative_binomial(3, 0.4).pgf(1.0) == doctest::Approx(1.0));
    CHECK(CountingDistribution::uniform(2, 5).pgf(1.0) == doctest::Approx(1.0));
    CHECK(CountingDistribution::zeta(2.5).pgf(1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pgf agrees with the pmf sum") {
    const double t = 0.37;
    for (const auto& d : {CountingDistribution::poisson(3.0), CountingDistribution::binomial(7, 0.2),
                          CountingDistribution::negative_binomial(2, 0.3), CountingDistribution::uniform(1, 6),
                          CountingDistribution::zipf(1.5, 20)}) {
        double s = 0.0;
        for (int k = 0; k < 200; ++k) s += d.pmf(k) * std::pow(t, k);
        CHECK(d.pgf(t) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("moments") {
    auto m = CountingDistribution::poisson(3.0).moments();
    CHECK(m.mean == doctest::Approx(3.0));
    CHECK(m.variance == doctest::Approx(3.0));
    m = CountingDistribution::dirac(5).moments();
    CHECK(m.mean == 5.0);
    CHECK(m.variance == 0.0);
    m = CountingDistribution::binomial(10, 0.3).moments();
    CHECK(m.mean == doctest::Approx(3.0));
    CHECK(m.variance == doctest::Approx(2.1));
    auto nb = CountingDistribution::negative_binomial(4, 0.25);
    CHECK(nb.mean() == doctest::Approx(4 * 0.25 / 0.75));
    CHECK(nb.variance() == doctest::Approx(4 * 0.25 / (0.75 * 0.75)));
    CHECK(std::isinf(CountingDistribution::zeta(2.5).variance()));
}

TEST_CASE("classify_pt") {
    CHECK(classify_pt(3.0, 3.0, 0.05).kind == PtKind::Poisson);
    auto b = classify_pt(3.0, 2.1, 0.05);
    REQUIRE(b.kind == PtKind::Binomial);
    auto* bin = std::get_if<CountingDistribution::Binomial>(&b.fitted.kind());
    REQUIRE(bin != nullptr);
    CHECK(bin->n == 10);
    CHECK(bin->p == doctest::Approx(0.3));
    CHECK(classify_pt(3.0, 6.0, 0.05).kind == PtKind::NegativeBinomial);
    CHECK(classify_pt(30.4, 30.4, 0.05).kind == PtKind::Poisson);
    auto z = classify_pt(5.0, 0.0);
    CHECK(z.degenerate);
}

TEST_CASE("thinned laws stay in family") {
    auto t = CountingDistribution::binomial(4, 0.6).thinned(0.5);
    auto* b = std::get_if<CountingDistribution::Binomial>(&t.kind());
    REQUIRE(b != nullptr);
    CHECK(b->n == 4);
    CHECK(b->p == doctest::Approx(0.3));
    auto p = CountingDistribution::poisson(4.0).thinned(0.25);
    CHECK(p.mean() == doctest::Approx(1.0));
}

TEST_CASE("sampling means") {
    Rng rng(11);
    auto d = CountingDistribution::negative_binomial(3, 0.4);
    oracle::MeanAccumulator acc;
    for (int i = 0; i < 20000; ++i) acc.add(static_cast<double>(d.sample(rng)));
    CHECK(std::abs(acc.z(d.mean())) < 4.0);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(CountingDistribution::poisson(-1.0), ValidationError);
    CHECK_THROWS_AS(CountingDistribution::binomial(3, 1.5), ValidationError);
    CHECK_THROWS_AS(CountingDistribution::zeta(1.0), ValidationError);
    CHECK_THROWS_AS(LabelDistribution::zeta(0.5), ValidationError);
    CHECK_THROWS_AS(LabelDistribution::uniform_int(0), ValidationError);
}

TEST_CASE("integrate against label laws") {
    auto leb = LabelDistribution::lebesgue();
    CHECK(integrate(leb, [](std::span<const double> x) { return x[0]; }).value == doctest::Approx(0.5).epsilon(1e-14));
    auto pl = integrate(leb, [](std::span<const double> x) { return 1.0 / ((1 + x[0]) * (1 + x[0])); });
    CHECK(pl.value == doctest::Approx(0.5).epsilon(1e-14));
    auto z = LabelDistribution::zeta(2.0);
    auto primes = integrate(z, [](std::span<const double> x) { return is_prime(std::llround(x[0])) ? 1.0 : 0.0; },
                            64, 1e-12);
    // oracle: direct prime sum up to 10^6 over pi^2/6
    double direct = 0.0;
    for (auto p : primes_up_to(1000000)) direct += 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    direct /= std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(direct == doctest::Approx(0.27490).epsilon(1e-4));
    CHECK(primes.value == doctest::Approx(direct).epsilon(1e-5));
}

TEST_CASE("special functions") {
    CHECK(zeta(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-14));
    CHECK(prime_count(10) == 4);
    CHECK(special("prime_count", 100.0) == 25.0);
    CHECK(prime_zeta(2.0) == doctest::Approx(0.4522474200).epsilon(1e-9));
    double direct = 0.0;
    for (auto p : primes_up_to(2000000)) direct += 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    CHECK(prime_zeta(2.0) == doctest::Approx(direct).epsilon(1e-6));
    CHECK(special("erf", 0.5) == doctest::Approx(std::erf(0.5)));
    CHECK(special("ei", 1.0) == doctest::Approx(1.8951178163559368).epsilon(1e-12));
    CHECK(special("expint_Ei", -1.0) == doctest::Approx(-0.21938393439552062).epsilon(1e-12));
    CHECK_THROWS_AS(special("gamma", 1.0), ValidationError);
}

TEST_CASE("label quadrature truncation") {
    auto rule = LabelDistribution::zeta(1.5).rule(64, 1e-6, 1000);
    double s = 0.0;
    for (double w : rule.weights) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rule.tail_mass > 0.0);
    auto u = LabelDistribution::uniform_int(10).rule();
    CHECK(u.size() == 10);
    CHECK(u.atomic);
}
