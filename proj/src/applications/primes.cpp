#include "measuregraph/applications/primes.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/graph_generation.hpp"
#include "measuregraph/special.hpp"

#include <cmath>
#include <limits>

namespace measuregraph {

namespace {

constexpr double kSearchLo = 1.0 + 1e-3;
constexpr double kSearchHi = 5.0;

// log of zeta(x) with the Euler factors of the primes up to the cutoff removed
double log_zeta_without(double x, const std::vector<std::int64_t>& primes) {
    double v = std::log1p(zeta_minus_one(x));
    for (auto p : primes) v += std::log1p(-std::pow(static_cast<double>(p), -x));
    return v;
}

} // namespace

PrimeGraphModel PrimeGraphModel::zeta(double s, CountingDistribution kappa) {
    require(s > 1.0, "prime graph: zeta exponent must exceed 1");
    PrimeGraphModel m;
    m.labels = Labels::Zeta;
    m.s = s;
    m.kappa = std::move(kappa);
    return m;
}

PrimeGraphModel PrimeGraphModel::uniform(std::int64_t n, CountingDistribution kappa) {
    require(n >= 1, "prime graph: uniform labels need n >= 1");
    PrimeGraphModel m;
    m.labels = Labels::Uniform;
    m.n = n;
    m.kappa = std::move(kappa);
    return m;
}

LabelDistribution PrimeGraphModel::label_distribution() const {
    return labels == Labels::Zeta ? LabelDistribution::zeta(s) : LabelDistribution::uniform_int(n);
}

ModelSpec PrimeGraphModel::spec() const {
    return ModelSpec(StcMeasure{kappa, label_distribution()},
                     RandomTransform::deterministic(Kernel(Kernel::PrimePairs{}, true)));
}

double prime_density_zeta(double s) { return prime_zeta(s) / zeta(s); }

double edge_density_zeta(double s) {
    const double p = prime_zeta(s), z = zeta(s);
    return (p * p - prime_zeta(2.0 * s)) / (z * z);
}

double prime_zeta_direct(double s, std::int64_t cutoff) {
    require(s > 1.0, "prime zeta: s must exceed 1");
    const std::vector<std::int64_t> primes = primes_up_to(cutoff);
    double head = 0.0;
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) head += std::pow(static_cast<double>(*it), -s);
    // primes above the cutoff: sum_k mu(k)/k log zeta_{>cutoff}(k s)
    const std::vector<int> mu = mobius_table(400);
    double tail = 0.0;
    for (std::size_t k = 1; k < mu.size(); ++k) {
        const double x = static_cast<double>(k) * s;
        const double term = log_zeta_without(x, primes);
        if (mu[k] != 0) tail += mu[k] * term / static_cast<double>(k);
        if (std::abs(term) < 1e-18) break;
    }
    return head + tail;
}

double prime_density_zeta_direct(double s, std::int64_t cutoff) { return prime_zeta_direct(s, cutoff) / zeta(s); }

double edge_density_zeta_direct(double s, std::int64_t cutoff) {
    const double p = prime_zeta_direct(s, cutoff), z = zeta(s);
    return (p * p - prime_zeta_direct(2.0 * s, cutoff)) / (z * z);
}

double gc_threshold_zeta(double s) {
    const double p1 = prime_zeta(s), p2 = prime_zeta(2.0 * s), p3 = prime_zeta(3.0 * s);
    return (p1 * p1 - p2) * zeta(s) / (p1 * p1 * p1 - 2.0 * p1 * p2 + p3);
}

double gc_threshold_uniform(std::int64_t n) {
    require(n >= 1, "gc threshold: n must be at least 1");
    const std::int64_t pi = prime_count(n);
    if (n < 3 || pi < 2) return std::numeric_limits<double>::infinity();
    return static_cast<double>(n) / static_cast<double>(pi - 1);
}

PrimeAnalytics prime_analytics(const PrimeGraphModel& m, std::int64_t prime_cutoff) {
    PrimeAnalytics out;
    const CountingDistribution& kappa = m.kappa;
    const double c = kappa.mean();
    const double mu = c > 0.0 ? kappa.factorial_moment(2) / c : 0.0;
    std::vector<std::int64_t> primes;
    std::vector<double> mass;   // nu{p}
    std::vector<double> a;      // nu 1_A(p, .)
    if (m.labels == PrimeGraphModel::Labels::Zeta) {
        require(m.s > 1.0, "prime analytics: zeta exponent must exceed 1");
        const double z = zeta(m.s), wp = prime_zeta(m.s);
        out.prime_density = wp / z;
        out.edge_density = edge_density_zeta(m.s);
        out.gc_threshold = gc_threshold_zeta(m.s);
        primes = primes_up_to(prime_cutoff);
        double covered = 0.0;
        for (auto p : primes) {
            const double px = std::pow(static_cast<double>(p), -m.s);
            mass.push_back(px / z);
            a.push_back((wp - px) / z);
            covered += px;
        }
        out.active_tail_bound = c * std::max(0.0, wp - covered) / z;
    } else {
        require(m.n >= 1, "prime analytics: uniform labels need n >= 1");
        const double n = static_cast<double>(m.n);
        const std::int64_t pi = prime_count(m.n);
        out.prime_density = static_cast<double>(pi) / n;
        out.edge_density = static_cast<double>(pi) * static_cast<double>(pi - 1) / (n * n);
        out.gc_threshold = gc_threshold_uniform(m.n);
        primes = primes_up_to(m.n);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            mass.push_back(1.0 / n);
            a.push_back(static_cast<double>(pi - 1) / n);
        }
    }
    out.mean_degree = mu * out.edge_density;
    double active = 0.0;
    for (std::size_t i = 0; i < primes.size(); ++i)
        active += mass[i] * (c - kappa.pgf_derivative(cplx(1.0 - a[i], 0.0), 1).real());
    out.mean_active_vertices = active;
    return out;
}

Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    require(lo < hi, "golden section: empty interval");
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

Maximum prime_density_max() { return golden_section_max(prime_density_zeta, kSearchLo, kSearchHi, 1e-9); }
Maximum edge_density_max() { return golden_section_max(edge_density_zeta, kSearchLo, kSearchHi, 1e-9); }

LabeledGraph prime_graph_sample(const PrimeGraphModel& m, std::uint64_t seed) { return generate(m.spec(), seed); }

} // namespace measuregraph
