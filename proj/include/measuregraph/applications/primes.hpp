#ifndef MEASUREGRAPH_APPLICATIONS_PRIMES_HPP
#define MEASUREGRAPH_APPLICATIONS_PRIMES_HPP

#include "measuregraph/graph.hpp"
#include "measuregraph/model.hpp"

#include <cstdint>
#include <vector>

namespace measuregraph {

// Labels on {1, 2, ...}; edges join vertices carrying distinct primes.
struct PrimeGraphModel {
    enum class Labels { Zeta, Uniform };
    Labels labels = Labels::Zeta;
    double s = 2.0;          // zeta labels
    std::int64_t n = 10;     // uniform labels on {1..n}
    CountingDistribution kappa = CountingDistribution::poisson(10.0);

    static PrimeGraphModel zeta(double s, CountingDistribution kappa);
    static PrimeGraphModel uniform(std::int64_t n, CountingDistribution kappa);
    LabelDistribution label_distribution() const;
    ModelSpec spec() const;
};

struct PrimeAnalytics {
    double prime_density = 0.0;        // nu(P)
    double edge_density = 0.0;         // (nu x nu)(A)
    double mean_degree = 0.0;          // E Y, vertex perspective
    double gc_threshold = 0.0;         // Poisson counts: giant component iff c exceeds this (inf if never)
    double mean_active_vertices = 0.0;
    double active_tail_bound = 0.0;    // bound on the omitted primes' contribution
};

// Active-vertex sum runs over primes up to prime_cutoff (zeta labels).
PrimeAnalytics prime_analytics(const PrimeGraphModel& m, std::int64_t prime_cutoff = 1000000);

// Zeta-label densities by the Moebius series for the prime zeta function.
double prime_density_zeta(double s);
double edge_density_zeta(double s);
// Same quantities from primes up to cutoff plus an Euler-product tail for the larger primes.
double prime_zeta_direct(double s, std::int64_t cutoff = 1000);
double prime_density_zeta_direct(double s, std::int64_t cutoff = 1000);
double edge_density_zeta_direct(double s, std::int64_t cutoff = 1000);

double gc_threshold_zeta(double s);
double gc_threshold_uniform(std::int64_t n);   // inf for n < 3

struct Maximum {
    double argmax = 0.0;
    double value = 0.0;
};

// Golden-section search on [lo, hi] for a unimodal function.
Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-6);
Maximum prime_density_max();   // over s in (1, 5]
Maximum edge_density_max();

LabeledGraph prime_graph_sample(const PrimeGraphModel& m, std::uint64_t seed);

} // namespace measuregraph

#endif
