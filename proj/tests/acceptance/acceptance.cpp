// Acceptance checks. Run with --criterion N (1..12) or --all; one PASS/FAIL line per criterion.
#include "oracles.hpp"

#include "measuregraph/analytics.hpp"
#include "measuregraph/applications/bayes_net.hpp"
#include "measuregraph/applications/primes.hpp"
#include "measuregraph/applications/spin.hpp"
#include "measuregraph/decomposition.hpp"
#include "measuregraph/estimation.hpp"
#include "measuregraph/graph_generation.hpp"
#include "measuregraph/parallel.hpp"
#include "measuregraph/rng.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace measuregraph;

namespace {

// Tolerances, pinned.
constexpr double kZMax = 4.0;
constexpr double kBatteryBudgetSeconds = 60.0;
constexpr double kPmfTol = 1e-8;
constexpr double kTvMax = 0.02;
constexpr double kRootTol = 1e-9;
constexpr double kArgmaxTol = 1e-3;
constexpr double kMaxValueTol = 1e-4;
constexpr double kSobolTol = 1e-6;
constexpr double kIdentityTol = 1e-8;
constexpr double kEffectiveDimensionMin = 1.9;
constexpr double kL2Max = 0.10;
constexpr double kEstimateBudgetSeconds = 300.0;
constexpr double kPathTol = 1e-12;
constexpr double kLoglikTol = 1e-9;
constexpr std::size_t kRunsRequired = 8;
constexpr std::size_t kRuns = 10;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail_if(bool bad, const std::string& why) {
        if (bad) {
            pass = false;
            detail << " [" << why << "]";
        }
    }
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelSpec stc(CountingDistribution k, RandomTransform t, bool directed = false,
              LabelDistribution nu = LabelDistribution::lebesgue()) {
    return ModelSpec(StcMeasure{std::move(k), std::move(nu)}, std::move(t), WeightFunction::Identity, directed);
}

ModelSpec er_poisson(double c, double p) {
    return stc(CountingDistribution::poisson(c), RandomTransform::bernoulli(Kernel::constant(p)));
}

ModelSpec er_dirac(std::int64_t n, double p) {
    return stc(CountingDistribution::dirac(n), RandomTransform::bernoulli(Kernel::constant(p)));
}

// 1. sampled edge counts and weights against the closed forms
void criterion_1(Outcome& out) {
    struct Case {
        std::string name;
        ModelSpec spec;
    };
    const std::vector<Case> battery{
        {"er-dirac", er_dirac(30, 0.2)},
        {"er-poisson", er_poisson(30.0, 0.2)},
        {"power-law", stc(CountingDistribution::poisson(40.0), RandomTransform::bernoulli(Kernel::power_law(1.0)))},
        {"exponential",
         stc(CountingDistribution::poisson(25.0), RandomTransform::bernoulli(Kernel::exponential(2.0)))},
        {"block", stc(CountingDistribution::poisson(30.0),
                      RandomTransform::bernoulli(Kernel(Kernel::Block{{0.4}, {0.6, 0.1, 0.1, 0.3}})))},
        {"dot-product", stc(CountingDistribution::poisson(20.0),
                            RandomTransform::bernoulli(Kernel(Kernel::DotProduct{1.0})), false,
                            LabelDistribution::lebesgue(2))},
        {"poisson-transform",
         stc(CountingDistribution::poisson(20.0), RandomTransform::poisson(Kernel::exponential(1.0)))},
        {"digraphon", stc(CountingDistribution::poisson(20.0),
                          RandomTransform::digraphon(Kernel::constant(0.2), Kernel::constant(0.1), 0.3), true)},
        {"negbin-binomial", stc(CountingDistribution::negative_binomial(5, 0.25),
                                RandomTransform::binomial(3, Kernel::power_law(2.0)))},
    };
    constexpr std::size_t reps = 10000;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::size_t s = 0; s < battery.size(); ++s) {
        const auto& spec = battery[s].spec;
        const AnalyticsReport r = edge_report(spec);
        std::vector<double> counts(reps), weights(reps);
        parallel_for(reps, [&](std::size_t i) {
            const LabeledGraph g = generate(spec, derive_seed(1000 + s, 8, i));
            counts[i] = g.edge_count(true);
            weights[i] = g.edge_weight(true);
        });
        oracle::MeanAccumulator ac, aw;
        for (std::size_t i = 0; i < reps; ++i) {
            ac.add(counts[i]);
            aw.add(weights[i]);
        }
        const double zc = ac.z(r.edge_count.normalized), zw = aw.z(r.edge_weight.normalized);
        worst = std::max({worst, std::abs(zc), std::abs(zw)});
        out.detail << " " << battery[s].name << " z=" << fmt(zc, 3) << "/" << fmt(zw, 3);
        out.fail_if(std::abs(zc) > kZMax || std::abs(zw) > kZMax, battery[s].name + " outside 4 sigma");
    }
    const double elapsed = seconds_since(t0);
    out.detail << "; specs=" << battery.size() << " reps=" << reps << " max|z|=" << fmt(worst, 3)
               << " time=" << fmt(elapsed, 3) << "s";
    out.fail_if(battery.size() < 8, "fewer than 8 specs");
    out.fail_if(elapsed > kBatteryBudgetSeconds, "runtime over 60 s");
}

// 2. coefficient extraction: exact binomial case and a sampled power-law histogram
void criterion_2(Outcome& out) {
    const DegreeLaw er = degree_distribution(er_dirac(20, 0.3));
    const Coefficients c = pgf_coefficients(er.pgf, 30);
    double worst = 0.0;
    for (std::int64_t k = 0; k <= 30; ++k) {
        const double expected = k <= 19 ? oracle::binomial_pmf(19, 0.3, k) : 0.0;
        worst = std::max(worst, std::abs(c.p[static_cast<std::size_t>(k)] - expected));
    }
    out.detail << " binomial max error=" << fmt(worst, 3);
    out.fail_if(worst > kPmfTol, "binomial coefficients off by more than 1e-8");

    const ModelSpec pl = stc(CountingDistribution::poisson(30.0), RandomTransform::bernoulli(Kernel::power_law(1.0)));
    constexpr std::size_t target = 100000;
    std::vector<double> hist;
    std::size_t seen = 0;
    for (std::size_t i = 0; seen < target; ++i) {
        const LabeledGraph g = generate(pl, derive_seed(2002, 8, i));
        for (double d : g.out_degrees()) {
            if (seen == target) break;
            const auto k = static_cast<std::size_t>(d);
            if (k >= hist.size()) hist.resize(k + 1, 0.0);
            hist[k] += 1.0;
            ++seen;
        }
    }
    for (double& h : hist) h /= static_cast<double>(target);
    const Coefficients pc = pgf_coefficients(degree_distribution(pl).pgf, hist.size() + 20);
    const double tv = oracle::total_variation(pc.p, hist);
    out.detail << "; power-law TV=" << fmt(tv, 3) << " over " << target << " degrees, mass deficit "
               << fmt(pc.deficit, 3);
    out.fail_if(tv > kTvMax, "total variation above 0.02");
}

// 3. giant-component boundaries
void criterion_3(Outcome& out) {
    double worst_root = 0.0;
    std::size_t grid_mismatch = 0;
    const std::vector<double> grid{0.01, 0.05, 0.1, 0.15, 0.2, 0.3, 0.45, 0.6, 0.8, 0.95};
    for (double c : {0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
        for (double p : grid) {
            const bool expected = c * p > 1.0;
            if (std::abs(c * p - 1.0) < 1e-9) continue;
            if (giant_component(er_poisson(c, p)).verdict != expected) ++grid_mismatch;
        }
        if (c > 1.0) {
            const double root =
                gc_threshold([c](double p) { return giant_component(er_poisson(c, p)).margin; }, 1e-6, 1.0);
            worst_root = std::max(worst_root, std::abs(root - 1.0 / c));
        }
    }
    for (std::int64_t n : {2, 3, 4, 8, 20}) {
        for (double p : grid) {
            const bool expected = n >= 3 && p * static_cast<double>(n - 1) > 1.0;
            if (giant_component(er_dirac(n, p)).verdict != expected) ++grid_mismatch;
        }
        if (n >= 3) {
            const double root =
                gc_threshold([n](double p) { return giant_component(er_dirac(n, p)).margin; }, 1e-6, 1.0);
            worst_root = std::max(worst_root, std::abs(root - 1.0 / static_cast<double>(n - 1)));
        }
    }
    out.detail << " verdict mismatches=" << grid_mismatch << " worst root error=" << fmt(worst_root, 3);
    out.fail_if(grid_mismatch != 0, "verdict differs from the known boundary");
    out.fail_if(worst_root > kRootTol, "root error above 1e-9");
}

// 4. prime-label maxima and threshold curves
void criterion_4(Outcome& out) {
    const Maximum pd = prime_density_max(), ed = edge_density_max();
    const double pd_s = 1.49107, pd_v = 0.325236, ed_s = 1.41152, ed_v = 0.0819344;
    out.detail << " prime density max " << fmt(pd.value, 7) << " at s=" << fmt(pd.argmax, 7) << "; edge density max "
               << fmt(ed.value, 7) << " at s=" << fmt(ed.argmax, 7);
    out.fail_if(std::abs(pd.argmax - pd_s) > kArgmaxTol || std::abs(pd.value - pd_v) > kMaxValueTol,
                "prime density maximum off");
    out.fail_if(std::abs(ed.argmax - ed_s) > kArgmaxTol || std::abs(ed.value - ed_v) > kMaxValueTol,
                "edge density maximum off");
    // cross-check against the direct prime sums
    const double direct = prime_density_zeta_direct(pd.argmax, 100000);
    out.detail << "; direct sum at argmax " << fmt(direct, 7);
    out.fail_if(std::abs(direct - pd.value) > kMaxValueTol, "direct prime sum disagrees");

    std::size_t bad = 0, points = 0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i <= 280; ++i) {
        const double s = 1.2 + 0.01 * i;
        const double t = gc_threshold_zeta(s);
        ++points;
        if (!std::isfinite(t) || t <= 0.0) ++bad;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    for (std::int64_t n = 3; n <= 200; ++n) {
        const double t = gc_threshold_uniform(n);
        ++points;
        if (!std::isfinite(t) || t <= 0.0) ++bad;
    }
    out.detail << "; threshold curve points=" << points << " non-finite or non-positive=" << bad << " zeta range ["
               << fmt(lo, 4) << ", " << fmt(hi, 4) << "]";
    out.fail_if(bad != 0, "threshold curve not finite and positive");
}

// 5. Sobol indices of exp(-a(x + y)) and the decomposition identities
void criterion_5(Outcome& out) {
    double worst_index = 0.0, worst_identity = 0.0;
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        const PairKernel w = [a](LabelView x, LabelView y) { return std::exp(-a * (x[0] + y[0])); };
        const SobolDecomposition d = sobol(w, LabelDistribution::lebesgue());
        const oracle::SobolClosedForm cf = oracle::sobol_exponential(a);
        worst_index = std::max({worst_index, std::abs(*d.s1 - cf.s1), std::abs(*d.s2 - cf.s2),
                                std::abs(*d.s12 - cf.s12), std::abs(d.effective_dimension - cf.effective_dimension),
                                std::abs(*d.s1 - oracle::sobol_exponential_s1_alt(a))});

        const auto& wt = d.rule.weights;
        const std::size_t n = wt.size();
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            m1 += wt[i] * d.w1[i];
            m2 += wt[i] * d.w2[i];
        }
        double row = 0.0, col = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                r += wt[j] * d.w12(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                c += wt[j] * d.w12(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            }
            row = std::max(row, std::abs(r));
            col = std::max(col, std::abs(c));
        }
        const double anova = std::abs(d.var_w - (d.var_w1 + d.var_w2 + d.var_w12)) / d.var_w;
        const double sum = std::abs(*d.s1 + *d.s2 + *d.s12 - 1.0);
        worst_identity = std::max({worst_identity, std::abs(m1), std::abs(m2), row, col, anova, sum});
    }
    const PairKernel w50 = [](LabelView x, LabelView y) { return std::exp(-50.0 * (x[0] + y[0])); };
    const double ed = sobol(w50, LabelDistribution::lebesgue(), 128).effective_dimension;
    out.detail << " worst index error=" << fmt(worst_index, 3) << " worst identity residual="
               << fmt(worst_identity, 3) << " ED(50)=" << fmt(ed, 6) << " (closed form "
               << fmt(oracle::sobol_exponential(50.0).effective_dimension, 6) << ")";
    out.fail_if(worst_index > kSobolTol, "indices off by more than 1e-6");
    out.fail_if(worst_identity > kIdentityTol, "identity residual above 1e-8");
    out.fail_if(ed < kEffectiveDimensionMin, "ED(50) below 1.9");
}

// 6. graphon recovery from five Poisson(30) graphs with a power-law truth
void criterion_6(Outcome& out) {
    const Kernel truth_kernel = Kernel::power_law(1.0);
    const ModelSpec truth = stc(CountingDistribution::poisson(30.0), RandomTransform::bernoulli(truth_kernel));
    auto tf = [&truth_kernel](double x, double y) {
        return truth_kernel.base(LabelView(&x, 1), LabelView(&y, 1));
    };
    auto run = [&](std::uint64_t seed, bool monotone, double& seconds) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Eigen::MatrixXd> mats;
        for (std::size_t i = 0; i < 5; ++i) mats.push_back(generate(truth, derive_seed(seed, 8, i)).adjacency);
        const ObservedGraphSet obs(std::move(mats));
        MhConfig cfg;
        cfg.m = 3;
        cfg.iterations = 500;
        cfg.sigma = 0.01;
        cfg.separable = true;
        cfg.hint = MonotoneHint::Decreasing;
        cfg.monotone = monotone;
        const MhResult r = mh_estimate(obs, cfg, seed);
        seconds = seconds_since(t0);
        return relative_l2_error([&r](double x, double y) { return r.theta_hat(x, y); }, tf);
    };
    std::size_t good = 0, good_free = 0;
    double slowest = 0.0;
    out.detail << " L2 (monotone chain):";
    for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
        double t = 0.0;
        const double e = run(seed, true, t);
        slowest = std::max(slowest, t);
        if (e <= kL2Max) ++good;
        out.detail << " " << fmt(e, 3);
    }
    for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
        double t = 0.0;
        if (run(seed, false, t) <= kL2Max) ++good_free;
    }
    out.detail << "; within 0.10: " << good << "/" << kRuns << "; unconstrained chain (informational): " << good_free
               << "/" << kRuns << "; slowest run " << fmt(slowest, 3) << "s";
    out.fail_if(good < kRunsRequired, "fewer than 8 of 10 runs within 0.10");
    out.fail_if(slowest > kEstimateBudgetSeconds, "run over 5 min");
}

// 7. graphicality checks against brute force, and exact realizations
void criterion_7(Outcome& out) {
    std::size_t checked = 0, disagree = 0, realized = 0, wrong_degree = 0;
    auto row_sums_match = [](const LabeledGraph& g, const oracle::Sequence& d) {
        if (g.size() != d.size()) return false;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (g.adjacency.row(static_cast<Eigen::Index>(i)).sum() != static_cast<double>(d[i])) return false;
        return true;
    };
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto simple = oracle::simple_graph_sequences(n);
        const auto symmetric = oracle::symmetric_matrix_sequences(n);
        for (const auto& d : oracle::nonincreasing_sequences(n, 5)) {
            ++checked;
            const bool eg = is_graphical(d, GraphicalCriterion::EG);
            const bool gr = is_graphical(d, GraphicalCriterion::GR);
            if (eg != (simple.count(d) > 0) || gr != (symmetric.count(d) > 0)) ++disagree;
            oracle::Sequence shuffled = d;
            std::reverse(shuffled.begin(), shuffled.end());
            for (const auto& seq : {d, shuffled}) {
                if (eg) {
                    const LabeledGraph g = realize_degree_sequence(seq, RealizationMode::Simple, 7);
                    const auto& a = g.adjacency;
                    const bool simple_ok = a.diagonal().isZero() && a.isApprox(a.transpose()) &&
                                           (a.array() == 0.0 || a.array() == 1.0).all();
                    ++realized;
                    if (!simple_ok || !row_sums_match(g, seq)) ++wrong_degree;
                }
                if (gr) {
                    const LabeledGraph g = realize_degree_sequence(seq, RealizationMode::BipartiteFlow, 7);
                    const auto& a = g.adjacency;
                    const bool ok = a.isApprox(a.transpose()) && (a.array() == 0.0 || a.array() == 1.0).all();
                    ++realized;
                    if (!ok || !row_sums_match(g, seq)) ++wrong_degree;
                }
                if (is_graphical(seq, GraphicalCriterion::CM)) {
                    const LabeledGraph g = realize_degree_sequence(seq, RealizationMode::Configuration, 7);
                    ++realized;
                    if (!row_sums_match(g, seq)) ++wrong_degree;
                }
            }
        }
    }
    out.detail << " sequences=" << checked << " disagreements=" << disagree << " realizations=" << realized
               << " wrong=" << wrong_degree;
    out.fail_if(disagree != 0, "graphicality check disagrees with brute force");
    out.fail_if(wrong_degree != 0, "realization with wrong degrees");
}

// 8. enumerated partition function against Monte Carlo, and the two enumeration paths
void criterion_8(Outcome& out) {
    struct Lattice {
        std::string name;
        SpinNetwork net;
    };
    auto lattice = [](std::size_t sites, CountingDistribution spin, double coupling, std::int64_t radius,
                      bool self, std::vector<double> field) {
        SpinNetwork net;
        net.spins.assign(sites, spin);
        net.interaction = [coupling](std::int64_t x, std::int64_t y) {
            return coupling / (1.0 + static_cast<double>(std::abs(x - y)));
        };
        net.radius = radius;
        net.include_self = self;
        net.field = std::move(field);
        return net;
    };
    const std::vector<Lattice> lattices{
        {"bernoulli-3", lattice(3, CountingDistribution::bernoulli(0.5), 1.0, 1, false, {})},
        {"binomial-4", lattice(4, CountingDistribution::binomial(2, 0.4), -0.3, 2, true, {0.2, -0.1, 0.3, 0.0})},
        {"bernoulli-10", lattice(10, CountingDistribution::bernoulli(0.3), 0.8, 1, true, {})},
        {"bernoulli-20", lattice(20, CountingDistribution::bernoulli(0.5), 0.2, 2, false, {})},
    };
    constexpr std::size_t samples = 100000;
    double worst_z = 0.0, worst_path = 0.0;
    for (std::size_t l = 0; l < lattices.size(); ++l) {
        const auto& net = lattices[l].net;
        for (double beta : {0.25, 1.0}) {
            const double zg = spin_partition(net, beta, PartitionPath::Gibbs);
            const double zl = spin_partition(net, beta, PartitionPath::Laplace);
            const McEstimate mc = spin_laplace_mc(net, beta, samples, derive_seed(8008 + l, 2, static_cast<std::uint64_t>(beta * 4)));
            const double z = mc.stderr_ > 0.0 ? (mc.mean - zg) / mc.stderr_ : (mc.mean == zg ? 0.0 : 1e9);
            const double path = std::abs(zg - zl) / std::max(1.0, std::abs(zg));
            worst_z = std::max(worst_z, std::abs(z));
            worst_path = std::max(worst_path, path);
            out.detail << " " << lattices[l].name << "@" << beta << " z=" << fmt(z, 3);
            out.fail_if(std::abs(z) > kZMax, lattices[l].name + " outside 4 sigma");
            out.fail_if(path > kPathTol, lattices[l].name + " paths disagree");
        }
    }
    out.detail << "; max|z|=" << fmt(worst_z, 3) << " max path difference=" << fmt(worst_path, 3);
}

// 9. zeta-thinned all-ones array on {1..2000}
void criterion_9(Outcome& out) {
    constexpr double s = 2.0;
    constexpr std::size_t n = 2000, reps = 10000;
    std::vector<double> p(n);
    for (std::size_t x = 0; x < n; ++x) p[x] = std::pow(static_cast<double>(x + 1), -s);
    const auto ones = [](std::size_t, std::size_t) { return 1.0; };
    std::vector<double> totals(reps);
    parallel_for(reps, [&](std::size_t r) { totals[r] = thinned_total(ones, p, derive_seed(9009, 4, r)).total; });
    oracle::MeanAccumulator acc;
    for (double t : totals) acc.add(t);
    const ZetaThinningMean m = zeta_thinning_mean(s, n);
    // independent value of the truncated mean: sum p_x + (sum p_x)^2 - sum p_x^2
    double s1 = 0.0, s2 = 0.0;
    for (double v : p) {
        s1 += v;
        s2 += v * v;
    }
    const double direct = s1 + s1 * s1 - s2;
    const double z = acc.z(m.truncated);
    out.detail << " MC mean=" << fmt(acc.mean, 7) << " truncated=" << fmt(m.truncated, 9) << " z=" << fmt(z, 3)
               << " full=" << fmt(m.full, 9) << " tail=" << fmt(m.tail, 3);
    out.fail_if(std::abs(direct - m.truncated) > 1e-10, "truncated value disagrees with the direct sum");
    out.fail_if(std::abs(z) > kZMax, "outside 4 sigma");
}

// 10. mean adjacency along a rewiring chain of a 10-vertex ER model
void criterion_10(Outcome& out) {
    constexpr std::size_t n = 10, steps = 10000;
    constexpr double p = 0.3;
    const ModelSpec spec = er_dirac(static_cast<std::int64_t>(n), p);
    LabeledGraph g = generate(spec, 1010);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t < steps; ++t) {
        g = rewire(g, spec, 1, derive_seed(1010, 6, t));
        sum += g.adjacency;
    }
    const Eigen::MatrixXd mean = sum / static_cast<double>(steps);
    // A step resamples entry (i, j) when i or j is picked: probability 2/n. Between refreshes the
    // entry is frozen, so lag-k correlation is rho^k with rho = 1 - 2/n.
    const double rho = 1.0 - 2.0 / static_cast<double>(n);
    const double nn = static_cast<double>(steps);
    const double inflation = (1.0 + rho) / (1.0 - rho) - 2.0 * rho * (1.0 - std::pow(rho, nn)) / (nn * (1.0 - rho) * (1.0 - rho));
    const double sigma = std::sqrt(p * (1.0 - p) / nn * inflation);
    double worst = 0.0, diagonal = 0.0;
    std::size_t outside = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double m = mean(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (i == j) {
                diagonal = std::max(diagonal, std::abs(m));
                continue;
            }
            const double z = (m - p) / sigma;
            worst = std::max(worst, std::abs(z));
            if (std::abs(z) > kZMax) ++outside;
        }
    out.detail << " steps=" << steps << " sigma=" << fmt(sigma, 3) << " (autocorrelation factor " << fmt(inflation, 3)
               << ") max|z|=" << fmt(worst, 3) << " entries outside=" << outside << " diagonal max=" << diagonal;
    out.fail_if(outside != 0, "entry outside 4 sigma");
    out.fail_if(diagonal != 0.0, "self edges appeared");
}

// 11. Bayesian-network structure search on chain data
void criterion_11(Outcome& out) {
    constexpr std::size_t rows = 1000, q = 3, r = 3;
    const ModelSpec prior(StcMeasure{CountingDistribution::dirac(3), LabelDistribution::lebesgue()},
                          RandomTransform::bernoulli(Kernel::constant(0.5)));
    const auto dags = oracle::three_vertex_dags();
    std::size_t hits = 0;
    out.detail << " runs:";
    for (std::uint64_t seed = 1; seed <= kRuns; ++seed) {
        Eigen::MatrixXd data(rows, 3);
        Rng rng(derive_seed(1111, seed));
        std::normal_distribution<double> noise(0.0, 1.0);
        for (std::size_t i = 0; i < rows; ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            data(k, 0) = noise(rng);
            data(k, 1) = data(k, 0) + 0.5 * noise(rng);
            data(k, 2) = data(k, 1) + 0.5 * noise(rng);
        }
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& d : dags) best = std::max(best, oracle::bn_loglik_counts(d, data, q, r));
        BnMhConfig cfg;
        cfg.iterations = 500;
        cfg.q = q;
        cfg.r = r;
        const BnMhResult res = bn_mh_infer(prior, data, cfg, seed);
        const bool hit = std::abs(res.best_loglik - best) <= kLoglikTol * std::max(1.0, std::abs(best)) &&
                         is_acyclic(res.best);
        if (hit) ++hits;
        out.detail << " " << (hit ? "hit" : "miss");
    }
    out.detail << "; reached the exhaustive maximum in " << hits << "/" << kRuns;
    out.fail_if(hits < kRunsRequired, "fewer than 8 of 10 runs reached the maximum");
}

// 12. informational: nothing here needs more than desk-scale compute
void criterion_12(Outcome& out) {
    const Maximum a = prime_density_max(), b = prime_density_max();
    out.detail << " informational; every check above runs at desk scale; prime tables are deterministic (repeat "
               << (a.argmax == b.argmax && a.value == b.value ? "identical" : "differs") << ")";
    out.fail_if(a.argmax != b.argmax || a.value != b.value, "prime table not reproducible");
}

const std::vector<std::function<void(Outcome&)>> kCriteria{criterion_1, criterion_2,  criterion_3,  criterion_4,
                                                           criterion_5, criterion_6,  criterion_7,  criterion_8,
                                                           criterion_9, criterion_10, criterion_11, criterion_12};

bool run_one(std::size_t k) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        kCriteria[k - 1](out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail << " [exception: " << e.what() << "]";
    }
    std::cout << "criterion " << k << " " << (out.pass ? "PASS" : "FAIL") << " (" << fmt(seconds_since(t0), 3)
              << "s):" << out.detail.str() << std::endl;
    return out.pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::size_t criterion = 0;
    bool all = false;
    app.add_option("--criterion", criterion, "Criterion number")->check(CLI::Range(1, 12));
    app.add_flag("--all", all, "Run every criterion");
    CLI11_PARSE(app, argc, argv);
    if (!all && criterion == 0) {
        std::cerr << app.help();
        return 2;
    }
    bool ok = true;
    if (all)
        for (std::size_t k = 1; k <= kCriteria.size(); ++k) ok = run_one(k) && ok;
    else
        ok = run_one(criterion);
    return ok ? 0 : 1;
}
