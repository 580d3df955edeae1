#include "commands.hpp"

#include "measuregraph/analytics.hpp"
#include "measuregraph/applications/bayes_net.hpp"
#include "measuregraph/applications/neural.hpp"
#include "measuregraph/applications/primes.hpp"
#include "measuregraph/applications/spin.hpp"
#include "measuregraph/decomposition.hpp"
#include "measuregraph/errors.hpp"
#include "measuregraph/estimation.hpp"
#include "measuregraph/graph_generation.hpp"
#include "measuregraph/parallel.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace measuregraph::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

// "a:b:step" -> a, a + step, ... up to b (inclusive within round-off)
std::vector<double> parse_range(const std::string& text, const std::string& what) {
    std::vector<double> parts;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(what + " '" + text + "': not a number: '" + item + "'");
        }
    }
    if (parts.size() == 1) return parts;
    require(parts.size() == 3, what + " '" + text + "': expected start:stop:step");
    const double a = parts[0], b = parts[1], step = parts[2];
    require(step > 0.0 && b >= a, what + " '" + text + "': need step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    require(n <= 1000000, what + ": too many grid points");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + static_cast<double>(i) * step;
    return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(what + ": not a number: '" + item + "'");
        }
    }
    require(!out.empty(), what + ": empty list");
    return out;
}

struct SpecOptions {
    std::string file;
    std::string kappa;
    std::string nu = "leb";
    std::string transform;
    std::string weight = "identity";
    bool directed = false;
    bool loops = false;
    std::size_t order = 0;
};

void add_spec_options(CLI::App* cmd, SpecOptions& o) {
    cmd->add_option("--spec", o.file, "Model spec JSON file")->check(CLI::ExistingFile);
    cmd->add_option("--kappa", o.kappa, "Count law, e.g. poisson:30, dirac:10, binomial:20:0.5");
    cmd->add_option("--nu", o.nu, "Label law: leb, leb:2, uniform:10, zeta:2")->capture_default_str();
    cmd->add_option("--transform", o.transform,
                    "Edge transform <family>:<kernel>[:params], e.g. bernoulli:constant:0.3, poisson:power_law:1");
    cmd->add_option("--weight", o.weight, "Edge weight function: identity or indicator")
        ->check(CLI::IsMember({"identity", "indicator"}))
        ->capture_default_str();
    cmd->add_flag("--directed", o.directed, "Sample ordered pairs independently");
    cmd->add_flag("--loops", o.loops, "Allow self edges (kernel diagonal kept)");
    cmd->add_option("--order", o.order, "Quadrature order for label integrals");
}

ModelSpec build_spec(const SpecOptions& o) {
    if (!o.file.empty()) {
        ModelSpec s = ModelSpec::from_json(json::parse(read_file(o.file)));
        if (o.order > 0) s.quadrature_order = o.order;
        return s;
    }
    require(!o.kappa.empty() && !o.transform.empty(), "a model needs --spec FILE or both --kappa and --transform");
    ModelSpec s(StcMeasure{parse_counting(o.kappa), parse_label(o.nu)}, parse_transform(o.transform, !o.loops),
                o.weight == "indicator" ? WeightFunction::Indicator : WeightFunction::Identity, o.directed);
    if (o.order > 0) s.quadrature_order = o.order;
    return s;
}

void add_format(CLI::App* cmd, std::string& format, const std::string& fallback,
                const std::vector<std::string>& allowed) {
    format = fallback;
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(allowed))->capture_default_str();
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
    SpecOptions spec;
    std::uint64_t seed = 0;
    std::size_t reps = 1;
    std::string out;
    std::string format;
};

std::string render_graph(const LabeledGraph& g, const std::string& format) {
    return format == "edgelist" ? graph_to_edge_list(g) : graph_to_json(g).dump(2) + "\n";
}

std::string summary_line(const LabeledGraph& g) {
    return "seed=" + std::to_string(g.provenance.seed) + "\tvertices=" + std::to_string(g.size()) +
           "\tedges=" + num(g.edge_count()) + "\tweight=" + num(g.edge_weight()) + "\n";
}

void run_generate(const GenerateOptions& o) {
    const ModelSpec spec = build_spec(o.spec);
    require(o.reps >= 1, "generate: --reps must be positive");
    std::vector<LabeledGraph> graphs(o.reps);
    parallel_for(o.reps, [&](std::size_t r) { graphs[r] = generate(spec, o.seed + r); });
    const std::string ext = o.format == "edgelist" ? ".txt" : ".json";
    for (std::size_t r = 0; r < o.reps; ++r) {
        const LabeledGraph& g = graphs[r];
        if (o.out.empty()) {
            if (o.reps == 1) {
                write_text("-", render_graph(g, o.format));
                std::cerr << summary_line(g);
            } else {
                std::cout << summary_line(g);
            }
            continue;
        }
        std::string path = o.out;
        if (o.reps > 1) {
            const auto dot = path.rfind('.');
            const bool has_ext = dot != std::string::npos && path.find('/', dot) == std::string::npos;
            path = (has_ext ? path.substr(0, dot) : path) + "_" + std::to_string(r) + (has_ext ? path.substr(dot) : ext);
        }
        write_text(path, render_graph(g, o.format));
        std::cout << path << '\t' << summary_line(g);
    }
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    SpecOptions spec;
    std::uint64_t seed = 0;
    std::size_t reps = 10000;
    double threshold = 4.0;
    double z = 0.5;
    std::string format;
};

struct Check {
    std::string name;
    double analytic = 0.0;
    std::vector<double> samples;
    double mean = 0.0, stderr_ = 0.0, z = 0.0;
};

void finish(Check& c) {
    const double n = static_cast<double>(c.samples.size());
    double m = 0.0, ss = 0.0;
    for (double v : c.samples) m += v;
    m /= n;
    for (double v : c.samples) ss += (v - m) * (v - m);
    c.mean = m;
    c.stderr_ = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    const double diff = m - c.analytic;
    if (c.stderr_ > 0.0) c.z = diff / c.stderr_;
    else c.z = std::abs(diff) <= 1e-9 * std::max(1.0, std::abs(c.analytic)) ? 0.0 : std::numeric_limits<double>::infinity();
}

void run_verify(const VerifyOptions& o, int& status) {
    const ModelSpec spec = build_spec(o.spec);
    require(o.reps >= 2, "verify: need at least two replications");
    const AnalyticsReport report = edge_report(spec);
    std::vector<Check> checks;
    checks.push_back({"edge_count", report.edge_count.normalized, {}});
    checks.push_back({"edge_weight", report.edge_weight.normalized, {}});
    std::optional<std::size_t> degree_ix, active_ix, triangle_ix;
    std::vector<double> z_label;
    if (spec.is_stc()) {
        const double c = spec.stc().kappa.mean();
        try {
            const DegreeLaw law = degree_distribution(spec, Direction::Out, Perspective::Vertex);
            degree_ix = checks.size();
            checks.push_back({"degree_sum", c * law.mean, {}});
        } catch (const ValidationError& e) {
            std::cerr << "note: degree check skipped: " << e.what() << '\n';
        }
        if (report.mean_active_vertices) {
            active_ix = checks.size();
            checks.push_back({"active_vertices", *report.mean_active_vertices, {}});
        }
        z_label.assign(spec.label_dim(), o.z);
        try {
            const double t = triangle_mean(spec, LabelView(z_label));
            triangle_ix = checks.size();
            checks.push_back({"triangle", t, {}});
        } catch (const ValidationError& e) {
            std::cerr << "note: triangle check skipped: " << e.what() << '\n';
        }
    }
    for (Check& c : checks) c.samples.assign(o.reps, 0.0);
    parallel_for(o.reps, [&](std::size_t r) {
        const std::uint64_t seed = o.seed + r;
        const LabeledGraph g = generate(spec, seed);
        checks[0].samples[r] = g.edge_count();
        checks[1].samples[r] = g.edge_weight();
        if (degree_ix) {
            double s = 0.0;
            for (double d : g.out_degrees()) s += d;
            checks[*degree_ix].samples[r] = s;
        }
        if (active_ix) checks[*active_ix].samples[r] = static_cast<double>(g.active_vertices());
        if (triangle_ix) checks[*triangle_ix].samples[r] = sample_triangle_weight(spec, LabelView(z_label), seed);
    });
    bool failed = false;
    for (Check& c : checks) {
        finish(c);
        if (!(std::abs(c.z) <= o.threshold)) failed = true;
    }
    std::string text;
    if (o.format == "json") {
        json rows = json::array();
        for (const Check& c : checks)
            rows.push_back({{"quantity", c.name}, {"analytic", c.analytic}, {"mc_mean", c.mean},
                            {"mc_stderr", c.stderr_}, {"z", std::isfinite(c.z) ? json(c.z) : json(nullptr)}});
        text = json{{"reps", o.reps}, {"seed", o.seed}, {"threshold", o.threshold}, {"checks", rows},
                    {"passed", !failed}}
                   .dump(2) +
               "\n";
    } else {
        text = "quantity\tanalytic\tmc_mean\tmc_stderr\tz\n";
        for (const Check& c : checks)
            text += c.name + "\t" + num(c.analytic) + "\t" + num(c.mean) + "\t" + num(c.stderr_) + "\t" + num(c.z) + "\n";
    }
    write_text("-", text);
    if (failed) {
        std::cerr << "verify: at least one |z| exceeds " << num(o.threshold) << '\n';
        status = kCheckFailed;
    }
}

// ---------------------------------------------------------------- degree-dist

struct DegreeOptions {
    SpecOptions spec;
    std::size_t k_max = 0;
    std::string direction = "out";
    std::string perspective = "vertex";
    double tail_tol = 1e-9;
    std::string format;
    std::string out;
};

void run_degree(const DegreeOptions& o) {
    const ModelSpec spec = build_spec(o.spec);
    const DegreeLaw law = degree_distribution(spec, o.direction == "in" ? Direction::In : Direction::Out,
                                              o.perspective == "label" ? Perspective::Label : Perspective::Vertex);
    if (!law.pgf) throw ValidationError("degree-dist: degrees are not integer valued for this edge transform");
    const Coefficients c = pgf_coefficients(law.pgf, o.k_max, o.tail_tol);
    if (c.warning) std::cerr << "warning: " << *c.warning << '\n';
    std::string text;
    if (o.format == "json") {
        json j{{"k_max", o.k_max},   {"p", c.p},         {"mass", c.mass},       {"deficit", c.deficit},
               {"mean", law.mean},   {"variance", law.variance},             {"direction", o.direction},
               {"perspective", o.perspective}, {"model_hash", law.model_hash}};
        if (c.warning) j["warning"] = *c.warning;
        text = j.dump(2) + "\n";
    } else {
        text = "k\tprobability\n";
        for (std::size_t k = 0; k < c.p.size(); ++k) text += std::to_string(k) + "\t" + num(c.p[k]) + "\n";
    }
    write_text(o.out, text);
}

// ---------------------------------------------------------------- sobol / spectral

struct SobolOptions {
    SpecOptions spec;
    std::string format;
    std::string out;
};

void run_sobol(const SobolOptions& o) {
    const SobolDecomposition d = sobol(build_spec(o.spec));
    std::string text;
    if (o.format == "json") {
        text = sobol_to_json(d).dump(2) + "\n";
    } else {
        text = "w0\tvar_w1\tvar_w2\tvar_w12\tvar_w\ts1\ts2\ts12\teffective_dimension\n";
        text += num(d.w0) + "\t" + num(d.var_w1) + "\t" + num(d.var_w2) + "\t" + num(d.var_w12) + "\t" + num(d.var_w) +
                "\t" + opt_num(d.s1) + "\t" + opt_num(d.s2) + "\t" + opt_num(d.s12) + "\t" +
                num(d.effective_dimension) + "\n";
    }
    write_text(o.out, text);
}

struct SpectralOptions {
    SpecOptions spec;
    std::size_t rank = 5;
    std::string format;
    std::string out;
};

void run_spectral(const SpectralOptions& o) {
    const ModelSpec spec = build_spec(o.spec);
    require(spec.is_stc(), "spectral: requires a stone-throwing measure");
    const SpectralDecomposition d = spectral(mean_weight_kernel(spec), spec.stc().nu, o.rank, spec.quadrature_order);
    if (d.warning) std::cerr << "warning: " << *d.warning << '\n';
    std::string text;
    if (o.format == "json") {
        text = spectral_to_json(d).dump(2) + "\n";
    } else {
        text = "n\tsigma\n";
        for (std::size_t i = 0; i < d.sigma.size(); ++i) text += std::to_string(i + 1) + "\t" + num(d.sigma[i]) + "\n";
    }
    write_text(o.out, text);
}

// ---------------------------------------------------------------- primes

struct PrimesOptions {
    std::string nu = "zeta";
    std::string s_grid = "1.1:4:0.01";
    std::string n_grid = "1:100:1";
    std::string kappa;
    std::int64_t cutoff = 100000;
    bool maxima = false;
    std::string out;
};

void run_primes(const PrimesOptions& o) {
    std::string text;
    if (o.maxima) {
        const Maximum a = prime_density_max(), b = edge_density_max();
        text = "quantity\targmax_s\tvalue\n";
        text += "prime_density\t" + num(a.argmax) + "\t" + num(a.value) + "\n";
        text += "edge_density\t" + num(b.argmax) + "\t" + num(b.value) + "\n";
        write_text(o.out, text);
        return;
    }
    const bool zeta = o.nu == "zeta";
    const bool full = !o.kappa.empty();
    const CountingDistribution kappa = full ? parse_counting(o.kappa) : CountingDistribution::poisson(1.0);
    const std::vector<double> grid = parse_range(zeta ? o.s_grid : o.n_grid, zeta ? "--s-grid" : "--n-grid");
    std::vector<std::string> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double g = grid[i];
        std::string row;
        if (zeta) {
            require(g > 1.0, "primes: s must exceed 1");
            const PrimeGraphModel m = PrimeGraphModel::zeta(g, kappa);
            row = num(g);
            if (full) {
                const PrimeAnalytics a = prime_analytics(m, o.cutoff);
                row += "\t" + num(a.prime_density) + "\t" + num(a.edge_density) + "\t" + num(a.gc_threshold) + "\t" +
                       num(a.mean_degree) + "\t" + num(a.mean_active_vertices) + "\t" + num(a.active_tail_bound);
            } else {
                row += "\t" + num(prime_density_zeta(g)) + "\t" + num(edge_density_zeta(g)) + "\t" +
                       num(gc_threshold_zeta(g));
            }
        } else {
            const auto n = static_cast<std::int64_t>(std::llround(g));
            require(n >= 1, "primes: n must be at least 1");
            const PrimeAnalytics a = prime_analytics(PrimeGraphModel::uniform(n, kappa), o.cutoff);
            row = std::to_string(n) + "\t" + num(a.prime_density) + "\t" + num(a.edge_density) + "\t" +
                  num(a.gc_threshold);
            if (full) row += "\t" + num(a.mean_degree) + "\t" + num(a.mean_active_vertices) + "\t" + num(a.active_tail_bound);
        }
        rows[i] = row + "\n";
    });
    text = std::string(zeta ? "s" : "n") + "\tprime_density\tedge_density\tgc_threshold";
    if (full) text += "\tmean_degree\tmean_active_vertices\tactive_tail_bound";
    text += "\n";
    for (const auto& r : rows) text += r;
    write_text(o.out, text);
}

// ---------------------------------------------------------------- spin

struct SpinOptions {
    std::size_t sites = 0;
    std::string spin = "bernoulli:0.5";
    double coupling = 1.0;
    std::int64_t radius = 1;
    bool self = false;
    std::optional<double> field;
    std::string beta_grid = "0:2:0.5";
    std::size_t mc = 0;
    std::uint64_t seed = 0;
    std::size_t budget = kSpinStateBudget;
    std::string format;
    std::string out;
};

void run_spin(const SpinOptions& o, bool seeded) {
    require(o.sites >= 1, "spin: --sites must be positive");
    require(o.mc == 0 || seeded, "spin: --mc needs --seed");
    SpinNetwork net;
    net.spins.assign(o.sites, parse_counting(o.spin));
    const double j = o.coupling;
    net.interaction = [j](std::int64_t, std::int64_t) { return j; };
    net.radius = o.radius;
    net.include_self = o.self;
    if (o.field) net.field.assign(o.sites, *o.field);
    const std::vector<double> betas = parse_range(o.beta_grid, "--beta-grid");
    const std::vector<double> zg = spin_partition(net, betas, PartitionPath::Gibbs, o.budget);
    const std::vector<double> zl = spin_partition(net, betas, PartitionPath::Laplace, o.budget);
    std::vector<McEstimate> mc;
    for (std::size_t i = 0; o.mc > 0 && i < betas.size(); ++i)
        mc.push_back(spin_laplace_mc(net, betas[i], o.mc, derive_seed(o.seed, i)));
    const double mean_energy = spin_mean_energy(net);
    std::string text;
    if (o.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < betas.size(); ++i) {
            json r{{"beta", betas[i]}, {"partition_gibbs", zg[i]}, {"partition_laplace", zl[i]}};
            if (!mc.empty()) {
                r["mc_mean"] = mc[i].mean;
                r["mc_stderr"] = mc[i].stderr_;
            }
            rows.push_back(r);
        }
        text = json{{"sites", o.sites}, {"spin", o.spin}, {"coupling", o.coupling}, {"radius", o.radius},
                    {"include_self", o.self}, {"mean_energy", mean_energy}, {"rows", rows}}
                   .dump(2) +
               "\n";
    } else {
        text = "# mean_energy\t" + num(mean_energy) + "\n";
        text += "beta\tpartition_gibbs\tpartition_laplace";
        if (!mc.empty()) text += "\tmc_mean\tmc_stderr\tz";
        text += "\n";
        for (std::size_t i = 0; i < betas.size(); ++i) {
            text += num(betas[i]) + "\t" + num(zg[i]) + "\t" + num(zl[i]);
            if (!mc.empty()) {
                const double z = mc[i].stderr_ > 0.0 ? (mc[i].mean - zg[i]) / mc[i].stderr_ : 0.0;
                text += "\t" + num(mc[i].mean) + "\t" + num(mc[i].stderr_) + "\t" + num(z);
            }
            text += "\n";
        }
    }
    write_text(o.out, text);
}

// ---------------------------------------------------------------- estimate

struct EstimateOptions {
    std::vector<std::string> csv;
    std::vector<std::string> graph_json;
    bool simulate = false;
    std::string kappa = "poisson:30";
    std::string truth = "power_law:1";
    std::size_t count = 5;
    std::uint64_t seed = 0;
    std::size_t m = 3;
    std::size_t iterations = 500;
    double sigma = 0.01;
    bool full = false;
    std::string hint = "none";
    bool monotone = false;
    std::size_t grid = 21;
    std::string trace;
    std::string out;
};

void run_estimate(const EstimateOptions& o) {
    std::vector<Eigen::MatrixXd> mats;
    std::optional<Kernel> truth;
    if (o.simulate) {
        require(o.csv.empty() && o.graph_json.empty(), "estimate: --simulate excludes --graphs and --graph-json");
        require(o.count >= 1, "estimate: --count must be positive");
        const RandomTransform t = parse_transform("bernoulli:" + o.truth);
        truth = *t.kernel();
        const ModelSpec spec(StcMeasure{parse_counting(o.kappa), LabelDistribution::lebesgue()}, t);
        for (std::size_t i = 0; i < o.count; ++i) mats.push_back(generate(spec, derive_seed(o.seed, 8, i)).adjacency);
    } else {
        for (const auto& path : o.csv)
            for (auto& m : read_adjacency_csv(read_file(path))) mats.push_back(std::move(m));
        for (const auto& path : o.graph_json) mats.push_back(graph_from_json(json::parse(read_file(path))).adjacency);
    }
    require(!mats.empty(), "estimate: no graphs; use --graphs, --graph-json or --simulate");
    const ObservedGraphSet obs(std::move(mats));
    MhConfig cfg;
    cfg.m = o.m;
    cfg.iterations = o.iterations;
    cfg.sigma = o.sigma;
    cfg.separable = !o.full;
    cfg.hint = parse_hint(o.hint);
    cfg.monotone = o.monotone;
    const MhResult r = mh_estimate(obs, cfg, o.seed);
    if (r.symmetry.ambiguous)
        std::cerr << "warning: reflection ambiguity unresolved; f(x,y) and f(1-x,1-y) fit equally well\n";

    json grid_x = json::array(), grid_f = json::array();
    const std::size_t g = std::max<std::size_t>(o.grid, 2);
    for (std::size_t i = 0; i < g; ++i) grid_x.push_back(static_cast<double>(i) / static_cast<double>(g - 1));
    for (std::size_t i = 0; i < g; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < g; ++k)
            row.push_back(r.theta_hat(static_cast<double>(i) / static_cast<double>(g - 1),
                                      static_cast<double>(k) / static_cast<double>(g - 1)));
        grid_f.push_back(row);
    }
    json j{{"graphs", obs.size()},
           {"vertex_counts", obs.vertex_counts},
           {"counting",
            {{"c", r.counting.c},
             {"variance", r.counting.variance},
             {"kind", to_string(r.counting.kind)},
             {"dispersion", r.counting.dispersion},
             {"degenerate", r.counting.degenerate},
             {"dirac", r.counting.dirac},
             {"law", r.counting.law.name()}}},
           {"mean_degree", obs.mean_degree()},
           {"beta11", r.beta11},
           {"hint", o.hint},
           {"theta_hat", param_to_json(r.theta_hat)},
           {"raw", param_to_json(r.raw)},
           {"ambiguous", r.symmetry.ambiguous},
           {"best_iteration", r.trace.best},
           {"best_loglik", r.trace.loglik.at(r.trace.best)},
           {"grid", {{"x", grid_x}, {"f", grid_f}}}};
    if (truth) {
        const Kernel k = *truth;
        auto tf = [k](double x, double y) {
            return k.base(LabelView(&x, 1), LabelView(&y, 1));
        };
        auto ff = [&r](double x, double y) { return r.theta_hat(x, y); };
        j["truth"] = o.truth;
        j["relative_l1_error"] = relative_l1_error(ff, tf);
        j["relative_l2_error"] = relative_l2_error(ff, tf);
    }
    if (!o.trace.empty()) {
        std::string t = "iteration\tloglik\taccepted";
        const std::size_t width = r.trace.iterates.empty() ? 0 : r.trace.iterates.front().size();
        for (std::size_t k = 0; k < width; ++k) t += "\tparam" + std::to_string(k + 1);
        t += "\n";
        for (std::size_t i = 0; i < r.trace.loglik.size(); ++i) {
            t += std::to_string(i) + "\t" + num(r.trace.loglik[i]) + "\t" +
                 std::to_string(i < r.trace.accepted.size() ? static_cast<int>(r.trace.accepted[i]) : 0);
            for (double v : r.trace.iterates[i]) t += "\t" + num(v);
            t += "\n";
        }
        write_text(o.trace, t);
    }
    write_text(o.out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- bn

struct BnOptions {
    std::string data;
    std::size_t q = 2, r = 2;
    std::size_t iterations = 500;
    std::size_t rewire_n = 1;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::string out;
};

json edge_list(const LabeledGraph& g) {
    json e = json::array();
    for (Eigen::Index i = 0; i < g.adjacency.rows(); ++i)
        for (Eigen::Index k = 0; k < g.adjacency.cols(); ++k)
            if (g.adjacency(i, k) != 0.0) e.push_back({i, k});
    return e;
}

void run_bn(const BnOptions& o) {
    const Eigen::MatrixXd data = read_bn_csv(read_file(o.data));
    const ModelSpec spec(StcMeasure{CountingDistribution::dirac(data.cols()), LabelDistribution::lebesgue()},
                         RandomTransform::bernoulli(Kernel::constant(o.p)));
    BnMhConfig cfg;
    cfg.iterations = o.iterations;
    cfg.rewire_n = o.rewire_n;
    cfg.q = o.q;
    cfg.r = o.r;
    const BnMhResult res = bn_mh_infer(spec, data, cfg, o.seed);
    std::size_t accepted = 0;
    for (char a : res.accepted) accepted += a ? 1 : 0;
    const Eigen::MatrixXd best = (res.best.adjacency.array() != 0.0).cast<double>();
    const BayesNet net = bn_build_kernels(best, data, o.q, o.r);
    for (const auto& w : net.warnings) std::cerr << "warning: " << w << '\n';
    const json j{{"samples", data.rows()},
                 {"variables", data.cols()},
                 {"initial", {{"edges", edge_list(res.initial)}, {"loglik", res.loglik.front()}}},
                 {"best", {{"edges", edge_list(res.best)}, {"loglik", res.best_loglik}}},
                 {"acceptance_rate", res.accepted.empty() ? 0.0
                                                          : static_cast<double>(accepted) /
                                                                static_cast<double>(res.accepted.size())},
                 {"trace", res.loglik},
                 {"network", bn_to_json(net)}};
    write_text(o.out, j.dump(2) + "\n");
}

// ---------------------------------------------------------------- nn

struct NnOptions {
    std::size_t layers = 0;
    std::string nu;
    std::string p = "0.5";
    std::string kappa = "poisson:10";
    std::uint64_t seed = 0;
    std::string out;
};

void run_nn(const NnOptions& o) {
    NnConfig cfg;
    cfg.layers = o.layers;
    if (!o.nu.empty()) cfg.nu = parse_list(o.nu, "--layer-probs");
    cfg.p = parse_list(o.p, "--p");
    cfg.kappa = parse_counting(o.kappa);
    write_text(o.out, nn_to_json(nn_wire(cfg, o.seed)).dump(2) + "\n");
}

} // namespace

void register_commands(CLI::App& app, int& status) {
    {
        auto o = std::make_shared<GenerateOptions>();
        auto* cmd = app.add_subcommand("generate", "Sample graphs from a model");
        add_spec_options(cmd, o->spec);
        cmd->add_option("--seed", o->seed, "Base seed; replication i uses seed + i")->required();
        cmd->add_option("--reps", o->reps, "Number of graphs")->capture_default_str();
        cmd->add_option("--out", o->out, "Output file; with --reps > 1 a suffix _i is added");
        add_format(cmd, o->format, "json", {"json", "edgelist"});
        cmd->callback([o] { run_generate(*o); });
    }
    {
        auto o = std::make_shared<VerifyOptions>();
        auto* cmd = app.add_subcommand("verify", "Compare closed-form means with Monte Carlo replications");
        add_spec_options(cmd, o->spec);
        cmd->add_option("--seed", o->seed, "Base seed; replication i uses seed + i")->required();
        cmd->add_option("--reps", o->reps, "Replications")->capture_default_str();
        cmd->add_option("--threshold", o->threshold, "Largest accepted |z|")->capture_default_str();
        cmd->add_option("--z", o->z, "Label coordinate of the extra triangle vertex")->capture_default_str();
        add_format(cmd, o->format, "tsv", {"tsv", "json"});
        cmd->callback([o, &status] { run_verify(*o, status); });
    }
    {
        auto o = std::make_shared<DegreeOptions>();
        auto* cmd = app.add_subcommand("degree-dist", "Degree distribution coefficients P(Y = k)");
        add_spec_options(cmd, o->spec);
        cmd->add_option("--kmax", o->k_max, "Largest degree")->required();
        cmd->add_option("--direction", o->direction, "out or in")
            ->check(CLI::IsMember({"out", "in"}))
            ->capture_default_str();
        cmd->add_option("--perspective", o->perspective, "vertex (realized vertex) or label (fixed label)")
            ->check(CLI::IsMember({"vertex", "label"}))
            ->capture_default_str();
        cmd->add_option("--tail-tol", o->tail_tol, "Warn when the mass deficit exceeds this")->capture_default_str();
        add_format(cmd, o->format, "tsv", {"tsv", "json"});
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_degree(*o); });
    }
    {
        auto o = std::make_shared<SobolOptions>();
        auto* cmd = app.add_subcommand("sobol", "Functional ANOVA of the mean edge weight");
        add_spec_options(cmd, o->spec);
        add_format(cmd, o->format, "tsv", {"tsv", "json"});
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_sobol(*o); });
    }
    {
        auto o = std::make_shared<SpectralOptions>();
        auto* cmd = app.add_subcommand("spectral", "Singular value decomposition of the mean edge weight operator");
        add_spec_options(cmd, o->spec);
        cmd->add_option("--rank", o->rank, "Number of singular triples")->capture_default_str();
        add_format(cmd, o->format, "tsv", {"tsv", "json"});
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_spectral(*o); });
    }
    {
        auto o = std::make_shared<PrimesOptions>();
        auto* cmd = app.add_subcommand("primes", "Prime graph densities and thresholds");
        cmd->add_option("--nu", o->nu, "zeta or uniform labels")
            ->check(CLI::IsMember({"zeta", "uniform"}))
            ->capture_default_str();
        cmd->add_option("--s-grid", o->s_grid, "start:stop:step for zeta labels")->capture_default_str();
        cmd->add_option("--n-grid", o->n_grid, "start:stop:step for uniform labels")->capture_default_str();
        cmd->add_option("--kappa", o->kappa, "Count law; adds degree and active-vertex columns");
        cmd->add_option("--prime-cutoff", o->cutoff, "Largest prime summed for active vertices")->capture_default_str();
        cmd->add_flag("--maxima", o->maxima, "Print the maxima of the densities over s");
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_primes(*o); });
    }
    {
        auto o = std::make_shared<SpinOptions>();
        auto* cmd = app.add_subcommand("spin", "Partition function of a lattice spin network");
        cmd->add_option("--sites", o->sites, "Lattice size")->required();
        cmd->add_option("--spin", o->spin, "Spin law at every site, e.g. bernoulli:0.5, binomial:2:0.5")
            ->capture_default_str();
        cmd->add_option("--coupling", o->coupling, "Constant interaction f(x, y)")->capture_default_str();
        cmd->add_option("--radius", o->radius, "Interaction radius")->capture_default_str();
        cmd->add_flag("--self", o->self, "Include the self interaction x = y");
        cmd->add_option("--field", o->field, "Constant external interaction k");
        cmd->add_option("--beta-grid", o->beta_grid, "start:stop:step")->capture_default_str();
        cmd->add_option("--mc", o->mc, "Monte Carlo samples per beta (0 to skip)")->capture_default_str();
        auto* seed = cmd->add_option("--seed", o->seed, "Seed for the Monte Carlo estimate");
        cmd->add_option("--budget", o->budget, "Largest enumerated state count")->capture_default_str();
        add_format(cmd, o->format, "tsv", {"tsv", "json"});
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o, seed] { run_spin(*o, seed->count() > 0); });
    }
    {
        auto o = std::make_shared<EstimateOptions>();
        auto* cmd = app.add_subcommand("estimate", "Graphon estimation from unlabelled adjacency matrices");
        cmd->add_option("--graphs", o->csv, "Adjacency CSV files; blank lines separate graphs")
            ->check(CLI::ExistingFile);
        cmd->add_option("--graph-json", o->graph_json, "Graph JSON files from generate")->check(CLI::ExistingFile);
        cmd->add_flag("--simulate", o->simulate, "Sample the observed graphs from --kappa and --truth");
        cmd->add_option("--kappa", o->kappa, "Count law for --simulate")->capture_default_str();
        cmd->add_option("--truth", o->truth, "Kernel for --simulate, e.g. power_law:1")->capture_default_str();
        cmd->add_option("--count", o->count, "Graphs for --simulate")->capture_default_str();
        cmd->add_option("--seed", o->seed, "Seed for the sampler and the chain")->required();
        cmd->add_option("--m", o->m, "Legendre basis size")->capture_default_str();
        cmd->add_option("--iterations", o->iterations, "Metropolis-Hastings steps")->capture_default_str();
        cmd->add_option("--sigma", o->sigma, "Proposal standard deviation")->capture_default_str();
        cmd->add_flag("--full", o->full, "Fit the full symmetric coefficient matrix instead of a product");
        cmd->add_option("--hint", o->hint, "Monotonicity of the graphon: increasing, decreasing or none")
            ->check(CLI::IsMember({"increasing", "decreasing", "none"}))
            ->capture_default_str();
        cmd->add_flag("--monotone", o->monotone, "Reject proposals whose graphon is not monotone in x");
        cmd->add_option("--grid", o->grid, "Points per axis of the fitted graphon table")->capture_default_str();
        cmd->add_option("--trace", o->trace, "Write the chain as TSV to this file");
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_estimate(*o); });
    }
    {
        auto o = std::make_shared<BnOptions>();
        auto* cmd = app.add_subcommand("bn", "Bayesian network structure search over random DAGs");
        cmd->add_option("--data", o->data, "CSV, rows = samples, columns = variables")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--q", o->q, "Quantile bins per parent")->capture_default_str();
        cmd->add_option("--r", o->r, "Quantile bins per variable")->capture_default_str();
        cmd->add_option("--iterations", o->iterations, "Metropolis-Hastings steps")->capture_default_str();
        cmd->add_option("--rewire-n", o->rewire_n, "Vertices resampled per proposal")->capture_default_str();
        cmd->add_option("--p", o->p, "Prior edge probability between ordered labels")->capture_default_str();
        cmd->add_option("--seed", o->seed, "Seed")->required();
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_bn(*o); });
    }
    {
        auto o = std::make_shared<NnOptions>();
        auto* cmd = app.add_subcommand("nn", "Random feed-forward wiring between hidden layers");
        cmd->add_option("--layers", o->layers, "Hidden layer count")->required();
        cmd->add_option("--layer-probs", o->nu, "Comma separated layer probabilities (default uniform)");
        cmd->add_option("--p", o->p, "Connection probability, one value or one per consecutive pair")
            ->capture_default_str();
        cmd->add_option("--kappa", o->kappa, "Neuron count law")->capture_default_str();
        cmd->add_option("--seed", o->seed, "Seed")->required();
        cmd->add_option("--out", o->out, "Output file (default stdout)");
        cmd->callback([o] { run_nn(*o); });
    }
}

} // namespace measuregraph::cli
