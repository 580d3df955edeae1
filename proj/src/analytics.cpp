#include "measuregraph/analytics.hpp"

#include "measuregraph/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <memory>

namespace measuregraph {

using nlohmann::json;

namespace {

constexpr std::size_t kPairAtoms = 512;     // atom cap when every pair law is kept
constexpr std::size_t kLinearAtoms = 4096;  // atom cap when only per-row moments are kept

StateSet direction_set(Direction d) { return d == Direction::Out ? StateSet::out_edges() : StateSet::in_edges(); }

EdgeLaw directed_law(const ModelSpec& spec, LabelView x, LabelView y, Direction d, Site site) {
    const RandomTransform& t = spec.transform();
    if (t.pair_states() || d == Direction::Out) return t.law(x, y, site);
    return t.law(y, x, site);
}

// counted value is {0,1}-valued, so h_x(t) = 1 - m1 + m1 t
bool linear_counts(const ModelSpec& spec) {
    const RandomTransform& t = spec.transform();
    return t.pair_states() || spec.weight() == WeightFunction::Indicator ||
           std::holds_alternative<RandomTransform::Bernoulli>(t.kind());
}

bool has_pgf(const ModelSpec& spec) {
    return spec.transform().integer_valued() || spec.weight() == WeightFunction::Indicator;
}

const StcMeasure& require_stc(const ModelSpec& spec, const char* what) {
    if (!spec.is_stc()) throw ValidationError(std::string(what) + ": requires a stone-throwing measure");
    return spec.stc();
}

struct Row {
    EdgeLaw self;
    std::vector<EdgeLaw> pairs;   // kept only for non-linear counts
    double m1 = 0.0, m2 = 0.0;    // inner moments over nu of the counted value
};

struct RowContext {
    const ModelSpec& spec;
    const QuadratureRule& rule;
    Direction direction;
    StateSet set;
    WeightFunction g;
    Site pair_site;
    bool linear;
};

Row make_row(const RowContext& ctx, LabelView x) {
    Row r;
    r.self = ctx.spec.transform().law(x, x, Site::Self);
    if (!ctx.linear) r.pairs.reserve(ctx.rule.size());
    for (std::size_t j = 0; j < ctx.rule.size(); ++j) {
        EdgeLaw l = directed_law(ctx.spec, x, ctx.rule.node(j), ctx.direction, ctx.pair_site);
        r.m1 += ctx.rule.weights[j] * l.mean(ctx.g, ctx.set);
        r.m2 += ctx.rule.weights[j] * l.second(ctx.g, ctx.set);
        if (!ctx.linear) r.pairs.push_back(l);
    }
    return r;
}

struct RowMoments {
    double mean, variance;
};

RowMoments row_moments(const Row& r, const CountingDistribution& kappa, Perspective p, WeightFunction g,
                       StateSet set) {
    const double c = kappa.mean();
    const double m1 = r.m1, m2 = r.m2;
    if (p == Perspective::Label) return {c * m1, c * (m2 - m1 * m1) + kappa.variance() * m1 * m1};
    require(c > 0.0, "degree: vertex perspective needs a positive mean vertex count");
    const double mu = kappa.factorial_moment(2) / c;           // E[K-1] under size bias
    const double mu2 = kappa.factorial_moment(3) / c;          // E[(K-1)(K-2)] under size bias
    const double s1 = r.self.mean(g, set), s2 = r.self.second(g, set);
    const double others_var = mu * (m2 - m1 * m1) + (mu2 + mu - mu * mu) * m1 * m1;
    return {s1 + mu * m1, std::max(0.0, s2 - s1 * s1) + std::max(0.0, others_var)};
}

// Per-node rows plus everything a pgf closure needs to outlive the call.
struct RowTable {
    QuadratureRule rule;
    CountingDistribution kappa;
    WeightFunction g;
    StateSet set;
    bool linear;
    std::vector<Row> rows;
};

cplx row_pgf(const RowTable& tb, const Row& r, Perspective p, cplx t) {
    cplx h;
    if (tb.linear) {
        h = 1.0 - r.m1 + r.m1 * t;
    } else {
        h = 0.0;
        for (std::size_t j = 0; j < r.pairs.size(); ++j) h += tb.rule.weights[j] * r.pairs[j].pgf(t, tb.g, tb.set);
    }
    if (p == Perspective::Label) return tb.kappa.pgf(h);
    return r.self.pgf(t, tb.g, tb.set) * tb.kappa.pgf_derivative(h, 1) / tb.kappa.mean();
}

} // namespace

DegreeStats degree_stats(const ModelSpec& spec, LabelView x, Direction direction, Perspective perspective) {
    const StcMeasure& m = require_stc(spec, "degree_stats");
    require(x.size() == m.nu.dim(), "degree_stats: label dimension differs from the spec");
    auto table = std::make_shared<RowTable>(RowTable{
        m.nu.rule(spec.quadrature_order, 1e-12, linear_counts(spec) ? kLinearAtoms : kPairAtoms), m.kappa,
        spec.weight(), direction_set(direction), linear_counts(spec), {}});
    RowContext ctx{spec, table->rule, direction, table->set, table->g,
                   table->rule.atomic ? Site::Pair : Site::PairBase, table->linear};
    table->rows.push_back(make_row(ctx, x));
    RowMoments mom = row_moments(table->rows[0], m.kappa, perspective, spec.weight(), table->set);
    DegreeStats out{mom.mean, mom.variance, {}};
    if (has_pgf(spec))
        out.pgf = [table, perspective](cplx t) { return row_pgf(*table, table->rows[0], perspective, t); };
    return out;
}

DegreeLaw degree_distribution(const ModelSpec& spec, Direction direction, Perspective perspective) {
    const StcMeasure& m = require_stc(spec, "degree_distribution");
    auto table = std::make_shared<RowTable>(RowTable{
        m.nu.rule(spec.quadrature_order, 1e-12, linear_counts(spec) ? kLinearAtoms : kPairAtoms), m.kappa,
        spec.weight(), direction_set(direction), linear_counts(spec), {}});
    RowContext ctx{spec, table->rule, direction, table->set, table->g,
                   table->rule.atomic ? Site::Pair : Site::PairBase, table->linear};
    DegreeLaw out;
    out.direction = direction;
    out.perspective = perspective;
    out.model_hash = spec.hash();
    double ey = 0.0, ey2 = 0.0;
    table->rows.reserve(table->rule.size());
    for (std::size_t i = 0; i < table->rule.size(); ++i) {
        table->rows.push_back(make_row(ctx, table->rule.node(i)));
        RowMoments mom = row_moments(table->rows.back(), m.kappa, perspective, spec.weight(), table->set);
        ey += table->rule.weights[i] * mom.mean;
        ey2 += table->rule.weights[i] * (mom.variance + mom.mean * mom.mean);
    }
    out.mean = ey;
    out.second_moment = ey2;
    out.variance = std::max(0.0, ey2 - ey * ey);
    if (has_pgf(spec)) {
        out.pgf = [table, perspective](cplx t) {
            cplx total = 0.0;
            for (std::size_t i = 0; i < table->rows.size(); ++i)
                total += table->rule.weights[i] * row_pgf(*table, table->rows[i], perspective, t);
            return total;
        };
    }
    return out;
}

Coefficients pgf_coefficients(const PgfFn& pgf, std::size_t k_max, double tail_tol) {
    require(static_cast<bool>(pgf), "pgf_coefficients: no pgf (edge values are not integer)");
    std::size_t m = 256;
    while (m < 4 * k_max) m *= 2;
    std::vector<std::complex<double>> samples(m), spectrum;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t j = 0; j < m; ++j) samples[j] = pgf(std::polar(1.0, two_pi * static_cast<double>(j) / m));
    Eigen::FFT<double> fft;
    fft.fwd(spectrum, samples);
    Coefficients out;
    out.p.resize(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        out.p[k] = std::clamp(spectrum[k].real() / static_cast<double>(m), 0.0, 1.0);
        out.mass += out.p[k];
    }
    out.deficit = std::max(0.0, 1.0 - out.mass);
    if (out.mass < 1.0 - tail_tol)
        out.warning = "truncation: mass " + std::to_string(out.deficit) + " beyond k_max = " + std::to_string(k_max);
    return out;
}

namespace {

EdgeTotals totals_from(const ProductMean& pm, bool directed) {
    return {pm.diagonal, pm.off_diagonal, pm.total, directed ? pm.total : pm.normalized};
}

} // namespace

AnalyticsReport edge_report(const ModelSpec& spec) {
    const RandomTransform& t = spec.transform();
    const WeightFunction g = spec.weight();
    const StateSet set = StateSet::out_edges();
    PairFn count = [&](LabelView x, LabelView y, Site s) { return t.law(x, y, s).active(set); };
    PairFn weight = [&](LabelView x, LabelView y, Site s) { return t.law(x, y, s).mean(g, set); };
    AnalyticsReport r;
    if (spec.is_stc()) {
        r.edge_count = totals_from(product_mean(spec.stc(), count, spec.quadrature_order), spec.directed());
        r.edge_weight = totals_from(product_mean(spec.stc(), weight, spec.quadrature_order), spec.directed());
        if (!spec.directed() && has_pgf(spec)) r.giant_component = giant_component(spec);
        r.mean_active_vertices = mean_active_vertices(spec);
    } else {
        r.edge_count = totals_from(faiw_product_mean(spec.faiw(), count), spec.directed());
        r.edge_weight = totals_from(faiw_product_mean(spec.faiw(), weight), spec.directed());
    }
    return r;
}

json report_to_json(const AnalyticsReport& r) {
    auto totals = [](const EdgeTotals& e) {
        return json{{"self", e.self}, {"external", e.external}, {"total", e.total}, {"normalized", e.normalized}};
    };
    json j{{"edge_count", totals(r.edge_count)}, {"edge_weight", totals(r.edge_weight)}};
    j["giant_component"] = r.giant_component
                               ? json{{"verdict", r.giant_component->verdict}, {"margin", r.giant_component->margin}}
                               : json(nullptr);
    j["mean_active_vertices"] = r.mean_active_vertices ? json(*r.mean_active_vertices) : json(nullptr);
    return j;
}

GiantComponent giant_component(const ModelSpec& spec) {
    require(!spec.directed(), "giant_component: requires an undirected spec");
    DegreeLaw law = degree_distribution(spec, Direction::Out, Perspective::Label);
    GiantComponent gc;
    gc.margin = law.second_moment - 2.0 * law.mean;
    gc.verdict = gc.margin > 0.0;
    return gc;
}

double gc_threshold(const std::function<double(double)>& margin, double lo, double hi, double tol) {
    require(lo < hi, "gc_threshold: empty interval");
    double flo = margin(lo), fhi = margin(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("gc_threshold: margin does not change sign on the interval");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = margin(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double mean_active_vertices(const ModelSpec& spec) {
    const StcMeasure& m = require_stc(spec, "mean_active_vertices");
    const RandomTransform& t = spec.transform();
    const QuadratureRule rule = m.nu.rule(spec.quadrature_order, 1e-12, kLinearAtoms);
    const Site site = rule.atomic ? Site::Pair : Site::PairBase;
    const StateSet out = StateSet::out_edges();
    // per node c - P(no edge) psi'(1 - b), so a kernel without edges gives exactly zero
    const double c = m.kappa.mean();
    double active = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        LabelView x = rule.node(i);
        double b = 0.0;   // probability that a further point at Y ~ nu is joined to x in some direction
        for (std::size_t j = 0; j < rule.size(); ++j) {
            LabelView y = rule.node(j);
            double quiet;
            if (t.pair_states()) quiet = t.law(x, y, site).q[0];
            else if (spec.directed()) quiet = (1.0 - t.law(x, y, site).active(out)) * (1.0 - t.law(y, x, site).active(out));
            else quiet = 1.0 - t.law(x, y, site).active(out);
            b += rule.weights[j] * (1.0 - quiet);
        }
        const double self_quiet = 1.0 - t.law(x, x, Site::Self).active(out);
        active += rule.weights[i] * (c - self_quiet * m.kappa.pgf_derivative(cplx(1.0 - b, 0.0), 1).real());
    }
    return active;
}

double triangle_mean(const ModelSpec& spec, LabelView z) {
    const StcMeasure& m = require_stc(spec, "triangle_mean");
    require(z.size() == m.nu.dim(), "triangle_mean: label dimension differs from the spec");
    const RandomTransform& t = spec.transform();
    const WeightFunction g = spec.weight();
    const QuadratureRule rule = m.nu.rule(spec.quadrature_order, 1e-12, kPairAtoms);
    const Site site = rule.atomic ? Site::Pair : Site::PairBase;
    const StateSet out = StateSet::out_edges();
    const std::size_t n = rule.size();
    std::vector<double> to_z(n), from_z(n);
    for (std::size_t i = 0; i < n; ++i) {
        to_z[i] = t.law(rule.node(i), z, Site::Pair).mean(g, out);
        from_z[i] = t.law(z, rule.node(i), Site::Pair).mean(g, out);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (from_z[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += rule.weights[j] * t.law(rule.node(i), rule.node(j), site).mean(g, out) * to_z[j];
        total += rule.weights[i] * from_z[i] * row;
    }
    return m.kappa.factorial_moment(2) * total;
}

} // namespace measuregraph
