#include "measuregraph/random_measures.hpp"

#include "measuregraph/errors.hpp"

#include <algorithm>
#include <set>

namespace measuregraph {

FaiwMeasure::FaiwMeasure(std::vector<double> atoms_, std::vector<CountingDistribution> weights_, std::size_t dim_)
    : atoms(std::move(atoms_)), dim(dim_), weights(std::move(weights_)) {
    require(dim >= 1, "faiw: dimension must be positive");
    require(atoms.size() == weights.size() * dim, "faiw: one weight law per atom");
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        std::vector<double> a(atoms.begin() + i * dim, atoms.begin() + (i + 1) * dim);
        require(seen.insert(a).second, "faiw: atoms must be distinct");
    }
}

PointRealization sample_stc(const StcMeasure& m, std::uint64_t seed) {
    Rng count_rng(derive_seed(seed, 0));
    const std::int64_t k = m.kappa.sample(count_rng);
    PointRealization out;
    out.dim = m.nu.dim();
    out.seed = seed;
    out.labels.resize(static_cast<std::size_t>(k) * out.dim);
    Rng label_rng(derive_seed(seed, 1));
    for (std::int64_t i = 0; i < k; ++i)
        m.nu.sample(label_rng, std::span<double>(out.labels.data() + i * out.dim, out.dim));
    return out;
}

PointRealization sample_faiw(const FaiwMeasure& m, std::uint64_t seed) {
    PointRealization out;
    out.dim = m.dim;
    out.seed = seed;
    out.labels = m.atoms;
    out.weights.resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Rng rng(derive_seed(seed, 2, i));
        out.weights[i] = static_cast<double>(m.weights[i].sample(rng));
    }
    return out;
}

IntegralStats stc_integral_stats(const StcMeasure& m, const LabelFn& f, const LabelFn& g, std::size_t order) {
    const QuadratureRule rule = m.nu.rule(order);
    double nf = 0, ng = 0, nf2 = 0, nfg = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double fv = f(rule.node(i)), gv = g(rule.node(i)), w = rule.weights[i];
        nf += w * fv;
        ng += w * gv;
        nf2 += w * fv * fv;
        nfg += w * fv * gv;
    }
    const double c = m.kappa.mean(), d2 = m.kappa.variance();
    return {c * nf, c * nf2 + (d2 - c) * nf * nf, c * nfg + (d2 - c) * nf * ng};
}

Trace trace(const StcMeasure& m, double a) {
    require(a > 0.0 && a <= 1.0 + 1e-12, "trace: nu(A) must lie in (0,1]");
    a = std::min(a, 1.0);
    Trace t;
    t.a = a;
    CountingDistribution kappa = m.kappa;
    t.pgf = [kappa, a](cplx s) { return kappa.pgf(1.0 - a + a * s); };
    const double c = kappa.mean(), d2 = kappa.variance();
    t.count_mean = a * c;
    t.count_variance = a * a * d2 + a * (1.0 - a) * c;
    if (a == 1.0) {
        t.law = kappa;
    } else {
        try {
            t.law = kappa.thinned(a);
        } catch (const ValidationError&) {
            // not closed under thinning; the pgf above still describes the trace
        }
    }
    return t;
}

Trace trace(const StcMeasure& m, const LabelFn& indicator, std::size_t order) {
    double a = integrate(m.nu, indicator, order).value;
    require(a > 0.0, "trace: empty set (nu(A) = 0)");
    return trace(m, a);
}

IntegralStats trace_integral_stats(const StcMeasure& m, const LabelFn& indicator, const LabelFn& f,
                                   std::size_t order) {
    const QuadratureRule rule = m.nu.rule(order);
    double a = 0, af = 0, af2 = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double in = indicator(rule.node(i)), fv = f(rule.node(i)), w = rule.weights[i];
        a += w * in;
        af += w * in * fv;
        af2 += w * in * fv * fv;
    }
    require(a > 0.0, "trace: empty set (nu(A) = 0)");
    const double c = m.kappa.mean(), d2 = m.kappa.variance();
    // nu_A f = af / a
    const double mean = a * c * (af / a);
    const double var = a * c * (af2 / a) + a * a * (d2 - c) * (af / a) * (af / a);
    return {mean, var, 0.0};
}

ProductMean product_mean(const StcMeasure& m, const PairFn& f, std::size_t order) {
    const QuadratureRule rule = m.nu.rule(order, 1e-12, 4096);
    const Site pair_site = rule.atomic ? Site::Pair : Site::PairBase;
    double diag = 0.0, off = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        LabelView x = rule.node(i);
        diag += rule.weights[i] * f(x, x, Site::Self);
        double row = 0.0;
        for (std::size_t j = 0; j < rule.size(); ++j) row += rule.weights[j] * f(x, rule.node(j), pair_site);
        off += rule.weights[i] * row;
    }
    const double c = m.kappa.mean(), d2 = m.kappa.variance();
    ProductMean out;
    out.diagonal = c * diag;
    out.off_diagonal = (c * c + d2 - c) * off;
    out.total = out.diagonal + out.off_diagonal;
    out.normalized = out.diagonal + 0.5 * out.off_diagonal;
    return out;
}

ProductMean product_mean(const StcMeasure& m, const Kernel& f, std::size_t order) {
    return product_mean(
        m, [&f](LabelView x, LabelView y, Site s) { return s == Site::PairBase ? f.diffuse(x, y) : f(x, y); }, order);
}

ProductMean faiw_product_mean(const FaiwMeasure& m, const PairFn& f) {
    ProductMean out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double ci = m.weights[i].mean();
        out.diagonal += (ci * ci + m.weights[i].variance()) * f(m.atom(i), m.atom(i), Site::Self);
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i == j) continue;
            out.off_diagonal += ci * m.weights[j].mean() * f(m.atom(i), m.atom(j), Site::Pair);
        }
    }
    out.total = out.diagonal + out.off_diagonal;
    out.normalized = out.diagonal + 0.5 * out.off_diagonal;
    return out;
}

ProductMean faiw_product_mean(const FaiwMeasure& m, const Kernel& f) {
    return faiw_product_mean(m, [&f](LabelView x, LabelView y, Site) { return f(x, y); });
}

Eigen::MatrixXd w_transform(const Eigen::VectorXd& w, const Eigen::MatrixXd& b) {
    if (b.rows() != w.size() || b.cols() != w.size())
        throw ValidationError("w_transform: weight vector length must match the array side");
    return w.asDiagonal() * b * w.asDiagonal();
}

LabelDistribution empirical_measure(std::vector<double> points, std::size_t dim) {
    require(!points.empty(), "empirical measure: no points");
    return LabelDistribution::empirical(std::move(points), dim);
}

} // namespace measuregraph
