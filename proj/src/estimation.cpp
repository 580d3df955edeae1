#include "measuregraph/estimation.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/quadrature.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace measuregraph {

using nlohmann::json;

ObservedGraphSet::ObservedGraphSet(std::vector<Eigen::MatrixXd> matrices) : adjacency(std::move(matrices)) {
    require(!adjacency.empty(), "observed graphs: empty set");
    for (const auto& a : adjacency) {
        require(a.rows() == a.cols(), "observed graphs: adjacency must be square");
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) {
                const double v = a(i, j);
                require(v == 0.0 || v == 1.0, "observed graphs: entries must be 0 or 1");
                if (a(i, j) != a(j, i)) symmetric = false;
                if (i == j && v != 0.0) zero_diagonal = false;
            }
        vertex_counts.push_back(a.rows());
        std::vector<std::int64_t> d(static_cast<std::size_t>(a.rows()));
        for (Eigen::Index i = 0; i < a.rows(); ++i) d[static_cast<std::size_t>(i)] = std::llround(a.row(i).sum());
        degrees.push_back(std::move(d));
    }
    require(symmetric, "observed graphs: only undirected (symmetric) graphs are supported");
}

ObservedGraphSet ObservedGraphSet::from_graphs(const std::vector<LabeledGraph>& graphs) {
    std::vector<Eigen::MatrixXd> m;
    for (const auto& g : graphs) m.push_back(g.adjacency);
    return ObservedGraphSet(std::move(m));
}

std::int64_t ObservedGraphSet::max_degree() const {
    std::int64_t mx = 0;
    for (const auto& d : degrees)
        for (auto v : d) mx = std::max(mx, v);
    return mx;
}

double ObservedGraphSet::mean_degree() const {
    double total = 0.0;
    std::size_t n = 0;
    for (const auto& d : degrees) {
        for (auto v : d) total += static_cast<double>(v);
        n += d.size();
    }
    return n == 0 ? 0.0 : total / static_cast<double>(n);
}

std::vector<Eigen::MatrixXd> read_adjacency_csv(const std::string& text) {
    std::vector<Eigen::MatrixXd> out;
    std::vector<std::vector<double>> rows;
    auto flush = [&] {
        if (rows.empty()) return;
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
                throw ValidationError("csv: adjacency must be square (row " + std::to_string(i) + ")");
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        out.push_back(std::move(m));
        rows.clear();
    };
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ValidationError("csv: not a number: '" + tok + "'");
            }
        }
        if (row.empty()) flush();
        else rows.push_back(std::move(row));
    }
    flush();
    return out;
}

CountingFit fit_counting(const std::vector<std::int64_t>& counts, double alpha) {
    require(!counts.empty(), "fit_counting: no observations");
    require(alpha > 0.0 && alpha < 1.0, "fit_counting: alpha must lie in (0,1)");
    for (auto k : counts) require(k >= 0, "fit_counting: counts must be nonnegative");
    CountingFit fit;
    const double n = static_cast<double>(counts.size());
    fit.c = std::accumulate(counts.begin(), counts.end(), 0.0, [](double a, std::int64_t k) { return a + k; }) / n;
    double ss = 0.0;
    for (auto k : counts) ss += (static_cast<double>(k) - fit.c) * (static_cast<double>(k) - fit.c);
    if (counts.size() == 1 || fit.c == 0.0) {
        fit.dirac = true;
        fit.degenerate = true;
        fit.kind = PtKind::Binomial;
        fit.law = CountingDistribution::dirac(std::llround(fit.c));
        fit.variance = counts.size() == 1 ? 0.0 : ss / (n - 1.0);
        return fit;
    }
    fit.variance = ss / (n - 1.0);
    fit.dispersion = ss / fit.c;
    boost::math::chi_squared chi(n - 1.0);
    const double lo = boost::math::quantile(chi, alpha / 2.0), hi = boost::math::quantile(chi, 1.0 - alpha / 2.0);
    PtClassification cls = (fit.dispersion >= lo && fit.dispersion <= hi) ? classify_pt(fit.c, fit.c, 0.0)
                                                                          : classify_pt(fit.c, fit.variance, 0.0);
    fit.kind = cls.kind;
    fit.degenerate = cls.degenerate;
    fit.law = cls.fitted;
    return fit;
}

GraphonParam GraphonParam::separable_from(std::vector<double> beta) {
    require(!beta.empty(), "graphon: basis order must be positive");
    GraphonParam p;
    p.m = beta.size();
    p.separable = true;
    p.beta = std::move(beta);
    p.theta.resize(p.m * p.m);
    for (std::size_t i = 0; i < p.m; ++i)
        for (std::size_t j = 0; j < p.m; ++j) p.theta[i * p.m + j] = p.beta[i] * p.beta[j];
    return p;
}

GraphonParam GraphonParam::full_from(std::size_t m, std::vector<double> theta) {
    require(m >= 1 && theta.size() == m * m, "graphon: theta must have m^2 entries");
    GraphonParam p;
    p.m = m;
    p.separable = false;
    p.theta = std::move(theta);
    return p;
}

double GraphonParam::operator()(double x, double y) const {
    std::vector<double> px(m), py(m);
    for (std::size_t k = 0; k < m; ++k) {
        px[k] = shifted_legendre(k + 1, x);
        py[k] = shifted_legendre(k + 1, y);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += theta[i * m + j] * px[i] * py[j];
    return s;
}

Kernel GraphonParam::kernel() const { return Kernel::legendre(m, theta); }

Feasibility check_feasible(const GraphonParam& p, std::size_t order) {
    constexpr double eps = 1e-9;
    std::vector<double> pts;
    for (int i = 0; i <= 100; ++i) pts.push_back(i / 100.0);
    std::vector<double> gx, gw;
    gauss_legendre_1d(order, 0.0, 1.0, gx, gw);
    pts.insert(pts.end(), gx.begin(), gx.end());
    // basis values once per point
    const std::size_t n = pts.size(), m = p.m;
    std::vector<double> phi(n * m);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t k = 0; k < m; ++k) phi[a * m + k] = shifted_legendre(k + 1, pts[a]);
    Feasibility f;
    f.min_value = std::numeric_limits<double>::infinity();
    f.max_value = -f.min_value;
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            double v = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double row = 0.0;
                for (std::size_t j = 0; j < m; ++j) row += p.theta[i * m + j] * phi[b * m + j];
                v += phi[a * m + i] * row;
            }
            f.min_value = std::min(f.min_value, v);
            f.max_value = std::max(f.max_value, v);
            const double excess = std::max(-v, v - 1.0);
            if (excess > eps && excess > worst) {
                worst = excess;
                f.feasible = false;
                f.at_x = pts[a];
                f.at_y = pts[b];
            }
        }
    return f;
}

bool is_monotone(const GraphonParam& p) {
    constexpr std::size_t n = 101;
    constexpr double eps = 1e-9;
    bool up = true, down = true;
    for (std::size_t b = 0; b < n && (up || down); ++b) {
        const double y = static_cast<double>(b) / (n - 1);
        double prev = p(0.0, y);
        for (std::size_t a = 1; a < n; ++a) {
            const double v = p(static_cast<double>(a) / (n - 1), y);
            if (v < prev - eps) up = false;
            if (v > prev + eps) down = false;
            prev = v;
        }
    }
    return up || down;
}

double pseudo_loglik(const GraphonParam& p, const ObservedGraphSet& obs, const CountingDistribution& kappa,
                     const LikelihoodConfig& config) {
    Feasibility feas = check_feasible(p, config.order);
    if (!feas.feasible) {
        std::ostringstream os;
        os << "pseudo_loglik: infeasible graphon, value range [" << feas.min_value << ", " << feas.max_value
           << "], worst at (" << feas.at_x << ", " << feas.at_y << ")";
        throw ValidationError(os.str());
    }
    ModelSpec spec(StcMeasure{kappa, LabelDistribution::lebesgue()}, RandomTransform::bernoulli(p.kernel()));
    spec.quadrature_order = config.order;
    DegreeLaw law = degree_distribution(spec, Direction::Out, Perspective::Vertex);
    Coefficients coef = pgf_coefficients(law.pgf, static_cast<std::size_t>(obs.max_degree()));
    double total = 0.0;
    for (const auto& d : obs.degrees)
        for (auto k : d) total += std::log(std::max(coef.p[static_cast<std::size_t>(k)], config.floor));
    return total;
}

GraphonParam reflect(const GraphonParam& f) {
    // phi_k(1 - x) = (-1)^(k-1) phi_k(x)
    if (f.separable) {
        std::vector<double> b = f.beta;
        for (std::size_t i = 1; i < b.size(); i += 2) b[i] = -b[i];
        return GraphonParam::separable_from(std::move(b));
    }
    std::vector<double> t = f.theta;
    for (std::size_t i = 0; i < f.m; ++i)
        for (std::size_t j = 0; j < f.m; ++j)
            if ((i + j) % 2 == 1) t[i * f.m + j] = -t[i * f.m + j];
    return GraphonParam::full_from(f.m, std::move(t));
}

namespace {

// correlation of the diagonal f(t, t) with t
double diagonal_trend(const GraphonParam& f) {
    std::vector<double> x, w;
    gauss_legendre_1d(32, 0.0, 1.0, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (x[i] - 0.5) * f(x[i], x[i]);
    return s;
}

} // namespace

SymmetryResolution resolve_symmetry(const GraphonParam& f, MonotoneHint hint) {
    SymmetryResolution r{f, reflect(f), false};
    const double trend = diagonal_trend(f);
    if (hint == MonotoneHint::None || std::abs(trend) <= 1e-12) {
        r.ambiguous = true;
        return r;
    }
    const bool want_increasing = hint == MonotoneHint::Increasing;
    if ((trend > 0.0) != want_increasing) std::swap(r.chosen, r.reflected);
    return r;
}

namespace {

struct FreeParams {
    bool separable;
    std::size_t m;
    double pinned;   // beta_1 (separable) or theta_11 (full)

    std::size_t count() const { return separable ? m - 1 : m * (m + 1) / 2 - 1; }

    GraphonParam build(const std::vector<double>& free) const {
        if (separable) {
            std::vector<double> b{pinned};
            b.insert(b.end(), free.begin(), free.end());
            return GraphonParam::separable_from(std::move(b));
        }
        std::vector<double> t(m * m, 0.0);
        t[0] = pinned;
        std::size_t k = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                if (i == 0 && j == 0) continue;
                t[i * m + j] = t[j * m + i] = free[k++];
            }
        return GraphonParam::full_from(m, std::move(t));
    }
};

} // namespace

MhResult mh_estimate(const ObservedGraphSet& obs, const MhConfig& config, std::uint64_t seed) {
    require(config.m >= 1, "mh: basis order must be positive");
    require(config.sigma >= 0.0, "mh: proposal scale must be nonnegative");
    MhResult res;
    res.counting = fit_counting(obs.vertex_counts);
    const CountingDistribution& kappa = res.counting.law;
    require(kappa.mean() > 0.0, "mh: observed graphs have no vertices");
    const double mu = kappa.factorial_moment(2) / kappa.mean();
    require(mu > 0.0, "mh: fitted count law has at most one vertex");
    res.beta11 = obs.mean_degree() / mu;
    require(res.beta11 <= 1.0 + 1e-9, "mh: mean degree exceeds what a [0,1] graphon can produce");

    FreeParams fp{config.separable, config.m, config.separable ? std::sqrt(res.beta11) : res.beta11};
    std::vector<double> cur(fp.count(), 0.0);
    double cur_ll = pseudo_loglik(fp.build(cur), obs, kappa, config.likelihood);
    res.trace.iterates.push_back(cur);
    res.trace.loglik.push_back(cur_ll);
    res.trace.accepted.push_back(1);

    Rng rng(derive_seed(seed, 9));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t stalled = 0;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        std::vector<double> prop = cur;
        for (double& v : prop) v += config.sigma * normal(rng);
        const GraphonParam candidate = fp.build(prop);
        bool ok = check_feasible(candidate, config.likelihood.order).feasible &&
                  (!config.monotone || is_monotone(candidate));
        double ll = 0.0;
        if (ok) {
            try {
                ll = pseudo_loglik(candidate, obs, kappa, config.likelihood);
            } catch (const ValidationError&) {
                ok = false;   // kernel probes outside the feasibility grid
            }
        }
        bool accept = false;
        if (ok) {
            stalled = 0;
            accept = ll >= cur_ll || rng.uniform() < std::exp(ll - cur_ll);
        } else if (++stalled >= config.stall_limit) {
            throw NumericalError("mh: " + std::to_string(stalled) + " consecutive infeasible proposals");
        }
        if (accept) {
            cur = std::move(prop);
            cur_ll = ll;
        }
        res.trace.iterates.push_back(cur);
        res.trace.loglik.push_back(cur_ll);
        res.trace.accepted.push_back(accept ? 1 : 0);
    }
    res.trace.best = static_cast<std::size_t>(
        std::max_element(res.trace.loglik.begin(), res.trace.loglik.end()) - res.trace.loglik.begin());
    res.raw = fp.build(res.trace.iterates[res.trace.best]);
    res.symmetry = resolve_symmetry(res.raw, config.hint);
    res.theta_hat = res.symmetry.chosen;
    return res;
}

namespace {

template <class F>
double grid_integral(std::size_t order, F&& f) {
    std::vector<double> x, w;
    gauss_legendre_1d(order, 0.0, 1.0, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += w[i] * w[j] * f(x[i], x[j]);
    return s;
}

} // namespace

double relative_l1_error(const std::function<double(double, double)>& f,
                         const std::function<double(double, double)>& truth, std::size_t order) {
    const double den = grid_integral(order, [&](double x, double y) { return std::abs(truth(x, y)); });
    require(den > 0.0, "relative error: reference function vanishes");
    return grid_integral(order, [&](double x, double y) { return std::abs(f(x, y) - truth(x, y)); }) / den;
}

double relative_l2_error(const std::function<double(double, double)>& f,
                         const std::function<double(double, double)>& truth, std::size_t order) {
    const double den = grid_integral(order, [&](double x, double y) { return truth(x, y) * truth(x, y); });
    require(den > 0.0, "relative error: reference function vanishes");
    return grid_integral(order, [&](double x, double y) {
               const double d = f(x, y) - truth(x, y);
               return d * d;
           }) / den;
}

json param_to_json(const GraphonParam& p) {
    json j{{"m", p.m}, {"separable", p.separable}, {"theta", p.theta}};
    if (p.separable) j["beta"] = p.beta;
    return j;
}

json trace_to_json(const MhTrace& t) {
    json accepted = json::array();
    for (char a : t.accepted) accepted.push_back(a != 0);
    return json{{"iterates", t.iterates}, {"loglik", t.loglik}, {"accepted", accepted}, {"best", t.best}};
}

std::string to_string(MonotoneHint h) {
    switch (h) {
    case MonotoneHint::Increasing: return "increasing";
    case MonotoneHint::Decreasing: return "decreasing";
    case MonotoneHint::None: return "none";
    }
    return "none";
}

MonotoneHint parse_hint(const std::string& s) {
    if (s == "increasing") return MonotoneHint::Increasing;
    if (s == "decreasing") return MonotoneHint::Decreasing;
    if (s == "none") return MonotoneHint::None;
    throw ValidationError("monotone hint: expected increasing, decreasing or none, got '" + s + "'");
}

} // namespace measuregraph
