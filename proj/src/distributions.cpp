#include "measuregraph/distributions.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace measuregraph {

namespace detail {

// Inverse-cdf table for k^-s on {1..n} (n may be infinite). The prefix covers at most 2^20
// atoms; beyond that a Pareto envelope with rejection samples the tail exactly.
struct ZetaTable {
    double s = 2.0;
    std::int64_t upper = 0;   // 0 = unbounded
    double norm = 1.0;        // sum of k^-s over the support
    std::vector<double> cdf;  // cumulative normalized mass of 1..cdf.size()

    ZetaTable(double s_, std::int64_t upper_) : s(s_), upper(upper_) {
        const std::size_t cap = std::size_t{1} << 20;
        std::size_t len = cap;
        if (upper > 0) len = std::min<std::size_t>(cap, static_cast<std::size_t>(upper));
        if (upper > 0) {
            norm = 0.0;
            for (std::int64_t k = upper; k >= 1; --k) norm += std::pow(static_cast<double>(k), -s);
        } else {
            norm = measuregraph::zeta(s);
        }
        cdf.resize(len);
        double acc = 0.0;
        for (std::size_t k = 1; k <= len; ++k) {
            acc += std::pow(static_cast<double>(k), -s) / norm;
            cdf[k - 1] = acc;
            // stop once the remaining tail is negligible
            if (upper == 0 && 1.0 - acc < 1e-15) {
                cdf.resize(k);
                break;
            }
        }
        if (upper > 0 && static_cast<std::size_t>(upper) == cdf.size()) cdf.back() = 1.0;
    }

    double sample(Rng& rng) const {
        double u = rng.uniform();
        if (u < cdf.back()) {
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            return static_cast<double>(it - cdf.begin() + 1);
        }
        // tail k >= L: propose floor(Y), Y Pareto on [L, inf) with density ~ y^-s
        const double L = static_cast<double>(cdf.size() + 1);
        const double bound = std::pow(1.0 + 1.0 / L, s);
        const double cap = 0x1.0p53;
        for (;;) {
            double y = L * std::pow(rng.uniform_pos(), -1.0 / (s - 1.0));
            if (!(y < cap)) y = cap;
            double k = std::floor(y);
            if (upper > 0 && k > static_cast<double>(upper)) continue;
            // target k^-s over proposal mass of [k, k+1)
            double cell = std::pow(k, 1.0 - s) * -std::expm1((1.0 - s) * std::log1p(1.0 / k)) / (s - 1.0);
            double ratio = std::pow(k, -s) / cell;
            if (rng.uniform() * bound <= ratio) return k;
        }
    }
};

} // namespace detail

namespace {

double falling(double x, int j) {
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= (x - i);
    return r;
}

double rising(double x, int j) {
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= (x + i);
    return r;
}

// integer power; std::pow(complex, double) returns NaN for 0^0
cplx ipow(cplx t, std::int64_t e) {
    cplx result = 1.0;
    while (e > 0) {
        if (e & 1) result *= t;
        t *= t;
        e >>= 1;
    }
    return result;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Sum of pmf(k) * falling(k, order) * t^{k-order} over an explicit support.
template <class Pmf>
cplx series_derivative(cplx t, int order, std::int64_t lo, std::int64_t hi, Pmf pmf) {
    cplx total = 0.0;
    for (std::int64_t k = std::max<std::int64_t>(lo, order); k <= hi; ++k) {
        double p = pmf(k);
        if (p == 0.0) continue;
        total += p * falling(static_cast<double>(k), order) * ipow(t, k - order);
    }
    return total;
}

} // namespace

CountingDistribution::CountingDistribution(Kind kind) : kind_(std::move(kind)) {
    std::visit(
        [this](auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                require(d.n >= 0, "dirac: n must be nonnegative");
            } else if constexpr (std::is_same_v<T, Poisson>) {
                require(std::isfinite(d.c) && d.c > 0.0, "poisson: c must be positive");
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                require(d.r >= 1, "negative binomial: r must be at least 1");
                require(d.p > 0.0 && d.p < 1.0, "negative binomial: p must lie in (0,1)");
            } else if constexpr (std::is_same_v<T, Binomial>) {
                require(d.n >= 1, "binomial: n must be at least 1");
                require(d.p >= 0.0 && d.p <= 1.0, "binomial: p must lie in [0,1]");
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                require(d.m >= 0 && d.m <= d.n, "uniform: need 0 <= m <= n");
            } else if constexpr (std::is_same_v<T, Zeta>) {
                require(d.s > 1.0, "zeta: s must exceed 1");
                table_ = std::make_shared<detail::ZetaTable>(d.s, 0);
            } else if constexpr (std::is_same_v<T, Zipf>) {
                require(d.s > 0.0, "zipf: s must be positive");
                require(d.n >= 1, "zipf: n must be at least 1");
                table_ = std::make_shared<detail::ZetaTable>(d.s, d.n);
            }
        },
        kind_);
}

std::string CountingDistribution::name() const {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) return "dirac(n=" + std::to_string(d.n) + ")";
            else if constexpr (std::is_same_v<T, Poisson>) return "poisson(c=" + fmt_double(d.c) + ")";
            else if constexpr (std::is_same_v<T, NegativeBinomial>)
                return "negative_binomial(r=" + std::to_string(d.r) + ",p=" + fmt_double(d.p) + ")";
            else if constexpr (std::is_same_v<T, Binomial>)
                return "binomial(n=" + std::to_string(d.n) + ",p=" + fmt_double(d.p) + ")";
            else if constexpr (std::is_same_v<T, UniformInt>)
                return "uniform(m=" + std::to_string(d.m) + ",n=" + std::to_string(d.n) + ")";
            else if constexpr (std::is_same_v<T, Zeta>) return "zeta(s=" + fmt_double(d.s) + ")";
            else return "zipf(s=" + fmt_double(d.s) + ",n=" + std::to_string(d.n) + ")";
        },
        kind_);
}

double CountingDistribution::pgf(double t) const { return pgf(cplx(t, 0.0)).real(); }

cplx CountingDistribution::pgf(cplx t) const { return pgf_derivative(t, 0); }

cplx CountingDistribution::pgf_derivative(cplx t, int order) const {
    require(order >= 0 && order <= 3, "pgf derivative order must be in 0..3");
    return std::visit(
        [&](const auto& d) -> cplx {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                if (order > d.n) return 0.0;
                return falling(static_cast<double>(d.n), order) * ipow(t, d.n - order);
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return std::pow(d.c, order) * std::exp(-d.c * (1.0 - t));
            } else if constexpr (std::is_same_v<T, Binomial>) {
                if (order > d.n) return 0.0;
                return falling(static_cast<double>(d.n), order) * std::pow(d.p, order) *
                       ipow(1.0 - d.p + d.p * t, d.n - order);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                double r = static_cast<double>(d.r);
                return rising(r, order) * std::pow(d.p, order) * std::pow(1.0 - d.p, r) *
                       std::pow(1.0 - d.p * t, -(r + order));
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                double cnt = static_cast<double>(d.n - d.m + 1);
                if (order == 0 && std::abs(1.0 - t) > 1e-6 && d.n - d.m > 64) {
                    return ipow(t, d.m) * (1.0 - ipow(t, d.n - d.m + 1)) / (1.0 - t) / cnt;
                }
                return series_derivative(t, order, d.m, d.n, [cnt](std::int64_t) { return 1.0 / cnt; });
            } else if constexpr (std::is_same_v<T, Zipf>) {
                const double norm = table_->norm;
                return series_derivative(t, order, 1, d.n,
                                         [&](std::int64_t k) { return std::pow(static_cast<double>(k), -d.s) / norm; });
            } else {
                // zeta: truncate once terms (times the polynomial factor) are negligible
                const double norm = table_->norm;
                if (t == cplx(1.0, 0.0)) {
                    // factorial moments from zeta(s - m) / zeta(s); the series tail is too slow here
                    auto z = [&](int m) {
                        return d.s - m > 1.0 ? measuregraph::zeta(d.s - m) : std::numeric_limits<double>::infinity();
                    };
                    if (order > 0 && d.s - order <= 1.0) return std::numeric_limits<double>::infinity();
                    switch (order) {
                    case 0: return 1.0;
                    case 1: return z(1) / norm;
                    case 2: return (z(2) - z(1)) / norm;
                    default: return (z(3) - 3.0 * z(2) + 2.0 * z(1)) / norm;
                    }
                }
                cplx total = 0.0;
                const double at = std::abs(t);
                for (std::int64_t k = std::max<std::int64_t>(1, order); k <= (std::int64_t{1} << 22); ++k) {
                    double kk = static_cast<double>(k);
                    double mag = std::pow(kk, -d.s) * falling(kk, order) * std::pow(at, kk - order);
                    total += std::pow(kk, -d.s) / norm * falling(kk, order) * ipow(t, k - order);
                    if (mag < 1e-17 * norm && k > 16) break;
                }
                return total;
            }
        },
        kind_);
}

double CountingDistribution::pmf(std::int64_t k) const {
    if (k < 0) return 0.0;
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            const double kk = static_cast<double>(k);
            if constexpr (std::is_same_v<T, Dirac>) {
                return k == d.n ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return std::exp(kk * std::log(d.c) - d.c - std::lgamma(kk + 1.0));
            } else if constexpr (std::is_same_v<T, Binomial>) {
                if (k > d.n) return 0.0;
                if (d.p == 0.0) return k == 0 ? 1.0 : 0.0;
                if (d.p == 1.0) return k == d.n ? 1.0 : 0.0;
                double n = static_cast<double>(d.n);
                return std::exp(std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1) +
                                kk * std::log(d.p) + (n - kk) * std::log1p(-d.p));
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                double r = static_cast<double>(d.r);
                return std::exp(std::lgamma(r + kk) - std::lgamma(kk + 1) - std::lgamma(r) + r * std::log1p(-d.p) +
                                kk * std::log(d.p));
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                return (k >= d.m && k <= d.n) ? 1.0 / static_cast<double>(d.n - d.m + 1) : 0.0;
            } else if constexpr (std::is_same_v<T, Zipf>) {
                return (k >= 1 && k <= d.n) ? std::pow(kk, -d.s) / table_->norm : 0.0;
            } else {
                return k >= 1 ? std::pow(kk, -d.s) / table_->norm : 0.0;
            }
        },
        kind_);
}

double CountingDistribution::factorial_moment(int order) const {
    require(order >= 0 && order <= 3, "factorial moment order must be in 0..3");
    if (order == 0) return 1.0;
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return falling(static_cast<double>(d.n), order);
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return std::pow(d.c, order);
            } else if constexpr (std::is_same_v<T, Binomial>) {
                return falling(static_cast<double>(d.n), order) * std::pow(d.p, order);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                return rising(static_cast<double>(d.r), order) * std::pow(d.p / (1.0 - d.p), order);
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                double total = 0.0;
                for (std::int64_t k = d.m; k <= d.n; ++k) total += falling(static_cast<double>(k), order);
                return total / static_cast<double>(d.n - d.m + 1);
            } else if constexpr (std::is_same_v<T, Zipf>) {
                double total = 0.0;
                for (std::int64_t k = 1; k <= d.n; ++k)
                    total += falling(static_cast<double>(k), order) * std::pow(static_cast<double>(k), -d.s);
                return total / table_->norm;
            } else {
                if (d.s - order <= 1.0) return std::numeric_limits<double>::infinity();
                const double z = table_->norm;
                double m1 = measuregraph::zeta(d.s - 1.0) / z;
                if (order == 1) return m1;
                double m2 = measuregraph::zeta(d.s - 2.0) / z;
                if (order == 2) return m2 - m1;
                double m3 = measuregraph::zeta(d.s - 3.0) / z;
                return m3 - 3.0 * m2 + 2.0 * m1;
            }
        },
        kind_);
}

double CountingDistribution::mean() const { return factorial_moment(1); }

double CountingDistribution::variance() const {
    double m1 = factorial_moment(1);
    double f2 = factorial_moment(2);
    if (!std::isfinite(f2)) return std::numeric_limits<double>::infinity();
    return f2 + m1 - m1 * m1;
}

std::int64_t CountingDistribution::sample(Rng& rng) const {
    return std::visit(
        [&](const auto& d) -> std::int64_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                return d.n;
            } else if constexpr (std::is_same_v<T, Poisson>) {
                return std::poisson_distribution<std::int64_t>(d.c)(rng);
            } else if constexpr (std::is_same_v<T, Binomial>) {
                return std::binomial_distribution<std::int64_t>(d.n, d.p)(rng);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                // std::negative_binomial_distribution counts failures with success prob 1-p here
                return std::negative_binomial_distribution<std::int64_t>(d.r, 1.0 - d.p)(rng);
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                return std::uniform_int_distribution<std::int64_t>(d.m, d.n)(rng);
            } else {
                return static_cast<std::int64_t>(std::min(table_->sample(rng), 0x1.0p62));
            }
        },
        kind_);
}

std::optional<std::int64_t> CountingDistribution::support_max() const {
    return std::visit(
        [](const auto& d) -> std::optional<std::int64_t> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac> || std::is_same_v<T, Binomial> || std::is_same_v<T, UniformInt> ||
                          std::is_same_v<T, Zipf>)
                return d.n;
            else
                return std::nullopt;
        },
        kind_);
}

CountingDistribution CountingDistribution::thinned(double a) const {
    require(a >= 0.0 && a <= 1.0, "thinning probability must lie in [0,1]");
    return std::visit(
        [&](const auto& d) -> CountingDistribution {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Dirac>) {
                if (d.n == 0) return dirac(0);
                return binomial(d.n, a);
            } else if constexpr (std::is_same_v<T, Poisson>) {
                require(a > 0.0, "thinning a Poisson law to zero rate");
                return poisson(a * d.c);
            } else if constexpr (std::is_same_v<T, Binomial>) {
                return binomial(d.n, a * d.p);
            } else if constexpr (std::is_same_v<T, NegativeBinomial>) {
                require(a > 0.0, "thinning a negative binomial law to zero");
                return negative_binomial(d.r, d.p * a / (1.0 - d.p + d.p * a));
            } else {
                throw ValidationError("thinning is closed only for Poisson-type counting laws");
            }
        },
        kind_);
}

std::string to_string(PtKind kind) {
    switch (kind) {
    case PtKind::Poisson: return "poisson";
    case PtKind::Binomial: return "binomial";
    case PtKind::NegativeBinomial: return "negative_binomial";
    }
    return "unknown";
}

PtClassification classify_pt(double c, double variance, double tol) {
    require(std::isfinite(c) && c > 0.0, "classify_pt: mean must be positive");
    require(std::isfinite(variance) && variance >= 0.0, "classify_pt: variance must be nonnegative");
    require(tol >= 0.0, "classify_pt: tolerance must be nonnegative");
    const double gap = variance - c;
    if (std::abs(gap) <= tol * c) return {PtKind::Poisson, CountingDistribution::poisson(c), false};
    if (gap < 0.0) {
        double p = 1.0 - variance / c;
        auto n = std::max<std::int64_t>(1, std::llround(c / p));
        double p_fit = std::min(1.0, c / static_cast<double>(n));
        return {PtKind::Binomial, CountingDistribution::binomial(n, p_fit), variance == 0.0};
    }
    double p = 1.0 - c / variance;
    auto r = std::max<std::int64_t>(1, std::llround(c * (1.0 - p) / p));
    double p_fit = c / (static_cast<double>(r) + c);
    return {PtKind::NegativeBinomial, CountingDistribution::negative_binomial(r, p_fit), false};
}

LabelDistribution::LabelDistribution(Kind kind) : kind_(std::move(kind)) {
    std::visit(
        [this](auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Lebesgue>) {
                require(d.dim >= 1, "lebesgue: dimension must be positive");
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                require(d.n >= 1, "uniform labels: n must be at least 1");
            } else if constexpr (std::is_same_v<T, Zeta>) {
                require(d.s > 1.0, "zeta labels: s must exceed 1");
                table_ = std::make_shared<detail::ZetaTable>(d.s, 0);
            } else {
                require(d.dim >= 1, "empirical: dimension must be positive");
                require(!d.points.empty() && d.points.size() % d.dim == 0,
                        "empirical: need a nonempty list of points of the declared dimension");
            }
        },
        kind_);
}

std::string LabelDistribution::name() const {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Lebesgue>) return "lebesgue(dim=" + std::to_string(d.dim) + ")";
            else if constexpr (std::is_same_v<T, UniformInt>) return "uniform(n=" + std::to_string(d.n) + ")";
            else if constexpr (std::is_same_v<T, Zeta>) return "zeta(s=" + fmt_double(d.s) + ")";
            else return "empirical(n=" + std::to_string(d.points.size() / d.dim) + ")";
        },
        kind_);
}

std::size_t LabelDistribution::dim() const noexcept {
    if (auto* l = std::get_if<Lebesgue>(&kind_)) return l->dim;
    if (auto* e = std::get_if<Empirical>(&kind_)) return e->dim;
    return 1;
}

double LabelDistribution::mass(std::span<const double> x) const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Lebesgue>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                double v = x[0];
                return (v == std::floor(v) && v >= 1 && v <= static_cast<double>(d.n)) ? 1.0 / static_cast<double>(d.n)
                                                                                         : 0.0;
            } else if constexpr (std::is_same_v<T, Zeta>) {
                double v = x[0];
                return (v == std::floor(v) && v >= 1) ? std::pow(v, -d.s) / table_->norm : 0.0;
            } else {
                std::size_t n = d.points.size() / d.dim, hits = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (std::equal(x.begin(), x.end(), d.points.begin() + i * d.dim)) ++hits;
                return static_cast<double>(hits) / static_cast<double>(n);
            }
        },
        kind_);
}

void LabelDistribution::sample(Rng& rng, std::span<double> out) const {
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Lebesgue>) {
                for (auto& v : out) v = rng.uniform();
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                out[0] = static_cast<double>(std::uniform_int_distribution<std::int64_t>(1, d.n)(rng));
            } else if constexpr (std::is_same_v<T, Zeta>) {
                out[0] = table_->sample(rng);
            } else {
                std::size_t n = d.points.size() / d.dim;
                std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
                std::copy_n(d.points.begin() + i * d.dim, d.dim, out.begin());
            }
        },
        kind_);
}

QuadratureRule LabelDistribution::rule(std::size_t order, double tail_tol, std::size_t max_atoms) const {
    return std::visit(
        [&](const auto& d) -> QuadratureRule {
            using T = std::decay_t<decltype(d)>;
            QuadratureRule r;
            if constexpr (std::is_same_v<T, Lebesgue>) {
                // tensor grids grow as order^dim; cap the per-axis order beyond one dimension
                return QuadratureRule::gauss_legendre(d.dim == 1 ? order : std::min<std::size_t>(order, 16), d.dim);
            } else if constexpr (std::is_same_v<T, UniformInt>) {
                require(static_cast<std::size_t>(d.n) <= max_atoms, "uniform labels: support exceeds max_atoms");
                r.atomic = true;
                for (std::int64_t k = 1; k <= d.n; ++k) {
                    r.nodes.push_back(static_cast<double>(k));
                    r.weights.push_back(1.0 / static_cast<double>(d.n));
                }
            } else if constexpr (std::is_same_v<T, Zeta>) {
                r.atomic = true;
                const double z = table_->norm;
                double acc = 0.0;
                std::size_t k = 1;
                for (; k <= max_atoms; ++k) {
                    double w = std::pow(static_cast<double>(k), -d.s) / z;
                    r.nodes.push_back(static_cast<double>(k));
                    r.weights.push_back(w);
                    acc += w;
                    if (1.0 - acc <= tail_tol) break;
                }
                double tail = std::max(0.0, 1.0 - acc);
                if (tail > 0.0) {
                    r.nodes.push_back(static_cast<double>(r.nodes.size() + 1));
                    r.weights.push_back(tail);
                }
                r.tail_mass = tail;
            } else {
                r.atomic = true;
                r.dim = d.dim;
                std::map<std::vector<double>, std::size_t> counts;
                std::size_t n = d.points.size() / d.dim;
                for (std::size_t i = 0; i < n; ++i)
                    ++counts[std::vector<double>(d.points.begin() + i * d.dim, d.points.begin() + (i + 1) * d.dim)];
                for (const auto& [pt, cnt] : counts) {
                    r.nodes.insert(r.nodes.end(), pt.begin(), pt.end());
                    r.weights.push_back(static_cast<double>(cnt) / static_cast<double>(n));
                }
            }
            return r;
        },
        kind_);
}

IntegrationResult integrate(const LabelDistribution& nu, const std::function<double(std::span<const double>)>& f,
                            std::size_t order, double tail_tol) {
    QuadratureRule rule = nu.rule(order, tail_tol);
    IntegrationResult out;
    for (std::size_t i = 0; i < rule.size(); ++i) out.value += rule.weights[i] * f(rule.node(i));
    if (rule.tail_mass > 0.0) {
        double last = std::abs(f(rule.node(rule.size() - 1)));
        out.tail_bound = rule.tail_mass * std::max(1.0, last);
        out.warning = out.tail_bound > tail_tol;
    }
    return out;
}

} // namespace measuregraph
