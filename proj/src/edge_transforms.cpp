#include "measuregraph/edge_transforms.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/special.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace measuregraph {

double shifted_legendre(std::size_t k, double x) {
    // phi_k(x) = sqrt(2k-1) P_{k-1}(2x-1)
    if (k == 0) throw ValidationError("Legendre index starts at 1");
    const double z = 2.0 * x - 1.0;
    double p0 = 1.0, p1 = z;
    if (k == 1) return 1.0;
    for (std::size_t n = 2; n < k; ++n) {
        double p2 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
    }
    return std::sqrt(2.0 * k - 1.0) * p1;
}

bool same_label(LabelView x, LabelView y) { return std::equal(x.begin(), x.end(), y.begin(), y.end()); }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool less_label(LabelView x, LabelView y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

std::size_t block_index(const std::vector<double>& breaks, double x) {
    return static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
}

// Probe points used to validate opaque kernels: a uniform grid on [0,1]^dim plus random probes.
std::vector<std::vector<double>> probe_points(std::size_t dim) {
    std::vector<std::vector<double>> pts;
    const std::size_t per_axis = dim == 1 ? 101 : (dim == 2 ? 11 : 3);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= per_axis;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<double> p(dim);
        std::size_t rem = idx;
        for (std::size_t d = 0; d < dim; ++d) {
            p[d] = static_cast<double>(rem % per_axis) / static_cast<double>(per_axis - 1);
            rem /= per_axis;
        }
        pts.push_back(std::move(p));
    }
    Rng rng(0x5eedULL);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> p(dim);
        for (auto& v : p) v = rng.uniform();
        pts.push_back(std::move(p));
    }
    return pts;
}

// Checks lo <= f <= hi on parameters (closed-form kernels) or on probes (opaque kernels).
void validate_kernel_range(const Kernel& k, double hi, const std::string& context) {
    const double eps = 1e-9;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Kernel::Constant>) {
                require(d.p >= 0.0 && d.p <= hi + eps, context + ": constant kernel value out of range");
            } else if constexpr (std::is_same_v<T, Kernel::PowerLaw>) {
                require(d.b >= 0.0, context + ": power-law kernel needs b >= 0");
            } else if constexpr (std::is_same_v<T, Kernel::Exponential>) {
                require(d.b >= 0.0, context + ": exponential kernel needs b >= 0");
            } else if constexpr (std::is_same_v<T, Kernel::Block>) {
                for (double v : d.p) require(v >= 0.0 && v <= hi + eps, context + ": block probability out of range");
            } else if constexpr (std::is_same_v<T, Kernel::DotProduct>) {
                require(d.a >= 0.0, context + ": dot-product kernel needs a >= 0");
            } else if constexpr (std::is_same_v<T, Kernel::ProductPower>) {
                require(d.a >= 0.0 && d.b >= 0.0 && d.scale >= 0.0 && d.scale <= hi + eps,
                        context + ": product-power kernel parameters out of range");
            } else if constexpr (std::is_same_v<T, Kernel::PrimePairs>) {
            } else {
                const auto pts = probe_points(1);
                for (const auto& x : pts)
                    for (const auto& y : pts) {
                        double v = k.base(x, y);
                        if (!(v >= -eps && v <= hi + eps)) {
                            std::ostringstream os;
                            os << context << ": kernel " << k.name() << " takes value " << v << " at (" << x[0]
                               << ", " << y[0] << ")";
                            throw ValidationError(os.str());
                        }
                    }
            }
        },
        k.kind());
}

} // namespace

Kernel::Kernel(Kind kind, bool zero_diagonal, Order order)
    : kind_(std::move(kind)), zero_diagonal_(zero_diagonal), order_(order) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Block>) {
                std::size_t k = d.breaks.size() + 1;
                require(d.p.size() == k * k, "block kernel: need (breaks+1)^2 probabilities");
                require(std::is_sorted(d.breaks.begin(), d.breaks.end()), "block kernel: breaks must be sorted");
            } else if constexpr (std::is_same_v<T, Legendre>) {
                require(d.m >= 1 && d.theta.size() == d.m * d.m, "legendre kernel: theta must have m*m entries");
            } else if constexpr (std::is_same_v<T, Custom>) {
                require(static_cast<bool>(d.fn), "custom kernel: missing function");
            }
        },
        kind_);
}

double Kernel::base(LabelView x, LabelView y) const {
    if (order_ == Order::LessThan && !less_label(x, y)) return 0.0;
    return unordered(x, y);
}

double Kernel::diffuse(LabelView x, LabelView y) const {
    if (order_ == Order::LessThan && same_label(x, y)) return 0.5 * unordered(x, y);
    return base(x, y);
}

double Kernel::unordered(LabelView x, LabelView y) const {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return d.p;
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                double a = 1.0 + d.b * x[0], b = 1.0 + d.b * y[0];
                return 1.0 / (a * a * b * b);
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return std::exp(-d.b * (x[0] + y[0]));
            } else if constexpr (std::is_same_v<T, Block>) {
                std::size_t k = d.breaks.size() + 1;
                return d.p[block_index(d.breaks, x[0]) * k + block_index(d.breaks, y[0])];
            } else if constexpr (std::is_same_v<T, DotProduct>) {
                double total = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) total += std::pow(x[i], d.a) * std::pow(y[i], d.a);
                return total / static_cast<double>(x.size());
            } else if constexpr (std::is_same_v<T, ProductPower>) {
                return d.scale * std::pow(x[0], d.a) * std::pow(y[0], d.b);
            } else if constexpr (std::is_same_v<T, Legendre>) {
                double px[16], py[16];
                std::vector<double> bx, by;
                double* ax = px;
                double* ay = py;
                if (d.m > 16) {
                    bx.resize(d.m);
                    by.resize(d.m);
                    ax = bx.data();
                    ay = by.data();
                }
                for (std::size_t i = 0; i < d.m; ++i) {
                    ax[i] = shifted_legendre(i + 1, x[0]);
                    ay[i] = shifted_legendre(i + 1, y[0]);
                }
                double total = 0.0;
                for (std::size_t i = 0; i < d.m; ++i)
                    for (std::size_t j = 0; j < d.m; ++j) total += d.theta[i * d.m + j] * ax[i] * ay[j];
                return total;
            } else if constexpr (std::is_same_v<T, PrimePairs>) {
                auto prime_label = [](double v) {
                    return v == std::floor(v) && v < 0x1.0p62 && is_prime(static_cast<std::int64_t>(v));
                };
                return (prime_label(x[0]) && prime_label(y[0])) ? 1.0 : 0.0;
            } else {
                return d.fn(x, y);
            }
        },
        kind_);
}

double Kernel::operator()(LabelView x, LabelView y) const {
    if (zero_diagonal_ && same_label(x, y)) return 0.0;
    return base(x, y);
}

bool Kernel::symmetric() const {
    if (order_ == Order::LessThan) return false;
    return std::visit(
        [](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Block>) {
                std::size_t k = d.breaks.size() + 1;
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        if (d.p[i * k + j] != d.p[j * k + i]) return false;
                return true;
            } else if constexpr (std::is_same_v<T, ProductPower>) {
                return d.a == d.b;
            } else if constexpr (std::is_same_v<T, Legendre>) {
                for (std::size_t i = 0; i < d.m; ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        if (d.theta[i * d.m + j] != d.theta[j * d.m + i]) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Custom>) {
                return d.symmetric;
            } else {
                return true;
            }
        },
        kind_);
}

std::string Kernel::name() const {
    std::string base_name = std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Constant>) return "constant(" + fmt(d.p) + ")";
            else if constexpr (std::is_same_v<T, PowerLaw>) return "power_law(b=" + fmt(d.b) + ")";
            else if constexpr (std::is_same_v<T, Exponential>) return "exponential(b=" + fmt(d.b) + ")";
            else if constexpr (std::is_same_v<T, Block>) return "block(k=" + std::to_string(d.breaks.size() + 1) + ")";
            else if constexpr (std::is_same_v<T, DotProduct>) return "dot_product(a=" + fmt(d.a) + ")";
            else if constexpr (std::is_same_v<T, ProductPower>)
                return "product_power(" + fmt(d.scale) + "," + fmt(d.a) + "," + fmt(d.b) + ")";
            else if constexpr (std::is_same_v<T, Legendre>) return "legendre(m=" + std::to_string(d.m) + ")";
            else if constexpr (std::is_same_v<T, PrimePairs>) return "prime_pairs";
            else return "custom(" + d.name + ")";
        },
        kind_);
    if (order_ == Order::LessThan) base_name += "[x<y]";
    return base_name;
}

double apply_weight(WeightFunction g, double value) {
    return g == WeightFunction::Identity ? value : (value > 0.0 ? 1.0 : 0.0);
}

double EdgeLaw::active(StateSet set) const {
    switch (family) {
    case Family::Deterministic: return v > 0.0 ? 1.0 : 0.0;
    case Family::Bernoulli: return v;
    case Family::Binomial: return 1.0 - std::pow(1.0 - v, static_cast<double>(n));
    case Family::Poisson: return -std::expm1(-v);
    case Family::States: {
        double total = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (set.contains(a, b)) total += q[2 * a + b];
        return total;
    }
    }
    return 0.0;
}

double EdgeLaw::mean(WeightFunction g, StateSet set) const {
    if (family == Family::States || g == WeightFunction::Indicator) return active(set);
    switch (family) {
    case Family::Binomial: return static_cast<double>(n) * v;
    default: return v;
    }
}

double EdgeLaw::second(WeightFunction g, StateSet set) const {
    if (family == Family::States || g == WeightFunction::Indicator) return active(set);
    switch (family) {
    case Family::Deterministic: return v * v;
    case Family::Bernoulli: return v;
    case Family::Binomial: {
        double nn = static_cast<double>(n);
        return nn * v * (1.0 - v) + nn * nn * v * v;
    }
    case Family::Poisson: return v + v * v;
    default: return 0.0;
    }
}

cplx EdgeLaw::pgf(cplx t, WeightFunction g, StateSet set) const {
    if (family == Family::States || g == WeightFunction::Indicator || family == Family::Deterministic ||
        family == Family::Bernoulli) {
        double a = (family == Family::Deterministic && g == WeightFunction::Identity) ? v : active(set);
        return 1.0 - a + a * t;
    }
    if (family == Family::Binomial) {
        cplx base = 1.0 - v + v * t;
        cplx r = 1.0;
        for (std::int64_t i = 0; i < n; ++i) r *= base;
        return r;
    }
    return std::exp(-v * (1.0 - t));
}

RandomTransform::RandomTransform(Kind kind) : kind_(std::move(kind)) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            const double inf = std::numeric_limits<double>::infinity();
            if constexpr (std::is_same_v<T, Deterministic>) {
                validate_kernel_range(d.f, inf, "deterministic transform");
            } else if constexpr (std::is_same_v<T, Bernoulli>) {
                validate_kernel_range(d.f, 1.0, "bernoulli transform");
            } else if constexpr (std::is_same_v<T, Binomial>) {
                require(d.n >= 1, "binomial transform: n must be at least 1");
                validate_kernel_range(d.f, 1.0, "binomial transform");
            } else if constexpr (std::is_same_v<T, Poisson>) {
                validate_kernel_range(d.f, inf, "poisson transform");
            } else {
                require(d.g >= 0.0 && d.g <= 1.0, "digraphon: loop probability g must lie in [0,1]");
                validate_kernel_range(d.f01, 1.0, "digraphon f01");
                validate_kernel_range(d.f11, 1.0, "digraphon f11");
                require(d.f11.symmetric(), "digraphon: f11 must be symmetric");
                const auto pts = probe_points(1);
                for (const auto& x : pts)
                    for (const auto& y : pts) {
                        double rest = 1.0 - d.f01.base(x, y) - d.f01.base(y, x) - d.f11.base(x, y);
                        if (rest < -1e-9)
                            throw ValidationError("digraphon: f01(x,y)+f10(x,y)+f11(x,y) exceeds 1 at (" +
                                                  fmt(x[0]) + ", " + fmt(y[0]) + ")");
                    }
            }
        },
        kind_);
}

const Kernel* RandomTransform::kernel() const noexcept {
    return std::visit(
        [](const auto& d) -> const Kernel* {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Digraphon>) return nullptr;
            else return &d.f;
        },
        kind_);
}

std::string RandomTransform::name() const {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) return "deterministic(" + d.f.name() + ")";
            else if constexpr (std::is_same_v<T, Bernoulli>) return "bernoulli(" + d.f.name() + ")";
            else if constexpr (std::is_same_v<T, Binomial>)
                return "binomial(n=" + std::to_string(d.n) + "," + d.f.name() + ")";
            else if constexpr (std::is_same_v<T, Poisson>) return "poisson(" + d.f.name() + ")";
            else return "digraphon(f01=" + d.f01.name() + ",f11=" + d.f11.name() + ",g=" + fmt(d.g) + ")";
        },
        kind_);
}

EdgeLaw RandomTransform::law(LabelView x, LabelView y, Site site) const {
    EdgeLaw out;
    if (auto* dg = std::get_if<Digraphon>(&kind_)) {
        out.family = EdgeLaw::Family::States;
        if (site == Site::Self) {
            out.q = {1.0 - dg->g, 0.0, 0.0, dg->g};
        } else {
            double q01 = dg->f01.base(x, y), q10 = dg->f01.base(y, x), q11 = dg->f11.base(x, y);
            out.q = {std::max(0.0, 1.0 - q01 - q10 - q11), q01, q10, q11};
        }
        return out;
    }
    const Kernel& f = *kernel();
    const double v = site == Site::PairBase ? f.diffuse(x, y) : f(x, y);
    out.v = v;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Deterministic>) out.family = EdgeLaw::Family::Deterministic;
            else if constexpr (std::is_same_v<T, Bernoulli>) out.family = EdgeLaw::Family::Bernoulli;
            else if constexpr (std::is_same_v<T, Binomial>) {
                out.family = EdgeLaw::Family::Binomial;
                out.n = d.n;
            } else if constexpr (std::is_same_v<T, Poisson>) out.family = EdgeLaw::Family::Poisson;
        },
        kind_);
    return out;
}

std::pair<double, double> RandomTransform::sample(LabelView x, LabelView y, Site site, Rng& rng) const {
    EdgeLaw l = law(x, y, site);
    switch (l.family) {
    case EdgeLaw::Family::Deterministic: return {l.v, l.v};
    case EdgeLaw::Family::Bernoulli: {
        double b = rng.uniform() < l.v ? 1.0 : 0.0;
        return {b, b};
    }
    case EdgeLaw::Family::Binomial: {
        if (l.v <= 0.0) return {0.0, 0.0};
        double b = static_cast<double>(std::binomial_distribution<std::int64_t>(l.n, std::min(1.0, l.v))(rng));
        return {b, b};
    }
    case EdgeLaw::Family::Poisson: {
        if (l.v <= 0.0) return {0.0, 0.0};
        double b = static_cast<double>(std::poisson_distribution<std::int64_t>(l.v)(rng));
        return {b, b};
    }
    case EdgeLaw::Family::States: {
        double u = rng.uniform() * (l.q[0] + l.q[1] + l.q[2] + l.q[3]);
        int state = 3;
        while (state > 0 && l.q[state] == 0.0) --state;   // last state with mass absorbs rounding
        double acc = 0.0;
        for (int s = 0; s < 4; ++s) {
            acc += l.q[s];
            if (u < acc) {
                state = s;
                break;
            }
        }
        return {static_cast<double>(state >> 1), static_cast<double>(state & 1)};
    }
    }
    return {0.0, 0.0};
}

} // namespace measuregraph
