#ifndef MEASUREGRAPH_DISTRIBUTIONS_HPP
#define MEASUREGRAPH_DISTRIBUTIONS_HPP

#include "measuregraph/quadrature.hpp"
#include "measuregraph/rng.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace measuregraph {

using cplx = std::complex<double>;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {
struct ZetaTable;
}

// Law of the vertex count K. All parameters are validated on construction.
class CountingDistribution {
public:
    struct Dirac { std::int64_t n; };
    struct Poisson { double c; };
    // pmf C(r+k-1, k) (1-p)^r p^k, pgf ((1-p)/(1-p t))^r
    struct NegativeBinomial { std::int64_t r; double p; };
    struct Binomial { std::int64_t n; double p; };
    struct UniformInt { std::int64_t m; std::int64_t n; };  // uniform on {m..n}
    struct Zeta { double s; };                               // support {1, 2, ...}
    struct Zipf { double s; std::int64_t n; };               // support {1..n}
    using Kind = std::variant<Dirac, Poisson, NegativeBinomial, Binomial, UniformInt, Zeta, Zipf>;

    explicit CountingDistribution(Kind kind);

    static CountingDistribution dirac(std::int64_t n) { return CountingDistribution(Dirac{n}); }
    static CountingDistribution poisson(double c) { return CountingDistribution(Poisson{c}); }
    static CountingDistribution negative_binomial(std::int64_t r, double p) {
        return CountingDistribution(NegativeBinomial{r, p});
    }
    static CountingDistribution binomial(std::int64_t n, double p) { return CountingDistribution(Binomial{n, p}); }
    static CountingDistribution bernoulli(double p) { return binomial(1, p); }
    static CountingDistribution uniform(std::int64_t m, std::int64_t n) {
        return CountingDistribution(UniformInt{m, n});
    }
    static CountingDistribution zeta(double s) { return CountingDistribution(Zeta{s}); }
    static CountingDistribution zipf(double s, std::int64_t n) { return CountingDistribution(Zipf{s, n}); }

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;
    bool is_poisson() const noexcept { return std::holds_alternative<Poisson>(kind_); }

    double pgf(double t) const;
    cplx pgf(cplx t) const;
    // d^order/dt^order of the pgf, order in 0..3
    cplx pgf_derivative(cplx t, int order) const;
    double pmf(std::int64_t k) const;

    double mean() const;
    double variance() const;
    Moments moments() const { return {mean(), variance()}; }
    // E K(K-1)...(K-order+1), order in 0..3; +inf when it does not exist
    double factorial_moment(int order) const;

    std::int64_t sample(Rng& rng) const;
    std::optional<std::int64_t> support_max() const;

    // pgf of the K thinned by independent retention with probability a
    CountingDistribution thinned(double a) const;

private:
    Kind kind_;
    std::shared_ptr<const detail::ZetaTable> table_;
};

// Classification of a counting law into the Poisson-type family from its first two moments.
enum class PtKind { Poisson, Binomial, NegativeBinomial };

struct PtClassification {
    PtKind kind;
    CountingDistribution fitted;
    bool degenerate = false;   // zero variance: Binomial with p = 1, i.e. a point mass
};

std::string to_string(PtKind kind);
PtClassification classify_pt(double c, double variance, double tol = 0.25);

// Law of the labels.
class LabelDistribution {
public:
    struct Lebesgue { std::size_t dim = 1; };     // uniform on [0,1]^dim
    struct UniformInt { std::int64_t n; };        // uniform on {1..n}
    struct Zeta { double s; };                    // P(x) = x^-s / zeta(s) on {1, 2, ...}
    struct Empirical { std::vector<double> points; std::size_t dim = 1; };
    using Kind = std::variant<Lebesgue, UniformInt, Zeta, Empirical>;

    explicit LabelDistribution(Kind kind);

    static LabelDistribution lebesgue(std::size_t dim = 1) { return LabelDistribution(Lebesgue{dim}); }
    static LabelDistribution uniform_int(std::int64_t n) { return LabelDistribution(UniformInt{n}); }
    static LabelDistribution zeta(double s) { return LabelDistribution(Zeta{s}); }
    static LabelDistribution empirical(std::vector<double> points, std::size_t dim = 1) {
        return LabelDistribution(Empirical{std::move(points), dim});
    }

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;
    std::size_t dim() const noexcept;
    bool atomic() const noexcept { return !std::holds_alternative<Lebesgue>(kind_); }

    double mass(std::span<const double> x) const;   // atom mass; 0 for diffuse laws
    void sample(Rng& rng, std::span<double> out) const;

    // Quadrature for integrals against this law. Infinite atomic supports are truncated at
    // max_atoms (or earlier once the tail mass drops below tail_tol) with the tail lumped on one node.
    QuadratureRule rule(std::size_t order = 64, double tail_tol = 1e-12, std::size_t max_atoms = 1 << 20) const;

private:
    Kind kind_;
    std::shared_ptr<const detail::ZetaTable> table_;
};

struct IntegrationResult {
    double value = 0.0;
    double tail_bound = 0.0;   // truncated mass times sup|f| over the lumped node
    bool warning = false;      // tail_bound above the requested tolerance
};

IntegrationResult integrate(const LabelDistribution& nu, const std::function<double(std::span<const double>)>& f,
                            std::size_t order = 64, double tail_tol = 1e-12);

} // namespace measuregraph

#endif
