#ifndef MEASUREGRAPH_EDGE_TRANSFORMS_HPP
#define MEASUREGRAPH_EDGE_TRANSFORMS_HPP

#include "measuregraph/distributions.hpp"
#include "measuregraph/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace measuregraph {

using LabelView = std::span<const double>;

// Orthonormal shifted Legendre polynomial phi_k on [0,1], k >= 1 (phi_1 = 1).
double shifted_legendre(std::size_t k, double x);

// Symmetric or asymmetric kernel f(x, y) on labels. The diagonal mask 1(x != y) and the
// order restriction 1(x < y) are part of the kernel; base() ignores the diagonal mask.
class Kernel {
public:
    using Fn = std::function<double(LabelView, LabelView)>;
    enum class Order { None, LessThan };

    struct Constant { double p; };
    struct PowerLaw { double b; };            // (1+bx)^-2 (1+by)^-2
    struct Exponential { double b; };         // exp(-b(x+y))
    struct Block { std::vector<double> breaks; std::vector<double> p; };  // p is k x k row-major
    struct DotProduct { double a; };          // mean over coordinates of x_i^a y_i^a
    struct ProductPower { double scale; double a; double b; };  // scale x^a y^b
    struct Legendre { std::size_t m; std::vector<double> theta; };  // sum theta_ij phi_i(x) phi_j(y)
    struct PrimePairs {};                     // 1 if both labels are prime
    struct Custom { std::string name; Fn fn; bool symmetric = true; };
    using Kind = std::variant<Constant, PowerLaw, Exponential, Block, DotProduct, ProductPower, Legendre, PrimePairs,
                              Custom>;

    explicit Kernel(Kind kind, bool zero_diagonal = true, Order order = Order::None);

    static Kernel constant(double p, bool zero_diagonal = true) { return Kernel(Constant{p}, zero_diagonal); }
    static Kernel power_law(double b, bool zero_diagonal = true) { return Kernel(PowerLaw{b}, zero_diagonal); }
    static Kernel exponential(double b, bool zero_diagonal = true) { return Kernel(Exponential{b}, zero_diagonal); }
    static Kernel legendre(std::size_t m, std::vector<double> theta, bool zero_diagonal = true) {
        return Kernel(Legendre{m, std::move(theta)}, zero_diagonal);
    }

    double base(LabelView x, LabelView y) const;
    // base() for two distinct points of a diffuse label law: a tied grid node under the order
    // restriction stands for nearby points, half of which are ordered.
    double diffuse(LabelView x, LabelView y) const;
    double operator()(LabelView x, LabelView y) const;
    double operator()(double x, double y) const { return (*this)(LabelView(&x, 1), LabelView(&y, 1)); }

    const Kind& kind() const noexcept { return kind_; }
    bool zero_diagonal() const noexcept { return zero_diagonal_; }
    Order order() const noexcept { return order_; }
    bool symmetric() const;
    std::string name() const;

    Kernel with_order(Order order) const {
        Kernel k = *this;
        k.order_ = order;
        return k;
    }
    Kernel with_zero_diagonal(bool z) const {
        Kernel k = *this;
        k.zero_diagonal_ = z;
        return k;
    }

private:
    double unordered(LabelView x, LabelView y) const;

    Kind kind_;
    bool zero_diagonal_;
    Order order_;
};

bool same_label(LabelView x, LabelView y);

// Edge weight function g applied to phi(x, y).
enum class WeightFunction { Identity, Indicator };

// Digraphon pair states (a, b) = (phi(x,y), phi(y,x)) as a bitmask over 00, 01, 10, 11.
struct StateSet {
    std::uint8_t mask = 0;
    static constexpr std::uint8_t bit(int a, int b) { return static_cast<std::uint8_t>(1u << (2 * a + b)); }
    bool contains(int a, int b) const { return (mask & bit(a, b)) != 0; }
    static StateSet out_edges() { return {static_cast<std::uint8_t>(bit(1, 0) | bit(1, 1))}; }
    static StateSet in_edges() { return {static_cast<std::uint8_t>(bit(0, 1) | bit(1, 1))}; }
    static StateSet any_edge() { return {static_cast<std::uint8_t>(bit(0, 1) | bit(1, 0) | bit(1, 1))}; }
    static StateSet mutual() { return {bit(1, 1)}; }
};

// Law of phi at one site. For pair-state transforms q holds the four state probabilities.
struct EdgeLaw {
    enum class Family { Deterministic, Bernoulli, Binomial, Poisson, States };
    Family family = Family::Deterministic;
    double v = 0.0;
    std::int64_t n = 1;
    std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};   // index 2a+b

    // moments of the counted value: g(phi) for scalar families, 1(state in set) for States
    double mean(WeightFunction g, StateSet set = StateSet::out_edges()) const;
    double second(WeightFunction g, StateSet set = StateSet::out_edges()) const;
    double active(StateSet set = StateSet::out_edges()) const;
    // pgf of the counted value; deterministic values are treated as {0,1}-valued
    cplx pgf(cplx t, WeightFunction g, StateSet set = StateSet::out_edges()) const;
};

// Where the law is evaluated: a vertex with itself, two vertices with masked kernel
// (exact for atomic labels), or two vertices with the unmasked base kernel (diffuse labels).
enum class Site { Self, Pair, PairBase };

// Random transformation phi of the label pairs into edge values.
class RandomTransform {
public:
    struct Deterministic { Kernel f; };
    struct Bernoulli { Kernel f; };
    struct Binomial { std::int64_t n; Kernel f; };
    struct Poisson { Kernel f; };
    // Pair states for x != y: f01, f11 given, f10(x,y) = f01(y,x), f00 = remainder. Self loops ~ Bernoulli(g).
    struct Digraphon { Kernel f01; Kernel f11; double g; };
    using Kind = std::variant<Deterministic, Bernoulli, Binomial, Poisson, Digraphon>;

    explicit RandomTransform(Kind kind);

    static RandomTransform deterministic(Kernel f) { return RandomTransform(Deterministic{std::move(f)}); }
    static RandomTransform bernoulli(Kernel f) { return RandomTransform(Bernoulli{std::move(f)}); }
    static RandomTransform binomial(std::int64_t n, Kernel f) { return RandomTransform(Binomial{n, std::move(f)}); }
    static RandomTransform poisson(Kernel f) { return RandomTransform(Poisson{std::move(f)}); }
    static RandomTransform digraphon(Kernel f01, Kernel f11, double g) {
        return RandomTransform(Digraphon{std::move(f01), std::move(f11), g});
    }

    const Kind& kind() const noexcept { return kind_; }
    bool pair_states() const noexcept { return std::holds_alternative<Digraphon>(kind_); }
    bool integer_valued() const noexcept { return !std::holds_alternative<Deterministic>(kind_); }
    const Kernel* kernel() const noexcept;   // null for pair-state transforms
    std::string name() const;

    EdgeLaw law(LabelView x, LabelView y, Site site) const;

    // One draw of phi(x, y). For pair-state transforms returns the state (phi(x,y), phi(y,x)).
    std::pair<double, double> sample(LabelView x, LabelView y, Site site, Rng& rng) const;

private:
    Kind kind_;
};

double apply_weight(WeightFunction g, double value);

} // namespace measuregraph

#endif
