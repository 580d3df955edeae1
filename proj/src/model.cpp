#include "measuregraph/model.hpp"

#include "measuregraph/errors.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace measuregraph {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(path + ": missing field '" + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_number()) throw ValidationError(path + "." + key + ": expected a number");
    return v.get<double>();
}

std::int64_t integer(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_number_integer()) throw ValidationError(path + "." + key + ": expected an integer");
    return v.get<std::int64_t>();
}

std::string text(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) throw ValidationError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
    if (!v.is_array()) throw ValidationError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (e.is_array()) {
            for (const auto& x : e) {
                if (!x.is_number()) throw ValidationError(path + ": expected numbers");
                out.push_back(x.get<double>());
            }
        } else {
            if (!e.is_number()) throw ValidationError(path + ": expected numbers");
            out.push_back(e.get<double>());
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(what + ": cannot parse number '" + s + "'");
    }
}

std::int64_t to_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(what + ": cannot parse integer '" + s + "'");
    }
}

void expect_parts(const std::vector<std::string>& parts, std::size_t n, const std::string& what) {
    if (parts.size() != n) throw ValidationError(what + ": wrong number of ':'-separated fields");
}

} // namespace

json counting_to_json(const CountingDistribution& d) {
    return std::visit(
        [](const auto& k) -> json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CountingDistribution::Dirac>) return {{"kind", "dirac"}, {"n", k.n}};
            else if constexpr (std::is_same_v<T, CountingDistribution::Poisson>)
                return {{"kind", "poisson"}, {"c", k.c}};
            else if constexpr (std::is_same_v<T, CountingDistribution::NegativeBinomial>)
                return {{"kind", "negative_binomial"}, {"r", k.r}, {"p", k.p}};
            else if constexpr (std::is_same_v<T, CountingDistribution::Binomial>)
                return {{"kind", "binomial"}, {"n", k.n}, {"p", k.p}};
            else if constexpr (std::is_same_v<T, CountingDistribution::UniformInt>)
                return {{"kind", "uniform"}, {"m", k.m}, {"n", k.n}};
            else if constexpr (std::is_same_v<T, CountingDistribution::Zeta>) return {{"kind", "zeta"}, {"s", k.s}};
            else return {{"kind", "zipf"}, {"s", k.s}, {"n", k.n}};
        },
        d.kind());
}

CountingDistribution counting_from_json(const json& j) {
    const std::string path = "kappa";
    const std::string kind = text(j, "kind", path);
    if (kind == "dirac") return CountingDistribution::dirac(integer(j, "n", path));
    if (kind == "poisson") return CountingDistribution::poisson(number(j, "c", path));
    if (kind == "negative_binomial")
        return CountingDistribution::negative_binomial(integer(j, "r", path), number(j, "p", path));
    if (kind == "binomial") return CountingDistribution::binomial(integer(j, "n", path), number(j, "p", path));
    if (kind == "bernoulli") return CountingDistribution::bernoulli(number(j, "p", path));
    if (kind == "uniform") return CountingDistribution::uniform(integer(j, "m", path), integer(j, "n", path));
    if (kind == "zeta") return CountingDistribution::zeta(number(j, "s", path));
    if (kind == "zipf") return CountingDistribution::zipf(number(j, "s", path), integer(j, "n", path));
    throw ValidationError(path + ".kind: unknown counting distribution '" + kind + "'");
}

json label_to_json(const LabelDistribution& d) {
    return std::visit(
        [](const auto& k) -> json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, LabelDistribution::Lebesgue>) return {{"kind", "lebesgue"}, {"dim", k.dim}};
            else if constexpr (std::is_same_v<T, LabelDistribution::UniformInt>)
                return {{"kind", "uniform"}, {"n", k.n}};
            else if constexpr (std::is_same_v<T, LabelDistribution::Zeta>) return {{"kind", "zeta"}, {"s", k.s}};
            else return {{"kind", "empirical"}, {"dim", k.dim}, {"points", k.points}};
        },
        d.kind());
}

LabelDistribution label_from_json(const json& j) {
    const std::string path = "nu";
    const std::string kind = text(j, "kind", path);
    if (kind == "lebesgue") {
        std::size_t dim = j.contains("dim") ? static_cast<std::size_t>(integer(j, "dim", path)) : 1;
        return LabelDistribution::lebesgue(dim);
    }
    if (kind == "uniform") return LabelDistribution::uniform_int(integer(j, "n", path));
    if (kind == "zeta") return LabelDistribution::zeta(number(j, "s", path));
    if (kind == "empirical") {
        std::size_t dim = j.contains("dim") ? static_cast<std::size_t>(integer(j, "dim", path)) : 1;
        return LabelDistribution::empirical(numbers(field(j, "points", path), path + ".points"), dim);
    }
    throw ValidationError(path + ".kind: unknown label distribution '" + kind + "'");
}

json kernel_to_json(const Kernel& k) {
    json out = std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Kernel::Constant>) return {{"kind", "constant"}, {"p", d.p}};
            else if constexpr (std::is_same_v<T, Kernel::PowerLaw>) return {{"kind", "power_law"}, {"b", d.b}};
            else if constexpr (std::is_same_v<T, Kernel::Exponential>) return {{"kind", "exponential"}, {"b", d.b}};
            else if constexpr (std::is_same_v<T, Kernel::Block>)
                return {{"kind", "block"}, {"breaks", d.breaks}, {"p", d.p}};
            else if constexpr (std::is_same_v<T, Kernel::DotProduct>) return {{"kind", "dot_product"}, {"a", d.a}};
            else if constexpr (std::is_same_v<T, Kernel::ProductPower>)
                return {{"kind", "product_power"}, {"scale", d.scale}, {"a", d.a}, {"b", d.b}};
            else if constexpr (std::is_same_v<T, Kernel::Legendre>)
                return {{"kind", "legendre"}, {"m", d.m}, {"theta", d.theta}};
            else if constexpr (std::is_same_v<T, Kernel::PrimePairs>) return {{"kind", "prime_pairs"}};
            else return {{"kind", "custom"}, {"name", d.name}};
        },
        k.kind());
    out["zero_diagonal"] = k.zero_diagonal();
    out["order"] = k.order() == Kernel::Order::LessThan ? "less" : "none";
    return out;
}

Kernel kernel_from_json(const json& j) {
    const std::string path = "kernel";
    const std::string kind = text(j, "kind", path);
    bool zero_diagonal = true;
    if (j.contains("zero_diagonal")) {
        if (!j["zero_diagonal"].is_boolean()) throw ValidationError(path + ".zero_diagonal: expected a boolean");
        zero_diagonal = j["zero_diagonal"].get<bool>();
    }
    Kernel::Order order = Kernel::Order::None;
    if (j.contains("order")) {
        std::string o = text(j, "order", path);
        if (o == "less") order = Kernel::Order::LessThan;
        else if (o != "none") throw ValidationError(path + ".order: expected 'none' or 'less'");
    }
    auto make = [&](Kernel::Kind k) { return Kernel(std::move(k), zero_diagonal, order); };
    if (kind == "constant") return make(Kernel::Constant{number(j, "p", path)});
    if (kind == "power_law") return make(Kernel::PowerLaw{number(j, "b", path)});
    if (kind == "exponential") return make(Kernel::Exponential{number(j, "b", path)});
    if (kind == "block")
        return make(Kernel::Block{numbers(field(j, "breaks", path), path + ".breaks"),
                                  numbers(field(j, "p", path), path + ".p")});
    if (kind == "dot_product") return make(Kernel::DotProduct{number(j, "a", path)});
    if (kind == "product_power")
        return make(Kernel::ProductPower{j.contains("scale") ? number(j, "scale", path) : 1.0, number(j, "a", path),
                                         number(j, "b", path)});
    if (kind == "legendre")
        return make(Kernel::Legendre{static_cast<std::size_t>(integer(j, "m", path)),
                                     numbers(field(j, "theta", path), path + ".theta")});
    if (kind == "prime_pairs") return make(Kernel::PrimePairs{});
    if (kind == "custom") throw ValidationError(path + ": custom kernels cannot be loaded from JSON");
    throw ValidationError(path + ".kind: unknown kernel '" + kind + "'");
}

json transform_to_json(const RandomTransform& t) {
    return std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, RandomTransform::Deterministic>)
                return {{"kind", "deterministic"}, {"kernel", kernel_to_json(d.f)}};
            else if constexpr (std::is_same_v<T, RandomTransform::Bernoulli>)
                return {{"kind", "bernoulli"}, {"kernel", kernel_to_json(d.f)}};
            else if constexpr (std::is_same_v<T, RandomTransform::Binomial>)
                return {{"kind", "binomial"}, {"n", d.n}, {"kernel", kernel_to_json(d.f)}};
            else if constexpr (std::is_same_v<T, RandomTransform::Poisson>)
                return {{"kind", "poisson"}, {"kernel", kernel_to_json(d.f)}};
            else
                return {{"kind", "digraphon"},
                        {"f01", kernel_to_json(d.f01)},
                        {"f11", kernel_to_json(d.f11)},
                        {"g", d.g}};
        },
        t.kind());
}

RandomTransform transform_from_json(const json& j) {
    const std::string path = "transform";
    const std::string kind = text(j, "kind", path);
    if (kind == "digraphon")
        return RandomTransform::digraphon(kernel_from_json(field(j, "f01", path)), kernel_from_json(field(j, "f11", path)),
                                          number(j, "g", path));
    Kernel k = kernel_from_json(field(j, "kernel", path));
    if (kind == "deterministic") return RandomTransform::deterministic(std::move(k));
    if (kind == "bernoulli") return RandomTransform::bernoulli(std::move(k));
    if (kind == "binomial") return RandomTransform::binomial(integer(j, "n", path), std::move(k));
    if (kind == "poisson") return RandomTransform::poisson(std::move(k));
    throw ValidationError(path + ".kind: unknown transform '" + kind + "'");
}

ModelSpec::ModelSpec(Measure measure, RandomTransform transform, WeightFunction weight, bool directed)
    : measure_(std::move(measure)), transform_(std::move(transform)), weight_(weight), directed_(directed) {
    if (transform_.pair_states()) {
        require(directed_, "spec: digraphon transforms produce directed graphs; set directed = true");
    } else if (!directed_) {
        require(transform_.kernel()->symmetric(), "spec: undirected graphs need a symmetric kernel");
    }
    if (const auto* k = transform_.kernel(); k && k->order() == Kernel::Order::LessThan) {
        require(directed_, "spec: order-restricted kernels produce directed graphs; set directed = true");
        require(label_dim() == 1, "spec: order restriction needs one-dimensional labels");
    }
    if (const auto* k = transform_.kernel()) {
        if (std::holds_alternative<Kernel::DotProduct>(k->kind()) == false && label_dim() != 1 &&
            !std::holds_alternative<Kernel::Custom>(k->kind()))
            throw ValidationError("spec: kernel " + k->name() + " needs one-dimensional labels");
    }
}

const StcMeasure& ModelSpec::stc() const {
    if (!is_stc()) throw ValidationError("spec: expected a stone-throwing measure, got fixed atoms");
    return std::get<StcMeasure>(measure_);
}

const FaiwMeasure& ModelSpec::faiw() const {
    if (is_stc()) throw ValidationError("spec: expected fixed atoms, got a stone-throwing measure");
    return std::get<FaiwMeasure>(measure_);
}

bool ModelSpec::self_edges() const {
    if (const auto* d = std::get_if<RandomTransform::Digraphon>(&transform_.kind())) return d->g > 0.0;
    const Kernel* k = transform_.kernel();
    return !k->zero_diagonal() && k->order() == Kernel::Order::None;
}

std::size_t ModelSpec::label_dim() const {
    if (is_stc()) return stc().nu.dim();
    return faiw().dim;
}

json ModelSpec::to_json() const {
    json j;
    if (is_stc()) {
        j["kappa"] = counting_to_json(stc().kappa);
        j["nu"] = label_to_json(stc().nu);
    } else {
        const auto& f = faiw();
        json w = json::array();
        for (const auto& d : f.weights) w.push_back(counting_to_json(d));
        j["atoms"] = {{"labels", f.atoms}, {"dim", f.dim}, {"weights", w}};
    }
    j["transform"] = transform_to_json(transform_);
    j["weight"] = weight_ == WeightFunction::Identity ? "identity" : "indicator";
    j["directed"] = directed_;
    j["quadrature_order"] = quadrature_order;
    return j;
}

ModelSpec ModelSpec::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("spec: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        static const std::set<std::string> known = {"kappa", "nu", "atoms", "transform", "weight", "directed",
                                                    "quadrature_order"};
        if (!known.count(key)) throw ValidationError("spec: unknown field '" + key + "'");
        (void)value;
    }
    std::optional<Measure> measure;
    if (j.contains("atoms")) {
        const json& a = j["atoms"];
        std::size_t dim = a.contains("dim") ? static_cast<std::size_t>(integer(a, "dim", "atoms")) : 1;
        std::vector<CountingDistribution> w;
        const json& wj = field(a, "weights", "atoms");
        if (!wj.is_array()) throw ValidationError("atoms.weights: expected an array");
        for (const auto& e : wj) w.push_back(counting_from_json(e));
        measure = FaiwMeasure(numbers(field(a, "labels", "atoms"), "atoms.labels"), std::move(w), dim);
    } else {
        measure = StcMeasure{counting_from_json(field(j, "kappa", "spec")), label_from_json(field(j, "nu", "spec"))};
    }
    WeightFunction g = WeightFunction::Identity;
    if (j.contains("weight")) {
        std::string w = text(j, "weight", "spec");
        if (w == "indicator") g = WeightFunction::Indicator;
        else if (w != "identity") throw ValidationError("spec.weight: expected 'identity' or 'indicator'");
    }
    bool directed = false;
    if (j.contains("directed")) {
        if (!j["directed"].is_boolean()) throw ValidationError("spec.directed: expected a boolean");
        directed = j["directed"].get<bool>();
    }
    ModelSpec spec(std::move(*measure), transform_from_json(field(j, "transform", "spec")), g, directed);
    if (j.contains("quadrature_order")) {
        auto q = integer(j, "quadrature_order", "spec");
        require(q >= 2 && q <= 4096, "spec.quadrature_order: must lie in [2, 4096]");
        spec.quadrature_order = static_cast<std::size_t>(q);
    }
    return spec;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string ModelSpec::hash() const { return fnv1a_hex(to_json().dump()); }

CountingDistribution parse_counting(const std::string& s) {
    auto p = split(s, ':');
    const std::string what = "--kappa " + s;
    if (p.empty()) throw ValidationError(what + ": empty");
    if (p[0] == "dirac") return expect_parts(p, 2, what), CountingDistribution::dirac(to_int(p[1], what));
    if (p[0] == "poisson") return expect_parts(p, 2, what), CountingDistribution::poisson(to_double(p[1], what));
    if (p[0] == "binomial")
        return expect_parts(p, 3, what), CountingDistribution::binomial(to_int(p[1], what), to_double(p[2], what));
    if (p[0] == "bernoulli") return expect_parts(p, 2, what), CountingDistribution::bernoulli(to_double(p[1], what));
    if (p[0] == "negbin" || p[0] == "negative_binomial")
        return expect_parts(p, 3, what),
               CountingDistribution::negative_binomial(to_int(p[1], what), to_double(p[2], what));
    if (p[0] == "uniform")
        return expect_parts(p, 3, what), CountingDistribution::uniform(to_int(p[1], what), to_int(p[2], what));
    if (p[0] == "zeta") return expect_parts(p, 2, what), CountingDistribution::zeta(to_double(p[1], what));
    if (p[0] == "zipf")
        return expect_parts(p, 3, what), CountingDistribution::zipf(to_double(p[1], what), to_int(p[2], what));
    throw ValidationError(what + ": unknown counting distribution");
}

LabelDistribution parse_label(const std::string& s) {
    auto p = split(s, ':');
    const std::string what = "--nu " + s;
    if (p.empty()) throw ValidationError(what + ": empty");
    if (p[0] == "leb" || p[0] == "lebesgue") {
        if (p.size() == 1) return LabelDistribution::lebesgue(1);
        expect_parts(p, 2, what);
        return LabelDistribution::lebesgue(static_cast<std::size_t>(to_int(p[1], what)));
    }
    if (p[0] == "uniform") return expect_parts(p, 2, what), LabelDistribution::uniform_int(to_int(p[1], what));
    if (p[0] == "zeta") return expect_parts(p, 2, what), LabelDistribution::zeta(to_double(p[1], what));
    throw ValidationError(what + ": unknown label distribution");
}

RandomTransform parse_transform(const std::string& s, bool zero_diagonal) {
    auto p = split(s, ':');
    const std::string what = "--transform " + s;
    if (p.size() < 2) throw ValidationError(what + ": expected <family>:<kernel>[:params]");
    std::size_t at = 1;
    std::int64_t n = 1;
    if (p[0] == "binomial") {
        n = to_int(p[1], what);
        at = 2;
    }
    if (p.size() <= at) throw ValidationError(what + ": missing kernel");
    const std::string& kname = p[at];
    auto arg = [&](std::size_t i) {
        if (p.size() <= at + i) throw ValidationError(what + ": missing kernel parameter");
        return to_double(p[at + i], what);
    };
    Kernel::Kind kk = Kernel::Constant{0.0};
    if (kname == "constant") kk = Kernel::Constant{arg(1)};
    else if (kname == "power_law") kk = Kernel::PowerLaw{arg(1)};
    else if (kname == "exponential") kk = Kernel::Exponential{arg(1)};
    else if (kname == "dot_product") kk = Kernel::DotProduct{arg(1)};
    else if (kname == "prime_pairs") kk = Kernel::PrimePairs{};
    else throw ValidationError(what + ": unknown kernel '" + kname + "'");
    Kernel k(std::move(kk), zero_diagonal);
    if (p[0] == "deterministic") return RandomTransform::deterministic(std::move(k));
    if (p[0] == "bernoulli") return RandomTransform::bernoulli(std::move(k));
    if (p[0] == "binomial") return RandomTransform::binomial(n, std::move(k));
    if (p[0] == "poisson") return RandomTransform::poisson(std::move(k));
    throw ValidationError(what + ": unknown transform family '" + p[0] + "'");
}

} // namespace measuregraph
