#ifndef MEASUREGRAPH_MODEL_HPP
#define MEASUREGRAPH_MODEL_HPP

#include "measuregraph/edge_transforms.hpp"
#include "measuregraph/random_measures.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <variant>

namespace measuregraph {

// The unit consumed by every sampler and analytic: vertex measure, edge transform, weight function.
class ModelSpec {
public:
    using Measure = std::variant<StcMeasure, FaiwMeasure>;

    ModelSpec(Measure measure, RandomTransform transform, WeightFunction weight = WeightFunction::Identity,
              bool directed = false);

    const Measure& measure() const noexcept { return measure_; }
    bool is_stc() const noexcept { return std::holds_alternative<StcMeasure>(measure_); }
    const StcMeasure& stc() const;
    const FaiwMeasure& faiw() const;
    const RandomTransform& transform() const noexcept { return transform_; }
    WeightFunction weight() const noexcept { return weight_; }
    bool directed() const noexcept { return directed_; }
    bool self_edges() const;
    std::size_t label_dim() const;

    std::size_t quadrature_order = 64;

    nlohmann::json to_json() const;
    static ModelSpec from_json(const nlohmann::json& j);
    // FNV-1a of the canonical JSON, as 16 hex digits
    std::string hash() const;

private:
    Measure measure_;
    RandomTransform transform_;
    WeightFunction weight_;
    bool directed_;
};

nlohmann::json counting_to_json(const CountingDistribution& d);
CountingDistribution counting_from_json(const nlohmann::json& j);
nlohmann::json label_to_json(const LabelDistribution& d);
LabelDistribution label_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);
nlohmann::json transform_to_json(const RandomTransform& t);
RandomTransform transform_from_json(const nlohmann::json& j);

// Compact text forms used by the CLI: "poisson:30", "dirac:10", "leb", "leb:2", "zeta:2",
// "bernoulli:constant:0.3", "poisson:power_law:1".
CountingDistribution parse_counting(const std::string& text);
LabelDistribution parse_label(const std::string& text);
RandomTransform parse_transform(const std::string& text, bool zero_diagonal = true);

std::string fnv1a_hex(const std::string& data);

} // namespace measuregraph

#endif
