#ifndef MEASUREGRAPH_ANALYTICS_HPP
#define MEASUREGRAPH_ANALYTICS_HPP

#include "measuregraph/model.hpp"

#include "json.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace measuregraph {

enum class Direction { Out, In };

// Vertex: degree of a realized vertex at label x (the other K - 1 points are size-biased,
// so Dirac(n) with constant p gives Binomial(n - 1, p)). Label: degree of a fixed label x
// against all K points, pgf psi(h_x(t)). The two agree for Poisson counts.
enum class Perspective { Vertex, Label };

using PgfFn = std::function<cplx(cplx)>;

struct DegreeStats {
    double mean = 0.0;
    double variance = 0.0;
    PgfFn pgf;   // empty when edge values are not integer (deterministic real weights)
};

DegreeStats degree_stats(const ModelSpec& spec, LabelView x, Direction direction = Direction::Out,
                         Perspective perspective = Perspective::Vertex);
inline DegreeStats degree_stats(const ModelSpec& spec, double x, Direction direction = Direction::Out,
                                Perspective perspective = Perspective::Vertex) {
    return degree_stats(spec, LabelView(&x, 1), direction, perspective);
}

// Law of Y = d(X), X ~ nu.
struct DegreeLaw {
    PgfFn pgf;
    double mean = 0.0;
    double variance = 0.0;
    double second_moment = 0.0;
    Direction direction = Direction::Out;
    Perspective perspective = Perspective::Vertex;
    std::string model_hash;
};

DegreeLaw degree_distribution(const ModelSpec& spec, Direction direction = Direction::Out,
                              Perspective perspective = Perspective::Vertex);

struct Coefficients {
    std::vector<double> p;   // p[0..k_max], clipped to [0, 1]
    double mass = 0.0;       // sum of p
    double deficit = 0.0;    // 1 - mass, floored at 0
    std::optional<std::string> warning;
};

// Fourier sum on |t| = 1 with M = max(256, next power of two >= 4 k_max) points.
Coefficients pgf_coefficients(const PgfFn& pgf, std::size_t k_max, double tail_tol = 1e-9);

struct EdgeTotals {
    double self = 0.0;
    double external = 0.0;
    double total = 0.0;
    double normalized = 0.0;   // undirected: external halved; directed: equal to total
};

struct GiantComponent {
    bool verdict = false;
    double margin = 0.0;   // E Y^2 - 2 E Y
};

struct AnalyticsReport {
    EdgeTotals edge_count;
    EdgeTotals edge_weight;
    std::optional<GiantComponent> giant_component;   // undirected stone-throwing specs
    std::optional<double> mean_active_vertices;      // stone-throwing specs
};

AnalyticsReport edge_report(const ModelSpec& spec);
nlohmann::json report_to_json(const AnalyticsReport& r);

// Criterion on the label-perspective degree law of an undirected spec.
GiantComponent giant_component(const ModelSpec& spec);

// Root of margin(p) on [lo, hi] by bisection; margin must change sign.
double gc_threshold(const std::function<double(double)>& margin, double lo, double hi, double tol = 1e-12);

// Expected number of vertices touching an active edge (self edges included).
double mean_active_vertices(const ModelSpec& spec);

// (c^2 + delta^2 - c) times the double integral of W(x,y) W(y,z) W(z,x), W the mean edge weight.
double triangle_mean(const ModelSpec& spec, LabelView z);
inline double triangle_mean(const ModelSpec& spec, double z) { return triangle_mean(spec, LabelView(&z, 1)); }

} // namespace measuregraph

#endif
