#include "measuregraph/analytics.hpp"
#include "measuregraph/applications/bayes_net.hpp"
#include "measuregraph/applications/neural.hpp"
#include "measuregraph/applications/primes.hpp"
#include "measuregraph/applications/spin.hpp"
#include "measuregraph/decomposition.hpp"
#include "measuregraph/errors.hpp"
#include "measuregraph/estimation.hpp"
#include "measuregraph/graph_generation.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
namespace mg = measuregraph;

namespace {

mg::ModelSpec make_spec(const std::string& kappa, const std::string& transform, const std::string& nu,
                        const std::string& weight, bool directed, bool loops) {
    return mg::ModelSpec(mg::StcMeasure{mg::parse_counting(kappa), mg::parse_label(nu)},
                         mg::parse_transform(transform, !loops),
                         weight == "indicator" ? mg::WeightFunction::Indicator : mg::WeightFunction::Identity,
                         directed);
}

mg::Direction direction_of(const std::string& d) {
    if (d == "out") return mg::Direction::Out;
    if (d == "in") return mg::Direction::In;
    throw mg::ValidationError("direction must be 'out' or 'in'");
}

mg::Perspective perspective_of(const std::string& p) {
    if (p == "vertex") return mg::Perspective::Vertex;
    if (p == "label") return mg::Perspective::Label;
    throw mg::ValidationError("perspective must be 'vertex' or 'label'");
}

mg::GraphicalCriterion criterion_of(const std::string& c) {
    if (c == "EG") return mg::GraphicalCriterion::EG;
    if (c == "GR") return mg::GraphicalCriterion::GR;
    if (c == "CM") return mg::GraphicalCriterion::CM;
    throw mg::ValidationError("criterion must be 'EG', 'GR' or 'CM'");
}

mg::RealizationMode mode_of(const std::string& m) {
    if (m == "simple") return mg::RealizationMode::Simple;
    if (m == "bipartite") return mg::RealizationMode::BipartiteFlow;
    if (m == "configuration") return mg::RealizationMode::Configuration;
    throw mg::ValidationError("mode must be 'simple', 'bipartite' or 'configuration'");
}

} // namespace

PYBIND11_MODULE(_measuregraph, m) {
    m.doc() = "Random graphs from product random measures";

    // ValidationError derives from std::invalid_argument and surfaces as ValueError
    py::register_exception<mg::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<mg::BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    py::class_<mg::ModelSpec>(m, "ModelSpec")
        .def_static("from_json", [](const std::string& text) { return mg::ModelSpec::from_json(nlohmann::json::parse(text)); })
        .def("to_json", [](const mg::ModelSpec& s) { return s.to_json().dump(); })
        .def("hash", &mg::ModelSpec::hash)
        .def_readwrite("quadrature_order", &mg::ModelSpec::quadrature_order)
        .def_property_readonly("directed", &mg::ModelSpec::directed);

    m.def("spec", &make_spec, py::arg("kappa"), py::arg("transform"), py::arg("nu") = "leb",
          py::arg("weight") = "identity", py::arg("directed") = false, py::arg("loops") = false);

    m.def("generate_json", [](const mg::ModelSpec& s, std::uint64_t seed) { return mg::graph_to_json(mg::generate(s, seed)).dump(); },
          py::arg("spec"), py::arg("seed"));
    m.def("generate_adjacency", [](const mg::ModelSpec& s, std::uint64_t seed) { return mg::generate(s, seed).adjacency; },
          py::arg("spec"), py::arg("seed"));
    m.def("edge_report_json", [](const mg::ModelSpec& s) { return mg::report_to_json(mg::edge_report(s)).dump(); });

    m.def("degree_pmf",
          [](const mg::ModelSpec& s, std::size_t k_max, const std::string& dir, const std::string& persp) {
              const auto law = mg::degree_distribution(s, direction_of(dir), perspective_of(persp));
              if (!law.pgf) throw mg::ValidationError("degrees are not integer valued for this edge transform");
              return mg::pgf_coefficients(law.pgf, k_max).p;
          },
          py::arg("spec"), py::arg("k_max"), py::arg("direction") = "out", py::arg("perspective") = "vertex");
    m.def("degree_moments",
          [](const mg::ModelSpec& s, const std::string& dir, const std::string& persp) {
              const auto law = mg::degree_distribution(s, direction_of(dir), perspective_of(persp));
              return std::make_pair(law.mean, law.variance);
          },
          py::arg("spec"), py::arg("direction") = "out", py::arg("perspective") = "vertex");

    m.def("sobol_json", [](const mg::ModelSpec& s) { return mg::sobol_to_json(mg::sobol(s)).dump(); });
    m.def("spectral_json",
          [](const mg::ModelSpec& s, std::size_t rank) {
              return mg::spectral_to_json(mg::spectral(mg::mean_weight_kernel(s), s.stc().nu, rank, s.quadrature_order)).dump();
          },
          py::arg("spec"), py::arg("rank") = 5);

    m.def("prime_density_zeta", &mg::prime_density_zeta);
    m.def("edge_density_zeta", &mg::edge_density_zeta);
    m.def("gc_threshold_zeta", &mg::gc_threshold_zeta);
    m.def("gc_threshold_uniform", &mg::gc_threshold_uniform);
    m.def("prime_density_max", [] { auto r = mg::prime_density_max(); return std::make_pair(r.argmax, r.value); });
    m.def("edge_density_max", [] { auto r = mg::edge_density_max(); return std::make_pair(r.argmax, r.value); });

    m.def("is_graphical",
          [](const std::vector<std::int64_t>& d, const std::string& c) { return mg::is_graphical(d, criterion_of(c)); },
          py::arg("degrees"), py::arg("criterion") = "EG");
    m.def("realize_degree_sequence",
          [](const std::vector<std::int64_t>& d, const std::string& mode, std::uint64_t seed) {
              return mg::realize_degree_sequence(d, mode_of(mode), seed).adjacency;
          },
          py::arg("degrees"), py::arg("mode") = "simple", py::arg("seed") = 0);

    m.def("spin_partition",
          [](std::size_t sites, const std::string& spin, double coupling, std::int64_t radius, bool include_self,
             const std::vector<double>& betas, const std::string& path) {
              mg::SpinNetwork net;
              net.spins.assign(sites, mg::parse_counting(spin));
              net.interaction = [coupling](std::int64_t, std::int64_t) { return coupling; };
              net.radius = radius;
              net.include_self = include_self;
              if (path != "gibbs" && path != "laplace") throw mg::ValidationError("path must be 'gibbs' or 'laplace'");
              return mg::spin_partition(net, betas, path == "gibbs" ? mg::PartitionPath::Gibbs : mg::PartitionPath::Laplace);
          },
          py::arg("sites"), py::arg("spin"), py::arg("coupling"), py::arg("radius") = 1,
          py::arg("include_self") = false, py::arg("betas"), py::arg("path") = "gibbs");

    m.def("estimate_json",
          [](const std::vector<Eigen::MatrixXd>& graphs, std::size_t m_, std::size_t iterations, double sigma,
             const std::string& hint, bool separable, std::uint64_t seed) {
              mg::MhConfig cfg;
              cfg.m = m_;
              cfg.iterations = iterations;
              cfg.sigma = sigma;
              cfg.hint = mg::parse_hint(hint);
              cfg.separable = separable;
              const auto r = mg::mh_estimate(mg::ObservedGraphSet(graphs), cfg, seed);
              nlohmann::json j{{"theta_hat", mg::param_to_json(r.theta_hat)},
                               {"raw", mg::param_to_json(r.raw)},
                               {"beta11", r.beta11},
                               {"ambiguous", r.symmetry.ambiguous},
                               {"c", r.counting.c},
                               {"kind", mg::to_string(r.counting.kind)},
                               {"trace", mg::trace_to_json(r.trace)}};
              return j.dump();
          },
          py::arg("graphs"), py::arg("m") = 3, py::arg("iterations") = 500, py::arg("sigma") = 0.01,
          py::arg("hint") = "none", py::arg("separable") = true, py::arg("seed") = 0);

    m.def("bn_dag_loglik", &mg::bn_dag_loglik, py::arg("dag"), py::arg("data"), py::arg("q") = 2, py::arg("r") = 2);
    m.def("bn_infer",
          [](const Eigen::MatrixXd& data, std::size_t iterations, std::size_t q, std::size_t r, double p,
             std::uint64_t seed) {
              const mg::ModelSpec spec(
                  mg::StcMeasure{mg::CountingDistribution::dirac(data.cols()), mg::LabelDistribution::lebesgue()},
                  mg::RandomTransform::bernoulli(mg::Kernel::constant(p)));
              mg::BnMhConfig cfg;
              cfg.iterations = iterations;
              cfg.q = q;
              cfg.r = r;
              const auto res = mg::bn_mh_infer(spec, data, cfg, seed);
              Eigen::MatrixXd best = (res.best.adjacency.array() != 0.0).cast<double>();
              return py::make_tuple(best, res.best_loglik, res.loglik);
          },
          py::arg("data"), py::arg("iterations") = 500, py::arg("q") = 2, py::arg("r") = 2, py::arg("p") = 0.5,
          py::arg("seed") = 0);

    m.def("nn_wire_json",
          [](std::size_t layers, const std::vector<double>& p, const std::string& kappa, std::uint64_t seed) {
              mg::NnConfig cfg;
              cfg.layers = layers;
              cfg.p = p;
              cfg.kappa = mg::parse_counting(kappa);
              return mg::nn_to_json(mg::nn_wire(cfg, seed)).dump();
          },
          py::arg("layers"), py::arg("p"), py::arg("kappa") = "poisson:10", py::arg("seed") = 0);
}
