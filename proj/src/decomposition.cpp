#include "measuregraph/decomposition.hpp"

#include "measuregraph/errors.hpp"

#include <algorithm>
#include <cmath>

namespace measuregraph {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxGrid = 2048;

Eigen::MatrixXd grid_values(const PairKernel& w, const QuadratureRule& rule) {
    const auto n = static_cast<Eigen::Index>(rule.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = w(rule.node(static_cast<std::size_t>(i)), rule.node(static_cast<std::size_t>(j)));
    return m;
}

Eigen::VectorXd weights_of(const QuadratureRule& rule) {
    return Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), static_cast<Eigen::Index>(rule.size()));
}

json grid_json(const QuadratureRule& rule) {
    json g = json::array();
    for (std::size_t i = 0; i < rule.size(); ++i) {
        auto x = rule.node(i);
        if (rule.dim == 1) g.push_back(x[0]);
        else g.push_back(std::vector<double>(x.begin(), x.end()));
    }
    return g;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

} // namespace

PairKernel mean_weight_kernel(const ModelSpec& spec) {
    const bool atomic = spec.is_stc() ? spec.stc().nu.atomic() : true;
    const Site site = atomic ? Site::Pair : Site::PairBase;
    RandomTransform t = spec.transform();
    WeightFunction g = spec.weight();
    return [t, g, site](LabelView x, LabelView y) { return t.law(x, y, site).mean(g, StateSet::out_edges()); };
}

double SobolDecomposition::component_1(LabelView x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) s += rule.weights[j] * kernel(x, rule.node(j));
    return s - w0;
}

double SobolDecomposition::component_2(LabelView y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * kernel(rule.node(i), y);
    return s - w0;
}

double SobolDecomposition::component_12(LabelView x, LabelView y) const {
    return kernel(x, y) - w0 - component_1(x) - component_2(y);
}

SobolDecomposition sobol(const PairKernel& w, const LabelDistribution& nu, std::size_t order) {
    SobolDecomposition d;
    d.kernel = w;
    d.rule = nu.rule(order, 1e-12, kMaxGrid);
    const Eigen::VectorXd wt = weights_of(d.rule);
    const Eigen::MatrixXd m = grid_values(w, d.rule);
    const Eigen::VectorXd row = m * wt;               // nu W(x, .)
    const Eigen::VectorXd col = m.transpose() * wt;   // nu W(., y)
    d.w0 = wt.dot(row);
    const Eigen::VectorXd c1 = row.array() - d.w0, c2 = col.array() - d.w0;
    Eigen::MatrixXd r = m;
    r.colwise() -= c1;
    r.rowwise() -= c2.transpose();
    r.array() -= d.w0;
    d.w1.assign(c1.data(), c1.data() + c1.size());
    d.w2.assign(c2.data(), c2.data() + c2.size());
    d.w12 = r;
    d.var_w1 = wt.dot(c1.cwiseProduct(c1));
    d.var_w2 = wt.dot(c2.cwiseProduct(c2));
    d.var_w12 = wt.dot(r.cwiseProduct(r) * wt);
    d.var_w = wt.dot(m.cwiseProduct(m) * wt) - d.w0 * d.w0;
    // relative round-off floor so a constant kernel reports zero variance
    const double floor = 1e-14 * std::max(1.0, d.w0 * d.w0);
    if (d.var_w > floor) {
        const double total = d.var_w1 + d.var_w2 + d.var_w12;
        d.s1 = d.var_w1 / total;
        d.s2 = d.var_w2 / total;
        d.s12 = d.var_w12 / total;
        d.effective_dimension = *d.s1 + *d.s2 + 2.0 * *d.s12;
    }
    return d;
}

SobolDecomposition sobol(const ModelSpec& spec) {
    require(spec.is_stc(), "sobol: requires a stone-throwing measure");
    return sobol(mean_weight_kernel(spec), spec.stc().nu, spec.quadrature_order);
}

SobolDegrees sobol_degrees(const SobolDecomposition& d) {
    SobolDegrees out;
    for (double v : d.w1) out.out.push_back(d.w0 + v);
    for (double v : d.w2) out.in.push_back(d.w0 + v);
    return out;
}

Eigen::MatrixXd SpectralDecomposition::reconstruct() const {
    const Eigen::Index r = static_cast<Eigen::Index>(sigma.size());
    Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(sigma.data(), r);
    return left.leftCols(r) * s.asDiagonal() * right.leftCols(r).transpose();
}

SpectralDecomposition spectral(const PairKernel& w, const LabelDistribution& nu, std::size_t rank,
                               std::size_t order) {
    SpectralDecomposition d;
    d.rule = nu.rule(order, 1e-12, kMaxGrid);
    const std::size_t n = d.rule.size();
    if (rank > n) {
        d.warning = "rank " + std::to_string(rank) + " exceeds the grid size " + std::to_string(n) + "; clipped";
        rank = n;
    }
    const Eigen::MatrixXd m = grid_values(w, d.rule);
    d.symmetric = (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
    const Eigen::VectorXd sq = weights_of(d.rule).cwiseSqrt();
    const Eigen::MatrixXd k = sq.asDiagonal() * m * sq.asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index r = static_cast<Eigen::Index>(rank);
    Eigen::MatrixXd u = svd.matrixU().leftCols(r), v = svd.matrixV().leftCols(r);
    for (Eigen::Index c = 0; c < r; ++c) {
        Eigen::Index first = 0;
        while (first < u.rows() && std::abs(u(first, c)) <= 1e-12) ++first;
        if (first < u.rows() && u(first, c) < 0.0) {
            u.col(c) *= -1.0;
            v.col(c) *= -1.0;
        }
    }
    const Eigen::VectorXd inv = sq.unaryExpr([](double s) { return s > 0.0 ? 1.0 / s : 0.0; });
    d.left = inv.asDiagonal() * u;
    d.right = inv.asDiagonal() * v;
    for (Eigen::Index c = 0; c < r; ++c) d.sigma.push_back(svd.singularValues()(c));
    return d;
}

json sobol_to_json(const SobolDecomposition& d) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return json{{"grid", grid_json(d.rule)},
                {"weights", d.rule.weights},
                {"w0", d.w0},
                {"w1", d.w1},
                {"w2", d.w2},
                {"w12", matrix_json(d.w12)},
                {"variance", {{"w1", d.var_w1}, {"w2", d.var_w2}, {"w12", d.var_w12}, {"total", d.var_w}}},
                {"indices", {{"s1", opt(d.s1)}, {"s2", opt(d.s2)}, {"s12", opt(d.s12)}}},
                {"effective_dimension", d.effective_dimension}};
}

json spectral_to_json(const SpectralDecomposition& d) {
    json j{{"grid", grid_json(d.rule)},
           {"weights", d.rule.weights},
           {"sigma", d.sigma},
           {"left", matrix_json(d.left.transpose())},
           {"right", matrix_json(d.right.transpose())},
           {"symmetric", d.symmetric}};
    if (d.warning) j["warning"] = *d.warning;
    return j;
}

} // namespace measuregraph
