#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace oracle {

double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
    if (k < 0 || k > n) return 0.0;
    double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    double v = std::exp(logc);
    return v * std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(n - k));
}

double poisson_pmf(double c, std::int64_t k) {
    if (k < 0) return 0.0;
    return std::exp(-c + k * std::log(c) - std::lgamma(k + 1.0));
}

void MeanAccumulator::add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
}

double MeanAccumulator::stderr_() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
}

double MeanAccumulator::z(double expected) const {
    double se = stderr_();
    double diff = mean - expected;
    if (se == 0.0) return std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(expected)) ? 0.0 : INFINITY;
    return diff / se;
}

namespace {

std::set<Sequence> enumerate_sequences(std::size_t n, bool diagonal) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = diagonal ? i : i + 1; j < n; ++j) cells.emplace_back(i, j);
    std::set<Sequence> out;
    const std::uint64_t total = std::uint64_t{1} << cells.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Sequence d(n, 0);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!((mask >> c) & 1u)) continue;
            auto [i, j] = cells[c];
            ++d[i];
            if (i != j) ++d[j];
        }
        std::sort(d.begin(), d.end(), std::greater<>());
        out.insert(d);
    }
    return out;
}

} // namespace

std::set<Sequence> simple_graph_sequences(std::size_t n) { return enumerate_sequences(n, false); }
std::set<Sequence> symmetric_matrix_sequences(std::size_t n) { return enumerate_sequences(n, true); }

std::vector<Sequence> nonincreasing_sequences(std::size_t n, std::int64_t max_entry) {
    std::vector<Sequence> out;
    Sequence cur;
    std::function<void(std::int64_t)> rec = [&](std::int64_t cap) {
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = cap; v >= 0; --v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(max_entry);
    return out;
}

std::vector<Eigen::MatrixXd> three_vertex_dags() {
    const int off[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
    std::vector<Eigen::MatrixXd> out;
    for (int mask = 0; mask < 64; ++mask) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
        for (int b = 0; b < 6; ++b)
            if ((mask >> b) & 1) a(off[b][0], off[b][1]) = 1.0;
        // a cycle on three vertices has length 2 or 3: trace of A^2 or A^3 is positive
        Eigen::MatrixXd a2 = a * a;
        if (a2.trace() > 0.0 || (a2 * a).trace() > 0.0) continue;
        out.push_back(a);
    }
    return out;
}

namespace {

std::vector<double> cuts_of(std::vector<double> col, std::size_t bins) {
    std::sort(col.begin(), col.end());
    const std::size_t n = col.size();
    std::vector<double> cuts;
    for (std::size_t k = 1; k < bins; ++k) cuts.push_back(col[std::min(n - 1, k * n / bins)]);
    return cuts;
}

std::size_t bin_of(const std::vector<double>& cuts, double x) {
    std::size_t b = 0;
    for (double c : cuts)
        if (c <= x) ++b;
    return b;
}

} // namespace

double bn_loglik_counts(const Eigen::MatrixXd& dag, const Eigen::MatrixXd& data, std::size_t q, std::size_t r) {
    const auto rows = static_cast<std::size_t>(data.rows());
    const auto cols = static_cast<std::size_t>(data.cols());
    std::vector<std::vector<std::size_t>> child(cols, std::vector<std::size_t>(rows)),
        parent(cols, std::vector<std::size_t>(rows));
    for (std::size_t v = 0; v < cols; ++v) {
        std::vector<double> col(rows);
        for (std::size_t i = 0; i < rows; ++i) col[i] = data(i, v);
        auto cc = cuts_of(col, r), pc = cuts_of(col, q);
        for (std::size_t i = 0; i < rows; ++i) {
            child[v][i] = bin_of(cc, col[i]);
            parent[v][i] = bin_of(pc, col[i]);
        }
    }
    double total = 0.0;
    for (std::size_t v = 0; v < cols; ++v) {
        std::map<std::vector<std::size_t>, std::map<std::size_t, double>> joint;
        std::map<std::vector<std::size_t>, double> margin;
        std::vector<std::vector<std::size_t>> keys(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t u = 0; u < cols; ++u)
                if (dag(u, v) != 0.0) keys[i].push_back(parent[u][i]);
            joint[keys[i]][child[v][i]] += 1.0;
            margin[keys[i]] += 1.0;
        }
        for (std::size_t i = 0; i < rows; ++i) total += std::log(joint[keys[i]][child[v][i]] / margin[keys[i]]);
    }
    return total;
}

SobolClosedForm sobol_exponential(double a) {
    // W = g(x) g(y): W0 = m^2, Var W1 = m^2 (v - m^2), Var W = v^2 - m^4
    const double m = -std::expm1(-a) / a;
    const double v = -std::expm1(-2.0 * a) / (2.0 * a);
    const double s1 = m * m / (v + m * m);
    const double s12 = 1.0 - 2.0 * s1;
    return {s1, s1, s12, 2.0 * s1 + 2.0 * s12};
}

double sobol_exponential_s1_alt(double a) {
    const double e = std::exp(a);
    return 2.0 * (e - 1.0) / ((a + 2.0) * e + a - 2.0);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    const std::size_t n = std::max(p.size(), q.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = i < p.size() ? p[i] : 0.0, b = i < q.size() ? q[i] : 0.0;
        s += std::abs(a - b);
    }
    return 0.5 * s;
}

} // namespace oracle
