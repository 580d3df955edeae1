#include "measuregraph/applications/bayes_net.hpp"

#include "measuregraph/errors.hpp"
#include "measuregraph/graph_generation.hpp"
#include "measuregraph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace measuregraph {

using nlohmann::json;

namespace {

constexpr std::uint64_t kBnProposalStream = 9;
constexpr std::uint64_t kBnAcceptStream = 10;

std::vector<std::size_t> parents_of(const Eigen::MatrixXd& dag, std::size_t v) {
    std::vector<std::size_t> p;
    for (Eigen::Index i = 0; i < dag.rows(); ++i)
        if (dag(i, static_cast<Eigen::Index>(v)) != 0.0) p.push_back(static_cast<std::size_t>(i));
    return p;
}

bool acyclic_matrix(const Eigen::MatrixXd& dag) {
    LabeledGraph g;
    g.adjacency = dag;
    g.directed = true;
    g.labels.assign(static_cast<std::size_t>(dag.rows()), 0.0);
    return is_acyclic(g);
}

// bin indices of the parent cell in mixed radix q
std::vector<std::size_t> cell_digits(std::size_t cell, std::size_t q, std::size_t parents) {
    std::vector<std::size_t> d(parents);
    for (std::size_t i = 0; i < parents; ++i) {
        d[i] = cell % q;
        cell /= q;
    }
    return d;
}

} // namespace

QuantileBins QuantileBins::fit(const Eigen::VectorXd& column, std::size_t bins) {
    require(bins >= 1, "bayes net: bin count must be positive");
    require(column.size() > 0, "bayes net: empty data column");
    std::vector<double> s(column.data(), column.data() + column.size());
    std::sort(s.begin(), s.end());
    QuantileBins b;
    const std::size_t n = s.size();
    for (std::size_t k = 1; k < bins; ++k) b.cuts.push_back(s[std::min(n - 1, k * n / bins)]);
    return b;
}

std::size_t QuantileBins::bin(double x) const {
    return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
}

std::size_t BayesNet::parent_cell(const VertexKernel& k, const Eigen::RowVectorXd& row) const {
    std::size_t cell = 0, radix = 1;
    for (std::size_t p : k.parents) {
        cell += radix * parent_bins[p].bin(row(static_cast<Eigen::Index>(p)));
        radix *= q;
    }
    return cell;
}

BayesNet bn_build_kernels(const Eigen::MatrixXd& dag, const Eigen::MatrixXd& data, std::size_t q, std::size_t r,
                          ParentPartition partition) {
    const auto n = static_cast<std::size_t>(dag.rows());
    require(dag.rows() == dag.cols(), "bayes net: DAG adjacency must be square");
    require(static_cast<std::size_t>(data.cols()) == n, "bayes net: data columns must match the DAG vertex count");
    require(data.rows() > 0, "bayes net: no data rows");
    require(q >= 1 && r >= 1, "bayes net: partition sizes must be positive");
    require(acyclic_matrix(dag), "bayes net: graph has a directed cycle");

    BayesNet net;
    net.dag = dag;
    net.q = q;
    net.r = r;
    net.partition = std::move(partition);
    for (std::size_t v = 0; v < n; ++v) {
        net.child_bins.push_back(QuantileBins::fit(data.col(static_cast<Eigen::Index>(v)), r));
        net.parent_bins.push_back(QuantileBins::fit(data.col(static_cast<Eigen::Index>(v)), q));
    }
    const Eigen::Index rows = data.rows();
    for (std::size_t v = 0; v < n; ++v) {
        VertexKernel k;
        k.vertex = v;
        k.parents = parents_of(dag, v);
        std::vector<std::size_t> cell_of(static_cast<std::size_t>(rows), 0);
        if (net.partition && !k.parents.empty()) {
            Eigen::MatrixXd pv(rows, static_cast<Eigen::Index>(k.parents.size()));
            for (std::size_t j = 0; j < k.parents.size(); ++j)
                pv.col(static_cast<Eigen::Index>(j)) = data.col(static_cast<Eigen::Index>(k.parents[j]));
            cell_of = net.partition(pv, k.cells);
            require(cell_of.size() == static_cast<std::size_t>(rows), "bayes net: partition returned wrong length");
        } else {
            k.cells = 1;
            for (std::size_t j = 0; j < k.parents.size(); ++j) {
                require(k.cells <= (std::size_t{1} << 24) / q, "bayes net: too many parent cells");
                k.cells *= q;
            }
            for (Eigen::Index i = 0; i < rows; ++i) cell_of[static_cast<std::size_t>(i)] = net.parent_cell(k, data.row(i));
        }
        Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k.cells), static_cast<Eigen::Index>(r));
        for (Eigen::Index i = 0; i < rows; ++i) {
            const std::size_t c = cell_of[static_cast<std::size_t>(i)];
            require(c < k.cells, "bayes net: parent cell out of range");
            counts(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(net.child_bins[v].bin(data(i, static_cast<Eigen::Index>(v))))) += 1.0;
        }
        const Eigen::VectorXd totals = counts.rowwise().sum();
        k.cell_map.resize(k.cells);
        for (std::size_t c = 0; c < k.cells; ++c) {
            if (totals(static_cast<Eigen::Index>(c)) > 0.0) {
                k.cell_map[c] = c;
                continue;
            }
            // nearest nonempty cell in bin-index distance, lowest index on ties
            const auto dc = cell_digits(c, q, k.parents.size());
            std::size_t best = k.cells, best_d = std::numeric_limits<std::size_t>::max();
            for (std::size_t o = 0; o < k.cells; ++o) {
                if (totals(static_cast<Eigen::Index>(o)) <= 0.0) continue;
                const auto d2 = cell_digits(o, q, k.parents.size());
                std::size_t d = 0;
                for (std::size_t j = 0; j < dc.size(); ++j) d += dc[j] > d2[j] ? dc[j] - d2[j] : d2[j] - dc[j];
                if (net.partition) d = o > c ? o - c : c - o;
                if (d < best_d) {
                    best_d = d;
                    best = o;
                }
            }
            k.cell_map[c] = best;
            net.warnings.push_back("vertex " + std::to_string(v) + ": empty parent cell " + std::to_string(c) +
                                   " merged with cell " + std::to_string(best));
        }
        k.table = Eigen::MatrixXd::Zero(counts.rows(), counts.cols());
        for (std::size_t c = 0; c < k.cells; ++c) {
            const auto src = static_cast<Eigen::Index>(k.cell_map[c]);
            k.table.row(static_cast<Eigen::Index>(c)) = counts.row(src) / totals(src);
        }
        net.kernels.push_back(std::move(k));
    }
    return net;
}

double bn_likelihood(const BayesNet& net, const Eigen::MatrixXd& data) {
    const auto n = static_cast<std::size_t>(net.dag.rows());
    require(static_cast<std::size_t>(data.cols()) == n, "bayes net: data columns must match the DAG vertex count");
    double total = 0.0;
    for (const VertexKernel& k : net.kernels) {
        std::vector<std::size_t> cell_of(static_cast<std::size_t>(data.rows()), 0);
        if (net.partition && !k.parents.empty()) {
            Eigen::MatrixXd pv(data.rows(), static_cast<Eigen::Index>(k.parents.size()));
            for (std::size_t j = 0; j < k.parents.size(); ++j)
                pv.col(static_cast<Eigen::Index>(j)) = data.col(static_cast<Eigen::Index>(k.parents[j]));
            std::size_t cells = k.cells;
            cell_of = net.partition(pv, cells);
        } else {
            for (Eigen::Index i = 0; i < data.rows(); ++i) cell_of[static_cast<std::size_t>(i)] = net.parent_cell(k, data.row(i));
        }
        for (Eigen::Index i = 0; i < data.rows(); ++i) {
            const std::size_t c = std::min(cell_of[static_cast<std::size_t>(i)], k.cells - 1);
            const std::size_t b = net.child_bins[k.vertex].bin(data(i, static_cast<Eigen::Index>(k.vertex)));
            total += std::log(std::max(k.table(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(b)), kBnProbabilityFloor));
        }
    }
    return total;
}

double bn_dag_loglik(const Eigen::MatrixXd& dag, const Eigen::MatrixXd& data, std::size_t q, std::size_t r) {
    return bn_likelihood(bn_build_kernels(dag, data, q, r), data);
}

BnMhResult bn_mh_infer(const ModelSpec& spec, const Eigen::MatrixXd& data, const BnMhConfig& config,
                       std::uint64_t seed) {
    const bool already = spec.directed() && spec.transform().kernel() &&
                         spec.transform().kernel()->order() == Kernel::Order::LessThan;
    const ModelSpec dspec = already ? spec : dag_spec(spec);
    BnMhResult res;
    res.initial = generate(dspec, seed);
    require(res.initial.size() == static_cast<std::size_t>(data.cols()),
            "bayes net: the spec produced " + std::to_string(res.initial.size()) + " vertices but the data has " +
                std::to_string(data.cols()) + " columns; use a fixed vertex count");
    require(config.rewire_n >= 1 && config.rewire_n <= res.initial.size(),
            "bayes net: rewire count must lie in 1..vertex count");
    auto loglik = [&](const LabeledGraph& g) {
        if (!is_acyclic(g)) throw NumericalError("bayes net: rewired graph has a directed cycle");
        Eigen::MatrixXd a = (g.adjacency.array() != 0.0).cast<double>();
        return bn_dag_loglik(a, data, config.q, config.r);
    };
    LabeledGraph current = res.initial;
    double cur = loglik(current);
    res.best = current;
    res.best_loglik = cur;
    res.loglik.push_back(cur);
    Rng u(derive_seed(seed, kBnAcceptStream));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t it = 0; it < config.iterations; ++it) {
        LabeledGraph prop = rewire(current, dspec, config.rewire_n, derive_seed(seed, kBnProposalStream, it));
        const double l = loglik(prop);
        const bool accept = l >= cur || std::log(unif(u)) < l - cur;
        if (accept) {
            current = std::move(prop);
            cur = l;
            if (cur > res.best_loglik) {
                res.best = current;
                res.best_loglik = cur;
            }
        }
        res.accepted.push_back(accept ? 1 : 0);
        res.loglik.push_back(cur);
    }
    return res;
}

std::vector<Eigen::MatrixXd> enumerate_dags(std::size_t n) {
    require(n <= 5, "bayes net: DAG enumeration limited to 5 vertices");
    const std::size_t pairs = n * (n - (n > 0 ? 1 : 0));
    std::vector<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) off.emplace_back(i, j);
    std::vector<Eigen::MatrixXd> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        bool two_cycle = false;
        for (std::size_t b = 0; b < pairs; ++b)
            if (mask >> b & 1) {
                const auto [i, j] = off[b];
                if (a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) != 0.0) two_cycle = true;
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
            }
        if (!two_cycle && acyclic_matrix(a)) out.push_back(a);
    }
    return out;
}

Eigen::MatrixXd read_bn_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw ValidationError("bayes net csv: non-numeric value in line '" + line + "'");
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ValidationError("bayes net csv: rows have different column counts");
        rows.push_back(std::move(row));
    }
    require(!rows.empty(), "bayes net csv: no data rows");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

json bn_to_json(const BayesNet& net) {
    json kernels = json::array();
    for (const VertexKernel& k : net.kernels) {
        json table = json::array();
        for (Eigen::Index c = 0; c < k.table.rows(); ++c) {
            json row = json::array();
            for (Eigen::Index b = 0; b < k.table.cols(); ++b) row.push_back(k.table(c, b));
            table.push_back(row);
        }
        kernels.push_back({{"vertex", k.vertex}, {"parents", k.parents}, {"table", table}});
    }
    json edges = json::array();
    for (Eigen::Index i = 0; i < net.dag.rows(); ++i)
        for (Eigen::Index j = 0; j < net.dag.cols(); ++j)
            if (net.dag(i, j) != 0.0) edges.push_back({i, j});
    return json{{"edges", edges}, {"q", net.q}, {"r", net.r}, {"kernels", kernels}, {"warnings", net.warnings}};
}

} // namespace measuregraph
