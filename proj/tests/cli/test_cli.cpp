#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(MEASUREGRAPH_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("measuregraph_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// rows of a TSV table, header first
std::vector<std::vector<std::string>> tsv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, '\t')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const char* const kSubcommands[] = {"generate", "verify", "degree-dist", "sobol", "spectral",
                                    "primes",   "spin",   "estimate",    "bn",    "nn"};

} // namespace

TEST_CASE("every subcommand documents itself") {
    for (const char* sub : kSubcommands) {
        auto r = run(std::string(sub) + " --help");
        CHECK_MESSAGE(r.status == 0, sub);
        CHECK_MESSAGE(r.out.find("Usage") != std::string::npos, sub);
    }
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
}

TEST_CASE("validation failures exit with code 2") {
    const std::string bad = "--kappa poisson:-1 --transform bernoulli:constant:0.3";
    CHECK(run("generate " + bad + " --seed 1").status == 2);
    CHECK(run("verify " + bad + " --seed 1").status == 2);
    CHECK(run("degree-dist " + bad + " --kmax 3").status == 2);
    CHECK(run("sobol " + bad).status == 2);
    CHECK(run("spectral " + bad).status == 2);
    CHECK(run("generate --kappa dirac:3 --transform bernoulli:constant:1.5 --seed 1").status == 2);
    CHECK(run("primes --s-grid 0.5:2:0.1").status == 2);
    CHECK(run("spin --sites 0").status == 2);
    CHECK(run("estimate --seed 1 --m 0 --simulate").status == 2);
    CHECK(run("nn --layers 0 --seed 1").status == 2);
    CHECK(run("generate --kappa dirac:3 --transform bernoulli:constant:0.5").status == 2);   // missing seed

    const fs::path spec = scratch() / "bad_spec.json";
    std::ofstream(spec) << R"({"kappa": {"kind": "poisson"}, "nu": {"kind": "lebesgue"}})";
    auto r = run("generate --spec " + spec.string() + " --seed 1");
    CHECK(r.status == 2);
    const fs::path csv = scratch() / "bad.csv";
    std::ofstream(csv) << "a,b\n1,2\n3,x\n";
    CHECK(run("bn --data " + csv.string() + " --seed 1").status == 2);
}

TEST_CASE("generate") {
    auto r = run("generate --kappa dirac:10 --nu leb --transform bernoulli:constant:1 --seed 7");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["edges"].size() == 45);
    CHECK(j["vertices"].size() == 10);
    CHECK(j["provenance"]["seed"] == 7);

    auto again = run("generate --kappa dirac:10 --nu leb --transform bernoulli:constant:1 --seed 7");
    CHECK(again.out == r.out);

    const fs::path out = scratch() / "g.json";
    auto many = run("generate --kappa poisson:5 --transform bernoulli:constant:0.3 --seed 7 --reps 3 --out " +
                    out.string());
    REQUIRE(many.status == 0);
    for (int i = 0; i < 3; ++i) {
        const fs::path p = scratch() / ("g_" + std::to_string(i) + ".json");
        REQUIRE(fs::exists(p));
        CHECK(nlohmann::json::parse(slurp(p))["provenance"]["seed"] == 7 + i);
    }
    auto el = run("generate --kappa dirac:4 --transform bernoulli:constant:1 --seed 1 --format edgelist");
    CHECK(std::count(el.out.begin(), el.out.end(), '\n') == 6);
}

TEST_CASE("spec files drive every command") {
    const fs::path spec = scratch() / "er.json";
    std::ofstream(spec) << R"({"kappa": {"kind": "dirac", "n": 10}, "nu": {"kind": "lebesgue"},
        "transform": {"kind": "bernoulli", "kernel": {"kind": "constant", "p": 0.3}}})";
    auto v = run("verify --spec " + spec.string() + " --seed 3 --reps 10000");
    CHECK(v.status == 0);
    auto rows = tsv(v.out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0][0] == "quantity");
    CHECK(rows[1][0] == "edge_count");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(13.5));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i].back())) <= 4.0);
}

TEST_CASE("verify") {
    auto zero = run("verify --kappa poisson:5 --transform bernoulli:constant:0 --seed 1 --reps 200");
    CHECK(zero.status == 0);
    for (const auto& row : tsv(zero.out))
        if (row[0] != "quantity") {
            CHECK(std::stod(row[1]) == 0.0);
            CHECK(std::stod(row[2]) == 0.0);
        }
    // dot-product kernel with self edges, a = 1, c = 4: self term c / (2a + 1), pair term
    // (c^2 + delta^2 - c) / (a + 1)^2 halved for unordered pairs
    auto dp = run("verify --kappa poisson:4 --nu leb:2 --transform bernoulli:dot_product:1 --loops --seed 1 --reps 2000");
    CHECK(dp.status == 0);
    auto rows = tsv(dp.out);
    CHECK(std::stod(rows[1][1]) == doctest::Approx(4.0 / 3.0 + 16.0 / 4.0 / 2.0));
    // a wrong analytic value would be flagged: threshold 0 fails any nonzero z
    CHECK(run("verify --kappa poisson:5 --transform bernoulli:constant:0.3 --seed 1 --reps 200 --threshold 0")
              .status == 5);
    auto js = run("verify --kappa dirac:6 --transform bernoulli:constant:0.5 --seed 1 --reps 100 --format json");
    CHECK(nlohmann::json::parse(js.out).is_object());
}

TEST_CASE("degree-dist") {
    auto r = run("degree-dist --kappa dirac:5 --transform bernoulli:constant:0.5 --kmax 4");
    REQUIRE(r.status == 0);
    auto rows = tsv(r.out);
    const double want[] = {0.0625, 0.25, 0.375, 0.25, 0.0625};
    REQUIRE(rows.size() == 6);
    for (int k = 0; k <= 4; ++k) CHECK(std::stod(rows[k + 1][1]) == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("sobol and spectral") {
    auto c = run("sobol --kappa poisson:5 --transform bernoulli:constant:0.3");
    REQUIRE(c.status == 0);
    auto rows = tsv(c.out);
    CHECK(rows[1].back() == "0");
    CHECK(rows[1][5] == "NA");
    auto e = run("sobol --kappa poisson:5 --transform bernoulli:exponential:1");
    CHECK(std::stod(tsv(e.out)[1][5]) == doctest::Approx(0.480313).epsilon(1e-5));
    auto s = run("spectral --kappa poisson:5 --transform bernoulli:constant:0.3 --rank 2 --format json");
    REQUIRE(s.status == 0);
    auto j = nlohmann::json::parse(s.out);
    CHECK(j["sigma"][0].get<double>() == doctest::Approx(0.3));
}

TEST_CASE("primes") {
    auto r = run("primes --nu zeta --s-grid 1.1:4:0.01");
    REQUIRE(r.status == 0);
    auto rows = tsv(r.out);
    REQUIRE(rows.size() > 100);
    std::size_t best = 1;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::stod(rows[i][1]) > std::stod(rows[best][1])) best = i;
    CHECK(std::stod(rows[best][0]) == doctest::Approx(1.49).epsilon(0.01));
    CHECK(std::stod(rows[best][1]) == doctest::Approx(0.325236).epsilon(1e-4));
    auto m = run("primes --maxima");
    CHECK(m.out.find("1.491") != std::string::npos);
    auto u = run("primes --nu uniform --n-grid 10:10:1");
    auto urows = tsv(u.out);
    REQUIRE(urows.size() == 2);
    CHECK(std::stod(urows[1][1]) == doctest::Approx(0.4));
    CHECK(std::stod(urows[1][2]) == doctest::Approx(0.12));
}

TEST_CASE("spin") {
    auto r = run("spin --sites 3 --beta-grid 0:1:0.5 --mc 20000 --seed 2");
    REQUIRE(r.status == 0);
    auto rows = tsv(r.out);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][1] == rows[i][2]);
        CHECK(std::abs(std::stod(rows[i][5])) <= 4.0);
    }
    CHECK(run("spin --sites 30").status == 4);
}

TEST_CASE("estimate, bn and nn") {
    auto e = run("estimate --simulate --seed 3 --iterations 20");
    REQUIRE(e.status == 0);
    auto j = nlohmann::json::parse(e.out);
    CHECK(j.contains("theta_hat"));
    CHECK(j.contains("relative_l2_error"));

    const fs::path g = scratch() / "obs.json";
    REQUIRE(run("generate --kappa poisson:20 --transform bernoulli:power_law:1 --seed 4 --out " + g.string()).status ==
            0);
    auto from_json = run("estimate --graph-json " + g.string() + " --seed 1 --iterations 5");
    CHECK(from_json.status == 0);

    const fs::path csv = scratch() / "bn.csv";
    {
        std::ofstream out(csv);
        out << "a,b,c\n";
        for (int i = 0; i < 60; ++i) out << i % 7 << ',' << (i % 7) * 2 + i % 2 << ',' << (i * 13) % 11 << '\n';
    }
    auto b = run("bn --data " + csv.string() + " --seed 1 --iterations 30");
    REQUIRE(b.status == 0);
    CHECK(nlohmann::json::parse(b.out).contains("best"));

    auto n = run("nn --layers 2 --p 1 --kappa dirac:4 --seed 1");
    REQUIRE(n.status == 0);
    auto nj = nlohmann::json::parse(n.out);
    CHECK(nj["expected_edges"].get<double>() == doctest::Approx(3.0));
}
