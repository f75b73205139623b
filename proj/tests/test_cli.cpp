// Drives the built CLI binary end to end: exit codes, report contents,
// CSV schema, and byte stability.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "relaychain/chain_model.hpp"
#include "relaychain/cutset_bounds.hpp"
#include "relaychain/nnc_rates.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(RELAYCHAIN_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("relaychain_cli_test_" + name);
}

}  // namespace

TEST_CASE("rates: scenario point reproduces the equalized cut minimum") {
    const CliResult res = run_cli("rates --h1-sq-db 20 --scenario --rho12 0.866");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    const double expected =
        relaychain::cutset_bound(relaychain::scenario_params(100.0, 0.866)).c_min;
    CHECK(doc["cutset"]["c_min"].get<double>() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(doc["nnc"]["max_abs_diff"].get<double>() < 1e-9);
    CHECK(doc.contains("concat"));
}

TEST_CASE("rates: out-of-range correlation exits 2 with a named violation") {
    const CliResult res = run_cli("rates --rho12 1.5 --h1-sq 1");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("correlation out of range") != std::string::npos);
}

TEST_CASE("rates: dead chain reports all-zero bounds") {
    const CliResult res = run_cli("rates --h1 0 --h2 0 --h3 0");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.output);
    CHECK(doc["cutset"]["c1"].get<double>() == 0.0);
    CHECK(doc["cutset"]["c2"].get<double>() == 0.0);
    CHECK(doc["cutset"]["c3"].get<double>() == 0.0);
    CHECK(doc["cutset"]["c4"].get<double>() == 0.0);
    CHECK(doc["cutset"]["c_min"].get<double>() == 0.0);
}

TEST_CASE("rates: csv single-row format") {
    const CliResult res = run_cli("rates --h1-sq 4 --rho12 0.3 --format csv");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].size() == rows[1].size());
    CHECK(rows[0][0] == "params_h1_sq");
}

TEST_CASE("rates: conflicting h1 forms exit 2") {
    CHECK(run_cli("rates --h1-sq-db 20 --h1-sq 100").exit_code == 2);
    CHECK(run_cli("rates --h1-sq 100 --h1 10").exit_code == 2);
}

TEST_CASE("sweep: schema, symmetry and byte stability") {
    const std::string flags = "sweep --h1-sq 100 --rho-min -0.9 --rho-max 0.9 --steps 7";
    const CliResult first = run_cli(flags);
    REQUIRE(first.exit_code == 0);
    const CliResult second = run_cli(flags);
    CHECK(first.output == second.output);

    const auto rows = parse_csv(first.output);
    REQUIRE(rows.size() == 8);  // header + 7 rows
    const std::vector<std::string> header = {"rho12",    "cutset_min",  "nnc_r1",
                                             "nnc_r2",   "nnc_r3",      "nnc_min",
                                             "concat_rate", "concat_gap", "nnc_gap"};
    CHECK(rows[0] == header);

    // Middle row sits exactly at rho = 0, serialized without a sign.
    CHECK(rows[4][0] == "0");

    // Every series is even in rho; the sweep rows mirror around the middle.
    for (int i = 1; i <= 3; ++i) {
        const auto& low = rows[i];
        const auto& high = rows[8 - i];
        CHECK(std::stod(low[0]) == doctest::Approx(-std::stod(high[0])));
        for (std::size_t col = 1; col < low.size(); ++col) {
            CHECK(std::stod(low[col]) == doctest::Approx(std::stod(high[col])).epsilon(1e-9));
        }
    }

    // Recompute one row independently.
    const double rho = std::stod(rows[1][0]);
    const auto p = relaychain::scenario_params(100.0, rho);
    CHECK(std::stod(rows[1][1]) ==
          doctest::Approx(relaychain::cutset_bound(p).c_min).epsilon(1e-9));
}

TEST_CASE("sweep: bad ranges exit 2, unwritable output exits 3") {
    CHECK(run_cli("sweep --h1-sq 100 --rho-min 0.5 --rho-max 0.2").exit_code == 2);
    CHECK(run_cli("sweep --h1-sq 100 --rho-min -1.0 --rho-max 0.5").exit_code == 2);
    CHECK(run_cli("sweep --h1-sq 100 --steps 1").exit_code == 2);
    CHECK(run_cli("sweep --h1-sq 100 --q-policy nonsense").exit_code == 2);
    CHECK(run_cli("sweep --h1-sq 100 --out /nonexistent-dir/out.csv").exit_code == 3);
}

TEST_CASE("sweep: fixed quantization policy is honored") {
    const CliResult res =
        run_cli("sweep --h1-sq 100 --rho-min -0.5 --rho-max 0.5 --steps 3 --q-policy fixed:0.5,2");
    REQUIRE(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 4);
    const auto p = relaychain::scenario_params(100.0, 0.0);
    const auto r = relaychain::nnc_rates_closed(p, {0.5, 2.0});
    CHECK(std::stod(rows[2][5]) == doctest::Approx(r.r_min).epsilon(1e-9));
}

TEST_CASE("optimize: deterministic JSON output") {
    const std::string flags = "optimize --h1-sq 100 --scenario --rho12 0.866";
    const CliResult first = run_cli(flags);
    REQUIRE(first.exit_code == 0);
    CHECK(run_cli(flags).output == first.output);
    const json doc = json::parse(first.output);
    CHECK(doc["rate_opt"].get<double>() > 0.0);
    CHECK(doc["gap_at_opt"].get<double>() > 0.0);
    CHECK(doc["grid_stats"]["evaluations"].get<long long>() > 0);
}

TEST_CASE("optimize: gaps grow along the correlation ladder") {
    double prev = -1.0;
    for (const char* rho : {"0.94868329805", "0.99498743710", "0.99949987494"}) {
        const CliResult res =
            run_cli(std::string("optimize --h1-sq 100 --scenario --rho12 ") + rho);
        REQUIRE(res.exit_code == 0);
        const double gap = json::parse(res.output)["gap_at_opt"].get<double>();
        CHECK(gap > prev);
        prev = gap;
    }
}

TEST_CASE("validate: small run passes and seed only shifts estimates") {
    const auto out_path = temp_file("validate.json");
    const CliResult res = run_cli("validate --n-samples 20000 --seed 42 --format json --out " +
                                  out_path.string());
    REQUIRE(res.exit_code == 0);
    std::ifstream in(out_path);
    REQUIRE(in.good());
    const json doc = json::parse(in);
    CHECK(doc["all_pass"].get<bool>());
    CHECK(doc["terms"].size() == 10);

    const CliResult other = run_cli("validate --n-samples 20000 --seed 43 --format json");
    REQUIRE(other.exit_code == 0);
    const json other_doc = json::parse(other.output);
    CHECK(other_doc["all_pass"].get<bool>());
    // Different seed, different estimates.
    CHECK(other_doc["terms"][0]["mc_estimate"].get<double>() !=
          doc["terms"][0]["mc_estimate"].get<double>());
    std::filesystem::remove(out_path);
}

TEST_CASE("validate: undersized sample count exits 2") {
    CHECK(run_cli("validate --n-samples 5000").exit_code == 2);
}
