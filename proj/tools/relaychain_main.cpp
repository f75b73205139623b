// Command-line front end: single-point rate reports, correlation sweeps,
// quantization optimization, and Monte Carlo validation of the closed forms.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "relaychain/concat_scheme.hpp"
#include "relaychain/cutset_bounds.hpp"
#include "relaychain/mc_oracle.hpp"
#include "relaychain/nnc_rates.hpp"
#include "relaychain/quant_optimizer.hpp"

using json = nlohmann::ordered_json;
using namespace relaychain;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitBadArguments = 2;
constexpr int kExitIoFailure = 3;

constexpr std::uint64_t kDefaultSeed = 2654435769ULL;

struct BadArguments : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits, "." decimal separator, "inf" for divergent values.
std::string fmt(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        v = 0.0;  // normalize -0
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json json_num(double v) {
    if (std::isinf(v)) {
        return json(v > 0 ? "inf" : "-inf");
    }
    return json(v);
}

// Channel/quantization flags shared by the subcommands.
struct ParamFlags {
    std::optional<double> h1_sq_db;
    std::optional<double> h1_sq;
    std::optional<double> h1, h2, h3;
    double h2_sq = 1.0;
    double h3_sq = 1.0;
    double rho12 = 0.0;
    double rho13 = 0.0;
    double rho23 = 0.0;
    bool scenario = false;
    bool h2_sq_set = false;
    bool h3_sq_set = false;

    void attach(CLI::App* cmd, bool with_scenario = true) {
        cmd->add_option("--h1-sq-db", h1_sq_db, "First-hop power h1^2 in dB (10^(dB/10))");
        cmd->add_option("--h1-sq", h1_sq, "First-hop power h1^2 (linear)");
        cmd->add_option("--h1", h1, "First-hop amplitude h1");
        cmd->add_option("--h2", h2, "Second-hop amplitude h2");
        cmd->add_option("--h3", h3, "Last-hop amplitude h3");
        cmd->add_option("--h2-sq", h2_sq, "Second-hop power h2^2 (default 1)")
            ->each([this](const std::string&) { h2_sq_set = true; });
        cmd->add_option("--h3-sq", h3_sq, "Last-hop power h3^2 (default 1)")
            ->each([this](const std::string&) { h3_sq_set = true; });
        cmd->add_option("--rho12", rho12, "Noise correlation between relays 1 and 2");
        cmd->add_option("--rho13", rho13, "Noise correlation between relay 1 and destination");
        cmd->add_option("--rho23", rho23, "Noise correlation between relay 2 and destination");
        if (with_scenario) {
            cmd->add_flag("--scenario", scenario,
                          "Derive h2^2 = h3^2 = h1^2/(1-rho12^2) and force rho13 = rho23 = 0");
        }
    }

    double resolve_h1_sq() const {
        if (h1_sq_db && (h1_sq || h1)) {
            throw BadArguments("give h1 in exactly one form (--h1-sq-db, --h1-sq or --h1)");
        }
        if (h1_sq_db) {
            return std::pow(10.0, *h1_sq_db / 10.0);
        }
        if (h1_sq) {
            return *h1_sq;
        }
        if (h1) {
            return (*h1) * (*h1);
        }
        return 1.0;
    }

    ChainParams build() const {
        const double h1s = resolve_h1_sq();
        if (scenario) {
            if (h2_sq_set || h3_sq_set || h2 || h3) {
                throw BadArguments("--scenario derives h2 and h3; do not pass them");
            }
            if (rho13 != 0.0 || rho23 != 0.0) {
                throw BadArguments("--scenario requires rho13 = rho23 = 0");
            }
            if (!(std::abs(rho12) < 1.0)) {
                throw BadArguments("correlation out of range: --scenario needs |rho12| < 1");
            }
            if (!(h1s > 0.0)) {
                throw BadArguments("--scenario needs h1^2 > 0");
            }
            return scenario_params(h1s, rho12);
        }
        ChainParams p;
        p.h1 = std::sqrt(h1s);
        p.h2 = h2 ? *h2 : std::sqrt(h2_sq);
        p.h3 = h3 ? *h3 : std::sqrt(h3_sq);
        p.rho12 = rho12;
        p.rho13 = rho13;
        p.rho23 = rho23;
        if (auto violation = validate(p)) {
            throw BadArguments(*violation);
        }
        return p;
    }
};

// Destination stream for reports: a file when --out is given, else stdout.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw IoFailure("cannot open output path: " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        stream().flush();
        if ((file_.is_open() && !file_) || (!file_.is_open() && !std::cout)) {
            throw IoFailure("write failure on output stream");
        }
    }

  private:
    std::ofstream file_;
};

json rates_report(const ChainParams& p, const QuantLevels& q) {
    const CutsetBounds c = cutset_bound(p);
    const NncRates closed = nnc_rates_closed(p, q);
    const NncRates generic = nnc_rates_generic(p, q);
    const GapReport gaps = nnc_gaps(p, q);
    const double max_diff =
        std::max({std::abs(closed.r1 - generic.r1), std::abs(closed.r2 - generic.r2),
                  std::abs(closed.r3 - generic.r3)});

    json out;
    out["params"] = {{"h1_sq", p.h1_sq()},   {"h2_sq", p.h2_sq()},   {"h3_sq", p.h3_sq()},
                     {"rho12", p.rho12},     {"rho13", p.rho13},     {"rho23", p.rho23}};
    out["quant"] = {{"q1", q.q1}, {"q2", q.q2}};
    out["cutset"] = {{"c1", json_num(c.c1)}, {"c2", json_num(c.c2)},    {"c3", json_num(c.c3)},
                     {"c4", json_num(c.c4)}, {"c_min", json_num(c.c_min)},
                     {"divergent", c.divergent}};
    out["nnc"] = {{"closed",
                   {{"r1", closed.r1},
                    {"r2", closed.r2},
                    {"r3", closed.r3},
                    {"r_min", closed.r_min},
                    {"r_min_clamped", closed.r_min_clamped}}},
                  {"generic",
                   {{"r1", generic.r1},
                    {"r2", generic.r2},
                    {"r3", generic.r3},
                    {"r_min", generic.r_min},
                    {"r_min_clamped", generic.r_min_clamped}}},
                  {"max_abs_diff", max_diff}};
    out["gaps"] = {{"d1", json_num(gaps.d1)},
                   {"d2", json_num(gaps.d2)},
                   {"d3", json_num(gaps.d3)},
                   {"d_max", json_num(gaps.d_max)}};
    if (p.rho13 == 0.0 && p.rho23 == 0.0 && std::abs(p.rho12) < 1.0) {
        const ConcatResult cc = concat_rate(p, q.q1);
        out["concat"] = {{"q1", q.q1},
                         {"q1_star", cc.q1_star},
                         {"stage1_terms", {cc.stage1_terms.first, cc.stage1_terms.second}},
                         {"stage2_term", cc.stage2_term},
                         {"rate", cc.rate},
                         {"gap_bound", cc.gap_bound},
                         {"gap", json_num(concat_gap(p, q.q1))}};
    }
    return out;
}

void write_rates_csv(std::ostream& os, const json& report) {
    std::vector<std::pair<std::string, std::string>> cols;
    auto add_scalar = [&cols](const std::string& name, const json& v) {
        if (v.is_string()) {
            cols.emplace_back(name, v.get<std::string>());
        } else if (v.is_boolean()) {
            cols.emplace_back(name, v.get<bool>() ? "1" : "0");
        } else {
            cols.emplace_back(name, fmt(v.get<double>()));
        }
    };
    for (const auto& [section, body] : report.items()) {
        for (const auto& [key, value] : body.items()) {
            if (value.is_array()) {
                int i = 0;
                for (const auto& item : value) {
                    add_scalar(section + "_" + key + "_" + std::to_string(++i), item);
                }
            } else {
                add_scalar(section + "_" + key, value);
            }
        }
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << cols[i].first << (i + 1 < cols.size() ? "," : "\n");
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << cols[i].second << (i + 1 < cols.size() ? "," : "\n");
    }
}

// --- sweep ----------------------------------------------------------------

struct QuantPolicy {
    enum class Kind { Fig2, Optimized, Fixed } kind = Kind::Fig2;
    double fixed_q1 = 1.0;
    double fixed_q2 = 1.0;
};

QuantPolicy parse_policy(const std::string& text) {
    QuantPolicy policy;
    if (text == "fig2") {
        policy.kind = QuantPolicy::Kind::Fig2;
    } else if (text == "optimized") {
        policy.kind = QuantPolicy::Kind::Optimized;
    } else if (text.rfind("fixed:", 0) == 0) {
        policy.kind = QuantPolicy::Kind::Fixed;
        const std::string rest = text.substr(6);
        const auto comma = rest.find(',');
        try {
            if (comma == std::string::npos) {
                throw std::invalid_argument("missing comma");
            }
            policy.fixed_q1 = std::stod(rest.substr(0, comma));
            policy.fixed_q2 = std::stod(rest.substr(comma + 1));
        } catch (const std::exception&) {
            throw BadArguments("bad --q-policy, expected fixed:Q1,Q2");
        }
        if (!(policy.fixed_q1 > 0.0) || !(policy.fixed_q2 > 0.0)) {
            throw BadArguments("fixed quantization levels must be > 0");
        }
    } else {
        throw BadArguments("unknown --q-policy '" + text + "' (fig2 | optimized | fixed:Q1,Q2)");
    }
    return policy;
}

int run_sweep(double h1_sq, double rho_min, double rho_max, int steps,
              const QuantPolicy& policy, const std::string& out_path) {
    if (!(rho_min > -1.0) || !(rho_max < 1.0) || !(rho_min < rho_max)) {
        throw BadArguments("need -1 < rho-min < rho-max < 1");
    }
    if (steps < 2) {
        throw BadArguments("need --steps >= 2");
    }
    if (!(h1_sq > 0.0)) {
        throw BadArguments("need h1^2 > 0");
    }

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "rho12,cutset_min,nnc_r1,nnc_r2,nnc_r3,nnc_min,concat_rate,concat_gap,nnc_gap\n";
    for (int i = 0; i < steps; ++i) {
        const double rho = rho_min + (rho_max - rho_min) * i / (steps - 1);
        const ChainParams p = scenario_params(h1_sq, rho);

        QuantLevels q{1.0, 1.0};
        double concat_q1 = optimal_q1(rho);
        switch (policy.kind) {
            case QuantPolicy::Kind::Fig2:
                q = {1.0 - rho * rho, 1.0};
                concat_q1 = q.q1;
                break;
            case QuantPolicy::Kind::Optimized: {
                const OptResult opt = optimize_quant(p);
                q = {opt.q1_opt, opt.q2_opt};
                break;
            }
            case QuantPolicy::Kind::Fixed:
                q = {policy.fixed_q1, policy.fixed_q2};
                concat_q1 = q.q1;
                break;
        }

        const CutsetBounds c = cutset_bound(p);
        const NncRates r = nnc_rates_closed(p, q);
        const ConcatResult cc = concat_rate(p, concat_q1);
        os << fmt(rho) << ',' << fmt(c.c_min) << ',' << fmt(r.r1) << ',' << fmt(r.r2) << ','
           << fmt(r.r3) << ',' << fmt(r.r_min) << ',' << fmt(cc.rate) << ','
           << fmt(c.c_min - cc.rate) << ',' << fmt(c.c_min - r.r_min) << '\n';
    }
    out.finish();
    return kExitOk;
}

// --- validate ---------------------------------------------------------------

int run_validate(long long n_samples, std::uint64_t seed, const std::string& out_path,
                 const std::string& format) {
    if (n_samples < 10000) {
        throw BadArguments("need --n-samples >= 10000");
    }
    Output out(out_path);
    std::ostream& os = out.stream();

    bool all_pass = true;
    json rows = json::array();
    std::ostringstream table;
    table << "term          closed-form    mc-estimate    |diff|      tolerance  proxy      status\n";
    for (const auto& term : mi_regression_set()) {
        const GaussianJoint joint = assemble_joint(term.params, term.quant);
        const McEstimate est = mc_mi_expression(joint, term.expression, n_samples, seed);
        const double diff = std::abs(est.value - term.closed_form);
        const double tol = std::max(0.02, 3.0 * est.std_error_proxy);
        const bool pass = diff < tol;
        all_pass = all_pass && pass;

        char line[256];
        std::snprintf(line, sizeof(line), "%-13s %13.8f %14.8f %11.2e %10.4f %10.2e %s\n",
                      term.name.c_str(), term.closed_form, est.value, diff, tol,
                      est.std_error_proxy, pass ? "pass" : "FAIL");
        table << line;
        rows.push_back({{"term", term.name},
                        {"closed_form", term.closed_form},
                        {"mc_estimate", est.value},
                        {"abs_diff", diff},
                        {"tolerance", tol},
                        {"std_error_proxy", est.std_error_proxy},
                        {"pass", pass}});
    }

    if (format == "json") {
        json doc;
        doc["n_samples"] = n_samples;
        doc["seed"] = seed;
        doc["terms"] = rows;
        doc["all_pass"] = all_pass;
        os << doc.dump(2) << '\n';
    } else {
        os << table.str();
        os << (all_pass ? "validation PASS" : "validation FAIL") << " (n=" << n_samples
           << ", seed=" << seed << ")\n";
    }
    out.finish();
    return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate analysis for the four-node Gaussian relay chain with correlated noises"};
    app.require_subcommand(1);

    // rates ------------------------------------------------------------
    auto* rates = app.add_subcommand("rates", "Cut-set bounds, NNC rates and gaps at one point");
    ParamFlags rates_params;
    rates_params.attach(rates);
    QuantLevels rates_quant;
    rates->add_option("--q1", rates_quant.q1, "Quantization noise variance at relay 1");
    rates->add_option("--q2", rates_quant.q2, "Quantization noise variance at relay 2");
    std::string rates_out, rates_format = "json";
    rates->add_option("--out", rates_out, "Write the report to this path instead of stdout");
    rates->add_option("--format", rates_format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // sweep ------------------------------------------------------------
    auto* sweep = app.add_subcommand(
        "sweep", "Correlation sweep over the scaled-gain configuration, CSV output");
    ParamFlags sweep_params;
    sweep->add_option("--h1-sq-db", sweep_params.h1_sq_db, "First-hop power in dB");
    sweep->add_option("--h1-sq", sweep_params.h1_sq, "First-hop power (linear)");
    double rho_min = -0.99, rho_max = 0.99;
    int steps = 199;
    std::string policy_text = "fig2";
    std::string sweep_out;
    sweep->add_option("--rho-min", rho_min, "Sweep start (exclusive of -1)");
    sweep->add_option("--rho-max", rho_max, "Sweep end (exclusive of 1)");
    sweep->add_option("--steps", steps, "Number of rows, endpoints included");
    sweep->add_option("--q-policy", policy_text,
                      "fig2 (q1 = 1-rho12^2, q2 = 1) | optimized | fixed:Q1,Q2");
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");

    // optimize ---------------------------------------------------------
    auto* opt = app.add_subcommand("optimize", "Maximize the min-cut NNC rate over (q1, q2)");
    ParamFlags opt_params;
    opt_params.attach(opt);
    GridSpec grid;
    opt->add_option("--q-lo", grid.q_lo, "Lower quantization bound");
    opt->add_option("--q-hi", grid.q_hi, "Upper quantization bound");
    opt->add_option("--points-per-decade", grid.points_per_decade, "Coarse grid resolution");
    std::string opt_out;
    opt->add_option("--out", opt_out, "Write the JSON result to this path");

    // validate -----------------------------------------------------------
    auto* val = app.add_subcommand("validate",
                                   "Monte Carlo check of every closed-form rate term");
    long long n_samples = 1000000;
    std::uint64_t seed = kDefaultSeed;
    std::string val_out, val_format = "table";
    val->add_option("--n-samples", n_samples, "Samples per term (>= 10^4)");
    val->add_option("--seed", seed, "Random seed");
    val->add_option("--out", val_out, "Write the report to this path");
    val->add_option("--format", val_format, "table (default) or json")
        ->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitBadArguments;
    }

    try {
        if (rates->parsed()) {
            const ChainParams p = rates_params.build();
            if (auto violation = validate(rates_quant)) {
                throw BadArguments(*violation);
            }
            const json report = rates_report(p, rates_quant);
            Output out(rates_out);
            if (rates_format == "csv") {
                write_rates_csv(out.stream(), report);
            } else {
                out.stream() << report.dump(2) << '\n';
            }
            out.finish();
            return kExitOk;
        }
        if (sweep->parsed()) {
            return run_sweep(sweep_params.resolve_h1_sq(), rho_min, rho_max, steps,
                             parse_policy(policy_text), sweep_out);
        }
        if (opt->parsed()) {
            const ChainParams p = opt_params.build();
            const OptResult res = optimize_quant(p, grid);
            json doc;
            doc["q1_opt"] = res.q1_opt;
            doc["q2_opt"] = res.q2_opt;
            doc["rate_opt"] = res.rate_opt;
            doc["gap_at_opt"] = json_num(res.gap_at_opt);
            doc["grid_stats"] = {{"evaluations", res.grid_stats.evaluations},
                                 {"refinement_depth", res.grid_stats.refinement_depth}};
            Output out(opt_out);
            out.stream() << doc.dump(2) << '\n';
            out.finish();
            return kExitOk;
        }
        if (val->parsed()) {
            return run_validate(n_samples, seed, val_out, val_format);
        }
    } catch (const BadArguments& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArguments;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArguments;
    }
    return kExitOk;
}
