// Copyright 2026 The ghzcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: discord, protocol, rates, typical, rate-convergence.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghzcost/ghzcost.hpp"
#include "ghzcost/io.hpp"

namespace {

using namespace ghzcost;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;
constexpr double kBranchFailTol = 1e-6;

struct Options {
    std::string state;
    double p = 0.5;
    std::size_t k = 3;
    std::string amps;
    std::string dims;
    std::size_t t = 1;
    std::size_t l = 1;
    double epsilon = 0.1;
    std::string basis = "computational";
    std::size_t restarts = 32;
    std::size_t max_iters = 2000;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::size_t guard_dim = 4096;
    std::size_t enum_guard = kEnumerationGuard;
    std::string mode = "enumerate";
    std::size_t samples = 1000;
    double branch_guard = static_cast<double>(kDefaultBranchGuard);
    std::size_t max_traces = kDefaultMaxTraces;
    std::string out_dir;
    std::string presets = "w3,ghz3,gghz,plus011,product-000";
    std::string sweep;
    std::string l_values = "2,4,8,16";
    std::string t_values = "1,2";

    OptimizerConfig optimizer() const {
        OptimizerConfig c;
        c.restarts = restarts;
        c.max_iters = max_iters;
        c.tol = tol;
        c.seed = seed;
        c.guard_dim = guard_dim;
        return c;
    }

    json snapshot() const {
        return {{"state", state},       {"p", p},
                {"k", k},               {"amps", amps},
                {"dims", dims},         {"t", t},
                {"l", l},               {"epsilon", epsilon},
                {"basis", basis},       {"restarts", restarts},
                {"max_iters", max_iters}, {"tol", tol},
                {"seed", seed},         {"guard_dim", guard_dim},
                {"enum_guard", enum_guard}, {"mode", mode},
                {"samples", samples},   {"branch_guard", branch_guard},
                {"max_traces", max_traces}, {"out_dir", out_dir},
                {"presets", presets},   {"counterexample_sweep", sweep},
                {"l_values", l_values}, {"t_values", t_values}};
    }
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw InvalidArgument("not a number: '" + s + "'");
    return v;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& tok : split(s, ',')) {
        double v = parse_double(tok);
        if (v < 1 || v != std::floor(v)) throw InvalidArgument("expected a positive integer: '" + tok + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

/// "re" or "re:im" tokens separated by commas.
std::vector<cplx> parse_amplitudes(const std::string& s) {
    std::vector<cplx> out;
    for (const auto& tok : split(s, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            out.emplace_back(parse_double(tok), 0.0);
        else
            out.emplace_back(parse_double(tok.substr(0, colon)), parse_double(tok.substr(colon + 1)));
    }
    return out;
}

std::string describe(const std::string& name, const Options& o) {
    if (name == "gghz") {
        std::ostringstream os;
        os << "gghz(p=" << o.p << ",k=" << o.k << ")";
        return os.str();
    }
    return name;
}

LabeledState resolve_state(const Options& o, const std::string& fallback) {
    if (!o.amps.empty()) {
        if (o.dims.empty()) throw InvalidArgument("--amps needs --dims");
        auto loaded = presets::from_amplitudes(PartyDims(parse_sizes(o.dims)), parse_amplitudes(o.amps));
        if (loaded.norm_warning)
            std::cerr << "warning: amplitude norm " << io::format_double(loaded.input_norm) << " renormalized to 1\n";
        return {"explicit", loaded.state, {}};
    }
    std::string name = o.state.empty() ? fallback : o.state;
    if (name == "gghz" && o.k != 3) return {describe(name, o), presets::generalized_ghz(o.p, o.k), known_gghz(o.p)};
    LabeledState s = labeled_preset(name, o.p);
    s.label = describe(name, o);
    return s;
}

SeparableBasis resolve_basis(const Options& o, const PureState& psi, double& prob_floor) {
    PartyDims blocked = blocked_power(psi, o.t).dims();
    prob_floor = 0.0;
    if (o.basis == "computational") return SeparableBasis::computational(blocked);
    if (o.basis == "fourier") return SeparableBasis::fourier(blocked);
    if (o.basis == "optimized") {
        prob_floor = 1e-12;
        return minimize_discord_blocked(psi, o.t, o.optimizer()).argmin_basis;
    }
    throw InvalidArgument("unknown basis '" + o.basis + "'");
}

class Run {
   public:
    Run(std::string command, const Options& o) : command_(std::move(command)), opts_(o) {
        dir_ = o.out_dir;
        if (dir_.empty()) {
            const char* env = std::getenv("GHZCOST_OUT_DIR");
            dir_ = env && *env ? env : "ghzcost-out";
        }
        start_ = std::chrono::steady_clock::now();
    }

    void stage(const std::string& name) {
        auto now = std::chrono::steady_clock::now();
        stages_.push_back({{"stage", name}, {"seconds", std::chrono::duration<double>(now - start_).count()}});
        start_ = now;
    }

    void write(const std::string& name, const std::string& content) {
        std::filesystem::path p = std::filesystem::path(dir_) / name;
        io::write_atomic(p, content);
        outputs_.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", io::sha256_hex(content)}});
    }

    void finish() {
        json m = {{"command", command_},
                  {"version", GHZCOST_VERSION},
                  {"config", opts_.snapshot()},
                  {"stages", stages_},
                  {"outputs", outputs_}};
        io::write_atomic(std::filesystem::path(dir_) / (command_ + "_manifest.json"), io::dump(m));
    }

   private:
    std::string command_;
    const Options& opts_;
    std::string dir_;
    std::chrono::steady_clock::time_point start_;
    json stages_ = json::array();
    json outputs_ = json::array();
};

int cmd_discord(const Options& o) {
    Run run("discord", o);
    LabeledState s = resolve_state(o, "w3");
    DiscordResult r = minimize_discord_blocked(s.state, o.t, o.optimizer());
    run.stage("optimize");
    json j = {{"label", s.label}, {"t", o.t}, {"rate_bits", r.value_bits / static_cast<double>(o.t)}, {"result", io::discord_json(r)}};
    run.write("discord.json", io::dump(j));
    run.finish();
    std::cout << "discord " << s.label << " t=" << o.t << ": " << io::format_double(r.value_bits / static_cast<double>(o.t))
              << " bits per copy (" << r.restarts_used << " restarts, converged " << (r.converged ? "yes" : "no") << ")\n";
    return kExitOk;
}

struct Typical {
    JointDistribution dist;
    CoefficientTable table;
    SeparableBasis basis;
};

Typical typical_inputs(const Options& o, const PureState& psi) {
    double floor = 0.0;
    SeparableBasis b = resolve_basis(o, psi, floor);
    auto [dist, table] = coefficient_distribution(psi, b, o.t, floor);
    return {std::move(dist), std::move(table), std::move(b)};
}

int cmd_typical(const Options& o) {
    Run run("typical", o);
    LabeledState s = resolve_state(o, "gghz");
    Typical in = typical_inputs(o, s.state);
    run.stage("distribution");
    json j = {{"label", s.label}, {"t", o.t}, {"l", o.l}, {"epsilon", o.epsilon}};
    const double explicit_count = std::pow(static_cast<double>(in.dist.symbols()), static_cast<double>(o.l));
    double size = 0.0, n_eps = 0.0;
    AepReport aep;
    if (explicit_count <= static_cast<double>(o.enum_guard)) {
        TypicalSet ts = build_typical_set(in.dist, o.l, o.epsilon, o.enum_guard);
        j["method"] = "enumeration";
        j["typical_set"] = io::typical_json(ts);
        if (ts.size() > 0 && ts.size() <= 100000) j["indexed"] = io::indexed_json(index_typical_set(ts, in.table));
        size = static_cast<double>(ts.size());
        n_eps = ts.n_epsilon;
        aep = ts.aep;
    } else {
        std::vector<double> probs;
        for (const auto& e : in.dist.entries) probs.push_back(e.prob);
        TypicalSummary sum = typical_set_summary(probs, o.l, o.epsilon, o.enum_guard);
        j["method"] = "type classes";
        j["summary"] = io::typical_summary_json(sum);
        size = static_cast<double>(sum.size);
        n_eps = sum.n_epsilon;
        aep = sum.aep;
    }
    run.stage("typical set");
    run.write("typical.json", io::dump(j));
    run.finish();
    std::cout << "typical " << s.label << " l=" << o.l << " eps=" << o.epsilon << ": |A| = " << io::format_double(size)
              << ", N_eps = " << io::format_double(n_eps) << ", mass bound " << (aep.mass_bound ? "holds" : "fails")
              << ", size bounds " << (aep.lower_size_bound && aep.upper_size_bound ? "hold" : "fail") << "\n";
    return kExitOk;
}

int cmd_protocol(const Options& o) {
    Run run("protocol", o);
    LabeledState s = resolve_state(o, "gghz");
    Typical in = typical_inputs(o, s.state);
    TypicalSet ts = build_typical_set(in.dist, o.l, o.epsilon, o.enum_guard);
    ProtocolInput input(index_typical_set(ts, in.table));
    run.stage("typical set");

    RunOptions ro;
    if (o.mode == "enumerate")
        ro.mode = RunMode::enumerate;
    else if (o.mode == "sample")
        ro.mode = RunMode::sample;
    else
        throw InvalidArgument("--mode must be enumerate or sample");
    ro.samples = o.samples;
    ro.seed = o.seed;
    if (!(o.branch_guard >= 1.0)) throw InvalidArgument("--branch-guard must be positive");
    ro.branch_guard = static_cast<std::size_t>(o.branch_guard);
    ro.max_traces = o.max_traces;
    ProtocolResult res = run_protocol(input, ro);
    run.stage("protocol");

    const std::size_t n = o.t * o.l;
    const double rate = resource_rate(input, n);
    const double sqrt_n = fidelity_to_original(input.its);
    std::optional<double> f_power;
    try {
        PureState psi_c = build_approximate_state(input.its, compressed_dims(input.its));
        f_power = fidelity_with_power(psi_c, input.its, s.state, in.basis, o.t);
    } catch (const GuardError&) {
    }
    run.stage("fidelity");

    json traces = json::array();
    for (const auto& tr : res.traces) traces.push_back(io::trace_json(tr));
    json j = {{"label", s.label},
              {"t", o.t},
              {"l", o.l},
              {"epsilon", o.epsilon},
              {"n", n},
              {"typical_size", input.size()},
              {"ghz_copies", input.m},
              {"resource_rate", rate},
              {"sqrt_n_epsilon", sqrt_n},
              {"fidelity_to_power", io::optional_json(f_power)},
              {"report", io::branch_report_json(res.report)}};
    run.write("protocol_report.json", io::dump(j));
    run.write("protocol_traces.json", io::dump(traces));
    run.finish();

    std::cout << "protocol " << s.label << " t=" << o.t << " l=" << o.l << ": |A| = " << input.size() << ", m = " << input.m
              << ", branches " << res.report.total_branches << ", min fidelity " << io::format_double(res.report.min_fidelity)
              << ", rate " << io::format_double(rate) << ", sqrt(N_eps) " << io::format_double(sqrt_n);
    if (f_power) std::cout << ", F(Psi, psi^n) " << io::format_double(*f_power);
    std::cout << "\n";
    if (res.report.min_fidelity < 1.0 - kBranchFailTol || res.report.min_agreement < 1.0 - kBranchFailTol) {
        std::cerr << "error: a protocol branch missed the target state\n";
        return kExitVerification;
    }
    return kExitOk;
}

std::vector<double> parse_sweep(const std::string& s) {
    auto parts = split(s, ':');
    if (parts.size() != 3) throw InvalidArgument("--counterexample-sweep expects start:stop:step");
    double a = parse_double(parts[0]), b = parse_double(parts[1]), h = parse_double(parts[2]);
    if (!(h > 0.0) || b < a) throw InvalidArgument("--counterexample-sweep needs step > 0 and stop >= start");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * h);
    return out;
}

int cmd_rates(const Options& o) {
    Run run("rates", o);
    std::vector<LabeledState> states;
    for (const auto& name : split(o.presets, ',')) {
        Options one = o;
        one.state = name;
        one.amps.clear();
        states.push_back(resolve_state(one, name));
    }
    auto reports = bounds_table(states, o.optimizer(), parse_sizes(o.t_values));
    run.stage("bounds table");
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::rate_report_json(r));
    run.write("rates.json", io::dump(arr));
    run.write("rates.csv", io::rate_reports_csv(reports));
    for (const auto& r : reports) {
        std::cout << r.label << ": D_t1 " << io::format_double(r.discord_t1) << ", R_T " << io::format_double(r.rate_RT);
        if (r.entanglement_lower_bound) std::cout << ", E lower " << io::format_double(*r.entanglement_lower_bound);
        for (const auto& f : r.flags) std::cout << " [" << f << "]";
        std::cout << "\n";
    }
    if (!o.sweep.empty()) {
        std::vector<CounterexampleRow> rows;
        for (double p : parse_sweep(o.sweep)) rows.push_back(mixed_counterexample(p));
        json cj = json::array();
        for (const auto& r : rows) cj.push_back(io::counterexample_json(r));
        run.write("counterexample.json", io::dump(cj));
        run.write("counterexample.csv", io::counterexample_csv(rows));
        std::size_t violations = 0;
        for (const auto& r : rows) violations += r.violates;
        std::cout << "counterexample sweep: " << violations << " of " << rows.size() << " rows have E_C > D_inf\n";
    }
    run.stage("output");
    run.finish();
    return kExitOk;
}

int cmd_rate_convergence(const Options& o) {
    Run run("rate-convergence", o);
    LabeledState s = resolve_state(o, "gghz");
    Typical in = typical_inputs(o, s.state);
    const double discord = finite_t_discord_rate(s.state, o.t, o.optimizer());
    run.stage("discord");
    std::vector<double> probs;
    for (const auto& e : in.dist.entries) probs.push_back(e.prob);

    std::string csv = "l,n,typical_size,rate,sqrt_n_epsilon,gap\n";
    json rows = json::array();
    for (std::size_t l : parse_sizes(o.l_values)) {
        TypicalSummary sum = typical_set_summary(probs, l, o.epsilon, o.enum_guard);
        const std::size_t n = o.t * l;
        std::optional<double> rate, gap;
        if (sum.size >= 1.0L) {
            std::size_t m = 0;
            while (std::ldexp(1.0L, static_cast<int>(m)) < sum.size) ++m;
            rate = static_cast<double>(m) / static_cast<double>(n);
            gap = std::abs(*rate - discord);
        }
        const double sq = std::sqrt(sum.n_epsilon);
        rows.push_back({{"l", l},
                        {"n", n},
                        {"typical_size", static_cast<double>(sum.size)},
                        {"rate", io::optional_json(rate)},
                        {"sqrt_n_epsilon", sq},
                        {"gap", io::optional_json(gap)}});
        csv += std::to_string(l) + "," + std::to_string(n) + "," + io::format_double(static_cast<double>(sum.size)) + "," +
               io::csv_field(rate) + "," + io::format_double(sq) + "," + io::csv_field(gap) + "\n";
        std::cout << "l=" << l << ": |A| = " << io::format_double(static_cast<double>(sum.size))
                  << ", rate " << (rate ? io::format_double(*rate) : "undefined (empty typical set)")
                  << ", gap " << (gap ? io::format_double(*gap) : "undefined") << "\n";
    }
    run.stage("sweep");
    json j = {{"label", s.label}, {"t", o.t}, {"epsilon", o.epsilon}, {"discord_rate", discord}, {"rows", rows}};
    run.write("convergence.json", io::dump(j));
    run.write("convergence.csv", csv);
    run.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GHZ-state cost of multipartite pure states: discord, typical sets, LOCC protocol, rate bounds"};
    app.set_version_flag("--version", GHZCOST_VERSION);
    app.set_config("--config", "", "Flat key = value configuration file; command-line flags take precedence");
    app.require_subcommand(1, 1);
    app.fallthrough();

    Options o;
    app.add_option("--state", o.state, "Preset: ghz{k}, w{k}, gghz, plus011, product-000");
    app.add_option("--p", o.p, "Parameter of gghz");
    app.add_option("--k", o.k, "Party count for gghz");
    app.add_option("--amps", o.amps, "Explicit amplitudes, comma separated; complex as re:im");
    app.add_option("--dims", o.dims, "Party dimensions for --amps, comma separated");
    app.add_option("--t", o.t, "Copies blocked into one symbol")->check(CLI::PositiveNumber);
    app.add_option("--l", o.l, "Block length")->check(CLI::PositiveNumber);
    app.add_option("--epsilon", o.epsilon, "Typicality window")->check(CLI::PositiveNumber);
    app.add_option("--basis", o.basis, "Coefficient basis: computational, fourier or optimized");
    app.add_option("--restarts", o.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", o.max_iters, "Optimizer iterations per restart");
    app.add_option("--tol", o.tol, "Optimizer stopping tolerance");
    app.add_option("--seed", o.seed, "Seed for optimizer restarts and protocol sampling");
    app.add_option("--guard-dim", o.guard_dim, "Largest Hilbert-space dimension the optimizer accepts");
    app.add_option("--enum-guard", o.enum_guard, "Largest explicit sequence enumeration");
    app.add_option("--mode", o.mode, "Protocol branches: enumerate or sample");
    app.add_option("--samples", o.samples, "Protocol samples in sample mode");
    app.add_option("--branch-guard", o.branch_guard, "Largest branch count enumerated");
    app.add_option("--max-traces", o.max_traces, "Protocol traces kept in the output");
    app.add_option("--out-dir", o.out_dir, "Output directory (default $GHZCOST_OUT_DIR or ./ghzcost-out)");
    app.add_option("--presets", o.presets, "Comma-separated presets for the rates table");
    app.add_option("--counterexample-sweep", o.sweep, "start:stop:step over p for the mixed-state formulas");
    app.add_option("--l-values", o.l_values, "Comma-separated block lengths for rate-convergence");
    app.add_option("--t-values", o.t_values, "Comma-separated t for the rates table");

    auto* discord = app.add_subcommand("discord", "Minimize the pure-state discord objective");
    auto* protocol = app.add_subcommand("protocol", "Run the GHZ-to-target LOCC protocol");
    auto* rates = app.add_subcommand("rates", "Rate bounds table and mixed-state formulas");
    auto* typical = app.add_subcommand("typical", "Typical set of the coefficient distribution");
    auto* convergence = app.add_subcommand("rate-convergence", "Resource rate against block length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*discord) return cmd_discord(o);
        if (*protocol) return cmd_protocol(o);
        if (*rates) return cmd_rates(o);
        if (*typical) return cmd_typical(o);
        if (*convergence) return cmd_rate_convergence(o);
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        std::cerr << "config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DimensionError& e) {
        std::cerr << "config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const VerificationError& e) {
        std::cerr << "verification: " << e.what() << "\n";
        return kExitVerification;
    } catch (const CompletenessError& e) {
        std::cerr << "verification: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitConfig;
}
