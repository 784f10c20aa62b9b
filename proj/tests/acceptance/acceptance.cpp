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

// Acceptance run: one PASS/FAIL line per criterion.
//
//   ghzcost_acceptance [--expect-fail 3,7]
//
// Without --expect-fail the exit status is 0 only when every criterion
// passes. With it, the status is 0 only when exactly the listed criteria fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ghzcost/ghzcost.hpp"

namespace {

using namespace ghzcost;

// Tolerances.
constexpr double kBranchFidelityTol = 1e-9;
constexpr double kFidelityIdentityTol = 1e-10;
constexpr double kDiscordWTol = 1e-3;
constexpr double kDiscordGghzTol = 1e-4;
constexpr double kDiscordPlusTol = 1e-3;
constexpr double kDiscordProductTol = 1e-6;
constexpr double kRateTableTol = 1e-3;
constexpr double kRelationTol = 1e-9;
constexpr double kBoundaryTol = 1e-12;
constexpr double kPropertyTol = 1e-10;
constexpr std::uint64_t kPropertyInstances = 100;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct ProtocolCase {
    std::string label;
    PureState psi;
    std::size_t l;
    double epsilon;
};

std::vector<ProtocolCase> protocol_cases() {
    std::vector<ProtocolCase> out;
    for (double p : {0.3, 0.5, 0.7})
        for (std::size_t l : {1, 2, 4}) {
            std::ostringstream os;
            os << "gghz(p=" << p << ") l=" << l;
            // l <= 2 needs a window wide enough to keep a nonempty set; l = 4 keeps the central types.
            out.push_back({os.str(), presets::generalized_ghz(p, 3), l, l <= 2 ? 1.0 : 0.5});
        }
    out.push_back({"w3 l=2", presets::w(3), 2, 0.01});
    return out;
}

struct ProtocolRun {
    std::string label;
    double min_fidelity;
    double min_agreement;
    std::size_t branches;
    double f_power;
    double sqrt_n;
};

std::vector<ProtocolRun>& protocol_runs() {
    static std::vector<ProtocolRun> runs = [] {
        std::vector<ProtocolRun> out;
        for (const auto& c : protocol_cases()) {
            SeparableBasis basis = SeparableBasis::computational(c.psi.dims());
            auto [dist, table] = coefficient_distribution(c.psi, basis, 1);
            ProtocolInput in(index_typical_set(build_typical_set(dist, c.l, c.epsilon), table));
            RunOptions ro;
            ro.branch_guard = 20'000'000;
            ro.max_traces = 1;
            ProtocolResult res = run_protocol(in, ro);
            const double f = fidelity_with_power(res.traces.front().final_state.to_dense(), in.its, c.psi, basis, 1);
            out.push_back({c.label, res.report.min_fidelity, res.report.min_agreement, res.report.total_branches, f,
                           fidelity_to_original(in.its)});
        }
        return out;
    }();
    return runs;
}

Outcome ac1_protocol_correctness() {
    Outcome o{true, {}};
    double worst_f = 1.0, worst_a = 1.0;
    std::size_t branches = 0;
    for (const auto& r : protocol_runs()) {
        worst_f = std::min(worst_f, r.min_fidelity);
        worst_a = std::min(worst_a, r.min_agreement);
        branches += r.branches;
        if (r.min_fidelity < 1.0 - kBranchFidelityTol || r.min_agreement < 1.0 - kBranchFidelityTol) {
            o.pass = false;
            o.detail += r.label + " min F " + num(r.min_fidelity, 17) + "; ";
        }
    }
    o.detail += std::to_string(protocol_runs().size()) + " runs, " + std::to_string(branches) + " branches, min F " +
                num(worst_f, 17) + ", min agreement " + num(worst_a, 17);
    return o;
}

Outcome ac2_fidelity_identity() {
    Outcome o{true, {}};
    double worst = 0.0;
    for (const auto& r : protocol_runs()) {
        const double dev = std::abs(r.f_power - r.sqrt_n);
        worst = std::max(worst, dev);
        if (!(dev <= kFidelityIdentityTol)) {
            o.pass = false;
            o.detail += r.label + " F " + num(r.f_power, 17) + " vs sqrt(N) " + num(r.sqrt_n, 17) + "; ";
        }
    }
    o.detail += "max |F(Psi, psi^n) - sqrt(N_eps)| = " + num(worst, 3);
    return o;
}

Outcome ac3_aep() {
    const double p = 0.3, eps = 0.1;
    const std::size_t l = 40;
    TypicalSummary s = typical_set_summary({p, 1.0 - p}, l, eps);
    const double lower = (1.0 - eps) * std::exp2(static_cast<double>(l) * (s.entropy_H - eps));
    const double upper = std::exp2(static_cast<double>(l) * (s.entropy_H + eps));
    const double size = static_cast<double>(s.size);
    const bool mass = s.n_epsilon > 1.0 - eps;
    const bool sizes = lower < size && size <= upper;
    return {mass && sizes, "l=40 eps=0.1: N_eps " + num(s.n_epsilon, 10) + (mass ? " > " : " <= ") + num(1.0 - eps) +
                               ", size bounds " + num(lower) + " < " + num(size, 12) + " <= " + num(upper) +
                               (sizes ? " hold" : " fail")};
}

Outcome ac4_discord() {
    OptimizerConfig cfg;
    cfg.restarts = 32;
    Outcome o{true, {}};
    auto check = [&](const std::string& label, const PureState& psi, double expected, double tol) {
        const double v = minimize_discord(psi, cfg).value_bits;
        const double dev = std::abs(v - expected);
        if (!(dev <= tol)) {
            o.pass = false;
            o.detail += label + " " + num(v, 10) + " vs " + num(expected, 10) + "; ";
        }
        return dev;
    };
    double dw = check("w3", presets::w(3), std::log2(3.0), kDiscordWTol);
    double dg = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.1 * i;
        dg = std::max(dg, check("gghz(p=" + num(p, 2) + ")", presets::generalized_ghz(p, 3), binary_entropy(p), kDiscordGghzTol));
    }
    double dp = check("plus011", presets::plus011(), 1.5, kDiscordPlusTol);
    double d0 = check("product", presets::product000(), 0.0, kDiscordProductTol);
    o.detail += "deviations: w3 " + num(dw, 3) + ", gghz max " + num(dg, 3) + ", plus011 " + num(dp, 3) + ", product " +
                num(d0, 3);
    return o;
}

Outcome ac5_rate_table() {
    Outcome o{true, {}};
    const double rt = rate_RT(presets::w(3));
    if (!(std::abs(rt - 1.837) <= kRateTableTol)) o.pass = false;
    OptimizerConfig cfg;
    RateReport w = rate_report(labeled_preset("w3"), cfg, {1});
    const double lo = w.entanglement_lower_bound.value_or(std::nan(""));
    const bool row = std::abs(lo - 1.170) <= kRateTableTol && std::abs(w.discord_t1 - 1.585) <= kRateTableTol &&
                     std::abs(lo - (2.0 * std::log2(3.0) - 2.0)) <= kRelationTol && lo < w.discord_t1;
    if (!row) o.pass = false;
    double worst = 0.0;
    for (std::size_t k : {3, 4, 5})
        for (double p : {0.1, 0.3, 0.5, 0.7}) {
            auto rel = ghz_rate_relation_check(p, k);
            worst = std::max(worst, std::abs(rel.discord_rate - rel.rt_per_extra_party));
        }
    if (!(worst <= kRelationTol)) o.pass = false;
    o.detail = "R_T(W) " + num(rt, 10) + ", W row " + num(lo, 10) + " < E_c < " + num(w.discord_t1, 10) +
               ", max |D - R_T/(k-1)| over k=3..5 " + num(worst, 3);
    return o;
}

Outcome ac6_counterexample() {
    Outcome o{true, {}};
    double min_margin = 1.0;
    for (int i = 1; i <= 9; ++i) {
        auto r = mixed_counterexample(0.05 * i);
        min_margin = std::min(min_margin, r.e_c - r.d_inf);
        if (!r.violates) o.pass = false;
    }
    double boundary = 0.0;
    for (double p : {0.0, 0.5}) {
        auto r = mixed_counterexample(p);
        boundary = std::max(boundary, std::abs(r.e_c - r.d_inf));
    }
    if (!(boundary <= kBoundaryTol)) o.pass = false;
    o.detail = "min E_C - D_inf on p=0.05..0.45 " + num(min_margin, 10) + ", boundary |E_C - D_inf| " + num(boundary, 3);
    return o;
}

std::optional<double> convergence_gap(double p, std::size_t l, double eps) {
    TypicalSummary s = typical_set_summary({p, 1.0 - p}, l, eps);
    if (s.size < 1.0L) return std::nullopt;
    std::size_t m = 0;
    while (std::ldexp(1.0L, static_cast<int>(m)) < s.size) ++m;
    return std::abs(static_cast<double>(m) / static_cast<double>(l) - binary_entropy(p));
}

Outcome ac7_rate_convergence() {
    const double p = 0.3, eps = 0.1;
    std::string trend;
    for (std::size_t l : {2, 4, 8, 16}) {
        auto g = convergence_gap(p, l, eps);
        trend += " l=" + std::to_string(l) + ":" + (g ? num(*g, 6) : std::string("undefined"));
    }
    auto g2 = convergence_gap(p, 2, eps), g16 = convergence_gap(p, 16, eps);
    const bool pass = g2 && g16 && *g16 < *g2;
    std::string why = g2 ? "" : " (typical set empty at l=2)";
    return {pass, "gap" + trend + why};
}

/// Invariants of every module on seeded random inputs.
Outcome ac8_properties() {
    std::size_t failures = 0, checks = 0;
    auto expect = [&](bool ok) {
        ++checks;
        failures += !ok;
    };
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < kPropertyInstances; ++seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> d(2 + rng() % 2);
        for (auto& x : d) x = 2 + rng() % 2;
        PartyDims dims(d);
        Vector v(static_cast<Eigen::Index>(dims.total()));
        for (auto& a : v) a = cplx(gauss(rng), gauss(rng));
        PureState psi = PureState::normalized(dims, v);

        // Norm preservation under a local unitary.
        const std::size_t party = rng() % dims.parties();
        PureState rotated = apply_local_unitary(psi, detail::haar_unitary(dims[party], rng), {party});
        expect(std::abs(rotated.amps().norm() - 1.0) <= kPropertyTol);

        // Completeness and probability conservation of a random Kraus set.
        Matrix iso = detail::haar_unitary(3 * dims[party], rng);
        const auto dp = static_cast<Eigen::Index>(dims[party]);
        std::vector<Matrix> kraus;
        for (Eigen::Index j = 0; j < 3; ++j) kraus.push_back(iso.block(j * dp, 0, dp, dp));
        double total = 0.0;
        for (const auto& b : apply_measurement(psi, MeasurementSet(kraus), {party})) total += b.probability;
        expect(std::abs(total - 1.0) <= kPropertyTol);

        // Bound ordering: max_i S_i <= D_R <= computational-basis entropy, and R_T >= 0.
        OptimizerConfig cfg;
        cfg.restarts = 2;
        cfg.max_iters = 200;
        cfg.seed = seed + 1;
        const double dr = minimize_discord(psi, cfg).value_bits;
        double smax = 0.0;
        for (std::size_t i = 0; i < dims.parties(); ++i)
            smax = std::max(smax, von_neumann_entropy(reduced_density(psi, {i})));
        expect(smax <= dr + 1e-9 && dr <= discord_objective(psi, SeparableBasis::computational(dims)) + 1e-12);
        expect(rate_RT(psi) >= -1e-12);

        // Protocol measurement completeness and branch probability on a small random target.
        Vector sv = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
        std::vector<std::size_t> idx(dims.total());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i = 0; i < 2 + rng() % 3; ++i) sv(static_cast<Eigen::Index>(idx[i])) = cplx(gauss(rng), gauss(rng));
        PureState sparse = PureState::normalized(dims, sv);
        auto [dist, table] = coefficient_distribution(sparse, SeparableBasis::computational(dims), 1);
        ProtocolInput in(index_typical_set(build_typical_set(dist, 1, 50.0), table));
        protocol::ProtocolPlan plan(in);
        bool complete = true;
        for (const auto* m : {&plan.filter, &plan.reshape, &plan.hadamard, &plan.readout}) {
            try {
                protocol::check_completeness(*m);
            } catch (const CompletenessError&) {
                complete = false;
            }
        }
        expect(complete);
        RunOptions ro;
        ro.max_traces = 0;
        ProtocolResult res = run_protocol(in, ro);
        expect(std::abs(res.report.probability_covered - 1.0) <= 1e-9 && res.report.min_fidelity >= 1.0 - kBranchFidelityTol);
    }
    return {failures == 0, std::to_string(checks - failures) + " of " + std::to_string(checks) + " checks on " +
                               std::to_string(kPropertyInstances) + " seeds"};
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::optional<std::set<int>> expected;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--expect-fail" && i + 1 < argc) {
            expected = parse_list(argv[++i]);
        } else {
            std::cerr << "usage: " << argv[0] << " [--expect-fail N,M,...]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"protocol correctness", ac1_protocol_correctness},
        {"fidelity identity", ac2_fidelity_identity},
        {"AEP at l=40", ac3_aep},
        {"discord values", ac4_discord},
        {"rate table", ac5_rate_table},
        {"mixed-state counterexample", ac6_counterexample},
        {"rate convergence", ac7_rate_convergence},
        {"property invariants", ac8_properties},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) failed.insert(id);
        std::cout << "AC" << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": " << o.detail << " ["
                  << num(secs, 3) << " s]" << std::endl;
    }

    const std::set<int> want = expected.value_or(std::set<int>{});
    std::cout << failed.size() << " of " << criteria.size() << " criteria failed";
    if (expected) std::cout << (failed == want ? "; matches the expected failure set" : "; differs from the expected failure set");
    std::cout << std::endl;
    return failed == want ? 0 : 1;
}
