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

#ifndef GHZCOST_RATES_HPP
#define GHZCOST_RATES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghzcost/discord.hpp"
#include "ghzcost/hilbert.hpp"
#include "ghzcost/presets.hpp"

namespace ghzcost {

inline constexpr double kDiscordFlagTol = 1e-3;
inline constexpr double kBoundOrderTol = 1e-6;
inline constexpr double kDecompositionProbTol = 1e-10;
inline constexpr double kDecompositionMatchTol = 1e-9;

/// Singlet/GHZ consumption of teleportation plus compression:
/// sum_i S_i - max_i S_i over the single-party marginals.
inline double rate_RT(const PureState& psi) {
    if (psi.parties() < 2) throw InvalidArgument("rate_RT: at least two parties are required");
    double sum = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < psi.parties(); ++i) {
        double s = von_neumann_entropy(reduced_density(psi, {i}));
        sum += s;
        mx = std::max(mx, s);
    }
    return sum - mx;
}

struct GhzRelation {
    double discord_rate;        ///< H2(p)
    double rt_per_extra_party;  ///< R_T / (k - 1)
};

/// For sqrt(p)|0..0> + sqrt(1-p)|1..1> both sides equal H2(p).
inline GhzRelation ghz_rate_relation_check(double p, std::size_t k) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("ghz_rate_relation_check: p must lie in (0, 1)");
    if (k < 2) throw InvalidArgument("ghz_rate_relation_check: k must be at least 2");
    return {binary_entropy(p), rate_RT(presets::generalized_ghz(p, k)) / static_cast<double>(k - 1)};
}

struct CounterexampleRow {
    double p;
    double e_c;    ///< H2(1/2 + sqrt(p(1-p)))
    double d_inf;  ///< 1 - H2(p)
    bool violates;
};

inline CounterexampleRow mixed_counterexample(double p) {
    if (!(p >= 0.0 && p <= 0.5)) throw InvalidArgument("mixed_counterexample: p must lie in [0, 1/2]");
    double e = binary_entropy(0.5 + std::sqrt(p * (1.0 - p)));
    double d = 1.0 - binary_entropy(p);
    return {p, e, d, e > d};
}

struct Decomposition {
    std::vector<std::pair<double, PureState>> terms;

    DensityMatrix mixture() const {
        if (terms.empty()) throw InvalidArgument("decomposition has no terms");
        const PartyDims& dims = terms.front().second.dims();
        const auto n = static_cast<Eigen::Index>(dims.total());
        Matrix m = Matrix::Zero(n, n);
        for (const auto& [p, psi] : terms) {
            if (!(psi.dims() == dims)) throw DimensionError("decomposition terms differ in dimensions");
            m += p * psi.amps() * psi.amps().adjoint();
        }
        return DensityMatrix(dims, m);
    }

    /// Probabilities non-negative summing to 1, mixture equal to `target`.
    void validate(const DensityMatrix& target) const {
        double s = 0.0;
        for (const auto& t : terms) {
            if (t.first < 0.0) throw InvalidArgument("decomposition probability is negative");
            s += t.first;
        }
        if (std::abs(s - 1.0) > kDecompositionProbTol) throw InvalidArgument("decomposition probabilities do not sum to 1");
        DensityMatrix mix = mixture();
        if (!(mix.dims() == target.dims())) throw DimensionError("decomposition does not match the target dimensions");
        double dev = (mix.mat() - target.mat()).cwiseAbs().maxCoeff();
        if (dev > kDecompositionMatchTol)
            throw VerificationError("decomposition does not reproduce the target state (deviation " + std::to_string(dev) + ")");
    }
};

struct DecompositionRate {
    double upper_bound;  ///< sum_i p_i D_R(psi_i); bounds the infimum over decompositions from above
    std::vector<double> term_discord;
};

inline DecompositionRate r_D_for_decomposition(const Decomposition& decomp, const DensityMatrix& target,
                                               const OptimizerConfig& cfg) {
    decomp.validate(target);
    DecompositionRate r{0.0, {}};
    for (const auto& [p, psi] : decomp.terms) {
        double d = p > 0.0 ? minimize_discord(psi, cfg).value_bits : 0.0;
        r.term_discord.push_back(d);
        r.upper_bound += p * d;
    }
    return r;
}

/// (1-2p)Phi+ + p|00><00| + p|11><11| as its three-term decomposition.
inline Decomposition werner_phi_decomposition(double p) {
    Decomposition d;
    d.terms.emplace_back(1.0 - 2.0 * p, presets::phi_plus());
    d.terms.emplace_back(p, PureState::basis(PartyDims{2, 2}, {0, 0}));
    d.terms.emplace_back(p, PureState::basis(PartyDims{2, 2}, {1, 1}));
    return d;
}

// ---------------------------------------------------------------------------
// Bounds table.

struct ClosedFormRef {
    std::string quantity;
    double value;
    std::string provenance;
};

/// Closed-form values known for a state; absent fields are unknown.
struct KnownValues {
    std::optional<double> discord;
    std::optional<double> entanglement_lower;  ///< lower bound on the regularized relative entropy of entanglement
    std::optional<double> entanglement_cost;
    std::vector<ClosedFormRef> refs;
};

struct LabeledState {
    std::string label;
    PureState state;
    KnownValues known;
};

inline KnownValues known_w3() {
    const double lo = 2.0 * std::log2(3.0) - 2.0, up = std::log2(3.0);
    return {up, lo, std::nullopt,
            {{"E_R_inf", lo, "2 log2(3) - 2, regularized value for the W state"},
             {"D_R", up, "computational basis, three equiprobable outcomes"}}};
}

inline KnownValues known_gghz(double p) {
    const double h = binary_entropy(p);
    return {h, h, h, {{"E_c", h, "H2(p); lower and upper bounds coincide"}, {"D_R", h, "H2(p)"}}};
}

inline KnownValues known_plus011() {
    return {1.5, 1.0, 1.0,
            {{"E_c", 1.0, "1; one GHZ copy converts to the state by LOCC and the entanglement lower bound is 1"},
             {"D_R", 1.5, "single-copy value 1.5"}}};
}

inline KnownValues known_product() { return {0.0, 0.0, 0.0, {{"D_R", 0.0, "product state"}}}; }

inline LabeledState labeled_preset(const std::string& name, double p = 0.5) {
    if (name == "w3") return {name, presets::w(3), known_w3()};
    if (name == "ghz3") return {name, presets::ghz(3), known_gghz(0.5)};
    if (name == "gghz") return {name, presets::generalized_ghz(p, 3), known_gghz(p)};
    if (name == "plus011") return {name, presets::plus011(), known_plus011()};
    if (name == "product-000") return {name, presets::product000(), known_product()};
    return {name, presets::by_name(name, p), {}};
}

struct RateReport {
    std::string label;
    double discord_t1 = 0.0;
    std::map<std::size_t, double> discord_finite_t;  ///< t -> D_R(psi^{(x)t}) / t
    double rate_RT = 0.0;
    std::optional<double> entanglement_lower_bound;
    std::optional<double> entanglement_cost_known;
    std::vector<ClosedFormRef> closed_form_refs;
    std::vector<std::string> flags;
    bool bound_ordering_ok = true;  ///< lower bound <= discord_t1 + 1e-6 where both are present
};

inline RateReport rate_report(const LabeledState& s, const OptimizerConfig& cfg, const std::vector<std::size_t>& t_values) {
    RateReport r;
    r.label = s.label;
    r.discord_t1 = minimize_discord(s.state, cfg).value_bits;
    for (std::size_t t : t_values) {
        if (t == 1) {
            r.discord_finite_t[1] = r.discord_t1;
            continue;
        }
        try {
            r.discord_finite_t[t] = finite_t_discord_rate(s.state, t, cfg);
        } catch (const GuardError&) {
            r.flags.push_back("t=" + std::to_string(t) + " skipped: blocked state exceeds guard_dim");
        }
    }
    r.rate_RT = rate_RT(s.state);
    r.entanglement_lower_bound = s.known.entanglement_lower;
    r.entanglement_cost_known = s.known.entanglement_cost;
    r.closed_form_refs = s.known.refs;
    if (s.known.discord && r.discord_t1 > *s.known.discord + kDiscordFlagTol)
        r.flags.push_back("optimizer exceeds the known discord by more than 1e-3");
    if (r.entanglement_lower_bound) r.bound_ordering_ok = *r.entanglement_lower_bound <= r.discord_t1 + kBoundOrderTol;
    if (!r.bound_ordering_ok) r.flags.push_back("entanglement lower bound exceeds discord");
    return r;
}

inline std::vector<RateReport> bounds_table(const std::vector<LabeledState>& states, const OptimizerConfig& cfg,
                                            const std::vector<std::size_t>& t_values = {1, 2}) {
    std::vector<RateReport> out;
    for (const auto& s : states) out.push_back(rate_report(s, cfg, t_values));
    return out;
}

}  // namespace ghzcost

#endif
