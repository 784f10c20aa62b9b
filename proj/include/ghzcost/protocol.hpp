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

#ifndef GHZCOST_PROTOCOL_HPP
#define GHZCOST_PROTOCOL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ghzcost/hilbert.hpp"
#include "ghzcost/protocol/register_state.hpp"
#include "ghzcost/typical.hpp"

namespace ghzcost {

inline constexpr std::size_t kDefaultBranchGuard = 1'000'000;
inline constexpr std::size_t kDefaultMaxTraces = 100;

/// Number of GHZ copies needed for an index set of the given size:
/// the minimal m with 2^m >= size (m = 0 for a single member).
inline std::size_t minimal_copies(std::size_t size) {
    if (size == 0) throw InvalidArgument("index set is empty");
    std::size_t m = 0;
    while ((std::size_t{1} << m) < size) ++m;
    return m;
}

struct ProtocolInput {
    IndexedTypicalSet its;
    std::size_t k = 0;
    std::size_t m = 0;

    explicit ProtocolInput(IndexedTypicalSet s) : its(std::move(s)), k(its.parties()), m(minimal_copies(its.size())) {
        validate();
    }

    std::size_t size() const { return its.size(); }

    void validate() const {
        if (k < 2) throw InvalidArgument("protocol needs at least two parties");
        const std::size_t a = its.size();
        if (a == 0) throw InvalidArgument("typical set is empty");
        if (m > 40) throw GuardError("protocol resource exceeds 2^40 levels");
        const std::size_t hi = std::size_t{1} << m;
        const bool minimal = m == 0 ? a == 1 : (hi / 2 < a && a <= hi);
        if (!minimal) throw InvalidArgument("GHZ copy count is not minimal for the index set");
    }
};

struct KMap {
    std::vector<std::size_t> weights;  ///< weight of each party's label; beta*gamma, gamma, 1 for three parties
    std::vector<std::uint64_t> values;
    std::uint64_t d_k = 0;             ///< K(|A|-1) + 1
};

inline KMap build_kmap(const IndexedTypicalSet& its) {
    const std::size_t k = its.parties();
    KMap km;
    km.weights.assign(k, 1);
    for (std::size_t p = k - 1; p-- > 0;) {
        if (km.weights[p + 1] > (std::size_t{1} << 40) / its.alphabet_sizes[p + 1]) throw GuardError("K map overflows");
        km.weights[p] = km.weights[p + 1] * its.alphabet_sizes[p + 1];
    }
    km.values.resize(its.size());
    for (std::size_t y = 0; y < its.size(); ++y) {
        std::uint64_t v = 0;
        for (std::size_t p = 0; p < k; ++p) v += static_cast<std::uint64_t>(its.label(y, p)) * km.weights[p];
        km.values[y] = v;
    }
    std::vector<std::uint64_t> sorted = km.values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw VerificationError("K map is not injective; the indexed typical set is corrupted");
    km.d_k = km.values.back() + 1;
    if (sorted.back() >= km.d_k) throw VerificationError("K map is not maximal at the last member");
    return km;
}

struct TraceStep {
    const char* label;
    const char* op;
    std::size_t party;
    std::int64_t outcome;  ///< -1 for deterministic operations
    double probability;
};

struct ProtocolTrace {
    std::vector<TraceStep> steps;
    double probability = 1.0;  ///< product of the step probabilities, truncation included
    protocol::SparseState final_state;  ///< output on the Q registers, kept sparse
    double fidelity_to_target = 0.0;
};

enum class RunMode { enumerate, sample };

struct RunOptions {
    RunMode mode = RunMode::enumerate;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::size_t branch_guard = kDefaultBranchGuard;
    std::size_t max_traces = kDefaultMaxTraces;
};

struct BranchReport {
    std::size_t total_branches = 0;
    bool enumerated = false;
    double min_fidelity = 1.0;
    double probability_covered = 0.0;  ///< conditional on the truncation filter succeeding
    double min_agreement = 1.0;        ///< fidelity of each branch output with the first one
    double filter_success_probability = 1.0;
    std::size_t index_size = 0;
    std::size_t copies = 0;
    std::uint64_t d_k = 0;
    std::size_t samples = 0;
};

struct ProtocolResult {
    BranchReport report;
    std::vector<ProtocolTrace> traces;
};

/// 2^{-m/2} sum_y |y, ..., y> on k registers of dimension 2^m.
inline PureState ghz_resource(std::size_t k, std::size_t m) {
    if (k < 2) throw InvalidArgument("ghz_resource: k must be at least 2");
    if (m == 0) throw InvalidArgument("ghz_resource: m must be at least 1");
    PartyDims q(std::vector<std::size_t>(k, 2));
    Vector v = Vector::Zero(static_cast<Eigen::Index>(q.total()));
    v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
    return blocked_power(PureState(q, v), m);
}

inline protocol::SparseState ghz_resource_sparse(std::size_t k, std::size_t m) {
    if (k < 2) throw InvalidArgument("ghz_resource: k must be at least 2");
    const std::size_t d = std::size_t{1} << m;
    PartyDims dims(std::vector<std::size_t>(k, d));
    std::uint64_t diag = 0;
    for (std::size_t p = 0; p < k; ++p) diag = diag * d + 1;
    std::vector<protocol::SparseState::Term> terms;
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t y = 0; y < d; ++y) terms.emplace_back(diag * y, a);
    return protocol::SparseState(std::move(dims), std::move(terms));
}

inline protocol::SparseState approximate_state_sparse(const IndexedTypicalSet& its) {
    PartyDims dims = compressed_dims(its);
    std::vector<protocol::SparseState::Term> terms;
    const double scale = 1.0 / std::sqrt(its.n_epsilon);
    for (std::size_t y = 0; y < its.size(); ++y) terms.emplace_back(dims.flat(its.tuple(y)), scale * its.coeffs[y]);
    return protocol::SparseState(std::move(dims), std::move(terms));
}

namespace protocol {

inline bool is_unitary(const MonomialOp& op) {
    std::vector<char> hit(op.dim(), 0);
    for (std::size_t c = 0; c < op.dim(); ++c) {
        if (op.rows[c] >= op.dim() || hit[op.rows[c]] || std::abs(std::abs(op.values[c]) - 1.0) > kUnitaryTol) return false;
        hit[op.rows[c]] = 1;
    }
    return true;
}

inline MonomialOp cyclic_shift(std::size_t d, std::size_t j) {
    std::vector<std::size_t> img(d);
    for (std::size_t y = 0; y < d; ++y) img[y] = (y + j) % d;
    return MonomialOp::permutation(std::move(img));
}

/// Diagonal exp(2 pi i * num * y / den) on y < dim.
inline MonomialOp phase_ramp(std::size_t dim, std::uint64_t num, std::uint64_t den) {
    std::vector<cplx> d(dim);
    for (std::size_t y = 0; y < dim; ++y) {
        std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) * y) % den);
        d[y] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
    }
    return MonomialOp::diagonal(std::move(d));
}

/// Operators, measurements and index data prepared once per run.
struct ProtocolPlan {
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t a = 0;  ///< |A|
    std::vector<std::size_t> alphabet;
    std::vector<std::vector<std::size_t>> labels;  ///< party -> y -> label
    KMap kmap;
    Measurement filter;
    Measurement reshape;
    std::vector<MonomialOp> copies;  ///< per party, on (Q'_p, Q_p)
    Measurement hadamard;
    std::vector<Vector> hadamard_vectors;  ///< J|j>/sqrt|A|
    MonomialOp isometry;
    Measurement readout;
    std::vector<std::vector<LocalOp>> corrections;  ///< party -> outcome -> phase, when small enough to cache

    explicit ProtocolPlan(const ProtocolInput& in) : k(in.k), m(in.m), a(in.size()), alphabet(in.its.alphabet_sizes) {
        const auto& its = in.its;
        labels.assign(k, std::vector<std::size_t>(a));
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t y = 0; y < a; ++y) labels[p][y] = its.label(y, p);
        kmap = build_kmap(its);

        const std::size_t full = std::size_t{1} << m;
        std::vector<cplx> keep(full, 0.0), drop(full, 1.0);
        for (std::size_t y = 0; y < a; ++y) keep[y] = 1.0, drop[y] = 0.0;
        filter = {{MonomialOp::diagonal(keep), MonomialOp::diagonal(drop)}, "truncation filter"};
        check_completeness(filter);

        double n = 0.0;
        for (const auto& c : its.coeffs) n += std::norm(c);
        const double s = 1.0 / std::sqrt(n);
        reshape.label = "coefficient reshaping";
        for (std::size_t j = 0; j < a; ++j) {
            std::vector<cplx> d(a);
            for (std::size_t y = 0; y < a; ++y) d[y] = s * its.coeffs[(y + j) % a];
            reshape.ops.emplace_back(MonomialOp::diagonal(std::move(d)));
        }
        check_completeness(reshape);

        for (std::size_t p = 0; p < k; ++p) {
            const std::size_t al = alphabet[p];
            std::vector<std::size_t> img(a * al);
            for (std::size_t y = 0; y < a; ++y)
                for (std::size_t q = 0; q < al; ++q) img[y * al + q] = y * al + (q + labels[p][y]) % al;
            copies.push_back(MonomialOp::permutation(std::move(img)));
            if (!is_unitary(copies.back())) throw VerificationError("copy map is not a permutation");
        }

        hadamard.label = "complex Hadamard";
        const double inv = 1.0 / std::sqrt(static_cast<double>(a));
        for (std::size_t j = 0; j < a; ++j) {
            Vector phi(static_cast<Eigen::Index>(a));
            for (std::size_t y = 0; y < a; ++y)
                phi(static_cast<Eigen::Index>(y)) = inv * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((y * j) % a) / static_cast<double>(a));
            hadamard.ops.emplace_back(DenseOp{phi * phi.adjoint()});
            hadamard_vectors.push_back(std::move(phi));
        }
        check_completeness(hadamard);

        const std::uint64_t d = kmap.d_k;
        if (d > (std::uint64_t{1} << 24)) throw GuardError("ancilla dimension D_K exceeds 2^24");
        std::vector<std::size_t> img(d, 0);
        std::vector<char> used(d, 0);
        for (std::size_t y = 0; y < a; ++y) {
            img[y] = kmap.values[y];
            used[kmap.values[y]] = 1;
        }
        std::size_t next = 0;
        for (std::size_t y = a; y < d; ++y) {
            while (used[next]) ++next;
            img[y] = next;
            used[next] = 1;
        }
        isometry = MonomialOp::permutation(std::move(img));
        if (!is_unitary(isometry)) throw VerificationError("isometry completion is not a permutation");

        auto roots = FourierReadoutOp::make_roots(d);
        readout.label = "ancilla Fourier readout";
        for (std::uint64_t j = 0; j < d; ++j) readout.ops.emplace_back(FourierReadoutOp{j, roots});
        check_completeness(readout);

        std::size_t sum_alpha = 0;
        for (std::size_t al : alphabet) sum_alpha += al;
        if (static_cast<double>(d) * static_cast<double>(sum_alpha) <= 2e7) {
            corrections.resize(k);
            for (std::size_t p = 0; p < k; ++p)
                for (std::uint64_t j = 0; j < d; ++j) corrections[p].emplace_back(correction(p, j));
        }
    }

    /// Party p's Step-4 phase exp(2 pi i j label w_p / D_K) for outcome j.
    MonomialOp correction(std::size_t p, std::uint64_t j) const {
        const std::uint64_t d = kmap.d_k;
        const std::uint64_t num = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * kmap.weights[p]) % d);
        return phase_ramp(alphabet[p], num, d);
    }

    /// Nominal leaf count |A|^k * D_K (zero-probability branches included).
    double nominal_branches() const {
        return std::pow(static_cast<double>(a), static_cast<double>(k)) * static_cast<double>(kmap.d_k);
    }
};

template <class State>
struct Branch {
    std::vector<TraceStep> steps;
    double probability;
    State state;
};

namespace detail {

/// Index drawn with probability proportional to probs.
inline std::size_t pick(std::mt19937_64& rng, const std::vector<double>& probs) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double total = 0.0;
    for (double p : probs) total += p;
    u *= total;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (u < probs[i]) return i;
        u -= probs[i];
    }
    for (std::size_t i = probs.size(); i-- > 0;)
        if (probs[i] > 0.0) return i;
    throw VerificationError("no outcome with positive probability");
}

/// Every outcome (rng == nullptr) or one outcome drawn by its probability.
template <class B>
std::vector<typename B::Outcome> measure_branches(const typename B::State& s, const Measurement& m,
                                                  std::span<const std::size_t> regs, std::mt19937_64* rng) {
    if (!rng) return B::measure(s, m, regs);
    std::vector<typename B::Outcome> out;
    out.push_back(B::measure_one(s, m, regs, pick(*rng, B::outcome_probabilities(s, m, regs))));
    return out;
}

}  // namespace detail

// Register layout. Before Step 2 the registers are Q'_0..Q'_{k-1}; Step 2
// appends Q_0..Q_{k-1}; Step 3 removes Q'_1..Q'_{k-1}, leaving Q'_0, Q_0, ...;
// Step 4 removes Q'_0.

template <class B>
typename B::State initial_resource(const ProtocolPlan& plan) {
    if constexpr (std::is_same_v<B, SparseBackend>) {
        if (plan.m == 0) return SparseState(PartyDims(std::vector<std::size_t>(plan.k, 1)), {{0, 1.0}});
        return ghz_resource_sparse(plan.k, plan.m);
    } else {
        if (plan.m == 0) {
            std::vector<std::size_t> z(plan.k, 0);
            return PureState::basis(PartyDims(std::vector<std::size_t>(plan.k, 1)), std::span<const std::size_t>(z));
        }
        return ghz_resource(plan.k, plan.m);
    }
}

template <class B>
typename B::State target_state(const IndexedTypicalSet& its) {
    if constexpr (std::is_same_v<B, SparseBackend>)
        return approximate_state_sparse(its);
    else
        return build_approximate_state(its, compressed_dims(its));
}

/// Party 0 filters onto the first |A| levels (success branch kept), then
/// every party restricts its register to |A| levels.
template <class B>
typename B::State truncate_resource(const typename B::State& s, const ProtocolPlan& plan, std::vector<TraceStep>& steps) {
    const std::size_t r0[] = {0};
    auto out = B::measure(s, plan.filter, r0);
    auto it = std::find_if(out.begin(), out.end(), [](const auto& b) { return b.outcome == 0; });
    if (it == out.end()) throw VerificationError("truncation filter has no success branch");
    steps.push_back({"truncate", "filter", 0, 0, it->probability});
    typename B::State st = std::move(it->state);
    for (std::size_t p = 0; p < plan.k; ++p) {
        st = B::resize(st, p, plan.a);
        steps.push_back({"truncate", "restrict", p, -1, 1.0});
    }
    return st;
}

/// Coefficient reshaping measurement on Q'_0; on outcome j every party
/// shifts y -> y + j mod |A|.
template <class B>
std::vector<Branch<typename B::State>> step1_reshape(const typename B::State& s, const ProtocolPlan& plan,
                                                    std::mt19937_64* rng = nullptr) {
    const std::size_t r0[] = {0};
    std::vector<Branch<typename B::State>> out;
    for (auto& b : detail::measure_branches<B>(s, plan.reshape, r0, rng)) {
        Branch<typename B::State> br{{{"step1", "reshape-measure", 0, static_cast<std::int64_t>(b.outcome), b.probability}},
                                     b.probability, std::move(b.state)};
        if (b.outcome != 0) {
            LocalOp shift = cyclic_shift(plan.a, b.outcome);
            for (std::size_t p = 0; p < plan.k; ++p) {
                const std::size_t rp[] = {p};
                br.state = B::apply(br.state, shift, rp);
                br.steps.push_back({"step1", "shift", p, -1, 1.0});
            }
        }
        out.push_back(std::move(br));
    }
    return out;
}

/// Appends Q registers and lets each party copy its label into them.
template <class B>
typename B::State step2_copy(const typename B::State& s, const ProtocolPlan& plan, std::vector<TraceStep>& steps) {
    if (s.dims().parties() != plan.k) throw DimensionError("step2: unexpected register layout");
    typename B::State st = B::append_zero_registers(s, PartyDims(plan.alphabet));
    for (std::size_t p = 0; p < plan.k; ++p) {
        const std::size_t regs[] = {p, plan.k + p};
        st = B::apply(st, plan.copies[p], regs);
        steps.push_back({"step2", "copy", p, -1, 1.0});
    }
    return st;
}

/// Parties 1..k-1 measure Q'_p in the Hadamard basis and discard it;
/// party 0 undoes the accumulated phase.
template <class B>
std::vector<Branch<typename B::State>> step3_disentangle(const typename B::State& s, const ProtocolPlan& plan,
                                                        std::mt19937_64* rng = nullptr) {
    using State = typename B::State;
    std::vector<Branch<State>> cur;
    cur.push_back({{}, 1.0, s});
    std::vector<std::size_t> sum_of(1, 0);
    for (std::size_t p = plan.k - 1; p >= 1; --p) {
        std::vector<Branch<State>> next;
        std::vector<std::size_t> next_sum;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const std::size_t rp[] = {p};
            for (auto& b : detail::measure_branches<B>(cur[i].state, plan.hadamard, rp, rng)) {
                Branch<State> nb{cur[i].steps, cur[i].probability * b.probability, std::move(b.state)};
                nb.steps.push_back({"step3", "hadamard-measure", p, static_cast<std::int64_t>(b.outcome), b.probability});
                nb.state = B::project_out(nb.state, p, plan.hadamard_vectors[b.outcome]);
                nb.steps.push_back({"step3", "discard", p, -1, 1.0});
                next.push_back(std::move(nb));
                next_sum.push_back((sum_of[i] + b.outcome) % plan.a);
            }
        }
        cur = std::move(next);
        sum_of = std::move(next_sum);
    }
    const std::size_t r0[] = {0};
    for (std::size_t i = 0; i < cur.size(); ++i) {
        if (sum_of[i] != 0) cur[i].state = B::apply(cur[i].state, phase_ramp(plan.a, sum_of[i], plan.a), r0);
        cur[i].steps.push_back({"step3", "phase", 0, -1, 1.0});
    }
    return cur;
}

/// Party 0 embeds y -> K(y) in a D_K-level ancilla and reads it out in the
/// Fourier basis; every party then corrects its phase and the ancilla is
/// discarded.
template <class B>
std::vector<Branch<typename B::State>> step4_disentangle(const typename B::State& s, const ProtocolPlan& plan,
                                                        std::mt19937_64* rng = nullptr) {
    using State = typename B::State;
    if (s.dims().parties() != plan.k + 1) throw DimensionError("step4: unexpected register layout");
    const std::size_t r0[] = {0};
    const std::uint64_t d = plan.kmap.d_k;
    State st = B::resize(s, 0, d);
    st = B::apply(st, plan.isometry, r0);
    Vector zero = Vector::Zero(static_cast<Eigen::Index>(d));
    zero(0) = 1.0;
    std::vector<Branch<State>> out;
    for (auto& b : detail::measure_branches<B>(st, plan.readout, r0, rng)) {
        Branch<State> br{{}, b.probability, std::move(b.state)};
        br.steps.reserve(plan.k + 4);
        br.steps.push_back({"step4", "resize", 0, -1, 1.0});
        br.steps.push_back({"step4", "isometry", 0, -1, 1.0});
        br.steps.push_back({"step4", "fourier-measure", 0, static_cast<std::int64_t>(b.outcome), b.probability});
        if (b.outcome != 0) {
            for (std::size_t p = 0; p < plan.k; ++p) {
                const std::size_t rq[] = {1 + p};
                if (plan.corrections.empty())
                    br.state = B::apply(br.state, plan.correction(p, b.outcome), rq);
                else
                    br.state = B::apply(br.state, plan.corrections[p][b.outcome], rq);
                br.steps.push_back({"step4", "phase", p, -1, 1.0});
            }
        }
        br.state = B::project_out(br.state, 0, zero);
        br.steps.push_back({"step4", "discard", 0, -1, 1.0});
        out.push_back(std::move(br));
    }
    return out;
}


/// Runs truncation and Steps 1-4, visiting every branch (enumerate) or
/// drawing branches by their probabilities (sample).
template <class B = SparseBackend>
ProtocolResult run_protocol(const ProtocolInput& input, const RunOptions& opt = {}) {
    using State = typename B::State;
    if (opt.mode == RunMode::enumerate) {
        const double nominal = std::pow(static_cast<double>(input.size()), static_cast<double>(input.k)) *
                               static_cast<double>(build_kmap(input.its).d_k);
        if (nominal > static_cast<double>(opt.branch_guard))
            throw GuardError("protocol branch count " + std::to_string(nominal) + " exceeds the guard " +
                             std::to_string(opt.branch_guard));
    }
    ProtocolPlan plan(input);
    const State target = target_state<B>(input.its);

    ProtocolResult res;
    auto& rep = res.report;
    rep.enumerated = opt.mode == RunMode::enumerate;
    rep.index_size = plan.a;
    rep.copies = plan.m;
    rep.d_k = plan.kmap.d_k;

    std::vector<TraceStep> prefix;
    State s0 = truncate_resource<B>(initial_resource<B>(plan), plan, prefix);
    rep.filter_success_probability = prefix.front().probability;

    std::optional<State> reference;
    auto leaf = [&](std::initializer_list<const std::vector<TraceStep>*> parts, double prob, const State& out) {
        double f = B::fidelity(out, target);
        if (!reference) reference = out;
        double agree = B::fidelity(out, *reference);
        rep.min_fidelity = std::min(rep.min_fidelity, f);
        rep.min_agreement = std::min(rep.min_agreement, agree);
        ++rep.total_branches;
        if (res.traces.size() < opt.max_traces) {
            ProtocolTrace tr;
            for (const auto* part : parts) tr.steps.insert(tr.steps.end(), part->begin(), part->end());
            tr.probability = 1.0;
            for (const auto& st : tr.steps) tr.probability *= st.probability;
            tr.final_state = protocol::SparseBackend::from_dense_or_copy(out);
            tr.fidelity_to_target = f;
            res.traces.push_back(std::move(tr));
        }
        return prob;
    };

    if (rep.enumerated) {
        for (auto& b1 : step1_reshape<B>(s0, plan)) {
            std::vector<TraceStep> s2;
            State st2 = step2_copy<B>(b1.state, plan, s2);
            for (auto& b3 : step3_disentangle<B>(st2, plan)) {
                for (auto& b4 : step4_disentangle<B>(b3.state, plan)) {
                    double p = b1.probability * b3.probability * b4.probability;
                    rep.probability_covered += leaf({&prefix, &b1.steps, &s2, &b3.steps, &b4.steps}, p, b4.state);
                }
            }
        }
        return res;
    }

    std::mt19937_64 rng(opt.seed);
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t n = 0; n < opt.samples; ++n) {
        auto b1 = std::move(step1_reshape<B>(s0, plan, &rng).front());
        std::vector<TraceStep> s2;
        State st2 = step2_copy<B>(b1.state, plan, s2);
        auto b3 = std::move(step3_disentangle<B>(st2, plan, &rng).front());
        auto b4 = std::move(step4_disentangle<B>(b3.state, plan, &rng).front());
        double p = b1.probability * b3.probability * b4.probability;
        leaf({&prefix, &b1.steps, &s2, &b3.steps, &b4.steps}, p, b4.state);
        std::vector<std::int64_t> key;
        for (const auto* part : {&b1.steps, &b3.steps, &b4.steps})
            for (const auto& st : *part)
                if (st.outcome >= 0) key.push_back(st.outcome);
        if (seen.insert(std::move(key)).second) rep.probability_covered += p;
    }
    rep.samples = opt.samples;
    return res;
}

}  // namespace protocol

using protocol::run_protocol;

/// Resource consumption ceil(log2 |A|) / n GHZ states per target copy.
inline double resource_rate(const ProtocolInput& input, std::size_t n) {
    if (n == 0) throw InvalidArgument("resource_rate: n must be positive");
    if (n % input.its.l != 0) throw InvalidArgument("resource_rate: n must be a multiple of the block length");
    return static_cast<double>(input.m) / static_cast<double>(n);
}

}  // namespace ghzcost

#endif
