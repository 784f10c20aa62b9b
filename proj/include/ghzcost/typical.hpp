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

// Coefficient distributions of psi^{(x) t} in a product basis, typical sets
// over blocks of l symbols, and the renormalized typical-part state.

#ifndef GHZCOST_TYPICAL_HPP
#define GHZCOST_TYPICAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "ghzcost/basis.hpp"
#include "ghzcost/hilbert.hpp"

namespace ghzcost {

inline constexpr std::size_t kEnumerationGuard = 10'000'000;
/// Slack on the typicality comparison so that sequences sitting exactly on the
/// +-epsilon boundary are not decided by rounding.
inline constexpr double kTypicalSlack = 1e-12;

/// Amplitudes of a state in a product basis, indexed like the state.
struct CoefficientTable {
    PartyDims dims;
    Vector coeffs;

    cplx at(std::span<const std::size_t> tuple) const { return coeffs(static_cast<Eigen::Index>(dims.flat(tuple))); }
};

/// p(x_1, ..., x_k) = |C(x_1, ..., x_k)|^2 restricted to its strictly positive
/// entries, in lexicographic tuple order.
struct JointDistribution {
    struct Entry {
        std::vector<std::size_t> tuple;
        double prob;
        cplx coeff;
    };

    PartyDims alphabet_dims;
    std::vector<Entry> entries;

    std::size_t parties() const { return alphabet_dims.parties(); }
    std::size_t symbols() const { return entries.size(); }

    double entropy() const {
        double h = 0.0;
        for (const auto& e : entries) h -= e.prob * std::log2(e.prob);
        return h;
    }
};

struct AepReport {
    bool mass_bound = false;          ///< N_eps > 1 - eps
    bool upper_size_bound = false;    ///< |A| <= 2^{l(H+eps)}
    bool lower_size_checked = false;  ///< lower bound is only meaningful once mass_bound holds
    bool lower_size_bound = false;    ///< |A| > (1-eps) 2^{l(H-eps)}
    double lower_size = 0.0;
    double upper_size = 0.0;
};

inline AepReport aep_report(double size, double n_eps, double h, std::size_t l, double eps) {
    AepReport r;
    const double ld = static_cast<double>(l);
    r.upper_size = std::exp2(ld * (h + eps));
    r.lower_size = (1.0 - eps) * std::exp2(ld * (h - eps));
    r.mass_bound = n_eps > 1.0 - eps;
    r.upper_size_bound = size <= r.upper_size;
    r.lower_size_checked = r.mass_bound;
    r.lower_size_bound = size > r.lower_size;
    return r;
}

/// The typical set A_eps: sequences of l symbols whose per-symbol log
/// probability is within eps of H. Members are sorted lexicographically by
/// their per-party marginal sequences, party 0 first, so member index = y.
struct TypicalSet {
    std::size_t l = 0;
    double epsilon = 0.0;
    double entropy_H = 0.0;
    std::size_t parties = 0;
    std::vector<std::vector<std::size_t>> alphabet;  ///< symbol -> k-tuple
    std::vector<double> symbol_probs;
    std::vector<std::uint32_t> symbols;  ///< members, stride l
    std::vector<double> member_probs;
    double n_epsilon = 0.0;
    std::vector<std::size_t> alphabet_sizes;  ///< distinct marginal sequences per party
    AepReport aep;

    std::size_t size() const { return member_probs.size(); }
    std::span<const std::uint32_t> member(std::size_t i) const { return {symbols.data() + i * l, l}; }
    std::size_t marginal(std::size_t i, std::size_t pos, std::size_t party) const {
        return alphabet[symbols[i * l + pos]][party];
    }
};

/// Relabeling y -> (f(y), g(y), h(y), ...) of a typical set.
struct IndexedTypicalSet {
    std::size_t l = 0;
    PartyDims symbol_dims;                     ///< per-party dimension of one symbol (dim_j^t)
    std::vector<std::size_t> alphabet_sizes;   ///< alpha, beta, gamma, ...
    std::vector<std::size_t> labels;           ///< stride = parties
    std::vector<cplx> coeffs;                  ///< C(y), unnormalized
    std::vector<std::vector<std::vector<std::size_t>>> party_sequences;  ///< party -> label -> digits
    double n_epsilon = 0.0;

    std::size_t parties() const { return alphabet_sizes.size(); }
    std::size_t size() const { return coeffs.size(); }
    std::size_t label(std::size_t y, std::size_t party) const { return labels[y * parties() + party]; }
    std::span<const std::size_t> tuple(std::size_t y) const { return {labels.data() + y * parties(), parties()}; }
};

/// Distribution of |C|^2 for psi^{(x) t} written in `basis` (one unitary per
/// party of the blocked state, party j of dimension dim_j^t).
/// Joint outcome distribution of psi^{(x)t} measured in `basis`. Outcomes
/// with probability at or below `prob_floor` are left out of the support.
inline std::pair<JointDistribution, CoefficientTable> coefficient_distribution(const PureState& psi,
                                                                              const SeparableBasis& basis,
                                                                              std::size_t t, double prob_floor = 0.0) {
    PureState phi = blocked_power(psi, t);
    if (!basis.matches(phi.dims())) throw DimensionError("basis does not match the blocked tensor power");
    CoefficientTable table{phi.dims(), coefficients_in_basis(phi, basis)};
    JointDistribution dist{phi.dims(), {}};
    for (std::size_t f = 0; f < phi.dims().total(); ++f) {
        cplx c = table.coeffs(static_cast<Eigen::Index>(f));
        double p = std::norm(c);
        if (p > prob_floor) dist.entries.push_back({phi.dims().digits(f), p, c});
    }
    double s = 0.0;
    for (const auto& e : dist.entries) s += e.prob;
    for (auto& e : dist.entries) e.prob /= s;
    return {std::move(dist), std::move(table)};
}

namespace detail {

inline bool member_less(const TypicalSet& ts, std::size_t a, std::size_t b) {
    for (std::size_t party = 0; party < ts.parties; ++party)
        for (std::size_t pos = 0; pos < ts.l; ++pos) {
            std::size_t x = ts.marginal(a, pos, party), y = ts.marginal(b, pos, party);
            if (x != y) return x < y;
        }
    return false;
}

inline bool marginal_less(const TypicalSet& ts, std::size_t party, std::size_t a, std::size_t b) {
    for (std::size_t pos = 0; pos < ts.l; ++pos) {
        std::size_t x = ts.marginal(a, pos, party), y = ts.marginal(b, pos, party);
        if (x != y) return x < y;
    }
    return false;
}

inline bool is_typical(double log2_prob, std::size_t l, double h, double eps) {
    return std::abs(-log2_prob / static_cast<double>(l) - h) <= eps + kTypicalSlack;
}

inline std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t guard) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && n > guard / base) throw GuardError("sequence enumeration exceeds the guard");
        n *= base;
    }
    return n;
}

/// Dense ranks of per-party marginal sequences among the given members.
inline std::vector<std::size_t> marginal_ranks(const TypicalSet& ts, std::size_t party, std::size_t& distinct) {
    std::vector<std::size_t> order(ts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return marginal_less(ts, party, a, b); });
    std::vector<std::size_t> rank(ts.size());
    distinct = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && marginal_less(ts, party, order[i - 1], order[i])) ++distinct;
        rank[order[i]] = distinct;
    }
    if (!order.empty()) ++distinct;
    return rank;
}

}  // namespace detail

/// Exhaustive enumeration of all |alphabet|^l sequences (guarded at 1e7).
inline TypicalSet build_typical_set(const JointDistribution& dist, std::size_t l, double epsilon,
                                    std::size_t guard = kEnumerationGuard) {
    if (l == 0) throw InvalidArgument("block length l must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (dist.entries.empty()) throw InvalidArgument("distribution has no support");
    const std::size_t s = dist.symbols();
    detail::checked_pow(s, l, guard);

    TypicalSet ts;
    ts.l = l;
    ts.epsilon = epsilon;
    ts.entropy_H = dist.entropy();
    ts.parties = dist.parties();
    std::vector<double> logp(s);
    for (std::size_t i = 0; i < s; ++i) {
        ts.alphabet.push_back(dist.entries[i].tuple);
        ts.symbol_probs.push_back(dist.entries[i].prob);
        logp[i] = std::log2(dist.entries[i].prob);
    }

    std::vector<std::uint32_t> seq(l, 0);
    std::vector<double> prefix(l + 1, 0.0);
    for (std::size_t i = 0; i < l; ++i) prefix[i + 1] = prefix[i] + logp[0];
    while (true) {
        if (detail::is_typical(prefix[l], l, ts.entropy_H, epsilon)) {
            ts.symbols.insert(ts.symbols.end(), seq.begin(), seq.end());
            ts.member_probs.push_back(std::exp2(prefix[l]));
        }
        std::size_t i = l;
        while (i > 0 && ++seq[i - 1] == s) seq[--i] = 0;
        if (i == 0) break;
        for (std::size_t j = i - 1; j < l; ++j) prefix[j + 1] = prefix[j] + logp[seq[j]];
    }

    // Reorder members party-major lexicographically.
    std::vector<std::size_t> order(ts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return detail::member_less(ts, a, b); });
    std::vector<std::uint32_t> symbols;
    std::vector<double> probs;
    symbols.reserve(ts.symbols.size());
    probs.reserve(ts.size());
    for (std::size_t i : order) {
        auto m = ts.member(i);
        symbols.insert(symbols.end(), m.begin(), m.end());
        probs.push_back(ts.member_probs[i]);
    }
    ts.symbols = std::move(symbols);
    ts.member_probs = std::move(probs);

    ts.n_epsilon = 0.0;
    for (double p : ts.member_probs) ts.n_epsilon += p;
    ts.alphabet_sizes.assign(ts.parties, 0);
    for (std::size_t party = 0; party < ts.parties; ++party) detail::marginal_ranks(ts, party, ts.alphabet_sizes[party]);
    ts.aep = aep_report(static_cast<double>(ts.size()), ts.n_epsilon, ts.entropy_H, l, epsilon);
    return ts;
}

/// Exact size and mass of A_eps by counting type classes (symbol-count
/// vectors); every sequence of one type class has the same probability, so
/// this needs no per-sequence enumeration.
struct TypicalSummary {
    std::size_t l = 0;
    double epsilon = 0.0;
    double entropy_H = 0.0;
    long double size = 0.0L;
    double n_epsilon = 0.0;
    AepReport aep;
};

inline TypicalSummary typical_set_summary(const std::vector<double>& probs, std::size_t l, double epsilon,
                                          std::size_t guard = kEnumerationGuard) {
    if (l == 0) throw InvalidArgument("block length l must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    std::vector<double> p;
    for (double x : probs)
        if (x > 0.0) p.push_back(x);
    if (p.empty()) throw InvalidArgument("distribution has no support");
    // Number of compositions of l into |p| parts.
    long double classes = 1.0L;
    for (std::size_t i = 1; i < p.size(); ++i) classes = classes * static_cast<long double>(l + i) / static_cast<long double>(i);
    if (classes > static_cast<long double>(guard)) throw GuardError("type-class enumeration exceeds the guard");

    TypicalSummary out;
    out.l = l;
    out.epsilon = epsilon;
    out.entropy_H = shannon_entropy(p);
    std::vector<double> logp(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) logp[i] = std::log2(p[i]);

    std::vector<std::size_t> counts(p.size(), 0);
    const long double lgl = std::lgamma(static_cast<long double>(l) + 1.0L);
    long double mass = 0.0L;
    auto visit = [&]() {
        double lp = 0.0;
        long double lg = lgl;
        for (std::size_t i = 0; i < p.size(); ++i) {
            lp += static_cast<double>(counts[i]) * logp[i];
            lg -= std::lgamma(static_cast<long double>(counts[i]) + 1.0L);
        }
        if (!detail::is_typical(lp, l, out.entropy_H, epsilon)) return;
        long double n = std::round(std::exp(lg));
        out.size += n;
        mass += std::exp(lg + static_cast<long double>(lp) * std::log(2.0L));
    };
    // Enumerate compositions: counts[0..s-2] free, last takes the remainder.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == p.size()) {
            counts[i] = left;
            visit();
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c);
        }
    };
    rec(0, l);
    out.n_epsilon = static_cast<double>(mass);
    out.aep = aep_report(static_cast<double>(out.size), out.n_epsilon, out.entropy_H, l, epsilon);
    return out;
}

/// Relabels members as y = 0..|A|-1 (member order) and each party's marginal
/// sequences densely in lexicographic order.
inline IndexedTypicalSet index_typical_set(const TypicalSet& ts, const CoefficientTable& coeffs) {
    if (ts.size() == 0) throw InvalidArgument("typical set is empty");
    if (coeffs.dims.parties() != ts.parties) throw DimensionError("coefficient table party count mismatch");
    IndexedTypicalSet its;
    its.l = ts.l;
    its.symbol_dims = coeffs.dims;
    its.n_epsilon = ts.n_epsilon;
    its.alphabet_sizes.assign(ts.parties, 0);
    its.labels.assign(ts.size() * ts.parties, 0);
    its.party_sequences.resize(ts.parties);
    for (std::size_t party = 0; party < ts.parties; ++party) {
        auto rank = detail::marginal_ranks(ts, party, its.alphabet_sizes[party]);
        its.party_sequences[party].assign(its.alphabet_sizes[party], {});
        for (std::size_t y = 0; y < ts.size(); ++y) {
            its.labels[y * ts.parties + party] = rank[y];
            auto& seq = its.party_sequences[party][rank[y]];
            if (seq.empty())
                for (std::size_t pos = 0; pos < ts.l; ++pos) seq.push_back(ts.marginal(y, pos, party));
        }
    }
    its.coeffs.resize(ts.size());
    for (std::size_t y = 0; y < ts.size(); ++y) {
        cplx c = 1.0;
        for (std::uint32_t sym : ts.member(y)) c *= coeffs.at(ts.alphabet[sym]);
        its.coeffs[y] = c;
    }
    return its;
}

/// Psi = N_eps^{-1/2} sum_y C(y) |f(y), g(y), h(y), ...> on registers of the
/// given dimensions.
inline PureState build_approximate_state(const IndexedTypicalSet& its, const PartyDims& dims) {
    if (dims.parties() != its.parties()) throw DimensionError("approximate state: party count mismatch");
    for (std::size_t j = 0; j < dims.parties(); ++j)
        if (dims[j] < its.alphabet_sizes[j]) throw DimensionError("approximate state: register smaller than alphabet");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
    const double scale = 1.0 / std::sqrt(its.n_epsilon);
    for (std::size_t y = 0; y < its.size(); ++y) v(static_cast<Eigen::Index>(dims.flat(its.tuple(y)))) = scale * its.coeffs[y];
    return PureState::normalized(dims, std::move(v));
}

inline PartyDims compressed_dims(const IndexedTypicalSet& its) { return PartyDims(its.alphabet_sizes); }

/// F(Psi, psi^{(x) n}) = sqrt(N_eps).
inline double fidelity_to_original(const IndexedTypicalSet& its) { return std::sqrt(its.n_epsilon); }

/// Per-party dimensions of the full sequence space, (dim_j^t)^l.
inline PartyDims sequence_space_dims(const PartyDims& symbol_dims, std::size_t l) {
    std::vector<std::size_t> d(symbol_dims.parties(), 1);
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t i = 0; i < l; ++i) {
            if (d[j] > (std::size_t{1} << 40) / symbol_dims[j]) throw GuardError("sequence space too large");
            d[j] *= symbol_dims[j];
        }
    return PartyDims(std::move(d));
}

/// Maps a state on compressed registers back to the original marginal
/// sequences, padding everything else with zero.
inline PureState embed_in_sequence_space(const PureState& compressed, const IndexedTypicalSet& its) {
    if (!(compressed.dims() == compressed_dims(its))) throw DimensionError("embed: state is not on compressed registers");
    PartyDims full = sequence_space_dims(its.symbol_dims, its.l);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(full.total()));
    std::vector<std::vector<std::size_t>> packed(its.parties());
    for (std::size_t j = 0; j < its.parties(); ++j)
        for (const auto& seq : its.party_sequences[j]) {
            std::size_t x = 0;
            for (std::size_t digit : seq) x = x * its.symbol_dims[j] + digit;
            packed[j].push_back(x);
        }
    const auto& cd = compressed.dims();
    std::vector<std::size_t> digits(its.parties());
    for (std::size_t f = 0; f < cd.total(); ++f) {
        cplx a = compressed.amps()(static_cast<Eigen::Index>(f));
        if (a == cplx(0.0)) continue;
        auto lab = cd.digits(f);
        for (std::size_t j = 0; j < lab.size(); ++j) digits[j] = packed[j].at(lab[j]);
        v(static_cast<Eigen::Index>(full.flat(digits))) = a;
    }
    return PureState::normalized(std::move(full), std::move(v));
}

inline constexpr std::size_t kSequenceSpaceGuard = std::size_t{1} << 22;

/// F(Psi, psi^{(x) t l}) where Psi lives on compressed registers: labels are
/// mapped back to their sequences and `basis` (on t-blocked symbols) is undone.
inline double fidelity_with_power(const PureState& compressed, const IndexedTypicalSet& its, const PureState& psi,
                                  const SeparableBasis& basis, std::size_t t,
                                  std::size_t guard = kSequenceSpaceGuard) {
    PartyDims full = sequence_space_dims(its.symbol_dims, its.l);
    if (full.total() > guard) throw GuardError("sequence space exceeds the fidelity guard");
    PureState embedded = embed_in_sequence_space(compressed, its);
    PureState power = blocked_power(psi, t * its.l);
    if (!(power.dims() == full)) throw DimensionError("fidelity_with_power: t does not match the symbol dimensions");
    PureState rotated(full, coefficients_in_basis(power, basis.power(its.l)));
    return fidelity(rotated, embedded);
}

}  // namespace ghzcost

#endif
