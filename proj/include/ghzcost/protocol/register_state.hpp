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

// Register-level execution engine for the GHZ conversion protocol.
//
// Protocol states are supported on |A| product basis terms while the register
// space grows to D_K * alpha * beta * gamma, so the protocol keeps states as a
// sorted list of (flat index, amplitude) terms and operators expose column
// access only. The same step code also runs on dense hilbert-core states
// through DenseBackend, which is how the engine is cross-checked.

#ifndef GHZCOST_PROTOCOL_REGISTER_STATE_HPP
#define GHZCOST_PROTOCOL_REGISTER_STATE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ghzcost/hilbert.hpp"

namespace ghzcost::protocol {

/// Amplitudes below this magnitude are dropped after each operation.
inline constexpr double kDropAmplitude = 1e-15;

/// Pure state stored as its nonzero terms, sorted by flat index. Register
/// dimensions are shared between states derived from one another.
class SparseState {
   public:
    using Term = std::pair<std::uint64_t, cplx>;

    SparseState() = default;
    SparseState(PartyDims dims, std::vector<Term> terms)
        : SparseState(std::make_shared<const PartyDims>(std::move(dims)), std::move(terms)) {}
    SparseState(std::shared_ptr<const PartyDims> dims, std::vector<Term> terms)
        : dims_(std::move(dims)), terms_(std::move(terms)) {
        canonicalize();
    }

    static SparseState from_dense(const PureState& psi) {
        std::vector<Term> t;
        for (Eigen::Index i = 0; i < psi.amps().size(); ++i)
            if (std::abs(psi.amps()(i)) > kDropAmplitude) t.emplace_back(static_cast<std::uint64_t>(i), psi.amps()(i));
        return SparseState(psi.dims(), std::move(t));
    }

    PureState to_dense() const {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dims_->total()));
        for (const auto& [i, a] : terms_) v(static_cast<Eigen::Index>(i)) = a;
        return PureState::normalized(*dims_, std::move(v));
    }

    const PartyDims& dims() const { return *dims_; }
    const std::shared_ptr<const PartyDims>& shared_dims() const { return dims_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t nnz() const { return terms_.size(); }

    double norm2() const {
        double n = 0.0;
        for (const auto& t : terms_) n += std::norm(t.second);
        return n;
    }

    void scale(cplx s) {
        for (auto& t : terms_) t.second *= s;
    }

    /// Sorts by index, merges duplicates and drops negligible amplitudes.
    void canonicalize() {
        auto less = [](const Term& a, const Term& b) { return a.first < b.first; };
        if (!std::is_sorted(terms_.begin(), terms_.end(), less)) std::sort(terms_.begin(), terms_.end(), less);
        std::size_t w = 0;
        for (std::size_t r = 0; r < terms_.size();) {
            std::uint64_t idx = terms_[r].first;
            cplx acc = 0.0;
            while (r < terms_.size() && terms_[r].first == idx) acc += terms_[r++].second;
            if (std::abs(acc) > kDropAmplitude) terms_[w++] = {idx, acc};
        }
        terms_.resize(w);
    }

   private:
    std::shared_ptr<const PartyDims> dims_ = std::make_shared<const PartyDims>();
    std::vector<Term> terms_;
};

/// <a|b> for sparse states on identical registers.
inline cplx inner(const SparseState& a, const SparseState& b) {
    if (!(a.dims() == b.dims())) throw DimensionError("inner: register dimensions differ");
    cplx s = 0.0;
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            s += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return s;
}

inline double fidelity(const SparseState& a, const SparseState& b) {
    return std::min(1.0, std::abs(inner(a, b)) / std::sqrt(a.norm2() * b.norm2()));
}

// ---------------------------------------------------------------------------
// Operators with column access.

/// At most one nonzero per column: column c maps to row rows[c] with values[c].
struct MonomialOp {
    std::vector<std::size_t> rows;
    std::vector<cplx> values;

    std::size_t dim() const { return rows.size(); }
    std::size_t nnz() const { return rows.size(); }

    template <class F>
    void column(std::size_t c, F&& emit) const {
        if (values[c] != cplx(0.0)) emit(rows[c], values[c]);
    }

    static MonomialOp diagonal(std::vector<cplx> d) {
        MonomialOp op;
        op.rows.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) op.rows[i] = i;
        op.values = std::move(d);
        return op;
    }

    static MonomialOp permutation(std::vector<std::size_t> image) {
        MonomialOp op;
        op.values.assign(image.size(), cplx(1.0));
        op.rows = std::move(image);
        return op;
    }
};

struct DenseOp {
    Matrix m;

    std::size_t dim() const { return static_cast<std::size_t>(m.cols()); }
    std::size_t nnz() const { return static_cast<std::size_t>(m.size()); }

    template <class F>
    void column(std::size_t c, F&& emit) const {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            cplx v = m(r, static_cast<Eigen::Index>(c));
            if (v != cplx(0.0)) emit(static_cast<std::size_t>(r), v);
        }
    }
};

/// D^{-1/2} |0><j| Jt^dagger with <y|Jt|y'> = exp(2 pi i y y' / D): column c
/// maps to row 0 with value exp(-2 pi i j c / D) / sqrt(D).
struct FourierReadoutOp {
    std::size_t outcome = 0;
    std::shared_ptr<const std::vector<cplx>> scaled_roots;  ///< exp(-2 pi i k / D) / sqrt(D), k < D

    static std::shared_ptr<const std::vector<cplx>> make_roots(std::size_t d) {
        auto r = std::make_shared<std::vector<cplx>>(d);
        const double s = 1.0 / std::sqrt(static_cast<double>(d));
        for (std::size_t k = 0; k < d; ++k)
            (*r)[k] = std::polar(s, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
        return r;
    }

    std::size_t dim() const { return scaled_roots->size(); }
    std::size_t nnz() const { return scaled_roots->size(); }

    template <class F>
    void column(std::size_t c, F&& emit) const {
        const std::uint64_t d = scaled_roots->size(), x = static_cast<std::uint64_t>(outcome) * c;
        const std::uint64_t k = x >> 32 ? x % d : static_cast<std::uint32_t>(x) % static_cast<std::uint32_t>(d);
        emit(std::size_t{0}, (*scaled_roots)[k]);
    }
};

using LocalOp = std::variant<MonomialOp, DenseOp, FourierReadoutOp>;

inline std::size_t op_dim(const LocalOp& op) {
    return std::visit([](const auto& o) { return o.dim(); }, op);
}

inline Matrix to_dense(const LocalOp& op) {
    const auto d = static_cast<Eigen::Index>(op_dim(op));
    Matrix m = Matrix::Zero(d, d);
    std::visit(
        [&](const auto& o) {
            for (std::size_t c = 0; c < o.dim(); ++c)
                o.column(c, [&](std::size_t r, cplx v) { m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v; });
        },
        op);
    return m;
}

/// A measurement given by square column-access operators.
struct Measurement {
    std::vector<LocalOp> ops;
    std::string label;

    std::size_t size() const { return ops.size(); }
    std::size_t dim() const { return ops.empty() ? 0 : op_dim(ops.front()); }
};

inline constexpr double kExactCompletenessCost = 2e8;
inline constexpr double kProbeCompletenessCost = 2e9;
inline constexpr int kCompletenessProbes = 8;
inline constexpr int kCompletenessEntries = 128;

/// Verifies sum_j M_j^dagger M_j = I. Exact (entrywise, 1e-10) when
/// ops * d^3 <= 2e8. Otherwise 8 seeded random probes x with
/// |sum_j M_j^dagger M_j x - x|_inf <= 1e-10 |x|_1, as long as they cost at
/// most 2e9 operations; beyond that 128 seeded Gram-matrix entries (the
/// diagonal and off-diagonal in equal parts) are checked to 1e-10.
inline void check_completeness(const Measurement& m, std::uint64_t probe_seed = 0x5eed) {
    if (m.ops.empty()) throw InvalidArgument("measurement has no operators");
    const std::size_t d = m.dim();
    double nnz = 0.0;
    for (const auto& op : m.ops) {
        if (op_dim(op) != d) throw DimensionError("measurement operators differ in dimension");
        nnz += static_cast<double>(std::visit([](const auto& o) { return o.nnz(); }, op));
    }
    const double dd = static_cast<double>(d);
    auto fail = [&](const std::string& how) {
        throw CompletenessError("measurement '" + m.label + "' violates completeness (" + how + ")");
    };
    if (static_cast<double>(m.size()) * dd * dd * dd <= kExactCompletenessCost) {
        const auto n = static_cast<Eigen::Index>(d);
        Matrix acc = Matrix::Zero(n, n);
        for (const auto& op : m.ops) {
            Matrix md = to_dense(op);
            acc.noalias() += md.adjoint() * md;
        }
        double dev = (acc - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (!(dev <= kCompletenessTol)) fail("deviation " + std::to_string(dev));
        return;
    }
    std::mt19937_64 rng(probe_seed);
    if (kCompletenessProbes * (static_cast<double>(m.size()) * dd + 2.0 * nnz) <= kProbeCompletenessCost) {
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int probe = 0; probe < kCompletenessProbes; ++probe) {
            std::vector<cplx> x(d), acc(d, 0.0), y(d);
            double l1 = 0.0;
            for (auto& v : x) {
                v = cplx(nd(rng), nd(rng));
                l1 += std::abs(v);
            }
            for (const auto& op : m.ops) {
                std::visit(
                    [&](const auto& o) {
                        std::fill(y.begin(), y.end(), cplx(0.0));
                        for (std::size_t c = 0; c < d; ++c) o.column(c, [&](std::size_t r, cplx v) { y[r] += v * x[c]; });
                        for (std::size_t c = 0; c < d; ++c)
                            o.column(c, [&](std::size_t r, cplx v) { acc[c] += std::conj(v) * y[r]; });
                    },
                    op);
            }
            double dev = 0.0;
            for (std::size_t c = 0; c < d; ++c) dev = std::max(dev, std::abs(acc[c] - x[c]));
            if (!(dev <= kCompletenessTol * l1)) fail("random probe");
        }
        return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    std::vector<std::pair<std::size_t, cplx>> col_r, col_c;
    for (int e = 0; e < kCompletenessEntries; ++e) {
        const std::size_t r = pick(rng), c = e % 2 == 0 ? r : pick(rng);
        cplx g = 0.0;
        for (const auto& op : m.ops) {
            col_r.clear();
            col_c.clear();
            std::visit(
                [&](const auto& o) {
                    o.column(r, [&](std::size_t row, cplx v) { col_r.emplace_back(row, v); });
                    o.column(c, [&](std::size_t row, cplx v) { col_c.emplace_back(row, v); });
                },
                op);
            for (const auto& [i, a] : col_r)
                for (const auto& [k, b] : col_c)
                    if (i == k) g += std::conj(a) * b;
        }
        const cplx want = r == c ? 1.0 : 0.0;
        if (!(std::abs(g - want) <= kCompletenessTol)) fail("Gram entry (" + std::to_string(r) + ", " + std::to_string(c) + ")");
    }
}

// ---------------------------------------------------------------------------
// Sparse kernels.

namespace detail {

/// Digit positions of up to four registers inside a flat index.
struct RegisterGeometry {
    static constexpr std::size_t kMaxRegisters = 4;
    static constexpr std::uint64_t kNarrow = std::uint64_t{1} << 32;
    std::array<std::uint64_t, kMaxRegisters> strides{};
    std::array<std::uint64_t, kMaxRegisters> dims{};
    std::size_t count = 0;
    std::size_t sub_dim = 1;

    RegisterGeometry(const PartyDims& pd, std::span<const std::size_t> regs) {
        if (regs.empty() || regs.size() > kMaxRegisters) throw InvalidArgument("operator acts on 1 to 4 registers");
        count = regs.size();
        for (std::size_t i = 0; i < count; ++i) {
            if (regs[i] >= pd.parties()) throw InvalidArgument("register index out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (regs[j] == regs[i]) throw InvalidArgument("register listed twice");
            std::uint64_t st = 1;
            for (std::size_t q = regs[i] + 1; q < pd.parties(); ++q) st *= pd[q];
            strides[i] = st;
            dims[i] = pd[regs[i]];
            sub_dim *= pd[regs[i]];
        }
    }

    /// Splits a flat index into the operator index and the remainder.
    std::pair<std::size_t, std::uint64_t> split(std::uint64_t flat) const {
        if (count == 1) {
            std::uint64_t digit = (flat < kNarrow && strides[0] < kNarrow)
                                      ? static_cast<std::uint32_t>(flat) / static_cast<std::uint32_t>(strides[0]) %
                                            static_cast<std::uint32_t>(dims[0])
                                      : (flat / strides[0]) % dims[0];
            return {static_cast<std::size_t>(digit), flat - digit * strides[0]};
        }
        std::size_t sub = 0;
        std::uint64_t rest = flat;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t digit = (flat / strides[i]) % dims[i];
            sub = sub * dims[i] + digit;
            rest -= digit * strides[i];
        }
        return {sub, rest};
    }

    std::uint64_t offset(std::size_t sub) const {
        if (count == 1) return sub * strides[0];
        std::uint64_t off = 0;
        for (std::size_t i = count; i-- > 0;) {
            off += (sub % dims[i]) * strides[i];
            sub /= dims[i];
        }
        return off;
    }
};

template <class Op>
SparseState apply_op(const SparseState& s, const Op& op, const RegisterGeometry& g) {
    if (op.dim() != g.sub_dim) throw DimensionError("operator dimension does not match the registers");
    std::vector<SparseState::Term> out;
    out.reserve(s.nnz());
    for (const auto& [idx, amp] : s.terms()) {
        auto [sub, rest] = g.split(idx);
        op.column(sub, [&](std::size_t row, cplx v) { out.emplace_back(rest + g.offset(row), v * amp); });
    }
    return SparseState(s.shared_dims(), std::move(out));
}

}  // namespace detail

inline SparseState apply(const SparseState& s, const LocalOp& op, std::span<const std::size_t> regs) {
    detail::RegisterGeometry g(s.dims(), regs);
    return std::visit([&](const auto& o) { return detail::apply_op(s, o, g); }, op);
}

struct SparseOutcome {
    std::size_t outcome;
    double probability;
    SparseState state;
};

inline std::vector<SparseOutcome> measure(const SparseState& s, const Measurement& m, std::span<const std::size_t> regs) {
    detail::RegisterGeometry g(s.dims(), regs);
    std::vector<SparseOutcome> out;
    for (std::size_t j = 0; j < m.size(); ++j) {
        SparseState post = std::visit([&](const auto& o) { return detail::apply_op(s, o, g); }, m.ops[j]);
        double p = post.norm2();
        if (p < kBranchPruneProb) continue;
        post.scale(1.0 / std::sqrt(p));
        out.push_back({j, p, std::move(post)});
    }
    return out;
}

/// Outcome probabilities without keeping the post-measurement states. Terms
/// are grouped by their index outside `regs`; amplitudes of different groups
/// never interfere, so each group is accumulated on its own.
inline std::vector<double> outcome_probabilities(const SparseState& s, const Measurement& m,
                                                 std::span<const std::size_t> regs) {
    detail::RegisterGeometry g(s.dims(), regs);
    struct Split {
        std::uint64_t rest;
        std::size_t sub;
        cplx amp;
    };
    std::vector<Split> sp;
    sp.reserve(s.nnz());
    for (const auto& [idx, amp] : s.terms()) {
        auto [sub, rest] = g.split(idx);
        sp.push_back({rest, sub, amp});
    }
    std::sort(sp.begin(), sp.end(), [](const Split& a, const Split& b) { return a.rest < b.rest; });
    std::vector<std::size_t> bounds{0};
    for (std::size_t i = 1; i <= sp.size(); ++i)
        if (i == sp.size() || sp[i].rest != sp[i - 1].rest) bounds.push_back(i);

    std::vector<double> probs(m.size(), 0.0);
    std::vector<std::pair<std::size_t, cplx>> acc;
    for (std::size_t j = 0; j < m.size(); ++j) {
        probs[j] = std::visit(
            [&](const auto& o) {
                if (o.dim() != g.sub_dim) throw DimensionError("operator dimension does not match the registers");
                double p = 0.0;
                for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
                    if (bounds[b + 1] - bounds[b] == 1) {
                        const Split& t = sp[bounds[b]];
                        o.column(t.sub, [&](std::size_t, cplx v) { p += std::norm(v * t.amp); });
                        continue;
                    }
                    acc.clear();
                    for (std::size_t i = bounds[b]; i < bounds[b + 1]; ++i)
                        o.column(sp[i].sub, [&](std::size_t row, cplx v) { acc.emplace_back(row, v * sp[i].amp); });
                    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                    for (std::size_t r = 0; r < acc.size();) {
                        cplx a = 0.0;
                        const std::size_t row = acc[r].first;
                        while (r < acc.size() && acc[r].first == row) a += acc[r++].second;
                        p += std::norm(a);
                    }
                }
                return p;
            },
            m.ops[j]);
    }
    return probs;
}

inline SparseOutcome measure_one(const SparseState& s, const Measurement& m, std::span<const std::size_t> regs,
                                 std::size_t j) {
    if (j >= m.size()) throw InvalidArgument("measurement outcome out of range");
    SparseState post = apply(s, m.ops[j], regs);
    double p = post.norm2();
    if (!(p > 0.0)) throw VerificationError("selected measurement outcome has zero probability");
    post.scale(1.0 / std::sqrt(p));
    return {j, p, std::move(post)};
}

/// Changes one register's dimension (growing embeds at the low levels).
inline SparseState resize(const SparseState& s, std::size_t reg, std::size_t new_dim) {
    PartyDims nd = s.dims().with(reg, new_dim);
    std::vector<SparseState::Term> out;
    out.reserve(s.nnz());
    for (const auto& [idx, amp] : s.terms()) {
        auto d = s.dims().digits(static_cast<std::size_t>(idx));
        if (d[reg] >= new_dim) throw VerificationError("resize: amplitude on a dropped level");
        out.emplace_back(nd.flat(d), amp);
    }
    return SparseState(std::move(nd), std::move(out));
}

/// Contracts register `reg` with <local|; throws unless the state is local (x) rest.
inline SparseState project_out(const SparseState& s, std::size_t reg, const Vector& local) {
    PartyDims nd = s.dims().without(reg);
    auto strides = s.dims().strides();
    const std::size_t d = s.dims()[reg];
    if (static_cast<std::size_t>(local.size()) != d) throw DimensionError("project_out: local vector dimension");
    std::vector<SparseState::Term> out;
    out.reserve(s.nnz());
    for (const auto& [idx, amp] : s.terms()) {
        std::uint64_t hi = idx / (strides[reg] * d), digit = (idx / strides[reg]) % d, lo = idx % strides[reg];
        out.emplace_back(hi * strides[reg] + lo, std::conj(local(static_cast<Eigen::Index>(digit))) * amp);
    }
    SparseState r(std::move(nd), std::move(out));
    if (std::abs(r.norm2() - 1.0) > kCompletenessTol)
        throw VerificationError("project_out: register is not in the expected product factor");
    return r;
}

/// Appends registers initialized to |0>.
inline SparseState append_zero_registers(const SparseState& s, const PartyDims& extra) {
    std::vector<SparseState::Term> out(s.terms().begin(), s.terms().end());
    for (auto& t : out) t.first *= extra.total();
    return SparseState(s.dims().concat(extra), std::move(out));
}

// ---------------------------------------------------------------------------
// Backends: the protocol steps are written once against this interface.

struct SparseBackend {
    using State = SparseState;
    struct Outcome {
        std::size_t outcome;
        double probability;
        State state;
    };

    static constexpr const char* name = "sparse";

    static State from_dense(const PureState& psi) { return SparseState::from_dense(psi); }
    static PureState to_dense(const State& s) { return s.to_dense(); }
    static State from_dense_or_copy(const State& s) { return s; }
    static State from_dense_or_copy(const PureState& s) { return SparseState::from_dense(s); }
    static State apply(const State& s, const LocalOp& op, std::span<const std::size_t> regs) {
        return protocol::apply(s, op, regs);
    }
    static std::vector<Outcome> measure(const State& s, const Measurement& m, std::span<const std::size_t> regs) {
        std::vector<Outcome> out;
        for (auto& b : protocol::measure(s, m, regs)) out.push_back({b.outcome, b.probability, std::move(b.state)});
        return out;
    }
    static std::vector<double> outcome_probabilities(const State& s, const Measurement& m, std::span<const std::size_t> regs) {
        return protocol::outcome_probabilities(s, m, regs);
    }
    static Outcome measure_one(const State& s, const Measurement& m, std::span<const std::size_t> regs, std::size_t j) {
        auto b = protocol::measure_one(s, m, regs, j);
        return {b.outcome, b.probability, std::move(b.state)};
    }
    static State resize(const State& s, std::size_t reg, std::size_t d) { return protocol::resize(s, reg, d); }
    static State project_out(const State& s, std::size_t reg, const Vector& v) { return protocol::project_out(s, reg, v); }
    static State append_zero_registers(const State& s, const PartyDims& extra) {
        return protocol::append_zero_registers(s, extra);
    }
    static double fidelity(const State& a, const State& b) { return protocol::fidelity(a, b); }
};

/// Dense route through hilbert-core; operators are materialized as matrices
/// and measurements go through MeasurementSet's completeness check.
struct DenseBackend {
    using State = PureState;
    struct Outcome {
        std::size_t outcome;
        double probability;
        State state;
    };

    static constexpr const char* name = "dense";

    static State from_dense(const PureState& psi) { return psi; }
    static PureState to_dense(const State& s) { return s; }
    static State apply(const State& s, const LocalOp& op, std::span<const std::size_t> regs) {
        return apply_local_unitary(s, protocol::to_dense(op), regs);
    }
    static std::vector<Outcome> measure(const State& s, const Measurement& m, std::span<const std::size_t> regs) {
        std::vector<Matrix> mats;
        for (const auto& op : m.ops) mats.push_back(protocol::to_dense(op));
        MeasurementSet set(std::move(mats), m.label);
        std::vector<Outcome> out;
        for (auto& b : apply_measurement(s, set, regs)) out.push_back({b.outcome, b.probability, std::move(b.state)});
        return out;
    }
    static std::vector<double> outcome_probabilities(const State& s, const Measurement& m, std::span<const std::size_t> regs) {
        std::vector<double> probs(m.size(), 0.0);
        for (const auto& b : measure(s, m, regs)) probs[b.outcome] = b.probability;
        return probs;
    }
    static Outcome measure_one(const State& s, const Measurement& m, std::span<const std::size_t> regs, std::size_t j) {
        for (auto& b : measure(s, m, regs))
            if (b.outcome == j) return b;
        throw VerificationError("selected measurement outcome has zero probability");
    }
    static State resize(const State& s, std::size_t reg, std::size_t d) { return resize_party(s, reg, d); }
    static State project_out(const State& s, std::size_t reg, const Vector& v) { return project_out_party(s, reg, v); }
    static State append_zero_registers(const State& s, const PartyDims& extra) {
        std::vector<std::size_t> zeros(extra.parties(), 0);
        return tensor(s, PureState::basis(extra, std::span<const std::size_t>(zeros)));
    }
    static double fidelity(const State& a, const State& b) { return ghzcost::fidelity(a, b); }
};

}  // namespace ghzcost::protocol

#endif
