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

// Dense multipartite pure and mixed states and the linear-algebra and
// entropy primitives the rest of the library is built on.
//
// Flat indices are row-major over parties in declared order: party 0 is the
// most significant digit. All entropies are in bits.

#ifndef GHZCOST_HILBERT_HPP
#define GHZCOST_HILBERT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghzcost/error.hpp"

namespace ghzcost {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kBranchPruneProb = 1e-14;
inline constexpr double kEigenClamp = 1e-10;
inline constexpr double kSupportTol = 1e-12;

/// Local Hilbert-space dimensions of an ordered list of parties.
class PartyDims {
   public:
    PartyDims() = default;
    explicit PartyDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) { validate(); }
    PartyDims(std::initializer_list<std::size_t> dims) : dims_(dims) { validate(); }

    std::size_t parties() const { return dims_.size(); }
    std::size_t operator[](std::size_t party) const { return dims_.at(party); }
    std::size_t total() const { return total_; }
    std::span<const std::size_t> dims() const { return dims_; }
    const std::vector<std::size_t>& vec() const { return dims_; }

    /// Stride of each party's digit in the flat index.
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(dims_.size(), 1);
        for (std::size_t i = dims_.size(); i-- > 1;) s[i - 1] = s[i] * dims_[i];
        return s;
    }

    std::vector<std::size_t> digits(std::size_t flat) const {
        std::vector<std::size_t> d(dims_.size());
        for (std::size_t i = dims_.size(); i-- > 0;) {
            d[i] = flat % dims_[i];
            flat /= dims_[i];
        }
        return d;
    }

    std::size_t flat(std::span<const std::size_t> digits) const {
        if (digits.size() != dims_.size()) throw DimensionError("digit count does not match party count");
        std::size_t f = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (digits[i] >= dims_[i]) throw DimensionError("digit out of range for party");
            f = f * dims_[i] + digits[i];
        }
        return f;
    }

    PartyDims concat(const PartyDims& other) const {
        std::vector<std::size_t> d = dims_;
        d.insert(d.end(), other.dims_.begin(), other.dims_.end());
        return PartyDims(std::move(d));
    }

    PartyDims with(std::size_t party, std::size_t dim) const {
        std::vector<std::size_t> d = dims_;
        d.at(party) = dim;
        return PartyDims(std::move(d));
    }

    PartyDims without(std::size_t party) const {
        std::vector<std::size_t> d = dims_;
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(party));
        return PartyDims(std::move(d));
    }

    friend bool operator==(const PartyDims&, const PartyDims&) = default;

   private:
    void validate() {
        if (dims_.empty()) throw InvalidArgument("party count must be at least 1");
        total_ = 1;
        for (std::size_t d : dims_) {
            if (d == 0) throw InvalidArgument("party dimension must be at least 1");
            if (total_ > (std::size_t{1} << 62) / d) throw GuardError("total Hilbert-space dimension overflows");
            total_ *= d;
        }
    }

    std::vector<std::size_t> dims_;
    std::size_t total_ = 0;
};

class DensityMatrix;

/// Normalized amplitude vector over a tensor-product space.
class PureState {
   public:
    PureState() = default;

    /// Throws if the squared norm deviates from 1 by more than 1e-12.
    PureState(PartyDims dims, Vector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
        if (static_cast<std::size_t>(amps_.size()) != dims_.total())
            throw DimensionError("amplitude count does not match total dimension");
        if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol)
            throw InvalidArgument("state is not normalized (squared norm " + std::to_string(amps_.squaredNorm()) + ")");
    }

    static PureState normalized(PartyDims dims, Vector amps) {
        double n = amps.norm();
        if (!(n > 0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
        amps /= n;
        return PureState(std::move(dims), std::move(amps));
    }

    static PureState basis(PartyDims dims, std::span<const std::size_t> digits) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
        v(static_cast<Eigen::Index>(dims.flat(digits))) = 1.0;
        return PureState(std::move(dims), std::move(v));
    }

    static PureState basis(PartyDims dims, std::initializer_list<std::size_t> digits) {
        std::vector<std::size_t> d(digits);
        return basis(std::move(dims), std::span<const std::size_t>(d));
    }

    const PartyDims& dims() const { return dims_; }
    const Vector& amps() const { return amps_; }
    std::size_t parties() const { return dims_.parties(); }
    cplx amplitude(std::span<const std::size_t> digits) const {
        return amps_(static_cast<Eigen::Index>(dims_.flat(digits)));
    }

    DensityMatrix projector() const;

   private:
    PartyDims dims_;
    Vector amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a tensor-product space.
class DensityMatrix {
   public:
    DensityMatrix() = default;

    DensityMatrix(PartyDims dims, Matrix mat) : dims_(std::move(dims)), mat_(std::move(mat)) {
        const auto n = static_cast<Eigen::Index>(dims_.total());
        if (mat_.rows() != n || mat_.cols() != n) throw DimensionError("density matrix shape does not match dims");
        if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
            throw InvalidArgument("density matrix is not Hermitian");
        if (std::abs(mat_.trace() - cplx(1.0)) > kNormTol) throw InvalidArgument("density matrix trace is not 1");
        Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kEigenClamp) throw InvalidArgument("density matrix is not positive");
    }

    const PartyDims& dims() const { return dims_; }
    const Matrix& mat() const { return mat_; }

   private:
    PartyDims dims_;
    Matrix mat_;
};

inline DensityMatrix PureState::projector() const { return DensityMatrix(dims_, amps_ * amps_.adjoint()); }

/// A generalized measurement {M_j}; every operator has the same (possibly
/// rectangular) shape and sum_j M_j^dagger M_j = I within 1e-10 entrywise.
class MeasurementSet {
   public:
    MeasurementSet(std::vector<Matrix> operators, std::string label = {})
        : ops_(std::move(operators)), label_(std::move(label)) {
        if (ops_.empty()) throw InvalidArgument("measurement has no operators");
        const auto r = ops_.front().rows(), c = ops_.front().cols();
        Matrix acc = Matrix::Zero(c, c);
        for (const auto& m : ops_) {
            if (m.rows() != r || m.cols() != c) throw DimensionError("measurement operators differ in shape");
            acc.noalias() += m.adjoint() * m;
        }
        double dev = (acc - Matrix::Identity(c, c)).cwiseAbs().maxCoeff();
        if (!(dev <= kCompletenessTol))
            throw CompletenessError("measurement '" + label_ + "' violates completeness by " + std::to_string(dev));
    }

    const std::vector<Matrix>& operators() const { return ops_; }
    std::size_t size() const { return ops_.size(); }
    std::size_t in_dim() const { return static_cast<std::size_t>(ops_.front().cols()); }
    std::size_t out_dim() const { return static_cast<std::size_t>(ops_.front().rows()); }
    const std::string& label() const { return label_; }

   private:
    std::vector<Matrix> ops_;
    std::string label_;
};

struct MeasurementBranch {
    std::size_t outcome;
    double probability;
    PureState state;
};

namespace detail {

/// Flat-index offsets splitting a space into the selected parties (row-major
/// in the given order) and the complement (ascending party order).
struct SplitIndex {
    std::vector<std::size_t> sub;
    std::vector<std::size_t> rest;
};

inline void check_parties(const PartyDims& dims, std::span<const std::size_t> parties) {
    if (parties.empty()) throw InvalidArgument("party set is empty");
    std::vector<bool> seen(dims.parties(), false);
    for (std::size_t p : parties) {
        if (p >= dims.parties()) throw InvalidArgument("party index out of range");
        if (seen[p]) throw InvalidArgument("party listed twice");
        seen[p] = true;
    }
}

inline std::vector<std::size_t> offsets_for(const PartyDims& dims, const std::vector<std::size_t>& strides,
                                            std::span<const std::size_t> parties) {
    std::vector<std::size_t> out{0};
    for (std::size_t p : parties) {
        std::vector<std::size_t> next;
        next.reserve(out.size() * dims[p]);
        for (std::size_t base : out)
            for (std::size_t d = 0; d < dims[p]; ++d) next.push_back(base + d * strides[p]);
        out = std::move(next);
    }
    return out;
}

inline SplitIndex split_index(const PartyDims& dims, std::span<const std::size_t> parties) {
    check_parties(dims, parties);
    auto strides = dims.strides();
    std::vector<std::size_t> complement;
    for (std::size_t p = 0; p < dims.parties(); ++p)
        if (std::find(parties.begin(), parties.end(), p) == parties.end()) complement.push_back(p);
    return {offsets_for(dims, strides, parties), offsets_for(dims, strides, complement)};
}

inline std::size_t product_of(const PartyDims& dims, std::span<const std::size_t> parties) {
    std::size_t n = 1;
    for (std::size_t p : parties) n *= dims[p];
    return n;
}

inline Matrix gather(const Vector& amps, const SplitIndex& ix) {
    Matrix x(static_cast<Eigen::Index>(ix.sub.size()), static_cast<Eigen::Index>(ix.rest.size()));
    for (std::size_t r = 0; r < ix.rest.size(); ++r)
        for (std::size_t s = 0; s < ix.sub.size(); ++s)
            x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) =
                amps(static_cast<Eigen::Index>(ix.sub[s] + ix.rest[r]));
    return x;
}

inline Vector scatter(const Matrix& y, const SplitIndex& ix, std::size_t total) {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(total));
    for (std::size_t r = 0; r < ix.rest.size(); ++r)
        for (std::size_t s = 0; s < ix.sub.size(); ++s)
            out(static_cast<Eigen::Index>(ix.sub[s] + ix.rest[r])) =
                y(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r));
    return out;
}

inline double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

inline bool is_unitary(const Matrix& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) return false;
    return ((u.adjoint() * u) - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Shannon entropy in bits; 0 log 0 := 0, entries at or below `floor` count as 0.
inline double shannon_entropy(std::span<const double> probs, double floor = 0.0) {
    double h = 0.0;
    for (double p : probs)
        if (p > floor) h -= p * std::log2(p);
    return h;
}

/// H2(x) = -x log2 x - (1-x) log2 (1-x), with H2(0) = H2(1) = 0.
inline double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw InvalidArgument("binary_entropy argument outside [0, 1]");
    return -detail::xlog2x(x) - detail::xlog2x(1.0 - x);
}

inline PureState tensor(const PureState& a, const PureState& b) {
    Vector v(static_cast<Eigen::Index>(a.dims().total() * b.dims().total()));
    const auto nb = b.amps().size();
    for (Eigen::Index i = 0; i < a.amps().size(); ++i) v.segment(i * nb, nb) = a.amps()(i) * b.amps();
    return PureState::normalized(a.dims().concat(b.dims()), std::move(v));
}

/// Reduced density matrix over `keep` (output parties in ascending order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    if (keep.empty()) throw InvalidArgument("partial_trace: empty keep set");
    std::sort(keep.begin(), keep.end());
    auto ix = detail::split_index(rho.dims(), keep);
    const auto n = static_cast<Eigen::Index>(ix.sub.size());
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t r : ix.rest)
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b)
                out(a, b) += rho.mat()(static_cast<Eigen::Index>(ix.sub[static_cast<std::size_t>(a)] + r),
                                       static_cast<Eigen::Index>(ix.sub[static_cast<std::size_t>(b)] + r));
    std::vector<std::size_t> d;
    for (std::size_t p : keep) d.push_back(rho.dims()[p]);
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(PartyDims(std::move(d)), std::move(out));
}

/// Reduced density matrix of a pure state, computed as X X^dagger without
/// forming the full projector.
inline DensityMatrix reduced_density(const PureState& psi, std::vector<std::size_t> keep) {
    if (keep.empty()) throw InvalidArgument("reduced_density: empty keep set");
    std::sort(keep.begin(), keep.end());
    auto ix = detail::split_index(psi.dims(), keep);
    Matrix x = detail::gather(psi.amps(), ix);
    Matrix rho = x * x.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    std::vector<std::size_t> d;
    for (std::size_t p : keep) d.push_back(psi.dims()[p]);
    return DensityMatrix(PartyDims(std::move(d)), std::move(rho));
}

/// Eigenvalues of a density matrix with [-1e-10, 0) clamped to 0.
inline Eigen::VectorXd clamped_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues();
    for (auto& v : ev)
        if (v < 0.0 && v >= -kEigenClamp) v = 0.0;
    return ev;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::VectorXd ev = clamped_eigenvalues(rho.mat());
    double s = 0.0;
    for (double v : ev) s -= detail::xlog2x(v);
    return s;
}

inline double fidelity(const PureState& a, const PureState& b) {
    if (!(a.dims() == b.dims())) throw DimensionError("fidelity: dimension mismatch");
    return std::min(1.0, std::abs(a.amps().dot(b.amps())));
}

/// Uhlmann fidelity tr sqrt(rho^{1/2} sigma rho^{1/2}).
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!(rho.dims() == sigma.dims())) throw DimensionError("fidelity: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
    Eigen::VectorXd ev = es.eigenvalues();
    for (auto& v : ev) v = std::sqrt(std::max(v, 0.0));
    Matrix sq = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    Matrix inner = sq * sigma.mat() * sq;
    inner = 0.5 * (inner + inner.adjoint()).eval();
    Eigen::VectorXd iv = clamped_eigenvalues(inner);
    double f = 0.0;
    for (double v : iv) f += std::sqrt(std::max(v, 0.0));
    return f;
}

/// S(rho || sigma) in bits, +infinity when supp(rho) is not inside supp(sigma).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!(rho.dims() == sigma.dims())) throw DimensionError("relative_entropy: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.mat());
    const Matrix& v = es.eigenvectors();
    double cross = 0.0;
    for (Eigen::Index i = 0; i < v.cols(); ++i) {
        double weight = std::real(v.col(i).dot(rho.mat() * v.col(i)));
        double mu = es.eigenvalues()(i);
        if (mu <= kSupportTol) {
            if (weight > kSupportTol) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross -= weight * std::log2(mu);
    }
    return cross - von_neumann_entropy(rho);
}

/// sum_x |x><x| rho |x><x| in the computational product basis.
inline DensityMatrix dephased(const DensityMatrix& rho) {
    Matrix d = rho.mat().diagonal().asDiagonal();
    return DensityMatrix(rho.dims(), std::move(d));
}

/// Applies a unitary to the listed parties (operator index is row-major over
/// `parties` in the order given).
inline PureState apply_local_unitary(const PureState& state, const Matrix& u, std::span<const std::size_t> parties) {
    auto ix = detail::split_index(state.dims(), parties);
    if (static_cast<std::size_t>(u.rows()) != ix.sub.size() || static_cast<std::size_t>(u.cols()) != ix.sub.size())
        throw DimensionError("unitary dimension does not match the selected parties");
    if (!is_unitary(u)) throw VerificationError("apply_local_unitary: operator is not unitary within 1e-10");
    Matrix y = u * detail::gather(state.amps(), ix);
    return PureState::normalized(state.dims(), detail::scatter(y, ix, state.dims().total()));
}

inline PureState apply_local_unitary(const PureState& state, const Matrix& u, std::initializer_list<std::size_t> parties) {
    std::vector<std::size_t> p(parties);
    return apply_local_unitary(state, u, std::span<const std::size_t>(p));
}

/// All outcomes of a local measurement with nonzero probability, each with
/// its renormalized post-measurement state. Rectangular operators are only
/// allowed on a single party; that party's dimension becomes the row count.
inline std::vector<MeasurementBranch> apply_measurement(const PureState& state, const MeasurementSet& m,
                                                        std::span<const std::size_t> parties) {
    auto ix = detail::split_index(state.dims(), parties);
    if (m.in_dim() != ix.sub.size()) throw DimensionError("measurement operators do not match the selected parties");
    PartyDims out_dims = state.dims();
    detail::SplitIndex out_ix = ix;
    if (m.out_dim() != m.in_dim()) {
        if (parties.size() != 1) throw DimensionError("rectangular measurement operators need a single party");
        out_dims = state.dims().with(parties[0], m.out_dim());
        out_ix = detail::split_index(out_dims, parties);
    }
    Matrix x = detail::gather(state.amps(), ix);
    std::vector<MeasurementBranch> branches;
    for (std::size_t j = 0; j < m.size(); ++j) {
        Matrix y = m.operators()[j] * x;
        double p = y.squaredNorm();
        if (p < kBranchPruneProb) continue;
        y /= std::sqrt(p);
        branches.push_back({j, p, PureState::normalized(out_dims, detail::scatter(y, out_ix, out_dims.total()))});
    }
    return branches;
}

inline std::vector<MeasurementBranch> apply_measurement(const PureState& state, const MeasurementSet& m,
                                                        std::initializer_list<std::size_t> parties) {
    std::vector<std::size_t> p(parties);
    return apply_measurement(state, m, std::span<const std::size_t>(p));
}

/// Changes one party's dimension. Growing embeds the old levels as the lowest
/// ones; shrinking requires zero amplitude on every dropped level.
inline PureState resize_party(const PureState& state, std::size_t party, std::size_t new_dim) {
    if (party >= state.parties()) throw InvalidArgument("resize_party: party index out of range");
    PartyDims nd = state.dims().with(party, new_dim);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(nd.total()));
    for (std::size_t f = 0; f < state.dims().total(); ++f) {
        cplx a = state.amps()(static_cast<Eigen::Index>(f));
        auto d = state.dims().digits(f);
        if (d[party] >= new_dim) {
            if (std::abs(a) > kNormTol) throw VerificationError("resize_party: amplitude on a dropped level");
            continue;
        }
        out(static_cast<Eigen::Index>(nd.flat(d))) = a;
    }
    return PureState::normalized(std::move(nd), std::move(out));
}

/// Removes a party known to be in the product factor `local`. Throws if the
/// state is not (within 1e-10 in norm) of the form local (x) rest.
inline PureState project_out_party(const PureState& state, std::size_t party, const Vector& local) {
    std::vector<std::size_t> p{party};
    auto ix = detail::split_index(state.dims(), p);
    if (static_cast<std::size_t>(local.size()) != ix.sub.size()) throw DimensionError("project_out_party: local dim");
    Vector rest = detail::gather(state.amps(), ix).transpose() * local.conjugate();
    if (std::abs(rest.squaredNorm() - 1.0) > kCompletenessTol)
        throw VerificationError("project_out_party: party is not in the expected product factor");
    return PureState::normalized(state.dims().without(party), std::move(rest));
}

/// psi^{(x) t} regrouped so that party j carries the j-th factor of every
/// copy: party j has dimension dim_j^t and its digit is the copies' digits,
/// first copy most significant.
inline PureState blocked_power(const PureState& psi, std::size_t t) {
    if (t == 0) throw InvalidArgument("blocked_power: t must be positive");
    const PartyDims& d = psi.dims();
    std::vector<std::size_t> bd(d.parties(), 1);
    for (std::size_t j = 0; j < d.parties(); ++j)
        for (std::size_t i = 0; i < t; ++i) bd[j] *= d[j];
    PartyDims blocked(bd);
    const auto strides = blocked.strides();
    Vector out = Vector::Zero(static_cast<Eigen::Index>(blocked.total()));
    std::vector<std::size_t> support;
    for (std::size_t f = 0; f < d.total(); ++f)
        if (psi.amps()(static_cast<Eigen::Index>(f)) != cplx(0.0)) support.push_back(f);
    std::vector<std::vector<std::size_t>> digits;
    for (std::size_t f : support) digits.push_back(d.digits(f));
    std::vector<std::size_t> pick(t, 0);
    while (true) {
        cplx a = 1.0;
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d.parties(); ++j) {
            std::size_t digit = 0;
            for (std::size_t i = 0; i < t; ++i) digit = digit * d[j] + digits[pick[i]][j];
            flat += digit * strides[j];
        }
        for (std::size_t i = 0; i < t; ++i) a *= psi.amps()(static_cast<Eigen::Index>(support[pick[i]]));
        out(static_cast<Eigen::Index>(flat)) = a;
        std::size_t i = t;
        while (i > 0 && ++pick[i - 1] == support.size()) pick[--i] = 0;
        if (i == 0) break;
    }
    return PureState::normalized(std::move(blocked), std::move(out));
}

}  // namespace ghzcost

#endif
