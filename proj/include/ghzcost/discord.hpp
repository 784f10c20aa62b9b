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

// Relative entropy of discord of a pure state: the minimum, over product
// bases, of the Shannon entropy of the outcome distribution |<x|psi>|^2.
//
// Each local unitary is moved along the exponential map U <- U exp(A) with A
// anti-Hermitian (d^2 real parameters per party). The gradient of the entropy
// with respect to A is analytic; steps use Armijo backtracking. Several
// deterministic restarts are run and the best one is kept.

#ifndef GHZCOST_DISCORD_HPP
#define GHZCOST_DISCORD_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "ghzcost/basis.hpp"
#include "ghzcost/hilbert.hpp"

namespace ghzcost {

struct OptimizerConfig {
    std::size_t restarts = 32;
    std::size_t max_iters = 2000;
    double tol = 1e-9;  ///< stop a restart once one step lowers the objective by less than this
    std::uint64_t seed = 1;
    std::size_t guard_dim = 4096;
    double cluster_tol = 1e-5;
};

struct DiscordResult {
    double value_bits = 0.0;
    SeparableBasis argmin_basis;
    std::size_t restarts_used = 0;
    bool converged = false;  ///< best two restarts agree within cluster_tol; evidence, not proof
    std::vector<double> per_restart_values;
};

/// Probabilities below this are treated as exactly zero.
inline constexpr double kProbFloor = 1e-15;

/// Entropy of |<x_1..x_k|psi>|^2 in the given product basis.
inline double discord_objective(const PureState& psi, const SeparableBasis& basis) {
    Vector c = coefficients_in_basis(psi, basis);
    double h = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        double p = std::norm(c(i));
        if (p > kProbFloor) h -= p * std::log2(p);
    }
    return h;
}

namespace detail {

/// exp(A) for anti-Hermitian A via the eigendecomposition of the Hermitian iA.
inline Matrix expm_antihermitian(const Matrix& a) {
    Matrix h = cplx(0.0, 1.0) * a;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

template <class Rng>
Matrix haar_unitary(std::size_t d, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix z(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = cplx(n(rng), n(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        cplx d_i = r(i, i);
        double m = std::abs(d_i);
        if (m > 0) q.col(i) *= d_i / m;
    }
    return q;
}

class DiscordLandscape {
   public:
    explicit DiscordLandscape(const PureState& psi) : psi_(psi) {}

    double value(const std::vector<Matrix>& us) const {
        Vector c = coefficients(us);
        double h = 0.0;
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            double p = std::norm(c(i));
            if (p > kProbFloor) h -= p * std::log2(p);
        }
        return h;
    }

    /// Objective and its gradient with respect to the anti-Hermitian generator
    /// of each party (U_j -> U_j exp(A_j)), in the Frobenius metric.
    double value_and_gradient(const std::vector<Matrix>& us, std::vector<Matrix>& grad) const {
        Vector c = coefficients(us);
        Vector wc(c.size());
        double h = 0.0;
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            double p = std::norm(c(i));
            if (p > kProbFloor) h -= p * std::log2(p);
            wc(i) = std::log2(std::max(p, kProbFloor)) * c(i);
        }
        const PartyDims& dims = psi_.dims();
        grad.resize(us.size());
        for (std::size_t j = 0; j < us.size(); ++j) {
            const auto d = static_cast<Eigen::Index>(dims[j]);
            Eigen::Index right = 1;
            for (std::size_t q = j + 1; q < dims.parties(); ++q) right *= static_cast<Eigen::Index>(dims[q]);
            const Eigen::Index left = static_cast<Eigen::Index>(dims.total()) / (d * right);
            Matrix m = Matrix::Zero(d, d);
            for (Eigen::Index l = 0; l < left; ++l) {
                Eigen::Map<const Matrix> x(c.data() + l * d * right, right, d);
                Eigen::Map<const Matrix> wx(wc.data() + l * d * right, right, d);
                m.noalias() += wx.adjoint() * x;
            }
            grad[j] = m.conjugate() - m.transpose();
        }
        return h;
    }

   private:
    Vector coefficients(const std::vector<Matrix>& us) const {
        Vector c = psi_.amps();
        for (std::size_t j = 0; j < us.size(); ++j) apply_on_party(c, psi_.dims(), j, us[j].adjoint());
        return c;
    }

    const PureState& psi_;
};

struct LocalResult {
    double value;
    std::vector<Matrix> us;
};

inline LocalResult descend(const DiscordLandscape& f, std::vector<Matrix> us, const OptimizerConfig& cfg) {
    std::vector<Matrix> grad, trial(us.size());
    double value = f.value_and_gradient(us, grad);
    double step = 0.25;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        double g2 = 0.0;
        for (const auto& g : grad) g2 += g.squaredNorm();
        if (!std::isfinite(g2)) throw VerificationError("discord gradient is not finite");
        if (g2 < 1e-26) break;
        double next = value;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t j = 0; j < us.size(); ++j) trial[j] = us[j] * expm_antihermitian(-step * grad[j]);
            next = f.value(trial);
            if (next <= value - 1e-4 * step * g2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        us.swap(trial);
        double decrease = value - next;
        value = f.value_and_gradient(us, grad);
        step = std::min(step * 2.0, 64.0);
        if (decrease < cfg.tol) break;
    }
    if (!std::isfinite(value)) throw VerificationError("discord objective is not finite");
    return {value, std::move(us)};
}

}  // namespace detail

/// Multi-start minimization. Restart 0 is the computational basis, restart 1
/// the local Fourier basis, then any `extra_starts`, then Haar-random bases
/// drawn from cfg.seed.
inline DiscordResult minimize_discord(const PureState& psi, const OptimizerConfig& cfg,
                                      std::span<const SeparableBasis> extra_starts = {}) {
    if (psi.dims().total() > cfg.guard_dim) throw GuardError("minimize_discord: dimension exceeds guard_dim");
    if (cfg.restarts == 0) throw InvalidArgument("minimize_discord: at least one restart is required");
    const PartyDims& dims = psi.dims();
    std::vector<std::vector<Matrix>> starts;
    starts.push_back(SeparableBasis::computational(dims).unitaries());
    if (cfg.restarts > 1) starts.push_back(SeparableBasis::fourier(dims).unitaries());
    for (const auto& b : extra_starts) {
        if (!b.matches(dims)) throw DimensionError("extra start basis does not match the state");
        starts.push_back(b.unitaries());
    }
    for (std::size_t r = starts.size(); r < cfg.restarts + extra_starts.size(); ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        std::vector<Matrix> us;
        for (std::size_t d : dims.dims()) us.push_back(detail::haar_unitary(d, rng));
        starts.push_back(std::move(us));
    }

    detail::DiscordLandscape f(psi);
    DiscordResult res;
    res.restarts_used = starts.size();
    std::vector<detail::LocalResult> locals;
    locals.reserve(starts.size());
    for (auto& s : starts) {
        locals.push_back(detail::descend(f, std::move(s), cfg));
        res.per_restart_values.push_back(locals.back().value);
    }
    std::vector<std::size_t> order(locals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return locals[a].value < locals[b].value; });
    const auto& best = locals[order[0]];
    res.value_bits = std::max(best.value, 0.0);
    std::vector<Matrix> us = best.us;
    // Re-unitarize to wash out accumulated rounding before handing the basis out.
    for (auto& u : us) {
        Eigen::HouseholderQR<Matrix> qr(u);
        Matrix q = qr.householderQ();
        Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < q.cols(); ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
        u = q;
    }
    res.argmin_basis = SeparableBasis(std::move(us));
    res.converged = order.size() > 1 && locals[order[1]].value - locals[order[0]].value <= cfg.cluster_tol;
    return res;
}

/// D_R(psi^{(x) t}) / t with party j of the blocked state of dimension dim_j^t.
/// The t-fold power of the single-copy optimum is always one of the starts, so
/// the estimate never exceeds the single-copy value.
inline DiscordResult minimize_discord_blocked(const PureState& psi, std::size_t t, const OptimizerConfig& cfg) {
    if (t == 0) throw InvalidArgument("t must be positive");
    std::size_t total = 1;
    for (std::size_t i = 0; i < t; ++i) {
        if (total > cfg.guard_dim / psi.dims().total()) throw GuardError("blocked state exceeds guard_dim");
        total *= psi.dims().total();
    }
    DiscordResult single = minimize_discord(psi, cfg);
    if (t == 1) return single;
    std::vector<SeparableBasis> warm{single.argmin_basis.power(t)};
    return minimize_discord(blocked_power(psi, t), cfg, warm);
}

inline double finite_t_discord_rate(const PureState& psi, std::size_t t, const OptimizerConfig& cfg) {
    return minimize_discord_blocked(psi, t, cfg).value_bits / static_cast<double>(t);
}

}  // namespace ghzcost

#endif
