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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "ghzcost/ghzcost.hpp"
#include "test_support.hpp"

using namespace ghzcost;

namespace {

OptimizerConfig config(std::size_t restarts = 32) {
    OptimizerConfig c;
    c.restarts = restarts;
    return c;
}

}  // namespace

TEST(DiscordObjective, computational_basis_values) {
    auto comp = SeparableBasis::computational(presets::qubits(3));
    EXPECT_NEAR(discord_objective(presets::product000(), comp), 0.0, 1e-15);
    EXPECT_NEAR(discord_objective(presets::ghz(3), comp), 1.0, 1e-14);
    EXPECT_NEAR(discord_objective(presets::w(3), comp), std::log2(3.0), 1e-14);
}

TEST(DiscordObjective, agrees_with_coefficient_distribution) {
    std::mt19937_64 rng(21);
    PureState psi = oracle::random_state(PartyDims{2, 3, 2}, rng);
    SeparableBasis b({oracle::haar(2, rng), oracle::haar(3, rng), oracle::haar(2, rng)});
    EXPECT_NEAR(discord_objective(psi, b), coefficient_distribution(psi, b, 1).first.entropy(), 1e-12);
}

TEST(DiscordGradient, matches_finite_differences) {
    std::mt19937_64 rng(8);
    PureState psi = oracle::random_state(PartyDims{2, 3, 2}, rng);
    detail::DiscordLandscape f(psi);
    std::vector<Matrix> us{oracle::haar(2, rng), oracle::haar(3, rng), oracle::haar(2, rng)}, grad;
    f.value_and_gradient(us, grad);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t j = 0; j < us.size(); ++j) {
        const auto d = us[j].rows();
        Matrix a(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) a(r, c) = cplx(n(rng), n(rng));
        a = (a - a.adjoint()).eval();  // anti-Hermitian direction
        const double h = 1e-6;
        auto moved = [&](double s) {
            std::vector<Matrix> v = us;
            v[j] = us[j] * detail::expm_antihermitian(s * a);
            return f.value(v);
        };
        const double fd = (moved(h) - moved(-h)) / (2 * h);
        const double analytic = std::real((grad[j].adjoint() * a).trace());
        EXPECT_NEAR(analytic, fd, 1e-6 * std::max(1.0, std::abs(fd))) << "party " << j;
    }
}

TEST(ExpmAntihermitian, is_unitary) {
    std::mt19937_64 rng(2);
    Matrix a = oracle::haar(4, rng);
    a = (a - a.adjoint()).eval();
    EXPECT_TRUE(is_unitary(detail::expm_antihermitian(a), 1e-12));
}

TEST(MinimizeDiscord, w_state) {
    auto r = minimize_discord(presets::w(3), config());
    EXPECT_NEAR(r.value_bits, std::log2(3.0), 1e-3);
    EXPECT_EQ(r.restarts_used, 32u);
    EXPECT_EQ(r.per_restart_values.size(), 32u);
    EXPECT_NEAR(discord_objective(presets::w(3), r.argmin_basis), r.value_bits, 1e-9);
}

TEST(MinimizeDiscord, generalized_ghz_family) {
    for (double p : {0.1, 0.3, 0.5, 0.8}) {
        auto r = minimize_discord(presets::generalized_ghz(p, 3), config());
        EXPECT_NEAR(r.value_bits, binary_entropy(p), 1e-4) << "p=" << p;
    }
}

TEST(MinimizeDiscord, plus011_and_products) {
    EXPECT_NEAR(minimize_discord(presets::plus011(), config()).value_bits, 1.5, 1e-3);
    EXPECT_NEAR(minimize_discord(presets::product000(), config()).value_bits, 0.0, 1e-6);
    // |+>|0>|1>: zero only after rotating the first qubit.
    Vector v = Vector::Zero(8);
    v(1) = v(5) = 1.0;
    auto r = minimize_discord(PureState::normalized(presets::qubits(3), v), config());
    EXPECT_NEAR(r.value_bits, 0.0, 1e-6);
}

TEST(MinimizeDiscord, feasible_point_dominance_and_range) {
    std::mt19937_64 rng(31);
    PartyDims dims{2, 2, 3};
    PureState psi = oracle::random_state(dims, rng);
    auto r = minimize_discord(psi, config(8));
    for (int i = 0; i < 5; ++i) {
        SeparableBasis b({oracle::haar(2, rng), oracle::haar(2, rng), oracle::haar(3, rng)});
        EXPECT_LE(r.value_bits, discord_objective(psi, b) + 1e-9);
    }
    EXPECT_GE(r.value_bits, 0.0);
    EXPECT_LE(r.value_bits, std::log2(12.0) + 1e-9);
}

TEST(MinimizeDiscord, local_unitary_invariance) {
    std::mt19937_64 rng(41);
    for (const PureState& psi : {presets::w(3), presets::ghz(3)}) {
        const double base = minimize_discord(psi, config()).value_bits;
        for (int i = 0; i < 20; ++i) {
            PureState rotated = psi;
            for (std::size_t p = 0; p < 3; ++p) rotated = apply_local_unitary(rotated, oracle::haar(2, rng), {p});
            EXPECT_NEAR(minimize_discord(rotated, config()).value_bits, base, 1e-6);
        }
    }
}

TEST(MinimizeDiscord, deterministic_for_a_seed) {
    std::mt19937_64 rng(5);
    PureState psi = oracle::random_state(presets::qubits(3), rng);
    auto a = minimize_discord(psi, config(6)), b = minimize_discord(psi, config(6));
    EXPECT_EQ(a.per_restart_values, b.per_restart_values);
    EXPECT_EQ(a.value_bits, b.value_bits);
}

TEST(MinimizeDiscord, guards) {
    OptimizerConfig c = config();
    c.guard_dim = 4;
    EXPECT_THROW(minimize_discord(presets::w(3), c), GuardError);
    EXPECT_THROW(minimize_discord(presets::w(3), config(0)), InvalidArgument);
}

TEST(FiniteT, blocking_never_exceeds_single_copy) {
    const double w1 = finite_t_discord_rate(presets::w(3), 1, config());
    EXPECT_NEAR(w1, std::log2(3.0), 1e-3);
    const double w2 = finite_t_discord_rate(presets::w(3), 2, config(4));
    EXPECT_LE(w2, w1 + 1e-6);
    EXPECT_LE(finite_t_discord_rate(presets::ghz(3), 2, config(4)), 1.0 + 1e-6);
    OptimizerConfig small = config();
    small.guard_dim = 32;
    EXPECT_THROW(finite_t_discord_rate(presets::w(3), 2, small), GuardError);
}
