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
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "ghzcost/ghzcost.hpp"
#include "test_support.hpp"

using namespace ghzcost;

TEST(PartyDims, digits_round_trip) {
    PartyDims d{2, 3, 4};
    EXPECT_EQ(d.total(), 24u);
    EXPECT_EQ(d.strides(), (std::vector<std::size_t>{12, 4, 1}));
    for (std::size_t f = 0; f < d.total(); ++f) EXPECT_EQ(d.flat(d.digits(f)), f);
    EXPECT_EQ(d.digits(23), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(PartyDims, rejects_bad_shapes) {
    EXPECT_THROW(PartyDims({2, 0}), InvalidArgument);
    EXPECT_THROW(PartyDims(std::vector<std::size_t>{}), InvalidArgument);
    PartyDims d{2, 2};
    std::vector<std::size_t> bad{0, 2};
    EXPECT_THROW(d.flat(bad), DimensionError);
}

TEST(PureState, normalization_is_enforced) {
    Vector v = Vector::Zero(4);
    v(0) = 1.0;
    v(3) = 1.0;
    EXPECT_THROW(PureState(PartyDims{2, 2}, v), InvalidArgument);
    PureState s = PureState::normalized(PartyDims{2, 2}, v);
    EXPECT_NEAR(s.amps().norm(), 1.0, 1e-15);
    EXPECT_THROW(PureState::normalized(PartyDims{2, 2}, Vector::Zero(4)), InvalidArgument);
    EXPECT_THROW(PureState(PartyDims{2, 2}, Vector::Zero(3)), DimensionError);
}

TEST(PureState, tensor_multiplies_amplitudes) {
    std::mt19937_64 rng(7);
    PureState a = oracle::random_state(PartyDims{2}, rng), b = oracle::random_state(PartyDims{3}, rng);
    PureState ab = tensor(a, b);
    EXPECT_EQ(ab.dims(), (PartyDims{2, 3}));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::vector<std::size_t> d{i, j};
            EXPECT_NEAR(std::abs(ab.amplitude(d) - a.amps()(i) * b.amps()(j)), 0.0, 1e-14);
        }
}

TEST(Entropy, binary_and_shannon) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.3), -0.3 * std::log2(0.3) - 0.7 * std::log2(0.7), 1e-15);
    EXPECT_THROW(binary_entropy(1.5), InvalidArgument);
    std::vector<double> p{0.25, 0.25, 0.5, 0.0};
    EXPECT_DOUBLE_EQ(shannon_entropy(p), 1.5);
}

TEST(PartialTrace, matches_brute_force_sum) {
    std::mt19937_64 rng(11);
    PureState psi = oracle::random_state(PartyDims{2, 3, 2}, rng);
    for (std::size_t keep = 0; keep < 3; ++keep) {
        Matrix oracle = oracle::reduced_by_sum(psi, keep);
        EXPECT_LT((reduced_density(psi, {keep}).mat() - oracle).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT((partial_trace(psi.projector(), {keep}).mat() - oracle).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(PartialTrace, keeps_parties_in_ascending_order) {
    PureState psi = PureState::basis(PartyDims{2, 3}, {1, 2});
    DensityMatrix r = reduced_density(psi, {1, 0});
    EXPECT_EQ(r.dims(), (PartyDims{2, 3}));
    EXPECT_NEAR(std::real(r.mat()(5, 5)), 1.0, 1e-15);
}

TEST(VonNeumann, known_marginals) {
    EXPECT_NEAR(von_neumann_entropy(reduced_density(presets::ghz(3), {0})), 1.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(reduced_density(presets::w(3), {2})), binary_entropy(1.0 / 3.0), 1e-12);
    EXPECT_NEAR(von_neumann_entropy(presets::product000().projector()), 0.0, 1e-12);
}

TEST(Fidelity, pure_and_mixed) {
    std::mt19937_64 rng(3);
    PureState a = oracle::random_state(PartyDims{2, 2}, rng), b = oracle::random_state(PartyDims{2, 2}, rng);
    const double f = std::abs(a.amps().dot(b.amps()));
    EXPECT_NEAR(fidelity(a, b), f, 1e-15);
    EXPECT_NEAR(fidelity(a.projector(), b.projector()), f, 1e-7);
    // Commuting states: sum_i sqrt(p_i q_i).
    Matrix p = Matrix::Zero(2, 2), q = Matrix::Zero(2, 2);
    p(0, 0) = 0.3, p(1, 1) = 0.7, q(0, 0) = 0.6, q(1, 1) = 0.4;
    EXPECT_NEAR(fidelity(DensityMatrix(PartyDims{2}, p), DensityMatrix(PartyDims{2}, q)),
                std::sqrt(0.18) + std::sqrt(0.28), 1e-12);
}

TEST(RelativeEntropy, classical_case_and_support) {
    Matrix p = Matrix::Zero(2, 2), q = Matrix::Zero(2, 2);
    p(0, 0) = 0.3, p(1, 1) = 0.7, q(0, 0) = 0.6, q(1, 1) = 0.4;
    const double kl = 0.3 * std::log2(0.3 / 0.6) + 0.7 * std::log2(0.7 / 0.4);
    EXPECT_NEAR(relative_entropy(DensityMatrix(PartyDims{2}, p), DensityMatrix(PartyDims{2}, q)), kl, 1e-12);
    DensityMatrix pure = PureState::basis(PartyDims{2}, {1}).projector();
    DensityMatrix other = PureState::basis(PartyDims{2}, {0}).projector();
    EXPECT_TRUE(std::isinf(relative_entropy(pure, other)));
}

TEST(RelativeEntropy, dephasing_a_pure_state_gives_its_outcome_entropy) {
    // S(psi || Delta(psi)) = H(|c_x|^2) for a pure state.
    PureState w = presets::w(3);
    EXPECT_NEAR(relative_entropy(w.projector(), dephased(w.projector())), std::log2(3.0), 1e-10);
}

TEST(LocalUnitary, matches_kronecker_embedding) {
    std::mt19937_64 rng(5);
    PartyDims dims{2, 3, 2};
    PureState psi = oracle::random_state(dims, rng);
    Matrix u = oracle::haar(3, rng);
    PureState out = apply_local_unitary(psi, u, {1});
    Vector oracle = oracle::embed_on_party(dims, 1, u) * psi.amps();
    EXPECT_LT((out.amps() - oracle).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_THROW(apply_local_unitary(psi, Matrix::Ones(3, 3), {1}), VerificationError);
}

TEST(LocalUnitary, two_party_operator_order) {
    // CNOT with party 0 as control; operator index is row-major over the list.
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    PureState s = PureState::basis(PartyDims{2, 2, 2}, {1, 0, 0});
    PureState t = apply_local_unitary(s, cnot, {0, 2});
    std::vector<std::size_t> d{1, 0, 1};
    EXPECT_NEAR(std::abs(t.amplitude(d)), 1.0, 1e-15);
    PureState r = apply_local_unitary(PureState::basis(PartyDims{2, 2, 2}, {0, 0, 1}), cnot, {2, 0});
    std::vector<std::size_t> e{1, 0, 1};
    EXPECT_NEAR(std::abs(r.amplitude(e)), 1.0, 1e-15);
}

TEST(Measurement, completeness_is_enforced) {
    Matrix a = Matrix::Identity(2, 2);
    EXPECT_THROW(MeasurementSet({a, a}, "double"), CompletenessError);
    EXPECT_THROW(MeasurementSet({a, Matrix::Identity(3, 3)}), DimensionError);
    EXPECT_THROW(MeasurementSet(std::vector<Matrix>{}), InvalidArgument);
    EXPECT_NO_THROW(MeasurementSet({a / std::numbers::sqrt2, a / std::numbers::sqrt2}));
}

TEST(Measurement, branch_probabilities_and_states) {
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0, p1(1, 1) = 1.0;
    MeasurementSet z({p0, p1}, "z");
    auto br = apply_measurement(presets::generalized_ghz(0.3, 3), z, {1});
    ASSERT_EQ(br.size(), 2u);
    EXPECT_NEAR(br[0].probability, 0.3, 1e-14);
    EXPECT_NEAR(br[1].probability, 0.7, 1e-14);
    std::vector<std::size_t> ones{1, 1, 1};
    EXPECT_NEAR(std::abs(br[1].state.amplitude(ones)), 1.0, 1e-14);
}

TEST(Measurement, zero_probability_branches_are_dropped) {
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0, p1(1, 1) = 1.0;
    auto br = apply_measurement(presets::product000(), MeasurementSet({p0, p1}), {0});
    ASSERT_EQ(br.size(), 1u);
    EXPECT_EQ(br[0].outcome, 0u);
}

TEST(Measurement, rectangular_operators_change_the_party_dimension) {
    // Two isometric halves of a 2 -> 3 embedding.
    Matrix m0 = Matrix::Zero(3, 2), m1 = Matrix::Zero(3, 2);
    m0(0, 0) = m1(2, 1) = 1.0;
    MeasurementSet m({m0, m1});
    auto br = apply_measurement(presets::ghz(2), m, {0});
    ASSERT_EQ(br.size(), 2u);
    EXPECT_EQ(br[1].state.dims(), (PartyDims{3, 2}));
    std::vector<std::size_t> d{2, 1};
    EXPECT_NEAR(std::abs(br[1].state.amplitude(d)), 1.0, 1e-15);
    EXPECT_THROW(apply_measurement(presets::ghz(2), m, {0, 1}), DimensionError);
}

TEST(ResizeParty, grows_and_guards_shrinking) {
    PureState g = presets::ghz(2);
    PureState big = resize_party(g, 1, 4);
    EXPECT_EQ(big.dims(), (PartyDims{2, 4}));
    std::vector<std::size_t> d{1, 1};
    EXPECT_NEAR(std::abs(big.amplitude(d)), 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_NO_THROW(resize_party(big, 1, 2));
    EXPECT_THROW(resize_party(g, 1, 1), VerificationError);
}

TEST(ProjectOut, requires_a_product_factor) {
    PureState s = tensor(PureState::basis(PartyDims{2}, {1}), presets::ghz(2));
    Vector one = Vector::Zero(2);
    one(1) = 1.0;
    PureState rest = project_out_party(s, 0, one);
    EXPECT_NEAR(fidelity(rest, presets::ghz(2)), 1.0, 1e-15);
    EXPECT_THROW(project_out_party(presets::ghz(3), 0, one), VerificationError);
}

TEST(BlockedPower, layout_and_amplitudes) {
    PureState g = presets::generalized_ghz(0.3, 2);
    PureState g2 = blocked_power(g, 2);
    EXPECT_EQ(g2.dims(), (PartyDims{4, 4}));
    // Party digit = first copy's digit * 2 + second copy's digit.
    std::vector<std::size_t> d01{1, 1}, d10{2, 2}, d11{3, 3}, mixed{1, 2};
    EXPECT_NEAR(std::abs(g2.amplitude(d01)), std::sqrt(0.3 * 0.7), 1e-15);
    EXPECT_NEAR(std::abs(g2.amplitude(d10)), std::sqrt(0.3 * 0.7), 1e-15);
    EXPECT_NEAR(std::abs(g2.amplitude(d11)), 0.7, 1e-15);
    EXPECT_EQ(std::abs(g2.amplitude(mixed)), 0.0);
    EXPECT_THROW(blocked_power(g, 0), InvalidArgument);
}

TEST(SeparableBasis, power_and_coefficients) {
    std::mt19937_64 rng(9);
    PartyDims dims{2, 3};
    SeparableBasis b({oracle::haar(2, rng), oracle::haar(3, rng)});
    PureState psi = oracle::random_state(dims, rng);
    Vector oracle = SeparableBasis::kron(b[0], b[1]).adjoint() * psi.amps();
    EXPECT_LT((coefficients_in_basis(psi, b) - oracle).cwiseAbs().maxCoeff(), 1e-13);
    SeparableBasis b2 = b.power(2);
    EXPECT_LT((b2[1] - SeparableBasis::kron(b[1], b[1])).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_TRUE(SeparableBasis::fourier(dims).matches(dims));
    EXPECT_FALSE(SeparableBasis::fourier(dims).matches(PartyDims{3, 2}));
    EXPECT_THROW(SeparableBasis({Matrix::Ones(2, 2)}), InvalidArgument);
    EXPECT_THROW(coefficients_in_basis(psi, SeparableBasis::computational(PartyDims{3, 2})), DimensionError);
}

TEST(SeparableBasis, fourier_maps_plus_to_zero) {
    PureState plus = PureState::normalized(PartyDims{2}, Vector::Ones(2));
    Vector c = coefficients_in_basis(plus, SeparableBasis::fourier(PartyDims{2}));
    EXPECT_NEAR(std::abs(c(0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(c(1)), 0.0, 1e-15);
}
