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

#ifndef GHZCOST_BASIS_HPP
#define GHZCOST_BASIS_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "ghzcost/hilbert.hpp"

namespace ghzcost {

/// One unitary per party; the columns of party j's matrix are the basis
/// vectors |x_j>, so the product basis is {|x_1, ..., x_k>}.
class SeparableBasis {
   public:
    SeparableBasis() = default;
    explicit SeparableBasis(std::vector<Matrix> unitaries) : us_(std::move(unitaries)) {
        if (us_.empty()) throw InvalidArgument("separable basis needs at least one party");
        for (const auto& u : us_)
            if (!is_unitary(u)) throw InvalidArgument("separable basis matrix is not unitary within 1e-10");
    }

    static SeparableBasis computational(const PartyDims& dims) {
        std::vector<Matrix> us;
        for (std::size_t d : dims.dims()) us.push_back(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
        return SeparableBasis(std::move(us));
    }

    /// Normalized discrete Fourier basis on every party.
    static SeparableBasis fourier(const PartyDims& dims) {
        std::vector<Matrix> us;
        for (std::size_t d : dims.dims()) us.push_back(dft_matrix(d) / std::sqrt(static_cast<double>(d)));
        return SeparableBasis(std::move(us));
    }

    /// Party-wise t-fold tensor power, matching the layout of blocked_power.
    SeparableBasis power(std::size_t t) const {
        std::vector<Matrix> us;
        for (const auto& u : us_) {
            Matrix acc = Matrix::Identity(1, 1);
            for (std::size_t i = 0; i < t; ++i) acc = kron(acc, u);
            us.push_back(std::move(acc));
        }
        return SeparableBasis(std::move(us));
    }

    std::size_t parties() const { return us_.size(); }
    const Matrix& operator[](std::size_t party) const { return us_.at(party); }
    const std::vector<Matrix>& unitaries() const { return us_; }

    bool matches(const PartyDims& dims) const {
        if (dims.parties() != us_.size()) return false;
        for (std::size_t j = 0; j < us_.size(); ++j)
            if (static_cast<std::size_t>(us_[j].rows()) != dims[j]) return false;
        return true;
    }

    /// <y|J|y'> = exp(2 pi i y y' / d), unnormalized.
    static Matrix dft_matrix(std::size_t d) {
        Matrix j(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                j(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((a * b) % d) / static_cast<double>(d));
        return j;
    }

    static Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return out;
    }

   private:
    std::vector<Matrix> us_;
};

namespace detail {

/// In-place y = M x on one party of a dense amplitude vector.
inline void apply_on_party(Vector& amps, const PartyDims& dims, std::size_t party, const Matrix& m) {
    const auto d = static_cast<Eigen::Index>(dims[party]);
    Eigen::Index right = 1;
    for (std::size_t q = party + 1; q < dims.parties(); ++q) right *= static_cast<Eigen::Index>(dims[q]);
    const Eigen::Index left = static_cast<Eigen::Index>(dims.total()) / (d * right);
    Matrix mt = m.transpose();
    for (Eigen::Index l = 0; l < left; ++l) {
        Eigen::Map<Matrix> block(amps.data() + l * d * right, right, d);
        block = (block * mt).eval();
    }
}

}  // namespace detail

/// Amplitudes C(x) = <x_1, ..., x_k | psi> in the given product basis.
inline Vector coefficients_in_basis(const PureState& psi, const SeparableBasis& basis) {
    if (!basis.matches(psi.dims())) throw DimensionError("basis does not match state dimensions");
    Vector c = psi.amps();
    for (std::size_t j = 0; j < basis.parties(); ++j) detail::apply_on_party(c, psi.dims(), j, basis[j].adjoint());
    return c;
}

}  // namespace ghzcost

#endif
