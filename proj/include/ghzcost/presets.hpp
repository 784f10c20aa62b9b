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

// Named states used throughout the tools and tests.

#ifndef GHZCOST_PRESETS_HPP
#define GHZCOST_PRESETS_HPP

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "ghzcost/hilbert.hpp"

namespace ghzcost::presets {

inline constexpr double kLoadNormWarn = 1e-6;

inline PartyDims qubits(std::size_t k) { return PartyDims(std::vector<std::size_t>(k, 2)); }

/// (|0...0> + |1...1>)/sqrt(2) on k qubits.
inline PureState ghz(std::size_t k) {
    if (k < 2) throw InvalidArgument("ghz: k must be at least 2");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << k));
    v(0) = v(v.size() - 1) = 1.0 / std::numbers::sqrt2;
    return PureState(qubits(k), v);
}

/// sqrt(p)|0...0> + sqrt(1-p)|1...1>.
inline PureState generalized_ghz(double p, std::size_t k = 3) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("gghz: p must lie in [0, 1]");
    if (k < 2) throw InvalidArgument("gghz: k must be at least 2");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << k));
    v(0) = std::sqrt(p);
    v(v.size() - 1) = std::sqrt(1.0 - p);
    return PureState(qubits(k), v);
}

/// Uniform superposition of the k single-excitation states.
inline PureState w(std::size_t k) {
    if (k < 2) throw InvalidArgument("w: k must be at least 2");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << k));
    for (std::size_t i = 0; i < k; ++i) v(static_cast<Eigen::Index>(std::size_t{1} << i)) = 1.0 / std::sqrt(static_cast<double>(k));
    return PureState(qubits(k), v);
}

/// (|000> + |+11>)/sqrt(2).
inline PureState plus011() {
    Vector v = Vector::Zero(8);
    const double h = 1.0 / std::numbers::sqrt2;
    v(0) = h;
    v(3) += h * h;  // |011>
    v(7) += h * h;  // |111>
    return PureState::normalized(qubits(3), v);
}

inline PureState product000() {
    return PureState::basis(qubits(3), {0, 0, 0});
}

/// (1-2p)|Phi+><Phi+| + p(|00><00| + |11><11|), 0 <= p <= 1/2.
inline DensityMatrix werner_phi(double p) {
    if (!(p >= 0.0 && p <= 0.5)) throw InvalidArgument("werner-phi: p must lie in [0, 1/2]");
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5;
    m(0, 3) = m(3, 0) = (1.0 - 2.0 * p) / 2.0;
    return DensityMatrix(PartyDims{2, 2}, m);
}

inline PureState phi_plus() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0 / std::numbers::sqrt2;
    return PureState(PartyDims{2, 2}, v);
}

struct LoadedState {
    PureState state;
    double input_norm = 1.0;
    bool norm_warning = false;  ///< input norm deviated from 1 by more than 1e-6
};

/// Explicit amplitudes, normalized on load.
inline LoadedState from_amplitudes(const PartyDims& dims, const std::vector<cplx>& amps) {
    if (amps.size() != dims.total()) throw DimensionError("amplitude count does not match the dimensions");
    Vector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
    LoadedState out{PureState::normalized(dims, v), v.norm(), false};
    out.norm_warning = std::abs(out.input_norm - 1.0) > kLoadNormWarn;
    return out;
}

namespace detail {

inline std::size_t suffix_k(std::string_view name, std::string_view prefix) {
    std::string_view rest = name.substr(prefix.size());
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
        throw InvalidArgument("malformed preset name '" + std::string(name) + "'");
    return k;
}

}  // namespace detail

/// Resolves ghz{k}, w{k}, gghz (with p and k), plus011 and product-000.
inline PureState by_name(std::string_view name, double p = 0.5, std::size_t k = 3) {
    if (name == "plus011") return plus011();
    if (name == "product-000" || name == "product") return product000();
    if (name == "gghz") return generalized_ghz(p, k);
    if (name == "ghz") return ghz(k);
    if (name == "w") return w(k);
    if (name.starts_with("gghz")) return generalized_ghz(p, detail::suffix_k(name, "gghz"));
    if (name.starts_with("ghz")) return ghz(detail::suffix_k(name, "ghz"));
    if (name.starts_with("w")) return w(detail::suffix_k(name, "w"));
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

}  // namespace ghzcost::presets

#endif
