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

// JSON/CSV serialization, atomic file output and content digests.

#ifndef GHZCOST_IO_HPP
#define GHZCOST_IO_HPP

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ghzcost/discord.hpp"
#include "ghzcost/protocol.hpp"
#include "ghzcost/rates.hpp"
#include "ghzcost/typical.hpp"

namespace ghzcost::io {

using json = nlohmann::ordered_json;

inline json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Nonzero amplitudes as [flat index, [re, im]] pairs.
inline json state_json(const PureState& s) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.amps().size(); ++i)
        if (std::abs(s.amps()(i)) > protocol::kDropAmplitude) amps.push_back(json::array({i, complex_json(s.amps()(i))}));
    return {{"dims", s.dims().vec()}, {"amplitudes", std::move(amps)}};
}

inline json state_json(const protocol::SparseState& s) {
    json amps = json::array();
    for (const auto& [i, a] : s.terms()) amps.push_back(json::array({i, complex_json(a)}));
    return {{"dims", s.dims().vec()}, {"amplitudes", std::move(amps)}};
}

inline json aep_json(const AepReport& a) {
    return {{"mass_bound", a.mass_bound},
            {"upper_size_bound", a.upper_size_bound},
            {"lower_size_checked", a.lower_size_checked},
            {"lower_size_bound", a.lower_size_bound},
            {"lower_size", a.lower_size},
            {"upper_size", a.upper_size}};
}

inline json typical_json(const TypicalSet& ts, std::size_t max_members = 10000) {
    json j = {{"l", ts.l},          {"epsilon", ts.epsilon},   {"entropy_H", ts.entropy_H},
              {"size", ts.size()},  {"n_epsilon", ts.n_epsilon}, {"alphabet_sizes", ts.alphabet_sizes},
              {"alphabet", ts.alphabet}, {"symbol_probs", ts.symbol_probs}, {"aep", aep_json(ts.aep)}};
    if (ts.size() <= max_members) {
        json members = json::array();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            auto m = ts.member(i);
            members.push_back({{"symbols", std::vector<std::uint32_t>(m.begin(), m.end())}, {"prob", ts.member_probs[i]}});
        }
        j["members"] = std::move(members);
    }
    return j;
}

inline json typical_summary_json(const TypicalSummary& s) {
    return {{"l", s.l},
            {"epsilon", s.epsilon},
            {"entropy_H", s.entropy_H},
            {"size", static_cast<double>(s.size)},
            {"n_epsilon", s.n_epsilon},
            {"aep", aep_json(s.aep)}};
}

inline json indexed_json(const IndexedTypicalSet& its) {
    json coeffs = json::array();
    for (const auto& c : its.coeffs) coeffs.push_back(complex_json(c));
    json labels = json::array();
    for (std::size_t y = 0; y < its.size(); ++y) {
        auto t = its.tuple(y);
        labels.push_back(std::vector<std::size_t>(t.begin(), t.end()));
    }
    return {{"l", its.l},
            {"symbol_dims", its.symbol_dims.vec()},
            {"alphabet_sizes", its.alphabet_sizes},
            {"n_epsilon", its.n_epsilon},
            {"labels", std::move(labels)},
            {"coefficients", std::move(coeffs)},
            {"party_sequences", its.party_sequences}};
}

inline json discord_json(const DiscordResult& r) {
    json basis = json::array();
    for (const auto& u : r.argmin_basis.unitaries()) basis.push_back(matrix_json(u));
    return {{"value_bits", r.value_bits},
            {"restarts_used", r.restarts_used},
            {"converged", r.converged},
            {"per_restart_values", r.per_restart_values},
            {"argmin_basis", std::move(basis)}};
}

inline json branch_report_json(const BranchReport& b) {
    return {{"total_branches", b.total_branches},
            {"enumerated", b.enumerated},
            {"samples", b.samples},
            {"min_fidelity", b.min_fidelity},
            {"min_agreement", b.min_agreement},
            {"probability_covered", b.probability_covered},
            {"filter_success_probability", b.filter_success_probability},
            {"index_size", b.index_size},
            {"copies", b.copies},
            {"d_k", b.d_k}};
}

inline json trace_json(const ProtocolTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"label", s.label}, {"op", s.op}, {"party", s.party}, {"outcome", s.outcome}, {"probability", s.probability}});
    return {{"steps", std::move(steps)},
            {"probability", t.probability},
            {"fidelity_to_target", t.fidelity_to_target},
            {"final_state", state_json(t.final_state)}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

inline json rate_report_json(const RateReport& r) {
    json finite = json::object();
    for (const auto& [t, v] : r.discord_finite_t) finite[std::to_string(t)] = v;
    json refs = json::array();
    for (const auto& c : r.closed_form_refs) refs.push_back({{"quantity", c.quantity}, {"value", c.value}, {"provenance", c.provenance}});
    return {{"label", r.label},
            {"discord_t1", r.discord_t1},
            {"discord_finite_t", std::move(finite)},
            {"rate_RT", r.rate_RT},
            {"entanglement_lower_bound", optional_json(r.entanglement_lower_bound)},
            {"entanglement_cost_known", optional_json(r.entanglement_cost_known)},
            {"bound_ordering_ok", r.bound_ordering_ok},
            {"closed_form_refs", std::move(refs)},
            {"flags", r.flags}};
}

inline json counterexample_json(const CounterexampleRow& c) {
    return {{"p", c.p}, {"E_C", c.e_c}, {"D_inf", c.d_inf}, {"violates", c.violates}};
}

// ---------------------------------------------------------------------------
// Text output.

/// %.17g for finite values; JSON has no infinities, so those become strings.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(std::ostringstream& os, const json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' '), close(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(it.key()).dump() << ": ";
                write_json(os, it.value(), depth + 1);
            }
            os << "\n" << close << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            bool scalar = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            if (scalar) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    write_json(os, j[i], depth + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_json(os, j[i], depth + 1);
            }
            os << "\n" << close << "]";
            return;
        }
        case json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

}  // namespace detail

inline std::string dump(const json& j) {
    std::ostringstream os;
    detail::write_json(os, j, 0);
    os << "\n";
    return os.str();
}

inline std::string csv_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

/// label, D_t1, D_t2, R_T, E_lower, E_c_known; one row per state.
inline std::string rate_reports_csv(const std::vector<RateReport>& rows) {
    std::string out = "label,D_t1,D_t2,R_T,E_lower,E_c_known\n";
    for (const auto& r : rows) {
        auto t2 = r.discord_finite_t.find(2);
        out += r.label + "," + format_double(r.discord_t1) + "," +
               (t2 == r.discord_finite_t.end() ? std::string() : format_double(t2->second)) + "," +
               format_double(r.rate_RT) + "," + csv_field(r.entanglement_lower_bound) + "," +
               csv_field(r.entanglement_cost_known) + "\n";
    }
    return out;
}

inline std::string counterexample_csv(const std::vector<CounterexampleRow>& rows) {
    std::string out = "p,E_C,D_inf,violates\n";
    for (const auto& r : rows)
        out += format_double(r.p) + "," + format_double(r.e_c) + "," + format_double(r.d_inf) + "," +
               (r.violates ? "true" : "false") + "\n";
    return out;
}

/// Writes through a temporary file in the same directory and renames it.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

}  // namespace ghzcost::io

#endif
