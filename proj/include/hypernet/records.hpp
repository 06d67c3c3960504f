// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hypernet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERNET_RECORDS_HPP
#define HYPERNET_RECORDS_HPP

// CSV and JSON renderings shared by the command-line tool. All number
// formatting and parsing goes through <charconv>, which ignores the locale.

#include <hypernet/demand.hpp>
#include <hypernet/graph_oracle.hpp>
#include <hypernet/routing_sim.hpp>
#include <hypernet/topology.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace hypernet {

using json = nlohmann::ordered_json;

// --- number formatting -------------------------------------------------------

/// `value` with `digits` significant digits, %g style.
inline std::string format_significant(double value, int digits = 6)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
    return {buf, res.ptr};
}

/// Shortest text that parses back to exactly `value`.
inline std::string format_shortest(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

inline std::string format_fixed(double value, int decimals)
{
    char buf[400];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    return {buf, res.ptr};
}

template <typename T>
std::optional<T> parse_number(std::string_view text)
{
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last)
        return std::nullopt;
    return value;
}

inline std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

// --- topology specs ------------------------------------------------------------

inline json spec_to_json(const TopologySpec& spec)
{
    json j;
    j["family"] = family_name(spec.family);
    j["v"] = spec.v ? json(*spec.v) : json(nullptr);
    j["radius"] = spec.radius ? json(*spec.radius) : json(nullptr);
    j["d"] = spec.d ? json(*spec.d) : json(nullptr);
    j["k"] = spec.k ? json(*spec.k) : json(nullptr);
    return j;
}

/// Accepts {"family": ..., "v"|"radius"|"d"|"k": ...}; null or missing
/// fields are absent. The result is validated.
inline TopologySpec spec_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw usage_error("topology entry needs a string \"family\"");
    const auto family = parse_family(j["family"].get<std::string>());
    if (!family)
        throw usage_error("unknown family \"" + j["family"].get<std::string>() + "\"");
    TopologySpec spec;
    spec.family = *family;
    const auto uint_field = [&](const char* key) -> std::optional<std::uint64_t> {
        if (!j.contains(key) || j[key].is_null())
            return std::nullopt;
        if (!j[key].is_number_integer() || (!j[key].is_number_unsigned() && j[key].get<std::int64_t>() < 0))
            throw usage_error(std::string("\"") + key + "\" must be a non-negative integer");
        return j[key].get<std::uint64_t>();
    };
    spec.v = uint_field("v");
    spec.radius = uint_field("radius");
    if (const auto d = uint_field("d"))
        spec.d = static_cast<unsigned>(*d);
    if (j.contains("k") && !j["k"].is_null()) {
        if (!j["k"].is_number())
            throw usage_error("\"k\" must be a number");
        spec.k = j["k"].get<double>();
    }
    validate(spec);
    return spec;
}

/// Ranking entries from a JSON array of spec objects, each optionally
/// carrying "label" and "published_pct". Blank text is an empty list.
inline std::vector<RankingEntry> ranking_entries_from_json(std::string_view text)
{
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
        return {};
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw usage_error(std::string("spec file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw usage_error("spec file must hold a JSON array");
    std::vector<RankingEntry> entries;
    for (const auto& item : doc) {
        RankingEntry e;
        e.spec = spec_from_json(item);
        if (item.contains("label"))
            e.label = item["label"].get<std::string>();
        if (item.contains("published_pct") && !item["published_pct"].is_null())
            e.published_pct = item["published_pct"].get<double>();
        entries.push_back(std::move(e));
    }
    return entries;
}

// --- metric records --------------------------------------------------------------

inline constexpr std::string_view metrics_csv_header =
    "family,v,radius,d,k,n_total,diameter,links,avg_hops,f_link,d_link,d_peer,x_max,x_relative,bottleneck";

/// Spec parameters plus every structural and demand quantity.
struct OutputRecord {
    TopologySpec spec;
    StructuralMetrics metrics;
    DemandProfile demand;
};

inline OutputRecord make_record(const TopologySpec& spec, const ServiceTimes& times = {})
{
    return {spec, structural_metrics(spec), demand_profile(spec, times)};
}

/// CSV row matching metrics_csv_header. Integer parameters and exact peer
/// counts print in full, k prints in shortest round-trip form, every other
/// real uses 6 significant digits.
inline std::string to_csv(const OutputRecord& r)
{
    const auto opt_uint = [](const auto& o) { return o ? std::to_string(*o) : std::string(); };
    std::string row;
    row += family_name(r.spec.family);
    row += ',' + opt_uint(r.spec.v);
    row += ',' + opt_uint(r.spec.radius);
    row += ',' + opt_uint(r.spec.d);
    row += ',' + (r.spec.k ? format_shortest(*r.spec.k) : std::string());
    row += ',' + (r.metrics.n_exact ? std::to_string(*r.metrics.n_exact) : format_significant(r.metrics.n_total));
    for (const double x : {r.metrics.diameter, r.metrics.links, r.metrics.avg_hops, r.demand.f_link, r.demand.d_link,
                           r.demand.d_peer, r.demand.x_max, r.demand.x_relative})
        row += ',' + format_significant(x);
    row += ',';
    row += bottleneck_name(r.demand.bottleneck);
    return row;
}

/// Recovers the spec from a row produced by to_csv.
inline TopologySpec spec_from_csv(std::string_view row)
{
    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
        const auto comma = row.find(',', start);
        fields.push_back(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (fields.size() != 15)
        throw usage_error("metrics row must have 15 fields");
    const auto family = parse_family(fields[0]);
    if (!family)
        throw usage_error("unknown family in metrics row");
    const auto uint_field = [](std::string_view f) -> std::optional<std::uint64_t> {
        if (f.empty())
            return std::nullopt;
        const auto v = parse_number<std::uint64_t>(f);
        if (!v)
            throw usage_error("malformed integer field in metrics row");
        return v;
    };
    TopologySpec spec;
    spec.family = *family;
    spec.v = uint_field(fields[1]);
    spec.radius = uint_field(fields[2]);
    if (const auto d = uint_field(fields[3]))
        spec.d = static_cast<unsigned>(*d);
    if (!fields[4].empty()) {
        const auto k = parse_number<double>(fields[4]);
        if (!k)
            throw usage_error("malformed k field in metrics row");
        spec.k = *k;
    }
    validate(spec);
    return spec;
}

inline json to_json(const OutputRecord& r)
{
    json j = spec_to_json(r.spec);
    j["n_total"] = r.metrics.n_exact ? json(*r.metrics.n_exact) : json(r.metrics.n_total);
    j["diameter"] = r.metrics.diameter;
    j["links"] = r.metrics.links;
    j["internal_path_length"] =
        r.metrics.internal_path_length ? json(*r.metrics.internal_path_length) : json(nullptr);
    j["avg_hops"] = r.metrics.avg_hops;
    j["f_link"] = r.demand.f_link;
    j["d_link"] = r.demand.d_link;
    j["f_peer"] = r.demand.f_peer;
    j["d_peer"] = r.demand.d_peer;
    j["x_max"] = r.demand.x_max;
    j["x_relative"] = r.demand.x_relative;
    j["bottleneck"] = bottleneck_name(r.demand.bottleneck);
    return j;
}

// --- ranking -------------------------------------------------------------------

inline constexpr std::string_view ranking_csv_header =
    "label,connections,hops_to_horizon,peers_in_horizon,relative_bandwidth_pct,published_pct,note";

/// Percentages round half away from zero, like the published integer column.
inline long long rounded_pct(double pct) { return std::llround(pct); }

inline std::string to_csv(const RankingRow& r)
{
    std::string row = csv_escape(r.label);
    row += ',' + std::to_string(r.connections);
    row += ',' + std::to_string(r.hops_to_horizon);
    row += ',' + std::to_string(std::llround(r.peers_in_horizon));
    row += ',' + std::to_string(rounded_pct(r.relative_bandwidth_pct));
    row += ',' + (r.published_pct ? format_significant(*r.published_pct) : std::string());
    row += ',' + csv_escape(r.note);
    return row;
}

inline json to_json(const RankingRow& r)
{
    json j;
    j["label"] = r.label;
    j["spec"] = spec_to_json(r.spec);
    j["connections"] = r.connections;
    j["hops_to_horizon"] = r.hops_to_horizon;
    j["peers_in_horizon"] = r.peers_in_horizon;
    j["relative_bandwidth_pct"] = rounded_pct(r.relative_bandwidth_pct);
    j["relative_bandwidth_pct_exact"] = r.relative_bandwidth_pct;
    j["published_pct"] = r.published_pct ? json(*r.published_pct) : json(nullptr);
    j["note"] = r.note;
    return j;
}

// --- sweeps ----------------------------------------------------------------------

inline std::string_view sweep_parameter(Family f) noexcept
{
    switch (f) {
    case Family::RootedTree:
    case Family::CayleyTree: return "radius";
    case Family::Hypercube: return "d";
    case Family::Hypertorus: return "k";
    }
    return "size";
}

/// Header row, one row per point with x_relative to 6 decimals, and a
/// final "truncated" row when the series stopped on overflow.
inline void write_sweep_csv(std::ostream& os, Family family, const SweepSeries& series)
{
    os << sweep_parameter(family) << ",n_total,x_relative\n";
    for (const auto& p : series.points) {
        const std::string n = is_integral(p.spec) ? std::to_string(node_count(p.spec)) : format_shortest(p.n_total);
        os << format_shortest(p.size_param) << ',' << n << ',' << format_fixed(p.x_relative, 6) << '\n';
    }
    if (series.truncated)
        os << "truncated,,\n";
}

inline void write_sweep_json(std::ostream& os, Family family, const SweepSeries& series)
{
    const std::string key(sweep_parameter(family));
    for (const auto& p : series.points) {
        json j;
        j[key] = p.size_param;
        j["n_total"] = p.n_total;
        j["x_relative"] = p.x_relative;
        os << j.dump() << '\n';
    }
    if (series.truncated)
        os << json{{"truncated", true}}.dump() << '\n';
}

// --- verification and simulation -------------------------------------------------

inline json to_json(const VerificationReport& r)
{
    json j;
    j["spec"] = spec_to_json(r.spec);
    j["passed"] = r.passed();
    json rows = json::array();
    for (const auto& c : r.comparisons)
        rows.push_back({{"metric", c.metric},
                        {"analytic", c.analytic},
                        {"exact", c.exact},
                        {"verdict", verdict_name(c.verdict)},
                        {"detail", c.detail}});
    j["comparisons"] = rows;
    return j;
}

inline void write_text(std::ostream& os, const VerificationReport& r)
{
    for (const auto& c : r.comparisons) {
        os << "  " << c.metric << ": analytic " << format_significant(c.analytic) << ", exact "
           << format_significant(c.exact) << " -> " << verdict_name(c.verdict);
        if (!c.detail.empty())
            os << " (" << c.detail << ')';
        os << '\n';
    }
}

inline json to_json(const SimResult& r)
{
    json j;
    j["spec"] = spec_to_json(r.spec);
    j["generator"] = r.generator;
    j["seed"] = r.seed;
    j["sampled_pairs"] = r.sampled_pairs;
    j["node_count"] = r.node_count;
    j["edge_count"] = r.edges.size();
    j["total_traversals"] = r.total_traversals;
    j["mean_hops_estimate"] = r.mean_hops_estimate;
    j["standard_error"] = r.standard_error;
    j["f_link_mean_estimate"] = r.f_link_mean_estimate;
    j["f_link_max_estimate"] = r.f_link_max_estimate;
    j["x_max_uniform_estimate"] = r.x_max_uniform_estimate;
    return j;
}

inline json to_json(const ConvergenceReport& r)
{
    json j;
    j["sampled_pairs"] = r.sampled_pairs;
    j["tolerance"] = r.tolerance;
    j["sufficient_samples"] = r.sufficient_samples();
    j["ok"] = r.ok();
    json rows = json::array();
    for (const auto& m : r.metrics)
        rows.push_back({{"metric", m.metric},
                        {"estimate", m.estimate},
                        {"exact", m.exact},
                        {"relative_error", m.relative_error},
                        {"sufficient_samples", m.sufficient_samples},
                        {"within_tolerance", m.within_tolerance}});
    j["metrics"] = rows;
    return j;
}

inline void write_text(std::ostream& os, const ConvergenceReport& r)
{
    for (const auto& m : r.metrics) {
        os << "  " << m.metric << ": estimate " << format_significant(m.estimate) << ", exact "
           << format_significant(m.exact) << ", relative error " << format_significant(m.relative_error, 3);
        if (!m.sufficient_samples)
            os << " (insufficient samples)";
        else
            os << (m.within_tolerance ? " ok" : " OUT OF TOLERANCE");
        os << '\n';
    }
}

} // namespace hypernet

#endif
