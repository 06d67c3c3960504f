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

#ifndef HYPERNET_DEMAND_HPP
#define HYPERNET_DEMAND_HPP

#include <hypernet/topology.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypernet {

/// Time units per link transit and per peer visit.
struct ServiceTimes {
    double s_link = 1.0;
    double s_peer = 1.0;
};

inline void validate(const ServiceTimes& times)
{
    if (!(times.s_link > 0.0) || !(times.s_peer > 0.0) || !std::isfinite(times.s_link) ||
        !std::isfinite(times.s_peer))
        throw usage_error("service times must be finite and strictly positive");
}

enum class Bottleneck { Link, Peer, Balanced };

constexpr std::string_view bottleneck_name(Bottleneck b) noexcept
{
    switch (b) {
    case Bottleneck::Link: return "link";
    case Bottleneck::Peer: return "peer";
    case Bottleneck::Balanced: return "balanced";
    }
    return "?";
}

/// Relative tolerance under which link and peer demands count as equal.
inline constexpr double balanced_tolerance = 1e-12;

struct DemandProfile {
    double f_link = 0;     // transit frequency per link
    double d_link = 0;     // link service demand
    double f_peer = 0;     // 1 / N
    double d_peer = 0;     // peer service demand
    double x_max = 0;      // saturation throughput
    double x_relative = 0; // x_max / N
    Bottleneck bottleneck = Bottleneck::Peer;
};

/// Service demands and saturation throughput under uniform routing.
///
/// The link demand is H / L per query and the peer demand 1 / N; by Little's
/// law at U = 1 the system saturates at 1 / max(D_link, D_peer).
inline DemandProfile demand_profile(const TopologySpec& spec, const ServiceTimes& times = {})
{
    validate(spec);
    validate(times);
    const double n = node_count_real(spec);
    const double hops = average_hops(spec);
    const double links = link_count_real(spec);

    DemandProfile p;
    p.f_link = links > 0 ? hops / links : 0.0;
    p.d_link = p.f_link * times.s_link;
    p.f_peer = 1.0 / n;
    p.d_peer = times.s_peer / n;
    const double d_max = std::max(p.d_link, p.d_peer);
    p.x_max = 1.0 / d_max;
    // x_max / N evaluated as 1 / (N D_max) with the demands scaled by N up
    // front, so a peer-bound or balanced system reports exactly 1 / s_peer.
    const double link_per_peer = links > 0 ? hops * n / links * times.s_link : 0.0;
    p.x_relative = 1.0 / std::max(link_per_peer, times.s_peer);
    if (std::abs(p.d_link - p.d_peer) <= balanced_tolerance * d_max)
        p.bottleneck = Bottleneck::Balanced;
    else
        p.bottleneck = p.d_link > p.d_peer ? Bottleneck::Link : Bottleneck::Peer;
    return p;
}

// --- horizon ---------------------------------------------------------------

/// Family and the fixed shape parameter of a horizon search: v for trees,
/// d for tori. The size parameter is what solve_horizon determines.
struct HorizonQuery {
    Family family = Family::Hypercube;
    std::uint64_t v = 0;
    unsigned d = 0;
};

enum class HorizonMode { Analytic, Graph };

/// Smallest topology of the family whose peer count reaches `target_peers`.
/// Analytic tori take the real ring size k = target^(1/d), clamped to k >= 2;
/// graph mode rounds k up to the smallest integer with k^d >= target.
inline TopologySpec solve_horizon(const HorizonQuery& query, double target_peers,
                                  HorizonMode mode = HorizonMode::Analytic)
{
    if (!(target_peers >= 1.0) || !std::isfinite(target_peers))
        throw usage_error("target peer count must be a finite value >= 1");

    switch (query.family) {
    case Family::RootedTree:
    case Family::CayleyTree: {
        TopologySpec spec = query.family == Family::RootedTree ? TopologySpec::rooted_tree(query.v, 0)
                                                               : TopologySpec::cayley_tree(query.v, 0);
        validate(spec);
        while (static_cast<double>(node_count(spec)) < target_peers)
            ++*spec.radius; // node_count throws once the count leaves 64 bits
        return spec;
    }
    case Family::Hypercube: {
        for (unsigned d = 1; d < 64; ++d) {
            if (std::ldexp(1.0, static_cast<int>(d)) >= target_peers)
                return TopologySpec::hypercube(d);
        }
        throw overflow_error("no hypercube below 2^64 nodes reaches the target");
    }
    case Family::Hypertorus: {
        TopologySpec spec = TopologySpec::hypertorus(query.d, 2.0);
        validate(spec);
        const double root = std::pow(target_peers, 1.0 / query.d);
        if (mode == HorizonMode::Analytic) {
            spec.k = std::max(2.0, root);
            return spec;
        }
        // Start just below the real root, then walk up with exact counts.
        auto k = static_cast<std::uint64_t>(std::max(2.0, std::floor(root) - 1.0));
        for (;; ++k) {
            spec.k = static_cast<double>(k);
            if (static_cast<double>(node_count(spec)) >= target_peers)
                return spec;
        }
    }
    }
    throw usage_error("unknown family");
}

// --- ranking ---------------------------------------------------------------

struct RankingRow {
    std::string label;
    TopologySpec spec;
    std::uint64_t connections = 0;
    std::uint64_t hops_to_horizon = 0;
    double peers_in_horizon = 0;
    double relative_bandwidth_pct = 0;
    std::optional<double> published_pct;
    std::string note;
};

/// One entry of a ranking request; published values are optional.
struct RankingEntry {
    std::string label;
    TopologySpec spec;
    std::optional<double> published_pct;
    std::string note; // preset annotation that applies regardless of the computed value
};

/// Rows whose computed percentage differs from the published one by more
/// than this many points carry a note.
inline constexpr double published_tolerance_pts = 5.0;

/// Default display label: "20-Cube", "10-Torus", "8-Cayley", "4-Tree".
inline std::string default_label(const TopologySpec& spec)
{
    switch (spec.family) {
    case Family::RootedTree: return std::to_string(*spec.v) + "-Tree";
    case Family::CayleyTree: return std::to_string(*spec.v) + "-Cayley";
    case Family::Hypercube: return std::to_string(*spec.d) + "-Cube";
    case Family::Hypertorus: return std::to_string(*spec.d) + "-Torus";
    }
    return "?";
}

/// Hop label shown in the ranking table. Trees count the horizon as R + 1
/// hops, cubes ceil(d / 2), tori ceil(d k / 4). Presentation only.
inline std::uint64_t hops_label(const TopologySpec& spec)
{
    validate(spec);
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree: return *spec.radius + 1;
    case Family::Hypercube: return (*spec.d + 1) / 2;
    case Family::Hypertorus:
        return static_cast<std::uint64_t>(std::ceil(static_cast<double>(*spec.d) * *spec.k / 4.0));
    }
    return 0;
}

/// The eight configurations of the published ranking table. Cube and tori
/// are sized at 2^21 peers except the 20-cube, which keeps its 20 links.
inline std::vector<RankingEntry> table3_preset()
{
    const auto torus = [](unsigned d) { return TopologySpec::hypertorus(d, std::pow(2.0, 21.0 / d)); };
    return {
        {"20-Cube", TopologySpec::hypercube(20), 100.0,
         "published population 2.1e6; 20 dimensions give 2^20 = 1048576 peers"},
        {"10-Torus", torus(10), 93.0, ""},
        {"5-Torus", torus(5), 22.0, ""},
        {"20-Cayley", TopologySpec::cayley_tree(20, 5), 16.0, ""},
        {"8-Cayley", TopologySpec::cayley_tree(8, 7), 13.0, ""},
        {"4-Tree", TopologySpec::rooted_tree(4, 10), 12.0, ""},
        {"3-Torus", TopologySpec::hypertorus(3, 128.0), 10.0, ""},
        {"4-Cayley", TopologySpec::cayley_tree(4, 12), 8.0, ""},
    };
}

inline std::string format_pct(double pct)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", pct);
    return buf;
}

/// Evaluates each entry and sorts descending by relative bandwidth, breaking
/// ties by fewer connections, then by input order.
inline std::vector<RankingRow> rank(std::span<const RankingEntry> entries, const ServiceTimes& times = {})
{
    std::vector<RankingRow> rows;
    rows.reserve(entries.size());
    for (const auto& e : entries) {
        RankingRow row;
        row.spec = e.spec;
        row.label = e.label.empty() ? default_label(e.spec) : e.label;
        row.connections = connections_per_peer(e.spec);
        row.hops_to_horizon = hops_label(e.spec);
        row.peers_in_horizon = node_count_real(e.spec);
        row.relative_bandwidth_pct = 100.0 * demand_profile(e.spec, times).x_relative;
        row.published_pct = e.published_pct;
        row.note = e.note;
        if (e.published_pct &&
            std::abs(row.relative_bandwidth_pct - *e.published_pct) > published_tolerance_pts) {
            std::string gap = "published " + format_pct(*e.published_pct) + "%, model gives " +
                              format_pct(row.relative_bandwidth_pct) + "%";
            row.note = row.note.empty() ? gap : row.note + "; " + gap;
        }
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const RankingRow& a, const RankingRow& b) {
        if (a.relative_bandwidth_pct != b.relative_bandwidth_pct)
            return a.relative_bandwidth_pct > b.relative_bandwidth_pct;
        return a.connections < b.connections;
    });
    return rows;
}

inline std::vector<RankingRow> rank_table3(const ServiceTimes& times = {})
{
    const auto preset = table3_preset();
    return rank(preset, times);
}

// --- sweeps ----------------------------------------------------------------

struct SweepPoint {
    double size_param = 0; // R, d or k depending on the family
    TopologySpec spec;
    double n_total = 0;
    double x_relative = 0;
};

struct SweepSeries {
    std::vector<SweepPoint> points;
    bool truncated = false; // a size step overflowed; points stop before it
};

/// Relative bandwidth at every integral size step in [first, last]: the
/// radius for trees, d for cubes, k for tori. Points come back ascending.
inline SweepSeries sweep(const HorizonQuery& shape, std::uint64_t first, std::uint64_t last,
                         const ServiceTimes& times = {})
{
    if (first > last)
        throw usage_error("sweep range is empty (first > last)");
    SweepSeries series;
    for (std::uint64_t step = first; step <= last; ++step) {
        TopologySpec spec;
        switch (shape.family) {
        case Family::RootedTree: spec = TopologySpec::rooted_tree(shape.v, step); break;
        case Family::CayleyTree: spec = TopologySpec::cayley_tree(shape.v, step); break;
        case Family::Hypercube: spec = TopologySpec::hypercube(static_cast<unsigned>(step)); break;
        case Family::Hypertorus: spec = TopologySpec::hypertorus(shape.d, static_cast<double>(step)); break;
        }
        validate(spec);
        try {
            SweepPoint pt{static_cast<double>(step), spec, node_count_real(spec), 0.0};
            pt.x_relative = demand_profile(spec, times).x_relative;
            series.points.push_back(pt);
        } catch (const overflow_error&) {
            series.truncated = true;
            break;
        }
        if (step == last)
            break;
    }
    return series;
}

} // namespace hypernet

#endif
