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

#ifndef HYPERNET_ROUTING_SIM_HPP
#define HYPERNET_ROUTING_SIM_HPP

#include <hypernet/demand.hpp>
#include <hypernet/graph_oracle.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypernet {

/// Generator behind every sample stream. std::mt19937_64 is fully specified
/// by the standard, and bounded draws below avoid the implementation-defined
/// std::uniform_int_distribution, so streams match across platforms.
inline constexpr std::string_view generator_name = "mt19937_64";

struct SimConfig {
    TopologySpec spec;
    std::uint64_t pairs = 100'000;
    std::uint64_t seed = 0;
    ServiceTimes times;
};

struct SimResult {
    TopologySpec spec;
    std::string generator{generator_name};
    std::uint64_t seed = 0;
    std::uint64_t sampled_pairs = 0;
    std::uint64_t node_count = 0;
    std::vector<Edge> edges;
    std::vector<std::uint64_t> edge_traversals; // parallel to edges
    std::uint64_t total_traversals = 0;         // sum of sampled path lengths
    double mean_hops_estimate = 0;
    double standard_error = 0; // of mean_hops_estimate
    double f_link_mean_estimate = 0;
    double f_link_max_estimate = 0;
    double x_max_uniform_estimate = 0;

    friend bool operator==(const SimResult&, const SimResult&) = default;

    /// One "u v count" line per edge, ascending.
    void write_edge_counts(std::ostream& os) const
    {
        for (std::size_t i = 0; i < edges.size(); ++i)
            os << edges[i].first << ' ' << edges[i].second << ' ' << edge_traversals[i] << '\n';
    }
};

namespace detail {

// Uniform draw from [0, bound) by rejecting the biased low tail.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold)
            return x % bound;
    }
}

inline constexpr std::size_t sim_chunk = std::size_t{1} << 20;

} // namespace detail

/// Samples `pairs` ordered source != destination pairs uniformly with
/// replacement and routes each by the oracle's port-order next-hop rule.
///
/// Pairs are drawn sequentially from one stream; each chunk is then grouped
/// by destination so a single routing table serves many samples. Every
/// aggregate is an integer sum, so grouping does not change the result.
inline SimResult run(const SimConfig& config, const OracleLimits& limits = {})
{
    if (config.pairs == 0)
        throw usage_error("simulation needs at least one pair");
    validate(config.times);
    const GraphInstance g = build_graph(config.spec, limits);
    const std::uint64_t n = g.node_count();
    if (n < 2)
        throw usage_error("simulation needs at least two nodes");

    SimResult r;
    r.spec = config.spec;
    r.seed = config.seed;
    r.sampled_pairs = config.pairs;
    r.node_count = n;
    r.edges = g.edges();
    r.edge_traversals.assign(g.edge_count(), 0);

    std::mt19937_64 rng(config.seed);
    std::uint64_t hop_sq_sum = 0;
    std::vector<std::pair<NodeId, NodeId>> batch; // (destination, source)
    std::uint64_t remaining = config.pairs;
    while (remaining > 0) {
        const auto size = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, detail::sim_chunk));
        batch.resize(size);
        for (auto& [dst, src] : batch) {
            src = static_cast<NodeId>(detail::bounded_draw(rng, n));
            auto t = detail::bounded_draw(rng, n - 1);
            dst = static_cast<NodeId>(t >= src ? t + 1 : t);
        }
        remaining -= size;

        std::sort(batch.begin(), batch.end());
        RoutingTable table;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const auto [dst, src] = batch[i];
            if (i == 0 || dst != batch[i - 1].first)
                table = routing_table(g, dst);
            std::uint64_t hops = 0;
            for (NodeId u = src; u != dst; u = table.next_hop[u]) {
                ++r.edge_traversals[table.next_edge[u]];
                ++hops;
            }
            r.total_traversals += hops;
            hop_sq_sum += hops * hops;
        }
    }

    const double samples = static_cast<double>(config.pairs);
    r.mean_hops_estimate = static_cast<double>(r.total_traversals) / samples;
    if (config.pairs > 1) {
        const double mean_sq = static_cast<double>(hop_sq_sum) / samples;
        const double variance =
            std::max(0.0, mean_sq - r.mean_hops_estimate * r.mean_hops_estimate) * samples / (samples - 1.0);
        r.standard_error = std::sqrt(variance / samples);
    }
    const double edges = static_cast<double>(g.edge_count());
    r.f_link_mean_estimate = static_cast<double>(r.total_traversals) / (samples * edges);
    r.f_link_max_estimate =
        static_cast<double>(*std::max_element(r.edge_traversals.begin(), r.edge_traversals.end())) / samples;
    const double d_peer = config.times.s_peer / static_cast<double>(n);
    r.x_max_uniform_estimate = 1.0 / std::max(d_peer, r.f_link_mean_estimate * config.times.s_link);
    return r;
}

// --- convergence -------------------------------------------------------------

struct ConvergenceCriteria {
    double tolerance = 0.02;           // relative
    std::uint64_t min_samples = 100'000; // pairs for means, traversals of the hottest edge for the max
};

struct MetricError {
    std::string metric;
    double estimate = 0;
    double exact = 0;
    double relative_error = 0;
    bool sufficient_samples = false; // judged only when true
    bool within_tolerance = false;

    friend bool operator==(const MetricError&, const MetricError&) = default;
};

struct ConvergenceReport {
    TopologySpec spec;
    std::uint64_t sampled_pairs = 0;
    double tolerance = 0;
    std::vector<MetricError> metrics;

    bool sufficient_samples() const noexcept
    {
        return std::all_of(metrics.begin(), metrics.end(), [](const MetricError& m) { return m.sufficient_samples; });
    }
    /// No metric with enough samples falls outside the tolerance.
    bool ok() const noexcept
    {
        return std::none_of(metrics.begin(), metrics.end(),
                            [](const MetricError& m) { return m.sufficient_samples && !m.within_tolerance; });
    }

    friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

inline ConvergenceReport convergence_report(const SimResult& sim, const ExactMetrics& exact,
                                            const ConvergenceCriteria& criteria = {})
{
    if (!(sim.spec == exact.spec))
        throw usage_error("simulation and exact metrics describe different topologies");

    ConvergenceReport r;
    r.spec = sim.spec;
    r.sampled_pairs = sim.sampled_pairs;
    r.tolerance = criteria.tolerance;

    const bool enough_pairs = sim.sampled_pairs >= criteria.min_samples;
    const std::uint64_t hottest =
        sim.edge_traversals.empty() ? 0 : *std::max_element(sim.edge_traversals.begin(), sim.edge_traversals.end());
    const auto add = [&](std::string name, double estimate, double truth, bool sufficient) {
        MetricError m{std::move(name), estimate, truth, 0.0, sufficient, false};
        m.relative_error = truth != 0.0 ? std::abs(estimate - truth) / std::abs(truth) : std::abs(estimate);
        m.within_tolerance = m.relative_error <= criteria.tolerance;
        r.metrics.push_back(std::move(m));
    };
    add("mean_hops", sim.mean_hops_estimate, exact.mean_hops_excl_self, enough_pairs);
    add("f_link_mean", sim.f_link_mean_estimate, exact.mean_edge_transit_frequency, enough_pairs);
    add("f_link_max", sim.f_link_max_estimate, exact.max_edge_transit_frequency, hottest >= criteria.min_samples);
    add("x_max_uniform", sim.x_max_uniform_estimate, exact.exact_x_max_uniform, enough_pairs);
    return r;
}

/// Runs the simulation, then compares it with the exact metrics.
inline ConvergenceReport convergence_report(const SimConfig& config, const ExactMetrics& exact,
                                            const ConvergenceCriteria& criteria = {},
                                            const OracleLimits& limits = {})
{
    if (!(config.spec == exact.spec))
        throw usage_error("simulation and exact metrics describe different topologies");
    return convergence_report(run(config, limits), exact, criteria);
}

} // namespace hypernet

#endif
