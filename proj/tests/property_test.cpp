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

// Randomized invariant checks. Generators are plain std::mt19937_64 streams
// with fixed seeds so failures reproduce.

#include <hypernet/hypernet.hpp>

#include "support/brute_force.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace hypernet {
namespace {

constexpr int cases = 300;

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi)
{
    return lo + rng() % (hi - lo + 1);
}

// Random integral spec with fewer than 2^63 peers.
TopologySpec random_integral_spec(std::mt19937_64& rng)
{
    for (;;) {
        TopologySpec spec;
        switch (rng() % 4) {
        case 0: spec = TopologySpec::rooted_tree(pick(rng, 2, 40), pick(rng, 0, 20)); break;
        case 1: spec = TopologySpec::cayley_tree(pick(rng, 3, 40), pick(rng, 0, 20)); break;
        case 2: spec = TopologySpec::hypercube(static_cast<unsigned>(pick(rng, 1, 62))); break;
        default: spec = TopologySpec::hypertorus(static_cast<unsigned>(pick(rng, 1, 8)), static_cast<double>(pick(rng, 2, 200)));
        }
        try {
            if (node_count(spec) < (std::uint64_t{1} << 63))
                return spec;
        } catch (const overflow_error&) {
        }
    }
}

TopologySpec random_small_graph_spec(std::mt19937_64& rng)
{
    switch (rng() % 4) {
    case 0: return TopologySpec::rooted_tree(pick(rng, 2, 5), pick(rng, 0, 4));
    case 1: return TopologySpec::cayley_tree(pick(rng, 3, 6), pick(rng, 0, 3));
    case 2: return TopologySpec::hypercube(static_cast<unsigned>(pick(rng, 1, 7)));
    default: return TopologySpec::hypertorus(static_cast<unsigned>(pick(rng, 1, 3)), static_cast<double>(pick(rng, 2, 7)));
    }
}

// --- closed forms ------------------------------------------------------------

TEST(TopologyProperties, ClosedFormMatchesLevelSummation)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < cases; ++i) {
        const bool cayley = rng() % 2;
        const std::uint64_t v = cayley ? pick(rng, 3, 30) : pick(rng, 2, 30);
        const std::uint64_t radius = pick(rng, 0, 10);
        const auto spec = cayley ? TopologySpec::cayley_tree(v, radius) : TopologySpec::rooted_tree(v, radius);
        std::uint64_t n = 0;
        try {
            n = node_count(spec);
        } catch (const overflow_error&) {
            continue;
        }
        if (n >= (std::uint64_t{1} << 63))
            continue;
        const auto levels = testing::tree_levels(cayley, v, radius);
        EXPECT_EQ(n, testing::sum_levels(levels));
        std::uint64_t sum = 0;
        for (std::uint64_t j = 0; j <= radius; ++j)
            sum += level_population(spec, j);
        EXPECT_EQ(n, sum);
    }
}

TEST(TopologyProperties, BinaryTreeIdentity)
{
    for (std::uint64_t r = 0; r < 63; ++r)
        EXPECT_EQ(node_count(TopologySpec::binary_tree(r)), (std::uint64_t{1} << (r + 1)) - 1);
}

TEST(TopologyProperties, Monotone)
{
    for (std::uint64_t v : {2, 3, 5, 16}) {
        for (std::uint64_t r = 0; r < 12; ++r) {
            EXPECT_LT(node_count(TopologySpec::rooted_tree(v, r)), node_count(TopologySpec::rooted_tree(v, r + 1)));
            if (v >= 3) {
                EXPECT_LT(node_count(TopologySpec::cayley_tree(v, r)), node_count(TopologySpec::cayley_tree(v, r + 1)));
            }
        }
    }
    for (unsigned d = 1; d < 62; ++d)
        EXPECT_LT(node_count(TopologySpec::hypercube(d)), node_count(TopologySpec::hypercube(d + 1)));
    for (unsigned d = 1; d < 6; ++d) {
        for (double k = 2; k < 30; ++k) {
            EXPECT_LT(node_count(TopologySpec::hypertorus(d, k)), node_count(TopologySpec::hypertorus(d, k + 1)));
            EXPECT_LT(node_count(TopologySpec::hypertorus(d, k)), node_count(TopologySpec::hypertorus(d + 1, k)));
        }
    }
}

TEST(TopologyProperties, HopsNeverExceedDiameter)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < cases; ++i) {
        const auto spec = random_integral_spec(rng);
        EXPECT_LE(average_hops(spec), diameter(spec)) << default_label(spec);
        EXPECT_GE(average_hops(spec), 0.0);
    }
    for (int i = 0; i < cases; ++i) {
        const auto spec = TopologySpec::hypertorus(static_cast<unsigned>(pick(rng, 1, 20)), 2.0 + (rng() % 100000) / 1000.0);
        EXPECT_LE(average_hops(spec), diameter(spec));
    }
}

TEST(TopologyProperties, TwoRingTorusCountsMatchCube)
{
    for (unsigned d = 1; d < 64; ++d)
        EXPECT_EQ(node_count(TopologySpec::hypertorus(d, 2)), node_count(TopologySpec::hypercube(d)));
}

// --- demand model --------------------------------------------------------------

TEST(DemandProperties, SaturationIdentity)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> time(0.01, 100.0);
    for (int i = 0; i < cases; ++i) {
        const auto spec = random_integral_spec(rng);
        const ServiceTimes times{time(rng), time(rng)};
        const auto p = demand_profile(spec, times);
        const double product = p.x_max * std::max(p.d_peer, p.d_link);
        EXPECT_LE(std::abs(product - 1.0), std::numeric_limits<double>::epsilon()) << default_label(spec);
        EXPECT_GT(p.x_relative, 0.0);
        EXPECT_LE(p.x_relative, (1.0 / times.s_peer) * (1.0 + 1e-12)); // x_max <= N / s_peer
        EXPECT_EQ(p.f_link, average_hops(spec) / link_count_real(spec));
        EXPECT_EQ(p.d_link, p.f_link * times.s_link);
    }
}

TEST(DemandProperties, UnitTimesRelativeBandwidthAtMostOne)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < cases; ++i) {
        const auto p = demand_profile(random_integral_spec(rng));
        EXPECT_GT(p.x_relative, 0.0);
        EXPECT_LE(p.x_relative, 1.0);
    }
}

TEST(DemandProperties, HypercubeLinearity)
{
    for (unsigned d = 1; d <= 30; ++d) {
        const auto p = demand_profile(TopologySpec::hypercube(d));
        EXPECT_EQ(p.x_relative, 1.0) << d;
        EXPECT_EQ(p.bottleneck, Bottleneck::Balanced);
    }
}

TEST(DemandProperties, CommonScalingKeepsRanking)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> factor(0.001, 1000.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RankingEntry> entries;
        for (int i = 0; i < 12; ++i)
            entries.push_back({"#" + std::to_string(i), random_integral_spec(rng), std::nullopt, ""});
        const ServiceTimes base{factor(rng), factor(rng)};
        const double c = factor(rng);
        const ServiceTimes scaled{base.s_link * c, base.s_peer * c};
        const auto a = rank(entries, base);
        const auto b = rank(entries, scaled);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].label, b[i].label);
            const double xa = demand_profile(a[i].spec, base).x_max;
            const double xb = demand_profile(a[i].spec, scaled).x_max;
            EXPECT_NEAR(xb, xa / c, 1e-12 * xa / c);
        }
    }
}

TEST(DemandProperties, Dominance)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < cases; ++i) {
        const auto spec = random_integral_spec(rng);
        const auto p = demand_profile(spec);
        const double n = node_count_real(spec);
        EXPECT_EQ(p.d_link >= p.d_peer, average_hops(spec) >= link_count_real(spec) / n) << default_label(spec);
        // a star has H = v / (v + 1) < 1; from radius 2 on H >= 1 and trees are link-bound
        if (is_tree(spec.family) && *spec.radius >= 2) {
            EXPECT_NE(p.bottleneck, Bottleneck::Peer) << default_label(spec);
        }
    }
}

// --- graph oracle ------------------------------------------------------------------

std::size_t expected_degree(const TopologySpec& spec, NodeId u, std::uint32_t depth)
{
    switch (spec.family) {
    case Family::RootedTree:
        return (depth < *spec.radius ? *spec.v : 0) + (u == 0 ? 0 : 1);
    case Family::CayleyTree:
        if (u == 0)
            return *spec.radius > 0 ? *spec.v : 0;
        return depth < *spec.radius ? *spec.v : 1;
    case Family::Hypercube: return *spec.d;
    case Family::Hypertorus: return *spec.k == 2.0 ? *spec.d : 2 * *spec.d;
    }
    return 0;
}

TEST(GraphProperties, DegreeHandshakeSimplicity)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto spec = random_small_graph_spec(rng);
        const auto g = build_graph(spec);
        const auto depth = bfs_distances(g, 0);
        std::uint64_t degree_sum = 0;
        for (NodeId u = 0; u < g.node_count(); ++u) {
            ASSERT_NE(depth[u], unreachable); // connected
            const auto nb = g.neighbors(u);
            EXPECT_EQ(nb.size(), expected_degree(spec, u, depth[u])) << default_label(spec) << " node " << u;
            EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
            EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
            for (const NodeId w : nb) {
                EXPECT_NE(w, u);
                const auto back = g.neighbors(w);
                EXPECT_TRUE(std::binary_search(back.begin(), back.end(), u));
            }
            degree_sum += nb.size();
        }
        EXPECT_EQ(degree_sum, 2 * g.edge_count());
        EXPECT_TRUE(std::is_sorted(g.edges().begin(), g.edges().end()));
    }
}

TEST(GraphProperties, HammingDistances)
{
    for (unsigned d = 1; d <= 8; ++d) {
        const auto g = build_graph(TopologySpec::hypercube(d));
        for (NodeId s = 0; s < g.node_count(); ++s) {
            const auto dist = bfs_distances(g, s);
            for (NodeId t = 0; t < g.node_count(); ++t)
                ASSERT_EQ(dist[t], static_cast<std::uint32_t>(std::popcount(s ^ t)));
        }
    }
}

TEST(GraphProperties, TwoRingTorusIsCube)
{
    for (unsigned d = 1; d <= 10; ++d) {
        const auto torus = build_graph(TopologySpec::hypertorus(d, 2));
        const auto cube = build_graph(TopologySpec::hypercube(d));
        ASSERT_EQ(torus.node_count(), cube.node_count());
        EXPECT_EQ(torus.edges(), cube.edges());
        for (NodeId u = 0; u < cube.node_count(); ++u)
            ASSERT_TRUE(std::ranges::equal(torus.neighbors(u), cube.neighbors(u))) << d;
    }
}

TEST(GraphProperties, RoutingConsistency)
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 60; ++i) {
        const auto spec = random_small_graph_spec(rng);
        const auto m = exact_metrics(build_graph(spec));
        // every route is a shortest path, so traversals and distances agree
        EXPECT_EQ(m.total_traversals, m.distance_sum) << default_label(spec);
        EXPECT_LE(m.mean_edge_transit_frequency, m.max_edge_transit_frequency);
        EXPECT_LE(m.exact_x_max_hotspot, m.exact_x_max_uniform);
        if (m.edge_count > 0) {
            EXPECT_DOUBLE_EQ(m.mean_edge_transit_frequency, m.mean_hops_excl_self / static_cast<double>(m.edge_count));
        }
        const bool transitive = spec.family == Family::Hypercube || spec.family == Family::Hypertorus;
        if (transitive) {
            const auto [lo, hi] = std::minmax_element(m.edge_traversals.begin(), m.edge_traversals.end());
            EXPECT_EQ(*lo, *hi) << default_label(spec);
            EXPECT_DOUBLE_EQ(m.max_edge_transit_frequency, m.mean_edge_transit_frequency) << default_label(spec);
        }
        if (is_tree(spec.family) && *spec.radius >= 2) {
            EXPECT_GT(m.max_edge_transit_frequency, m.mean_edge_transit_frequency) << default_label(spec);
        }
        EXPECT_DOUBLE_EQ(m.mean_hops_excl_self,
                         m.mean_hops_incl_self * static_cast<double>(m.node_count) / static_cast<double>(m.node_count - 1 + (m.node_count == 1)));
    }
}

// --- simulator ------------------------------------------------------------------------

TEST(SimProperties, TraversalsEqualPathLengths)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
        const auto spec = random_small_graph_spec(rng);
        if (node_count(spec) < 2)
            continue;
        const auto r = run({spec, pick(rng, 1, 5000), rng(), {}});
        std::uint64_t sum = 0;
        for (auto c : r.edge_traversals)
            sum += c;
        EXPECT_EQ(sum, r.total_traversals);
        EXPECT_DOUBLE_EQ(r.mean_hops_estimate * static_cast<double>(r.sampled_pairs), static_cast<double>(r.total_traversals));
        EXPECT_GE(r.f_link_max_estimate, r.f_link_mean_estimate);
    }
}

} // namespace
} // namespace hypernet
