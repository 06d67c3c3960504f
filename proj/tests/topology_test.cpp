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

#include <hypernet/topology.hpp>

#include "support/brute_force.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace hypernet {
namespace {

TEST(NodeCount, PublishedAnchors)
{
    EXPECT_EQ(node_count(TopologySpec::hypercube(3)), 8u);
    EXPECT_EQ(node_count(TopologySpec::cayley_tree(20, 4)), 144'801u);
    EXPECT_EQ(node_count(TopologySpec::cayley_tree(6, 9)), 2'929'687u);
    EXPECT_EQ(node_count(TopologySpec::cayley_tree(8, 8)), 7'686'401u);
}

TEST(NodeCount, SmallCases)
{
    EXPECT_EQ(node_count(TopologySpec::rooted_tree(4, 0)), 1u);
    EXPECT_EQ(node_count(TopologySpec::hypertorus(3, 4)), 64u);
    EXPECT_EQ(node_count(TopologySpec::hypertorus(1, 2)), 2u);
}

TEST(NodeCount, RootedTreeMatchesSummation)
{
    const auto levels = testing::tree_levels(false, 4, 10);
    ASSERT_EQ(testing::sum_levels(levels), 1'398'101u);
    EXPECT_EQ(node_count(TopologySpec::rooted_tree(4, 10)), 1'398'101u);
}

TEST(NodeCount, OverflowIsReported)
{
    EXPECT_THROW(node_count(TopologySpec::hypercube(64)), overflow_error);
    EXPECT_THROW(node_count(TopologySpec::rooted_tree(2, 64)), overflow_error);
    EXPECT_THROW(node_count(TopologySpec::cayley_tree(1000, 10)), overflow_error);
    EXPECT_THROW(node_count(TopologySpec::hypertorus(64, 2)), overflow_error);
    // 2^64 - 1 still fits
    EXPECT_EQ(node_count(TopologySpec::rooted_tree(2, 63)), ~std::uint64_t{0});
    EXPECT_EQ(node_count(TopologySpec::hypercube(63)), std::uint64_t{1} << 63);
}

TEST(NodeCount, FractionalRingNeedsRealMode)
{
    const auto spec = TopologySpec::hypertorus(10, std::pow(2.0, 2.1));
    EXPECT_THROW(node_count(spec), mode_error);
    EXPECT_NEAR(node_count_real(spec), 2'097'152.0, 1e-6);
}

TEST(Validate, RejectsBadParameters)
{
    EXPECT_THROW(validate(TopologySpec::rooted_tree(1, 3)), invalid_spec_error);
    EXPECT_THROW(validate(TopologySpec::cayley_tree(2, 3)), invalid_spec_error);
    EXPECT_THROW(validate(TopologySpec::hypercube(0)), invalid_spec_error);
    EXPECT_THROW(validate(TopologySpec::hypertorus(3, 1.0)), invalid_spec_error);
    EXPECT_THROW(validate(TopologySpec::hypertorus(0, 4.0)), invalid_spec_error);
    EXPECT_THROW(validate(TopologySpec::hypertorus(2, NAN)), invalid_spec_error);

    TopologySpec mixed = TopologySpec::hypercube(3);
    mixed.k = 4.0;
    EXPECT_THROW(validate(mixed), invalid_spec_error);
    TopologySpec missing{Family::CayleyTree, 4, std::nullopt, std::nullopt, std::nullopt};
    EXPECT_THROW(validate(missing), invalid_spec_error);

    EXPECT_NO_THROW(validate(TopologySpec::binary_tree(0)));
    EXPECT_NO_THROW(validate(TopologySpec::hypertorus(1, 2.0)));
}

TEST(LevelPopulation, Examples)
{
    EXPECT_EQ(level_population(TopologySpec::cayley_tree(4, 3), 0), 1u);
    EXPECT_EQ(level_population(TopologySpec::cayley_tree(4, 3), 2), 12u);
    EXPECT_EQ(level_population(TopologySpec::binary_tree(5), 3), 8u);
}

TEST(LevelPopulation, Errors)
{
    EXPECT_THROW(level_population(TopologySpec::hypercube(3), 0), unsupported_family_error);
    EXPECT_THROW(level_population(TopologySpec::cayley_tree(4, 3), 4), usage_error);
}

TEST(Diameter, Examples)
{
    EXPECT_EQ(diameter(TopologySpec::hypercube(20)), 20.0);
    EXPECT_EQ(diameter(TopologySpec::hypertorus(3, 128)), 96.0);
    EXPECT_EQ(diameter(TopologySpec::rooted_tree(5, 10)), 20.0);
    EXPECT_EQ(diameter(TopologySpec::hypercube(1)), 1.0);
}

TEST(LinkCount, Examples)
{
    EXPECT_EQ(link_count(TopologySpec::hypercube(3)), 12u);
    EXPECT_EQ(link_count(TopologySpec::hypertorus(3, 4)), 192u);
    EXPECT_EQ(link_count(TopologySpec::cayley_tree(4, 2)), 17u); // L = N for trees
    EXPECT_THROW(link_count(TopologySpec::hypertorus(40, 3)), overflow_error);
    EXPECT_DOUBLE_EQ(link_count_real(TopologySpec::hypertorus(10, std::pow(2.0, 2.1))), 10 * 2'097'152.0);
}

TEST(InternalPathLength, Examples)
{
    EXPECT_EQ(internal_path_length(TopologySpec::binary_tree(2)), 10u);
    EXPECT_EQ(internal_path_length(TopologySpec::cayley_tree(3, 1)), 3u);

    const auto levels = testing::tree_levels(true, 4, 12);
    ASSERT_EQ(testing::depth_sum(levels), 12'223'144u);
    EXPECT_EQ(internal_path_length(TopologySpec::cayley_tree(4, 12)), 12'223'144u);
    EXPECT_THROW(internal_path_length(TopologySpec::hypertorus(2, 4)), unsupported_family_error);
}

TEST(AverageHops, Examples)
{
    // 16 x 16 ordered pairs of 4-bit addresses
    ASSERT_EQ(testing::hamming_distance_sum(4), 512u);
    EXPECT_EQ(average_hops(TopologySpec::hypercube(4)), 512.0 / 256.0);

    EXPECT_DOUBLE_EQ(average_hops(TopologySpec::cayley_tree(4, 12)), 12'223'144.0 / 1'062'881.0);
    EXPECT_NEAR(average_hops(TopologySpec::cayley_tree(4, 12)), 11.5, 1e-4);
    EXPECT_EQ(average_hops(TopologySpec::binary_tree(0)), 0.0);
    EXPECT_NEAR(average_hops(TopologySpec::hypertorus(10, 4.2871)), 10.7178, 1e-4);
}

TEST(AverageHops, OddRingUsesExactRingMean)
{
    // ring of 5: distances 0,1,2,2,1 from any node
    EXPECT_DOUBLE_EQ(average_hops(TopologySpec::hypertorus(1, 5)), 6.0 / 5.0);
    ASSERT_EQ(testing::torus_distance_sum(2, 5), 1500u);
    EXPECT_DOUBLE_EQ(average_hops(TopologySpec::hypertorus(2, 5)), 1500.0 / 625.0);
    ASSERT_EQ(testing::torus_distance_sum(2, 4), 512u);
    EXPECT_DOUBLE_EQ(average_hops(TopologySpec::hypertorus(2, 4)), 512.0 / 256.0);
}

TEST(ConnectionsPerPeer, Examples)
{
    EXPECT_EQ(connections_per_peer(TopologySpec::hypercube(20)), 20u);
    EXPECT_EQ(connections_per_peer(TopologySpec::hypertorus(3, 128)), 6u);
    EXPECT_EQ(connections_per_peer(TopologySpec::rooted_tree(4, 10)), 4u);
    EXPECT_EQ(connections_per_peer(TopologySpec::rooted_tree(4, 2)), 4u);
    EXPECT_EQ(connections_per_peer(TopologySpec::cayley_tree(8, 7)), 8u);
}

TEST(StructuralMetrics, TreeMeanIsPathLengthOverCount)
{
    const auto m = structural_metrics(TopologySpec::cayley_tree(5, 6));
    ASSERT_TRUE(m.n_exact && m.internal_path_length);
    EXPECT_EQ(m.avg_hops, static_cast<double>(*m.internal_path_length) / static_cast<double>(*m.n_exact));
    EXPECT_LE(m.avg_hops, m.diameter);
    EXPECT_EQ(m.links, m.n_total);
}

TEST(StructuralMetrics, FractionalTorusHasNoExactCount)
{
    const auto m = structural_metrics(TopologySpec::hypertorus(5, std::pow(2.0, 4.2)));
    EXPECT_FALSE(m.n_exact);
    EXPECT_FALSE(m.internal_path_length);
    EXPECT_NEAR(m.n_total, 2'097'152.0, 1e-6);
}

TEST(Family, NamesRoundTrip)
{
    for (auto f : {Family::RootedTree, Family::CayleyTree, Family::Hypercube, Family::Hypertorus})
        EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_EQ(parse_family("binary"), Family::RootedTree);
    EXPECT_EQ(parse_family("hypertorus"), Family::Hypertorus);
    EXPECT_FALSE(parse_family("mesh"));
}

} // namespace
} // namespace hypernet
