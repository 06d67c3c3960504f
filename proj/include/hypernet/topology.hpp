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

#ifndef HYPERNET_TOPOLOGY_HPP
#define HYPERNET_TOPOLOGY_HPP

#include <hypernet/error.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace hypernet {

enum class Family { RootedTree, CayleyTree, Hypercube, Hypertorus };

constexpr bool is_tree(Family f) noexcept
{
    return f == Family::RootedTree || f == Family::CayleyTree;
}

/// Short, stable family name used by the CLI and in CSV/JSON records.
constexpr std::string_view family_name(Family f) noexcept
{
    switch (f) {
    case Family::RootedTree: return "tree";
    case Family::CayleyTree: return "cayley";
    case Family::Hypercube: return "hypercube";
    case Family::Hypertorus: return "torus";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view name) noexcept
{
    if (name == "tree" || name == "rooted" || name == "rooted_tree" || name == "binary")
        return Family::RootedTree;
    if (name == "cayley" || name == "cayley_tree")
        return Family::CayleyTree;
    if (name == "hypercube" || name == "cube")
        return Family::Hypercube;
    if (name == "torus" || name == "hypertorus")
        return Family::Hypertorus;
    return std::nullopt;
}

/// A topology family plus its size parameters. Fields that do not apply to
/// the family are empty. Use the named constructors, then validate().
struct TopologySpec {
    Family family = Family::Hypercube;
    std::optional<std::uint64_t> v;      // children per node (rooted) or valence (Cayley)
    std::optional<std::uint64_t> radius; // depth from the root or center
    std::optional<unsigned> d;           // dimension
    std::optional<double> k;             // ring size per dimension

    static TopologySpec rooted_tree(std::uint64_t branching, std::uint64_t radius)
    {
        return {Family::RootedTree, branching, radius, std::nullopt, std::nullopt};
    }
    static TopologySpec binary_tree(std::uint64_t radius) { return rooted_tree(2, radius); }
    static TopologySpec cayley_tree(std::uint64_t valence, std::uint64_t radius)
    {
        return {Family::CayleyTree, valence, radius, std::nullopt, std::nullopt};
    }
    static TopologySpec hypercube(unsigned dimension)
    {
        return {Family::Hypercube, std::nullopt, std::nullopt, dimension, std::nullopt};
    }
    static TopologySpec hypertorus(unsigned dimension, double ring)
    {
        return {Family::Hypertorus, std::nullopt, std::nullopt, dimension, ring};
    }

    friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

/// True unless the spec is a torus with a fractional ring size.
inline bool is_integral(const TopologySpec& spec) noexcept
{
    return spec.family != Family::Hypertorus || !spec.k || std::floor(*spec.k) == *spec.k;
}

inline void validate(const TopologySpec& spec)
{
    const auto fail = [&](const std::string& what) {
        throw invalid_spec_error(std::string(family_name(spec.family)) + ": " + what);
    };
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree:
        if (!spec.v || !spec.radius)
            fail("requires v and radius");
        if (spec.d || spec.k)
            fail("d and k do not apply to trees");
        if (spec.family == Family::RootedTree && *spec.v < 2)
            fail("branching factor v must be >= 2");
        if (spec.family == Family::CayleyTree && *spec.v < 3)
            fail("valence v must be >= 3");
        break;
    case Family::Hypercube:
        if (!spec.d)
            fail("requires d");
        if (spec.v || spec.radius || spec.k)
            fail("only d applies to hypercubes");
        if (*spec.d < 1)
            fail("dimension d must be >= 1");
        break;
    case Family::Hypertorus:
        if (!spec.d || !spec.k)
            fail("requires d and k");
        if (spec.v || spec.radius)
            fail("v and radius do not apply to tori");
        if (*spec.d < 1)
            fail("dimension d must be >= 1");
        if (!std::isfinite(*spec.k) || *spec.k < 2.0)
            fail("ring size k must be >= 2");
        break;
    }
}

namespace detail {

using u128 = unsigned __int128;

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("count exceeds 64-bit unsigned range");
    return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("count exceeds 64-bit unsigned range");
    return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

// base^exp in 128 bits, or nullopt past 2^128.
inline std::optional<u128> wide_pow(std::uint64_t base, std::uint64_t exp)
{
    u128 r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<u128>::max() / base)
            return std::nullopt;
        r *= base;
    }
    return r;
}

inline std::uint64_t narrow(std::optional<u128> value)
{
    if (!value || *value > std::numeric_limits<std::uint64_t>::max())
        throw overflow_error("count exceeds 64-bit unsigned range");
    return static_cast<std::uint64_t>(*value);
}

inline std::uint64_t integral_ring(const TopologySpec& spec)
{
    if (!is_integral(spec))
        throw mode_error("ring size k must be integral for exact counts");
    return static_cast<std::uint64_t>(*spec.k);
}

inline void require_tree(const TopologySpec& spec, const char* op)
{
    if (!is_tree(spec.family))
        throw unsupported_family_error(std::string(op) + " is defined for tree families only");
}

} // namespace detail

/// Peer count N as an exact integer. Trees use the geometric-series closed
/// forms, cubes 2^d, tori k^d. Throws mode_error for fractional k.
inline std::uint64_t node_count(const TopologySpec& spec)
{
    validate(spec);
    switch (spec.family) {
    case Family::RootedTree: {
        // (v^(R+1) - 1) / (v - 1); N < 2^64 implies v^(R+1) < 2^128.
        const std::uint64_t v = *spec.v;
        const auto p = detail::wide_pow(v, *spec.radius + 1);
        if (!p)
            throw overflow_error("count exceeds 64-bit unsigned range");
        return detail::narrow((*p - 1) / (v - 1));
    }
    case Family::CayleyTree: {
        // 1 + v ((v-1)^R - 1) / (v - 2)
        const std::uint64_t v = *spec.v;
        const auto p = detail::wide_pow(v - 1, *spec.radius);
        if (!p)
            throw overflow_error("count exceeds 64-bit unsigned range");
        const detail::u128 shell = (*p - 1) / (v - 2);
        if (shell > std::numeric_limits<detail::u128>::max() / v)
            throw overflow_error("count exceeds 64-bit unsigned range");
        return detail::narrow(detail::u128{1} + shell * v);
    }
    case Family::Hypercube:
        if (*spec.d >= 64)
            throw overflow_error("count exceeds 64-bit unsigned range");
        return std::uint64_t{1} << *spec.d;
    case Family::Hypertorus:
        return detail::checked_pow(detail::integral_ring(spec), *spec.d);
    }
    return 0;
}

/// Peer count as a real number; k^d for fractional tori, otherwise the exact count.
inline double node_count_real(const TopologySpec& spec)
{
    validate(spec);
    if (!is_integral(spec))
        return std::pow(*spec.k, static_cast<double>(*spec.d));
    return static_cast<double>(node_count(spec));
}

/// Number of nodes at depth j of a tree (root or center at depth 0).
inline std::uint64_t level_population(const TopologySpec& spec, std::uint64_t level)
{
    validate(spec);
    detail::require_tree(spec, "level_population");
    if (level > *spec.radius)
        throw usage_error("level exceeds tree radius");
    if (spec.family == Family::RootedTree)
        return detail::checked_pow(*spec.v, level);
    if (level == 0)
        return 1;
    return detail::checked_mul(*spec.v, detail::checked_pow(*spec.v - 1, level - 1));
}

/// Network diameter in hops: 2R for trees, d for cubes, d k / 4 for tori.
/// The torus value is the published closed form, not the graph diameter.
inline double diameter(const TopologySpec& spec)
{
    validate(spec);
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree: return 2.0 * static_cast<double>(*spec.radius);
    case Family::Hypercube: return static_cast<double>(*spec.d);
    case Family::Hypertorus: return static_cast<double>(*spec.d) * *spec.k / 4.0;
    }
    return 0.0;
}

/// Link count L. Trees report L = N rather than the N - 1 edges of the graph.
inline std::uint64_t link_count(const TopologySpec& spec)
{
    const std::uint64_t n = node_count(spec);
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree: return n;
    case Family::Hypercube: return detail::checked_mul(*spec.d, n / 2);
    case Family::Hypertorus: return detail::checked_mul(*spec.d, n);
    }
    return 0;
}

/// Link count as a real number. Only the peer count needs to fit in 64
/// bits; d N may exceed it.
inline double link_count_real(const TopologySpec& spec)
{
    const double n = node_count_real(spec);
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree: return n;
    case Family::Hypercube: return static_cast<double>(*spec.d) * n / 2.0;
    case Family::Hypertorus: return static_cast<double>(*spec.d) * n;
    }
    return 0.0;
}

/// Sum over tree nodes of their depth, P = sum_j j * level_population(j).
inline std::uint64_t internal_path_length(const TopologySpec& spec)
{
    validate(spec);
    detail::require_tree(spec, "internal_path_length");
    std::uint64_t total = 0;
    for (std::uint64_t j = 1; j <= *spec.radius; ++j)
        total = detail::checked_add(total, detail::checked_mul(j, level_population(spec, j)));
    return total;
}

/// Mean hop count H. Trees: P / N (mean depth from the root or center).
/// Cubes: d / 2. Tori: d k / 4, or d (k^2 - 1) / (4 k) for odd integral k.
/// Self-pairs are included in every mean.
inline double average_hops(const TopologySpec& spec)
{
    validate(spec);
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree: {
        // P may pass 2^64 while N still fits, so sum it in 128 bits
        detail::u128 p = 0;
        for (std::uint64_t j = 1; j <= *spec.radius; ++j)
            p += detail::u128{j} * level_population(spec, j);
        return static_cast<double>(p) / static_cast<double>(node_count(spec));
    }
    case Family::Hypercube: return static_cast<double>(*spec.d) / 2.0;
    case Family::Hypertorus: {
        const double d = *spec.d;
        const double k = *spec.k;
        if (is_integral(spec) && static_cast<std::uint64_t>(k) % 2 == 1)
            return d * (k * k - 1.0) / (4.0 * k);
        return d * k / 4.0;
    }
    }
    return 0.0;
}

/// Vertex degree as tabulated for ranking; rooted trees report v even though
/// interior nodes carry v + 1 links.
inline std::uint64_t connections_per_peer(const TopologySpec& spec)
{
    validate(spec);
    switch (spec.family) {
    case Family::RootedTree:
    case Family::CayleyTree: return *spec.v;
    case Family::Hypercube: return *spec.d;
    case Family::Hypertorus: return 2ull * *spec.d;
    }
    return 0;
}

struct StructuralMetrics {
    double n_total = 0;
    std::optional<std::uint64_t> n_exact;
    double diameter = 0;
    double links = 0;
    std::optional<std::uint64_t> internal_path_length; // trees only
    double avg_hops = 0;
};

inline StructuralMetrics structural_metrics(const TopologySpec& spec)
{
    validate(spec);
    StructuralMetrics m;
    if (is_integral(spec))
        m.n_exact = node_count(spec);
    m.n_total = node_count_real(spec);
    m.diameter = diameter(spec);
    m.links = link_count_real(spec);
    if (is_tree(spec.family))
        m.internal_path_length = internal_path_length(spec);
    m.avg_hops = average_hops(spec);
    return m;
}

} // namespace hypernet

#endif
