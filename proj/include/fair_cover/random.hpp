#pragma once

#include <fair_cover/graph.hpp>

#include <cstdint>
#include <random>

namespace fair_cover
{
    using Rng = std::mt19937_64;

    /// G(n, p) with a uniformly chosen nonempty colour set of size at most
    /// max_colours_per_vertex on every vertex.  Deterministic for a fixed seed.
    auto random_instance(int n, double edge_probability, int t, int max_colours_per_vertex,
            std::uint64_t seed) -> ColouredGraph;

    /// Budget equal to the colour counts of a random vertex subset whose counts sum to
    /// at most max_total.  Always satisfies c_i(V) >= k_i.
    auto random_budget(const ColouredGraph & graph, long max_total, Rng & rng) -> ColourBudget;

    /// Budget read off a random inclusion-minimal vertex cover, or a random minimal FVS when
    /// `fvs` is true.  The instance is YES by construction.
    auto planted_budget(const ColouredGraph & graph, bool fvs, Rng & rng) -> ColourBudget;

    /// Random graph whose vertices outside a planted set of `fvs_size` vertices induce a
    /// random spanning forest, with extra edges from every planted vertex.
    auto random_planted_fvs_graph(int n, int fvs_size, double planted_edge_probability, int t,
            std::uint64_t seed) -> ColouredGraph;
}
