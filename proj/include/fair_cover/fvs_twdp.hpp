#pragma once

#include <fair_cover/partition.hpp>
#include <fair_cover/solve.hpp>
#include <fair_cover/tree_decomposition.hpp>

#include <map>

namespace fair_cover
{
    /// G plus a vertex v0 = n + 1 adjacent to everything and carrying every colour.
    struct AugmentedInstance
    {
        ColouredGraph graph;
        Vertex v0 = 0;
        std::vector<Edge> e0;               // (v, v0) for every original v
        std::vector<int> colour_totals;     // n_i over the original graph
    };

    auto augment_with_v0(const ColouredGraph & graph) -> AugmentedInstance;

    /// Nice decomposition of G' from one of G: v0 joins every bag, then make_nice.
    /// The root forgets v0.
    auto augment_decomposition(const NiceTreeDecomposition & ntd, const AugmentedInstance & augmented) -> NiceTreeDecomposition;

    struct FvsKey
    {
        std::uint64_t mask = 0;     // S over bag positions
        int j1 = 0;                 // vertices of H_x(X, X0)
        int j2 = 0;                 // edges of H_x(X, X0)
        std::uint64_t r = 0;        // colour counts of X, mixed radix with bounds n_i + 1

        auto operator<=> (const FvsKey &) const = default;
    };

    using FvsTable = std::map<FvsKey, PartitionFamily>;

    struct FvsOptions
    {
        bool use_reduce = true;
        bool paranoid = false;      // disables every pruning rule
        bool keep_tables = false;
    };

    struct FvsDpResult
    {
        SolveOutcome outcome;
        AugmentedInstance augmented;
        NiceTreeDecomposition decomposition;    // of the augmented graph
        std::vector<FvsTable> tables;           // when keep_tables
        VertexSet kept;                         // X of the accepting state, with v0
        std::vector<Edge> kept_e0;              // X0 of the accepting state
    };

    auto solve_fvs_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options = {}, const FvsOptions & fvs_options = {}) -> SolveOutcome;

    auto run_fvs_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options, const FvsOptions & fvs_options) -> FvsDpResult;
}
