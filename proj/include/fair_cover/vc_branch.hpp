#pragma once

#include <fair_cover/solve.hpp>

namespace fair_cover
{
    /// True when some colour has fewer vertices than its budget.
    auto check_colour_deficit(const ColouredGraph & graph, const ColourBudget & budget) -> bool;

    /// True when some edge has both endpoints carrying a zero-budget colour.
    auto check_zero_budget_edge(const ColouredGraph & graph, const ColourBudget & budget) -> bool;

    enum class ReductionStatus
    {
        unchanged,
        reduced,
        no
    };

    struct SaturationResult
    {
        ReductionStatus status = ReductionStatus::unchanged;
        int colour = 0;                 // the saturated colour when reduced
        VertexSet forced;               // ids in the input graph
        InducedSubgraph reduced;        // input graph minus `forced`
        ColourBudget budget;
    };

    /// If c_i(V) = k_i > 0 for some colour (smallest such i), every vertex of
    /// colour i goes into the solution.
    auto reduce_saturated_colour(const ColouredGraph & graph, const ColourBudget & budget) -> SaturationResult;

    /// Maximum degree at most 2; solved through a width-2 decomposition.
    auto base_case_paths_cycles(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options = {}) -> SolveOutcome;

    auto solve_branching(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options = {}) -> SolveOutcome;
}
