#pragma once

#include <fair_cover/instance_io.hpp>
#include <fair_cover/solve.hpp>

namespace fair_cover
{
    struct KernelResult
    {
        bool no = false;
        Instance kernel;
        std::vector<Vertex> original;       // original[v - 1] is the input id of kernel vertex v
        VertexSet forced;                   // input ids forced into every solution
        VertexSet removed_isolated;         // input ids of deleted isolated vertices
        VertexSet initial_reserve;          // I* of the input instance
        long bound_v = 0;                   // size bounds for the input total budget
        long bound_e = 0;
        int rounds = 0;
    };

    /// k^2 + k(1 + 2^t) and k^2, saturating at LONG_MAX.
    auto kernel_bounds(long k, int t) -> std::pair<long, long>;

    /// Per exact colour set, the min(|V_X|, k_max) smallest isolated vertices.
    auto build_isolated_reserve(const ColouredGraph & graph, const ColourBudget & budget) -> VertexSet;

    auto kernelize(const ColouredGraph & graph, const ColourBudget & budget, const SolveOptions & options = {}) -> KernelResult;

    /// kernelize, then solve_branching on the kernel.
    auto solve_kernel_branch(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options = {}) -> SolveOutcome;
}
