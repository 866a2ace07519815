#pragma once

#include <fair_cover/solve.hpp>

namespace fair_cover
{
    struct OracleConfig
    {
        int max_n = 20;
    };

    auto is_vertex_cover(const ColouredGraph & graph, std::span<const Vertex> set) -> bool;
    auto is_fvs(const ColouredGraph & graph, std::span<const Vertex> set) -> bool;

    /// Exhaustive search.  The witness is the lexicographically smallest fair solution.
    /// Throws InputError when n exceeds config.max_n.
    auto brute_force_fair(const ColouredGraph & graph, const ColourBudget & budget, Problem problem,
            const OracleConfig & config = {}) -> SolveOutcome;

    /// Every fair solution, in lexicographic order.
    auto brute_force_all_fair(const ColouredGraph & graph, const ColourBudget & budget, Problem problem,
            const OracleConfig & config = {}) -> std::vector<VertexSet>;

    auto brute_force_min_fvs_size(const ColouredGraph & graph, const OracleConfig & config = {}) -> int;
}
