#pragma once

#include <fair_cover/fvs_twdp.hpp>

namespace fair_cover
{
    struct ApproxFvsResult
    {
        VertexSet fvs;              // sorted, inclusion-minimal
        bool certified = false;     // is_fvs was checked on the output
    };

    /// Local-ratio 2-approximation for unweighted feedback vertex set.
    auto approx_fvs_2(const ColouredGraph & graph) -> ApproxFvsResult;

    struct TcbReport
    {
        SolveOutcome outcome;
        ApproxFvsResult approx;
        bool cutoff = false;        // |F_apx| > 2k answered NO without a DP
    };

    /// Approximate FVS, decomposition from it, then the treewidth DP.
    auto run_fvs_tcb(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options = {}, const FvsOptions & fvs_options = {}) -> TcbReport;

    auto solve_fvs_tcb(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options = {}) -> SolveOutcome;
}
