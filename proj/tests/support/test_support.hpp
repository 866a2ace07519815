#pragma once

#include <fair_cover/fvs_twdp.hpp>
#include <fair_cover/instance_io.hpp>
#include <fair_cover/partition.hpp>
#include <fair_cover/random.hpp>
#include <fair_cover/vc_twdp.hpp>

#include <map>
#include <set>
#include <string>

namespace fair_cover::testing
{
    struct SmallGraph
    {
        int n = 0;
        std::vector<Edge> edges;
    };

    /// One representative per isomorphism class, n <= 7.
    auto nonisomorphic_graphs(int n) -> std::vector<SmallGraph>;
    auto connected_graphs(int max_n) -> std::vector<SmallGraph>;
    auto is_connected(const SmallGraph & graph) -> bool;

    auto colour_graph(const SmallGraph & graph, int t, int max_colours, Rng & rng) -> ColouredGraph;

    /// Every budget tuple of length t with total at most max_total.
    auto all_budgets(int t, int max_total) -> std::vector<ColourBudget>;

    /// Every set partition of {0, ..., size - 1} as canonical labels.
    auto all_partitions(int size) -> std::vector<std::vector<Label>>;
    auto joins_to_single_block(std::span<const Label> p, std::span<const Label> q) -> bool;

    /// Exhaustive search for (X, X0) with v0 in X, H(X, X0) a spanning tree of X and
    /// c'_i(X) = n_i - k_i + 1.
    auto v0_tree_search(const ColouredGraph & graph, const ColourBudget & budget) -> bool;

    using ExactFvsTable = std::map<FvsKey, std::set<std::vector<Label>>>;

    /// The FVS DP tables by definition: p is in A_x(S, j1, j2, r) iff some (X, X0) over G'_x
    /// meets the state conditions.  Exponential; n <= 5.
    auto exact_fvs_tables(const AugmentedInstance & augmented, const NiceTreeDecomposition & ntd) -> std::vector<ExactFvsTable>;

    /// The VC DP tables by definition: (S, r) is true at x iff G_x has a vertex cover Y with
    /// Y cap B_x = S and c(Y) = r <= k.
    auto exact_vc_tables(const ColouredGraph & graph, const NiceTreeDecomposition & ntd,
            const ColourBudget & budget) -> std::vector<VcTable>;

    /// Paths/cycles decomposition when max degree <= 2, else one built from the approximate FVS.
    auto vc_decomposition(const ColouredGraph & graph) -> NiceTreeDecomposition;

    struct NamedInstance
    {
        std::string name;
        Instance instance;
    };

    /// All connected graphs on up to 7 vertices, coloured and budgeted from a fixed seed, plus
    /// 500 random instances with n <= 10 and t in {1, 2, 3}; budget totals at most 4.
    auto vc_corpus() -> std::vector<NamedInstance>;

    /// 500 random instances with n <= 6, t <= 2 and budget totals at most 3.
    auto fvs_corpus() -> std::vector<NamedInstance>;

    auto source_dir() -> std::string;
}
