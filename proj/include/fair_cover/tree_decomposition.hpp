#pragma once

#include <fair_cover/graph.hpp>

#include <array>
#include <string>
#include <string_view>

namespace fair_cover
{
    /// Unrooted decomposition; nodes are 0-based and bags are sorted.
    struct TreeDecomposition
    {
        std::vector<VertexSet> bags;
        std::vector<std::pair<int, int>> tree_edges;

        auto width() const -> int;
        auto operator== (const TreeDecomposition &) const -> bool = default;
    };

    enum class NiceKind
    {
        leaf,
        introduce_vertex,
        introduce_edge,
        forget,
        join
    };

    auto to_string(NiceKind kind) -> std::string_view;

    struct NiceNode
    {
        NiceKind kind = NiceKind::leaf;
        VertexSet bag;
        Vertex vertex = 0;                  // introduce_vertex, forget
        Edge edge{0, 0};                    // introduce_edge, u < v
        std::array<int, 2> children{-1, -1};

        auto child_count() const -> int { return (children[0] >= 0) + (children[1] >= 0); }
    };

    /**
     * Nodes are stored in post-order: every child index is smaller than its
     * parent's, and the root is the last node.
     */
    struct NiceTreeDecomposition
    {
        std::vector<NiceNode> nodes;

        auto root() const -> int { return static_cast<int>(nodes.size()) - 1; }
        auto width() const -> int;
        auto size() const -> int { return static_cast<int>(nodes.size()); }
    };

    /// Empty vector means valid.
    auto validate(const TreeDecomposition & td, const ColouredGraph & graph) -> std::vector<std::string>;
    auto validate(const NiceTreeDecomposition & ntd, const ColouredGraph & graph) -> std::vector<std::string>;

    /// Rooted at node 0.  Throws InputError when `td` is not valid for `graph`.
    auto make_nice(const TreeDecomposition & td, const ColouredGraph & graph) -> NiceTreeDecomposition;

    /// Forgets the node kinds; each nice node becomes a bag.
    auto to_plain(const NiceTreeDecomposition & ntd) -> TreeDecomposition;

    /// Width <= 2 for graphs of maximum degree <= 2.
    auto td_paths_cycles(const ColouredGraph & graph) -> NiceTreeDecomposition;

    /// Width <= |F| + 1.  Throws InputError when F is not a feedback vertex set.
    auto td_from_fvs(const ColouredGraph & graph, std::span<const Vertex> fvs) -> NiceTreeDecomposition;

    /// Greedy min-degree elimination.  No quality guarantee.
    auto td_min_degree(const ColouredGraph & graph) -> TreeDecomposition;

    /// PACE 2017 .td text.  parse_td validates against the graph.
    auto parse_td(std::string_view text, const ColouredGraph & graph) -> TreeDecomposition;
    auto emit_td(const TreeDecomposition & td, int n) -> std::string;
    auto read_td_file(const std::string & path, const ColouredGraph & graph) -> TreeDecomposition;
}
