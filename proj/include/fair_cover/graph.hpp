#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fair_cover
{
    /// Vertex ids are dense and 1-based.
    using Vertex = int;

    /// Bit i-1 set means colour i is present.
    using ColourSet = std::uint64_t;

    using VertexSet = std::vector<Vertex>;
    using Edge = std::pair<Vertex, Vertex>;

    inline constexpr int max_palette = 64;

    class InputError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class InternalError : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };

    inline auto colour_bit(int colour) -> ColourSet
    {
        return ColourSet{1} << (colour - 1);
    }

    inline auto has_colour(ColourSet set, int colour) -> bool
    {
        return (set >> (colour - 1)) & 1U;
    }

    auto colour_list(ColourSet set) -> std::vector<int>;

    /**
     * Simple undirected graph whose vertices carry nonempty colour sets over
     * the palette [t].  Immutable once built; all observers are const.
     */
    class ColouredGraph
    {
        public:
            ColouredGraph() = default;

            /// Validates everything: ids in range, no loops, no parallel edges,
            /// nonempty colour sets within [t].  Throws InputError.
            ColouredGraph(int n, int t, std::vector<ColourSet> colours, std::vector<Edge> edges);

            auto n() const -> int { return static_cast<int>(_colours.size()); }
            auto m() const -> int { return static_cast<int>(_edges.size()); }
            auto t() const -> int { return _t; }

            auto colours(Vertex v) const -> ColourSet { return _colours[v - 1]; }
            auto neighbours(Vertex v) const -> std::span<const Vertex> { return _adjacency[v - 1]; }
            auto degree(Vertex v) const -> int { return static_cast<int>(_adjacency[v - 1].size()); }
            auto adjacent(Vertex u, Vertex v) const -> bool;
            auto max_degree() const -> int;

            /// Edges with u < v, sorted.
            auto edges() const -> std::span<const Edge> { return _edges; }

            auto contains(Vertex v) const -> bool { return v >= 1 && v <= n(); }

            auto operator== (const ColouredGraph &) const -> bool = default;

        private:
            int _t = 1;
            std::vector<ColourSet> _colours;
            std::vector<std::vector<Vertex>> _adjacency;
            std::vector<Edge> _edges;
    };

    /// The budget tuple (k_1, ..., k_t).
    struct ColourBudget
    {
        std::vector<int> k;

        auto size() const -> int { return static_cast<int>(k.size()); }
        auto total() const -> long;
        auto max() const -> int;
        auto operator[] (int colour) const -> int { return k[colour - 1]; }
        auto operator== (const ColourBudget &) const -> bool = default;
    };

    /// Throws InputError unless the budget matches the palette and is non-negative.
    auto check_budget(const ColouredGraph & graph, const ColourBudget & budget) -> void;

    /// c_i(S).  Throws InputError when the colour is outside [t].
    auto colour_count(const ColouredGraph & graph, std::span<const Vertex> set, int colour) -> int;

    /// (c_1(S), ..., c_t(S)).
    auto colour_counts(const ColouredGraph & graph, std::span<const Vertex> set) -> std::vector<int>;

    auto is_t_fair(const ColouredGraph & graph, std::span<const Vertex> set, const ColourBudget & budget) -> bool;

    /// N_i(v).
    auto colour_neighbourhood(const ColouredGraph & graph, Vertex v, int colour) -> VertexSet;

    /// An induced subgraph together with the original id of each of its vertices.
    struct InducedSubgraph
    {
        ColouredGraph graph;
        std::vector<Vertex> original;   // original[v - 1] is the id of v in the parent

        auto lift(std::span<const Vertex> set) const -> VertexSet;
    };

    /// G[keep]; vertices are renumbered in increasing order of their parent id.
    auto induced_subgraph(const ColouredGraph & graph, std::span<const Vertex> keep) -> InducedSubgraph;

    /// G - removed.
    auto remove_vertices(const ColouredGraph & graph, std::span<const Vertex> removed) -> InducedSubgraph;

    /// Composition: ids of `inner` (a subgraph of `outer.graph`) expressed in the ids of outer's parent.
    auto compose(const InducedSubgraph & outer, const InducedSubgraph & inner) -> InducedSubgraph;

    auto identity_view(const ColouredGraph & graph) -> InducedSubgraph;

    auto sorted_unique(VertexSet set) -> VertexSet;
}
