#include <fair_cover/graph.hpp>

#include <algorithm>
#include <bit>
#include <numeric>

namespace fair_cover
{
    auto colour_list(ColourSet set) -> std::vector<int>
    {
        std::vector<int> result;
        for (int c = 1; set != 0; ++c, set >>= 1)
            if (set & 1U)
                result.push_back(c);
        return result;
    }

    ColouredGraph::ColouredGraph(int n, int t, std::vector<ColourSet> colours, std::vector<Edge> edges) :
        _t(t),
        _colours(std::move(colours)),
        _adjacency(n)
    {
        if (n < 0)
            throw InputError("negative vertex count");
        if (t < 1 || t > max_palette)
            throw InputError("palette size " + std::to_string(t) + " outside [1, " + std::to_string(max_palette) + "]");
        if (static_cast<int>(_colours.size()) != n)
            throw InputError("colour table has " + std::to_string(_colours.size()) + " entries, expected " + std::to_string(n));

        ColourSet palette = t == 64 ? ~ColourSet{0} : (ColourSet{1} << t) - 1;
        for (int v = 1; v <= n; ++v) {
            if (_colours[v - 1] == 0)
                throw InputError("vertex " + std::to_string(v) + " has no colour");
            if (_colours[v - 1] & ~palette)
                throw InputError("vertex " + std::to_string(v) + " has a colour outside [1, " + std::to_string(t) + "]");
        }

        for (auto & [u, v] : edges) {
            if (u < 1 || u > n || v < 1 || v > n)
                throw InputError("edge " + std::to_string(u) + " " + std::to_string(v) + " references an unknown vertex");
            if (u == v)
                throw InputError("self-loop at vertex " + std::to_string(u));
            if (u > v)
                std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
            throw InputError("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));

        _edges = std::move(edges);
        for (auto [u, v] : _edges) {
            _adjacency[u - 1].push_back(v);
            _adjacency[v - 1].push_back(u);
        }
        for (auto & row : _adjacency)
            std::sort(row.begin(), row.end());
    }

    auto ColouredGraph::adjacent(Vertex u, Vertex v) const -> bool
    {
        auto row = neighbours(u);
        return std::binary_search(row.begin(), row.end(), v);
    }

    auto ColouredGraph::max_degree() const -> int
    {
        int result = 0;
        for (auto & row : _adjacency)
            result = std::max(result, static_cast<int>(row.size()));
        return result;
    }

    auto ColourBudget::total() const -> long
    {
        return std::accumulate(k.begin(), k.end(), 0L);
    }

    auto ColourBudget::max() const -> int
    {
        return k.empty() ? 0 : *std::max_element(k.begin(), k.end());
    }

    auto check_budget(const ColouredGraph & graph, const ColourBudget & budget) -> void
    {
        if (budget.size() != graph.t())
            throw InputError("budget has " + std::to_string(budget.size()) + " entries but the palette has " + std::to_string(graph.t()) + " colours");
        for (int k : budget.k)
            if (k < 0)
                throw InputError("negative budget entry");
    }

    auto colour_count(const ColouredGraph & graph, std::span<const Vertex> set, int colour) -> int
    {
        if (colour < 1 || colour > graph.t())
            throw InputError("colour " + std::to_string(colour) + " outside [1, " + std::to_string(graph.t()) + "]");
        int count = 0;
        for (Vertex v : set)
            count += has_colour(graph.colours(v), colour);
        return count;
    }

    auto colour_counts(const ColouredGraph & graph, std::span<const Vertex> set) -> std::vector<int>
    {
        std::vector<int> counts(graph.t(), 0);
        for (Vertex v : set)
            for (ColourSet c = graph.colours(v); c != 0; c &= c - 1)
                ++counts[std::countr_zero(c)];
        return counts;
    }

    auto is_t_fair(const ColouredGraph & graph, std::span<const Vertex> set, const ColourBudget & budget) -> bool
    {
        return budget.size() == graph.t() && colour_counts(graph, set) == budget.k;
    }

    auto colour_neighbourhood(const ColouredGraph & graph, Vertex v, int colour) -> VertexSet
    {
        VertexSet result;
        for (Vertex w : graph.neighbours(v))
            if (has_colour(graph.colours(w), colour))
                result.push_back(w);
        return result;
    }

    auto InducedSubgraph::lift(std::span<const Vertex> set) const -> VertexSet
    {
        VertexSet result;
        result.reserve(set.size());
        for (Vertex v : set)
            result.push_back(original[v - 1]);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto induced_subgraph(const ColouredGraph & graph, std::span<const Vertex> keep) -> InducedSubgraph
    {
        std::vector<int> new_id(graph.n() + 1, 0);
        VertexSet kept(keep.begin(), keep.end());
        kept = sorted_unique(std::move(kept));

        InducedSubgraph result;
        std::vector<ColourSet> colours;
        for (Vertex v : kept) {
            new_id[v] = static_cast<int>(result.original.size()) + 1;
            result.original.push_back(v);
            colours.push_back(graph.colours(v));
        }

        std::vector<Edge> edges;
        for (auto [u, v] : graph.edges())
            if (new_id[u] && new_id[v])
                edges.emplace_back(new_id[u], new_id[v]);

        result.graph = ColouredGraph(static_cast<int>(kept.size()), graph.t(), std::move(colours), std::move(edges));
        return result;
    }

    auto remove_vertices(const ColouredGraph & graph, std::span<const Vertex> removed) -> InducedSubgraph
    {
        std::vector<bool> gone(graph.n() + 1, false);
        for (Vertex v : removed)
            gone[v] = true;
        VertexSet keep;
        for (Vertex v = 1; v <= graph.n(); ++v)
            if (! gone[v])
                keep.push_back(v);
        return induced_subgraph(graph, keep);
    }

    auto compose(const InducedSubgraph & outer, const InducedSubgraph & inner) -> InducedSubgraph
    {
        InducedSubgraph result{inner.graph, {}};
        result.original.reserve(inner.original.size());
        for (Vertex v : inner.original)
            result.original.push_back(outer.original[v - 1]);
        return result;
    }

    auto identity_view(const ColouredGraph & graph) -> InducedSubgraph
    {
        InducedSubgraph result{graph, std::vector<Vertex>(graph.n())};
        std::iota(result.original.begin(), result.original.end(), 1);
        return result;
    }

    auto sorted_unique(VertexSet set) -> VertexSet
    {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        return set;
    }
}
