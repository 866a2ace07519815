#include <fair_cover/solve.hpp>
#include <fair_cover/oracle.hpp>

#include <algorithm>

namespace fair_cover
{
    auto to_string(Problem problem) -> std::string_view
    {
        return problem == Problem::vertex_cover ? "vc" : "fvs";
    }

    auto SolveStats::merge(const SolveStats & other) -> void
    {
        branch_nodes += other.branch_nodes;
        branch_calls += other.branch_calls;
        dp_cells += other.dp_cells;
        dp_nodes += other.dp_nodes;
        reduce_calls += other.reduce_calls;
        max_family_size = std::max(max_family_size, other.max_family_size);
        width = std::max(width, other.width);
    }

    Deadline::Deadline(std::chrono::milliseconds budget) :
        _until(std::chrono::steady_clock::now() + budget)
    {
    }

    auto Deadline::expired() const -> bool
    {
        return _until && std::chrono::steady_clock::now() >= *_until;
    }

    auto Deadline::check() const -> void
    {
        if (expired())
            throw Timeout();
    }

    auto is_fair_solution(Problem problem, const ColouredGraph & graph, const ColourBudget & budget,
            std::span<const Vertex> set) -> bool
    {
        VertexSet sorted(set.begin(), set.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return false;
        for (Vertex v : sorted)
            if (! graph.contains(v))
                return false;
        if (! is_t_fair(graph, sorted, budget))
            return false;
        return problem == Problem::vertex_cover ? is_vertex_cover(graph, sorted) : is_fvs(graph, sorted);
    }
}
