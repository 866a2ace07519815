#pragma once

#include <fair_cover/graph.hpp>

#include <chrono>
#include <optional>
#include <string_view>

namespace fair_cover
{
    enum class Problem
    {
        vertex_cover,
        feedback_vertex_set
    };

    auto to_string(Problem problem) -> std::string_view;

    struct SolveStats
    {
        long branch_nodes = 0;       // leaves of the branching search tree
        long branch_calls = 0;       // every node of the branching search tree
        long dp_cells = 0;           // table entries materialized by a treewidth DP
        long dp_nodes = 0;
        long max_family_size = 0;
        long reduce_calls = 0;
        int width = -1;

        auto merge(const SolveStats & other) -> void;
    };

    struct SolveOutcome
    {
        bool yes = false;
        std::optional<VertexSet> witness;
        SolveStats stats;
    };

    class Timeout : public std::runtime_error
    {
        public:
            Timeout() : std::runtime_error("time limit exceeded") { }
    };

    /// Cooperative time limit.  Solvers call check() in their inner loops.
    class Deadline
    {
        public:
            Deadline() = default;
            explicit Deadline(std::chrono::milliseconds budget);

            auto expired() const -> bool;
            auto check() const -> void;

        private:
            std::optional<std::chrono::steady_clock::time_point> _until;
    };

    struct SolveOptions
    {
        bool want_witness = false;
        const Deadline * deadline = nullptr;

        auto check_time() const -> void
        {
            if (deadline)
                deadline->check();
        }
    };

    /// True iff `set` is a solution of `problem` on `graph` and is exactly fair for `budget`.
    auto is_fair_solution(Problem problem, const ColouredGraph & graph, const ColourBudget & budget,
            std::span<const Vertex> set) -> bool;
}
