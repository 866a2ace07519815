#pragma once

#include <fair_cover/solve.hpp>
#include <fair_cover/tree_decomposition.hpp>

namespace fair_cover
{
    /// Mixed-radix index over budget vectors r with 0 <= r_i <= bound_i.
    class BudgetIndex
    {
        public:
            explicit BudgetIndex(std::vector<int> bounds);

            auto size() const -> std::uint64_t { return _size; }
            auto encode(std::span<const int> r) const -> std::uint64_t;
            auto decode(std::uint64_t index) const -> std::vector<int>;
            auto component(std::uint64_t index, int i) const -> int
            {
                return static_cast<int>(index / _stride[i] % (_bounds[i] + 1));
            }

            /// index + c(v) if every affected coordinate stays within bound.
            auto add_colours(std::uint64_t index, ColourSet colours) const -> std::optional<std::uint64_t>;

            /// a + b - base when every coordinate stays within bound.
            auto combine(std::uint64_t a, std::uint64_t b, std::span<const int> base) const -> std::optional<std::uint64_t>;

            auto bounds() const -> const std::vector<int> & { return _bounds; }

        private:
            std::vector<int> _bounds;
            std::vector<std::uint64_t> _stride;
            std::uint64_t _size = 1;
    };

    /// True states (S, r) of one node; S is a bitmask over bag positions.
    struct VcTable
    {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> states;   // sorted

        auto contains(std::uint64_t s, std::uint64_t r) const -> bool;
    };

    struct VcDpResult
    {
        SolveOutcome outcome;
        std::vector<VcTable> tables;      // kept only when requested
    };

    auto solve_vc_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options = {}) -> SolveOutcome;

    /// Same DP, returning every node table for inspection.
    auto run_vc_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options, bool keep_tables) -> VcDpResult;
}
