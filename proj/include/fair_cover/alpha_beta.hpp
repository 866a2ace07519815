#pragma once

#include <fair_cover/solve.hpp>

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace fair_cover
{
    /// Non-negative rational p/q in lowest terms.
    struct Rational
    {
        long num = 0;
        long den = 1;

        /// "3", "1/2" or "0.25".  Throws InputError.
        static auto parse(std::string_view text) -> Rational;

        auto ceil_times(long k) const -> long;
        auto floor_times(long k) const -> long;
        auto to_string() const -> std::string;

        auto operator== (const Rational &) const -> bool = default;
    };

    auto operator<=> (const Rational & a, const Rational & b) -> std::strong_ordering;

    struct RelaxationSpec
    {
        Rational alpha{1, 1};
        Rational beta{1, 1};
        ColourBudget base;

        /// Throws InputError unless alpha <= 1 <= beta and the budgets are non-negative.
        auto check() const -> void;
    };

    /// Every integer tuple with ceil(alpha k_i) <= k'_i <= floor(beta k_i) and sum at most k,
    /// in lexicographic order.
    auto enumerate_tuples(const RelaxationSpec & spec) -> std::vector<ColourBudget>;

    /// Product of the per-colour range sizes, ignoring the sum cap.
    auto tuple_box_size(const RelaxationSpec & spec) -> long;

    using ExactSolver = std::function<SolveOutcome(const ColourBudget &)>;

    struct RelaxedOutcome
    {
        SolveOutcome outcome;
        std::optional<ColourBudget> tuple;      // the first tuple answering YES
        long tuples = 0;                        // enumerated
        long solved = 0;                        // handed to the exact solver
        bool multi_colour = false;              // some vertex carries two or more colours
    };

    /// Tries the tuples in order; the first YES wins.  With threads > 1 tuples are solved
    /// concurrently, and the answer is still the first YES in enumeration order.
    auto solve_ab_fair(const ColouredGraph & graph, const RelaxationSpec & spec, const ExactSolver & exact,
            int threads = 1) -> RelaxedOutcome;

    /// Default exact solvers: kernel + branching for VC, the approximation-based FVS route.
    auto solve_ab_fair(const ColouredGraph & graph, const RelaxationSpec & spec, Problem problem,
            const SolveOptions & options = {}, int threads = 1) -> RelaxedOutcome;

    /// Direct check over all subsets: |S| <= k and ceil(alpha k_i) <= c_i(S) <= floor(beta k_i).
    auto brute_force_ab_fair(const ColouredGraph & graph, const RelaxationSpec & spec, Problem problem,
            int max_n = 20) -> SolveOutcome;
}
