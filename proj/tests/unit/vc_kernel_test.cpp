#include <doctest.h>

#include <fair_cover/oracle.hpp>
#include <fair_cover/vc_branch.hpp>
#include <fair_cover/vc_kernel.hpp>

#include "test_support.hpp"

#include <climits>
#include <map>

using namespace fair_cover;

TEST_CASE("kernel_bounds")
{
    CHECK(kernel_bounds(0, 3) == std::pair<long, long>{0, 0});
    CHECK(kernel_bounds(3, 2) == std::pair<long, long>{9 + 3 * 5, 9});
    CHECK(kernel_bounds(10, 64).first == LONG_MAX);
}

TEST_CASE("build_isolated_reserve")
{
    ColouredGraph none(3, 1, {1, 1, 1}, {{1, 2}, {2, 3}});
    CHECK(build_isolated_reserve(none, ColourBudget{{2}}).empty());

    ColouredGraph five(5, 1, std::vector<ColourSet>(5, 1), {});
    CHECK(build_isolated_reserve(five, ColourBudget{{2}}) == VertexSet{1, 2});

    // groups by exact colour set, capped at the largest budget
    ColouredGraph mixed(6, 2, {1, 3, 1, 3, 1, 2}, {});
    CHECK(build_isolated_reserve(mixed, ColourBudget{{2, 1}}) == VertexSet{1, 2, 3, 4, 6});

    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        auto g = random_instance(12, 0.08, 3, 2, rng());
        auto budget = random_budget(g, 4, rng);
        std::map<ColourSet, VertexSet> groups;
        for (Vertex v = 1; v <= g.n(); ++v)
            if (g.degree(v) == 0)
                groups[g.colours(v)].push_back(v);
        VertexSet expected;
        for (auto & [set, members] : groups)
            for (int j = 0; j < std::min<int>(budget.max(), static_cast<int>(members.size())); ++j)
                expected.push_back(members[j]);
        std::sort(expected.begin(), expected.end());
        CHECK(build_isolated_reserve(g, budget) == expected);
    }
}

TEST_CASE("kernelize examples")
{
    ColouredGraph empty(0, 1, {}, {});
    auto kernel = kernelize(empty, ColourBudget{{0}});
    CHECK_FALSE(kernel.no);
    CHECK(kernel.kernel.graph.n() == 0);

    // centre has three colour-1 neighbours against a budget of 1
    ColouredGraph star(4, 1, std::vector<ColourSet>(4, 1), {{1, 2}, {1, 3}, {1, 4}});
    auto result = kernelize(star, ColourBudget{{1}});
    REQUIRE_FALSE(result.no);
    CHECK(result.forced == VertexSet{1});
    CHECK(result.kernel.budget.k == std::vector<int>{0});
    CHECK(result.kernel.graph.m() == 0);
    CHECK(result.kernel.graph.n() == 0);
    CHECK(brute_force_fair(star, ColourBudget{{1}}, Problem::vertex_cover).yes);

    // leaves isolated by the forced centre are still available for the budget
    ColouredGraph late(4, 2, {colour_bit(1), colour_bit(1), colour_bit(1), colour_bit(2)}, {{1, 2}, {1, 3}, {1, 4}});
    auto outcome = solve_kernel_branch(late, ColourBudget{{1, 1}}, SolveOptions{true});
    REQUIRE(outcome.yes);
    CHECK(*outcome.witness == VertexSet{1, 4});

    ColouredGraph blocked(4, 2, {colour_bit(1) | colour_bit(2), colour_bit(1), colour_bit(1), colour_bit(1)},
            {{1, 2}, {1, 3}, {1, 4}});
    CHECK(kernelize(blocked, ColourBudget{{1, 0}}).no);
}

TEST_CASE("kernelize preserves answers and respects the size bounds")
{
    Rng rng(7);
    for (int i = 0; i < 400; ++i) {
        int n = 1 + static_cast<int>(rng() % 10);
        int t = 1 + static_cast<int>(rng() % 3);
        auto g = random_instance(n, 0.1 + 0.1 * static_cast<double>(rng() % 5), t, t, rng());
        auto budget = rng() % 2 ? random_budget(g, 6, rng) : planted_budget(g, false, rng);
        auto oracle = brute_force_fair(g, budget, Problem::vertex_cover);
        auto kernel = kernelize(g, budget);
        if (kernel.no) {
            CHECK_FALSE(oracle.yes);
            continue;
        }
        auto [bound_v, bound_e] = kernel_bounds(budget.total(), t);
        CHECK(kernel.kernel.graph.n() <= bound_v);
        CHECK(kernel.kernel.graph.m() <= bound_e);
        auto inner = brute_force_fair(kernel.kernel.graph, kernel.kernel.budget, Problem::vertex_cover);
        CHECK(inner.yes == oracle.yes);
        CHECK(kernel.rounds <= n + 1);

        auto pipeline = solve_kernel_branch(g, budget, SolveOptions{true});
        CHECK(pipeline.yes == oracle.yes);
        if (pipeline.yes)
            CHECK(is_fair_solution(Problem::vertex_cover, g, budget, *pipeline.witness));

        // a second pass changes nothing unless the kernel has a colour deficit
        if (! check_colour_deficit(kernel.kernel.graph, kernel.kernel.budget)) {
            auto again = kernelize(kernel.kernel.graph, kernel.kernel.budget);
            REQUIRE_FALSE(again.no);
            CHECK(again.kernel == kernel.kernel);
            CHECK(again.forced.empty());
            CHECK(again.removed_isolated.empty());
        }
    }
}
