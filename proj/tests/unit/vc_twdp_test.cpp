#include <doctest.h>

#include <fair_cover/oracle.hpp>
#include <fair_cover/vc_twdp.hpp>

#include "test_support.hpp"

#include <algorithm>

using namespace fair_cover;

namespace
{
    auto mono(int n, std::vector<Edge> edges) -> ColouredGraph
    {
        return ColouredGraph(n, 1, std::vector<ColourSet>(n, 1), std::move(edges));
    }
}

TEST_CASE("BudgetIndex")
{
    BudgetIndex index({2, 0, 3});
    CHECK(index.size() == 12);
    for (std::uint64_t i = 0; i < index.size(); ++i) {
        auto r = index.decode(i);
        CHECK(index.encode(r) == i);
        for (int c = 0; c < 3; ++c)
            CHECK(index.component(i, c) == r[c]);
    }
    auto zero = index.encode(std::vector<int>{0, 0, 0});
    CHECK(index.add_colours(zero, colour_bit(1) | colour_bit(3)) == index.encode(std::vector<int>{1, 0, 1}));
    CHECK_FALSE(index.add_colours(zero, colour_bit(2)).has_value());
    std::vector<int> base{1, 0, 1};
    auto a = index.encode(std::vector<int>{2, 0, 2});
    auto b = index.encode(std::vector<int>{1, 0, 2});
    CHECK(index.combine(a, b, base) == index.encode(std::vector<int>{2, 0, 3}));
    CHECK_FALSE(index.combine(a, a, base).has_value());
}

TEST_CASE("examples")
{
    ColouredGraph k1(1, 1, {1}, {});
    auto ntd = make_nice(TreeDecomposition{{{1}}, {}}, k1);
    CHECK(solve_vc_tw(k1, ntd, ColourBudget{{1}}).yes);
    CHECK(solve_vc_tw(k1, ntd, ColourBudget{{0}}).yes);
    CHECK_FALSE(solve_vc_tw(k1, ntd, ColourBudget{{2}}).yes);

    auto c4 = mono(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    auto cycle = td_paths_cycles(c4);
    SolveOptions witness{true};
    auto outcome = solve_vc_tw(c4, cycle, ColourBudget{{2}}, witness);
    REQUIRE(outcome.yes);
    CHECK(is_fair_solution(Problem::vertex_cover, c4, ColourBudget{{2}}, *outcome.witness));
    CHECK_FALSE(solve_vc_tw(c4, cycle, ColourBudget{{1}}).yes);
    CHECK(outcome.stats.width == 2);

    TreeDecomposition wrong{{{1, 2}, {3, 4}}, {{0, 1}}};
    CHECK_THROWS_AS(make_nice(wrong, c4), InputError);
}

TEST_CASE("every table holds exactly the states realised by some cover")
{
    Rng rng(21);
    int compared = 0;
    for (int i = 0; i < 120; ++i) {
        int n = 1 + static_cast<int>(rng() % 8);
        int t = 1 + static_cast<int>(rng() % 3);
        auto g = random_instance(n, 0.4, t, std::min(t, 2), rng());
        auto budget = rng() % 2 ? random_budget(g, 5, rng) : planted_budget(g, false, rng);
        auto ntd = rng() % 2 ? testing::vc_decomposition(g) : make_nice(td_min_degree(g), g);
        auto result = run_vc_tw(g, ntd, budget, {}, true);
        auto exact = testing::exact_vc_tables(g, ntd, budget);
        REQUIRE(result.tables.size() == exact.size());
        for (std::size_t x = 0; x < exact.size(); ++x) {
            CHECK(result.tables[x].states == exact[x].states);
            ++compared;
        }

        // cells never exceed 2^{|B_x|} prod (k_i + 1) summed over the nodes
        long product = 1;
        for (int k : budget.k)
            product *= k + 1;
        long bound = 0;
        for (auto & node : ntd.nodes)
            bound += (1L << node.bag.size()) * product;
        CHECK(result.outcome.stats.dp_cells <= bound);
    }
    CHECK(compared > 1000);
}

TEST_CASE("agrees with the oracle")
{
    Rng rng(22);
    for (int i = 0; i < 300; ++i) {
        int n = 1 + static_cast<int>(rng() % 11);
        int t = 1 + static_cast<int>(rng() % 3);
        auto g = random_instance(n, 0.1 + 0.1 * static_cast<double>(rng() % 4), t, std::min(t, 2), rng());
        auto budget = rng() % 2 ? random_budget(g, 6, rng) : planted_budget(g, false, rng);
        SolveOptions witness{true};
        auto outcome = solve_vc_tw(g, testing::vc_decomposition(g), budget, witness);
        auto oracle = brute_force_fair(g, budget, Problem::vertex_cover);
        REQUIRE(outcome.yes == oracle.yes);
        if (outcome.yes)
            CHECK(is_fair_solution(Problem::vertex_cover, g, budget, *outcome.witness));
        else
            CHECK_FALSE(outcome.witness.has_value());
    }
}

TEST_CASE("time limit is honoured")
{
    auto g = random_instance(40, 0.3, 2, 2, 5);
    Rng rng(1);
    auto budget = planted_budget(g, false, rng);
    Deadline expired(std::chrono::milliseconds(0));
    SolveOptions options;
    options.deadline = &expired;
    CHECK_THROWS_AS(solve_vc_tw(g, make_nice(td_min_degree(g), g), budget, options), Timeout);
}
