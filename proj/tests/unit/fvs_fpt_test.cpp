#include <doctest.h>

#include <fair_cover/fvs_fpt.hpp>
#include <fair_cover/oracle.hpp>

#include "test_support.hpp"

using namespace fair_cover;

namespace
{
    auto mono(int n, std::vector<Edge> edges) -> ColouredGraph
    {
        return ColouredGraph(n, 1, std::vector<ColourSet>(n, 1), std::move(edges));
    }

    auto is_minimal_fvs(const ColouredGraph & g, const VertexSet & fvs) -> bool
    {
        for (std::size_t i = 0; i < fvs.size(); ++i) {
            VertexSet smaller = fvs;
            smaller.erase(smaller.begin() + static_cast<long>(i));
            if (is_fvs(g, smaller))
                return false;
        }
        return true;
    }
}

TEST_CASE("approximation examples")
{
    auto forest = mono(5, {{1, 2}, {2, 3}, {4, 5}});
    auto none = approx_fvs_2(forest);
    CHECK(none.fvs.empty());
    CHECK(none.certified);

    auto c5 = mono(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
    CHECK(approx_fvs_2(c5).fvs.size() == 1);

    // two triangles sharing vertex 1
    auto bowtie = mono(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {1, 5}, {4, 5}});
    CHECK(approx_fvs_2(bowtie).fvs == VertexSet{1});

    ColouredGraph k4(4, 1, std::vector<ColourSet>(4, 1), {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    auto result = approx_fvs_2(k4);
    CHECK(result.fvs.size() == 2);
    CHECK(is_fvs(k4, result.fvs));

    CHECK(approx_fvs_2(ColouredGraph(0, 1, {}, {})).fvs.empty());
}

TEST_CASE("approximation is a minimal feedback vertex set within twice the optimum")
{
    Rng rng(51);
    for (int i = 0; i < 300; ++i) {
        int n = 1 + static_cast<int>(rng() % 12);
        auto g = random_instance(n, 0.15 + 0.1 * static_cast<double>(rng() % 5), 1, 1, rng());
        auto result = approx_fvs_2(g);
        REQUIRE(result.certified);
        CHECK(is_fvs(g, result.fvs));
        CHECK(is_minimal_fvs(g, result.fvs));
        CHECK(std::is_sorted(result.fvs.begin(), result.fvs.end()));
        CHECK(static_cast<int>(result.fvs.size()) <= 2 * brute_force_min_fvs_size(g));
    }
}

TEST_CASE("tcb examples")
{
    ColouredGraph two(6, 1, std::vector<ColourSet>(6, 1), {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}});
    CHECK_FALSE(solve_fvs_tcb(two, ColourBudget{{1}}).yes);
    SolveOptions witness{true};
    auto outcome = solve_fvs_tcb(two, ColourBudget{{2}}, witness);
    REQUIRE(outcome.yes);
    CHECK(is_fair_solution(Problem::feedback_vertex_set, two, ColourBudget{{2}}, *outcome.witness));

    // K5 needs three deletions, the approximation returns at least three, and 3 > 2k for k = 1
    ColouredGraph k5(5, 1, std::vector<ColourSet>(5, 1),
            {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
    auto report = run_fvs_tcb(k5, ColourBudget{{1}});
    CHECK(report.cutoff);
    CHECK_FALSE(report.outcome.yes);
}

TEST_CASE("tcb agrees with the oracle and never cuts off a YES instance")
{
    Rng rng(52);
    int cutoffs = 0;
    for (int i = 0; i < 400; ++i) {
        int n = 1 + static_cast<int>(rng() % 9);
        int t = 1 + static_cast<int>(rng() % 2);
        auto g = random_instance(n, 0.2 + 0.1 * static_cast<double>(rng() % 5), t, t, rng());
        auto budget = rng() % 2 ? random_budget(g, 4, rng) : planted_budget(g, true, rng);
        SolveOptions witness{true};
        auto report = run_fvs_tcb(g, budget, witness);
        auto oracle = brute_force_fair(g, budget, Problem::feedback_vertex_set);
        REQUIRE(report.outcome.yes == oracle.yes);
        if (report.cutoff) {
            ++cutoffs;
            CHECK(static_cast<long>(report.approx.fvs.size()) > 2 * budget.total());
            CHECK_FALSE(oracle.yes);
        } else
            CHECK(report.outcome.stats.width <= 2 * budget.total() + 2);
        if (report.outcome.yes)
            CHECK(is_fair_solution(Problem::feedback_vertex_set, g, budget, *report.outcome.witness));
    }
    CHECK(cutoffs > 0);
}
