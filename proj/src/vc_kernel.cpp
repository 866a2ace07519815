#include <fair_cover/vc_kernel.hpp>
#include <fair_cover/vc_branch.hpp>

#include <climits>
#include <map>

namespace fair_cover
{
    namespace
    {
        auto saturating_add(long a, long b) -> long
        {
            return a > LONG_MAX - b ? LONG_MAX : a + b;
        }

        auto saturating_mul(long a, long b) -> long
        {
            return a != 0 && b > LONG_MAX / a ? LONG_MAX : a * b;
        }
    }

    auto kernel_bounds(long k, int t) -> std::pair<long, long>
    {
        long power = t >= 62 ? LONG_MAX : (1L << t);
        long square = saturating_mul(k, k);
        return {saturating_add(square, saturating_mul(k, saturating_add(1, power))), square};
    }

    auto build_isolated_reserve(const ColouredGraph & graph, const ColourBudget & budget) -> VertexSet
    {
        int k_max = budget.max();
        std::map<ColourSet, int> kept;
        VertexSet reserve;
        for (Vertex v = 1; v <= graph.n(); ++v)
            if (graph.degree(v) == 0 && kept[graph.colours(v)] < k_max) {
                ++kept[graph.colours(v)];
                reserve.push_back(v);
            }
        return reserve;
    }

    auto kernelize(const ColouredGraph & graph, const ColourBudget & budget, const SolveOptions & options) -> KernelResult
    {
        check_budget(graph, budget);
        KernelResult result;
        std::tie(result.bound_v, result.bound_e) = kernel_bounds(budget.total(), graph.t());

        if (check_colour_deficit(graph, budget)) {
            result.no = true;
            return result;
        }
        result.initial_reserve = build_isolated_reserve(graph, budget);

        auto view = identity_view(graph);
        ColourBudget current = budget;
        while (true) {
            options.check_time();
            ++result.rounds;
            auto & g = view.graph;
            if (check_zero_budget_edge(g, current)) {
                result.no = true;
                return result;
            }

            // the reserve is recomputed from the current instance so that vertices
            // isolated by earlier deletions are protected too
            auto reserve = build_isolated_reserve(g, current);
            std::vector<char> reserved(g.n() + 1, 0);
            for (Vertex v : reserve)
                reserved[v] = 1;
            VertexSet isolated;
            for (Vertex v = 1; v <= g.n(); ++v)
                if (g.degree(v) == 0 && ! reserved[v])
                    isolated.push_back(v);
            if (! isolated.empty()) {
                for (Vertex v : view.lift(isolated))
                    result.removed_isolated.push_back(v);
                view = compose(view, remove_vertices(g, isolated));
                continue;
            }

            Vertex large = 0;
            for (Vertex v = 1; v <= g.n() && large == 0; ++v) {
                std::vector<int> per_colour(g.t(), 0);
                for (Vertex w : g.neighbours(v))
                    for (int c : colour_list(g.colours(w)))
                        ++per_colour[c - 1];
                for (int i = 0; i < g.t(); ++i)
                    if (per_colour[i] > current.k[i])
                        large = v;
            }
            if (large == 0)
                break;

            for (int c : colour_list(g.colours(large)))
                if (--current.k[c - 1] < 0) {
                    result.no = true;
                    return result;
                }
            result.forced.push_back(view.original[large - 1]);
            view = compose(view, remove_vertices(g, VertexSet{large}));
        }

        auto [limit_v, limit_e] = kernel_bounds(current.total(), graph.t());
        if (view.graph.n() > limit_v || view.graph.m() > limit_e) {
            result.no = true;
            return result;
        }

        result.forced = sorted_unique(std::move(result.forced));
        result.removed_isolated = sorted_unique(std::move(result.removed_isolated));
        result.kernel = Instance{std::move(view.graph), std::move(current)};
        result.original = std::move(view.original);
        return result;
    }

    auto solve_kernel_branch(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options) -> SolveOutcome
    {
        auto kernel = kernelize(graph, budget, options);
        if (kernel.no)
            return SolveOutcome{};

        auto inner = solve_branching(kernel.kernel.graph, kernel.kernel.budget, options);
        SolveOutcome outcome;
        outcome.yes = inner.yes;
        outcome.stats = inner.stats;
        if (inner.yes && options.want_witness) {
            VertexSet lifted = kernel.forced;
            for (Vertex v : *inner.witness)
                lifted.push_back(kernel.original[v - 1]);
            outcome.witness = sorted_unique(std::move(lifted));
        }
        return outcome;
    }
}
