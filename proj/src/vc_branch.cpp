#include <fair_cover/vc_branch.hpp>
#include <fair_cover/tree_decomposition.hpp>
#include <fair_cover/vc_twdp.hpp>

namespace fair_cover
{
    namespace
    {
        auto zero_colours(const ColourBudget & budget) -> ColourSet
        {
            ColourSet zero = 0;
            for (int i = 1; i <= budget.size(); ++i)
                if (budget[i] == 0)
                    zero |= colour_bit(i);
            return zero;
        }

        // budget - c(set), or nothing when a coordinate would go negative
        auto spend(const ColouredGraph & graph, const ColourBudget & budget, std::span<const Vertex> set)
            -> std::optional<ColourBudget>
        {
            auto counts = colour_counts(graph, set);
            ColourBudget rest = budget;
            for (int i = 0; i < budget.size(); ++i) {
                rest.k[i] -= counts[i];
                if (rest.k[i] < 0)
                    return std::nullopt;
            }
            return rest;
        }

        class Branching
        {
            public:
                Branching(const SolveOptions & options) : _options(options) { }

                auto solve(const ColouredGraph & input, const ColourBudget & input_budget) -> std::optional<VertexSet>
                {
                    ++_stats.branch_calls;
                    _options.check_time();

                    auto view = identity_view(input);
                    ColourBudget budget = input_budget;
                    VertexSet forced;

                    while (true) {
                        auto & g = view.graph;
                        if (check_colour_deficit(g, budget) || check_zero_budget_edge(g, budget)) {
                            ++_stats.branch_nodes;
                            return std::nullopt;
                        }
                        auto reduction = reduce_saturated_colour(g, budget);
                        if (reduction.status == ReductionStatus::no) {
                            ++_stats.branch_nodes;
                            return std::nullopt;
                        }
                        if (reduction.status == ReductionStatus::unchanged)
                            break;
                        for (Vertex v : view.lift(reduction.forced))
                            forced.push_back(v);
                        view = compose(view, reduction.reduced);
                        budget = std::move(reduction.budget);
                    }

                    auto & g = view.graph;
                    Vertex pick = 0;
                    for (Vertex v = 1; v <= g.n(); ++v)
                        if (pick == 0 || g.degree(v) > g.degree(pick))
                            pick = v;

                    if (pick == 0 || g.degree(pick) < 3) {
                        ++_stats.branch_nodes;
                        auto base = base_case_paths_cycles(g, budget, SolveOptions{true, _options.deadline});
                        _stats.dp_cells += base.stats.dp_cells;
                        if (! base.yes)
                            return std::nullopt;
                        return finish(forced, view.lift(*base.witness));
                    }

                    int children = 0;
                    VertexSet take_v{pick};
                    VertexSet take_neighbours(g.neighbours(pick).begin(), g.neighbours(pick).end());
                    for (auto * taken : {&take_v, &take_neighbours}) {
                        auto rest = spend(g, budget, *taken);
                        if (! rest)
                            continue;
                        ++children;
                        auto sub = remove_vertices(g, *taken);
                        if (auto found = solve(sub.graph, *rest)) {
                            VertexSet lifted = view.lift(*taken);
                            for (Vertex v : compose(view, sub).lift(*found))
                                lifted.push_back(v);
                            return finish(forced, lifted);
                        }
                    }
                    if (children == 0)
                        ++_stats.branch_nodes;
                    return std::nullopt;
                }

                auto stats() const -> const SolveStats & { return _stats; }

            private:
                const SolveOptions & _options;
                SolveStats _stats;

                static auto finish(VertexSet forced, const VertexSet & rest) -> VertexSet
                {
                    forced.insert(forced.end(), rest.begin(), rest.end());
                    return sorted_unique(std::move(forced));
                }
        };
    }

    auto check_colour_deficit(const ColouredGraph & graph, const ColourBudget & budget) -> bool
    {
        VertexSet all(graph.n());
        for (Vertex v = 1; v <= graph.n(); ++v)
            all[v - 1] = v;
        auto counts = colour_counts(graph, all);
        for (int i = 0; i < budget.size(); ++i)
            if (counts[i] < budget.k[i])
                return true;
        return false;
    }

    auto check_zero_budget_edge(const ColouredGraph & graph, const ColourBudget & budget) -> bool
    {
        ColourSet zero = zero_colours(budget);
        for (auto [u, v] : graph.edges())
            if ((graph.colours(u) & zero) && (graph.colours(v) & zero))
                return true;
        return false;
    }

    auto reduce_saturated_colour(const ColouredGraph & graph, const ColourBudget & budget) -> SaturationResult
    {
        SaturationResult result;
        for (int i = 1; i <= budget.size(); ++i) {
            if (budget[i] == 0)
                continue;
            VertexSet holders;
            for (Vertex v = 1; v <= graph.n(); ++v)
                if (has_colour(graph.colours(v), i))
                    holders.push_back(v);
            if (static_cast<int>(holders.size()) != budget[i])
                continue;

            result.colour = i;
            auto rest = spend(graph, budget, holders);
            if (! rest) {
                result.status = ReductionStatus::no;
                result.forced = std::move(holders);
                return result;
            }
            result.status = ReductionStatus::reduced;
            result.reduced = remove_vertices(graph, holders);
            result.budget = std::move(*rest);
            result.forced = std::move(holders);
            return result;
        }
        return result;
    }

    auto base_case_paths_cycles(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options) -> SolveOutcome
    {
        if (graph.max_degree() > 2)
            throw InternalError("base case needs maximum degree at most 2");
        return solve_vc_tw(graph, td_paths_cycles(graph), budget, options);
    }

    auto solve_branching(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options) -> SolveOutcome
    {
        check_budget(graph, budget);
        Branching search(options);
        auto found = search.solve(graph, budget);
        SolveOutcome outcome;
        outcome.yes = found.has_value();
        outcome.stats = search.stats();
        if (found && options.want_witness)
            outcome.witness = std::move(found);
        return outcome;
    }
}
