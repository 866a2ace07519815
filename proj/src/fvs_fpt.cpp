#include <fair_cover/fvs_fpt.hpp>
#include <fair_cover/oracle.hpp>

#include <algorithm>
#include <array>
#include <limits>

namespace fair_cover
{
    namespace
    {
        // Working copy of the graph with deletions and current degrees.
        class Residual
        {
            public:
                explicit Residual(const ColouredGraph & graph) :
                    _graph(graph), _alive(graph.n() + 1, 1), _degree(graph.n() + 1, 0)
                {
                    _alive[0] = 0;
                    for (Vertex v = 1; v <= graph.n(); ++v)
                        _degree[v] = graph.degree(v);
                }

                auto alive(Vertex v) const -> bool { return _alive[v]; }
                auto degree(Vertex v) const -> int { return _degree[v]; }

                auto remove(Vertex v) -> void
                {
                    _alive[v] = 0;
                    for (Vertex w : _graph.neighbours(v))
                        if (_alive[w])
                            --_degree[w];
                }

                auto strip_low_degree() -> void
                {
                    VertexSet queue;
                    for (Vertex v = 1; v <= _graph.n(); ++v)
                        if (_alive[v] && _degree[v] <= 1)
                            queue.push_back(v);
                    while (! queue.empty()) {
                        Vertex v = queue.back();
                        queue.pop_back();
                        if (! _alive[v])
                            continue;
                        remove(v);
                        for (Vertex w : _graph.neighbours(v))
                            if (_alive[w] && _degree[w] == 1)
                                queue.push_back(w);
                    }
                }

                auto empty() const -> bool
                {
                    return std::none_of(_alive.begin(), _alive.end(), [](char a) { return a; });
                }

                auto next_alive(Vertex v, Vertex from) const -> Vertex
                {
                    for (Vertex w : _graph.neighbours(v))
                        if (_alive[w] && w != from)
                            return w;
                    return 0;
                }

                // A cycle in which every vertex but at most one has degree 2.
                auto semidisjoint_cycle() const -> VertexSet
                {
                    std::vector<char> visited(_graph.n() + 1, 0);
                    for (Vertex s = 1; s <= _graph.n(); ++s) {
                        if (! _alive[s] || _degree[s] != 2 || visited[s])
                            continue;
                        // walk both ways along degree-2 vertices
                        VertexSet path{s};
                        visited[s] = 1;
                        std::array<Vertex, 2> ends{};
                        std::array<Vertex, 2> starts{};
                        int side = 0;
                        for (Vertex w : _graph.neighbours(s))
                            if (_alive[w])
                                starts[side++] = w;
                        bool closed = false;
                        std::array<VertexSet, 2> arms;
                        for (int d = 0; d < 2 && ! closed; ++d) {
                            Vertex prev = s, cur = starts[d];
                            while (_degree[cur] == 2 && cur != s) {
                                visited[cur] = 1;
                                arms[d].push_back(cur);
                                Vertex next = next_alive(cur, prev);
                                prev = cur;
                                cur = next;
                            }
                            if (cur == s)
                                closed = true;
                            ends[d] = cur;
                        }
                        if (closed) {
                            path.insert(path.end(), arms[0].begin(), arms[0].end());
                            return path;
                        }
                        if (ends[0] == ends[1]) {
                            VertexSet cycle(arms[0].rbegin(), arms[0].rend());
                            cycle.push_back(s);
                            cycle.insert(cycle.end(), arms[1].begin(), arms[1].end());
                            cycle.push_back(ends[0]);
                            return cycle;
                        }
                    }
                    return {};
                }

            private:
                const ColouredGraph & _graph;
                std::vector<char> _alive;
                std::vector<int> _degree;
        };
    }

    auto approx_fvs_2(const ColouredGraph & graph) -> ApproxFvsResult
    {
        Residual residual(graph);
        std::vector<double> weight(graph.n() + 1, 1.0);
        VertexSet stack;
        constexpr double epsilon = 1e-9;

        residual.strip_low_degree();
        while (! residual.empty()) {
            auto cycle = residual.semidisjoint_cycle();
            VertexSet touched;
            if (! cycle.empty()) {
                Vertex arg = cycle.front();
                for (Vertex v : cycle)
                    if (weight[v] < weight[arg])
                        arg = v;
                double gamma = weight[arg];
                for (Vertex v : cycle)
                    weight[v] -= gamma;
                weight[arg] = 0;
                touched = std::move(cycle);
            } else {
                Vertex arg = 0;
                double gamma = std::numeric_limits<double>::infinity();
                for (Vertex v = 1; v <= graph.n(); ++v)
                    if (residual.alive(v) && weight[v] / (residual.degree(v) - 1) < gamma) {
                        gamma = weight[v] / (residual.degree(v) - 1);
                        arg = v;
                    }
                for (Vertex v = 1; v <= graph.n(); ++v)
                    if (residual.alive(v)) {
                        weight[v] -= gamma * (residual.degree(v) - 1);
                        touched.push_back(v);
                    }
                weight[arg] = 0;
            }
            std::sort(touched.begin(), touched.end());
            for (Vertex v : touched)
                if (residual.alive(v) && weight[v] <= epsilon) {
                    stack.push_back(v);
                    residual.remove(v);
                }
            residual.strip_low_degree();
        }

        // reverse deletion keeps the result inclusion-minimal
        VertexSet kept = stack;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            VertexSet without;
            for (Vertex v : kept)
                if (v != *it)
                    without.push_back(v);
            if (is_fvs(graph, without))
                kept = std::move(without);
        }

        ApproxFvsResult result;
        result.fvs = sorted_unique(std::move(kept));
        result.certified = is_fvs(graph, result.fvs);
        if (! result.certified)
            throw InternalError("approximate feedback vertex set is not a feedback vertex set");
        return result;
    }

    auto run_fvs_tcb(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options, const FvsOptions & fvs_options) -> TcbReport
    {
        check_budget(graph, budget);
        TcbReport report;
        report.approx = approx_fvs_2(graph);
        if (static_cast<long>(report.approx.fvs.size()) > 2 * budget.total()) {
            report.cutoff = true;
            return report;
        }
        auto ntd = td_from_fvs(graph, report.approx.fvs);
        report.outcome = solve_fvs_tw(graph, ntd, budget, options, fvs_options);
        return report;
    }

    auto solve_fvs_tcb(const ColouredGraph & graph, const ColourBudget & budget,
            const SolveOptions & options) -> SolveOutcome
    {
        return run_fvs_tcb(graph, budget, options).outcome;
    }
}
