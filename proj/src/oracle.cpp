#include <fair_cover/oracle.hpp>

#include <numeric>

namespace fair_cover
{
    namespace
    {
        struct UnionFind
        {
            std::vector<int> parent;

            explicit UnionFind(int n) : parent(n)
            {
                std::iota(parent.begin(), parent.end(), 0);
            }

            auto find(int x) -> int
            {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            }

            auto unite(int a, int b) -> bool
            {
                a = find(a);
                b = find(b);
                if (a == b)
                    return false;
                parent[a] = b;
                return true;
            }
        };

        auto acyclic_without(const ColouredGraph & graph, const std::vector<char> & removed) -> bool
        {
            UnionFind uf(graph.n() + 1);
            for (auto [u, v] : graph.edges())
                if (! removed[u] && ! removed[v] && ! uf.unite(u, v))
                    return false;
            return true;
        }

        class FairSearch
        {
            public:
                FairSearch(const ColouredGraph & graph, const ColourBudget & budget, Problem problem, bool all) :
                    _graph(graph), _budget(budget), _problem(problem), _all(all),
                    _in(graph.n() + 1, 0), _count(graph.t(), 0), _remaining(graph.t(), 0)
                {
                    for (Vertex v = 1; v <= graph.n(); ++v)
                        for (int c : colour_list(graph.colours(v)))
                            ++_remaining[c - 1];
                }

                auto run() -> std::vector<VertexSet>
                {
                    for (int i = 0; i < _graph.t(); ++i)
                        if (_remaining[i] < _budget.k[i])
                            return {};
                    visit(1);
                    return std::move(_found);
                }

            private:
                const ColouredGraph & _graph;
                const ColourBudget & _budget;
                Problem _problem;
                bool _all;
                std::vector<char> _in;
                std::vector<int> _count, _remaining;
                VertexSet _current;
                std::vector<VertexSet> _found;

                auto done() const -> bool { return ! _all && ! _found.empty(); }

                auto visit(Vertex v) -> void
                {
                    if (v > _graph.n()) {
                        if (_count == _budget.k && accepts())
                            _found.push_back(_current);
                        return;
                    }

                    auto colours = colour_list(_graph.colours(v));
                    for (int c : colours)
                        --_remaining[c - 1];

                    bool fits = true;
                    for (int c : colours)
                        fits = fits && _count[c - 1] < _budget.k[c - 1];
                    if (fits) {
                        for (int c : colours)
                            ++_count[c - 1];
                        _in[v] = 1;
                        _current.push_back(v);
                        visit(v + 1);
                        _current.pop_back();
                        _in[v] = 0;
                        for (int c : colours)
                            --_count[c - 1];
                    }

                    if (! done() && can_skip(v)) {
                        bool reachable = true;
                        for (int i = 0; i < _graph.t() && reachable; ++i)
                            reachable = _count[i] + _remaining[i] >= _budget.k[i];
                        if (reachable)
                            visit(v + 1);
                    }

                    for (int c : colours)
                        ++_remaining[c - 1];
                }

                // For vertex cover, leaving v out forces every earlier neighbour to be in.
                auto can_skip(Vertex v) const -> bool
                {
                    if (_problem != Problem::vertex_cover)
                        return true;
                    for (Vertex w : _graph.neighbours(v))
                        if (w < v && ! _in[w])
                            return false;
                    return true;
                }

                auto accepts() const -> bool
                {
                    if (_problem == Problem::vertex_cover)
                        return is_vertex_cover(_graph, _current);
                    return acyclic_without(_graph, _in);
                }
        };

        auto check_size(const ColouredGraph & graph, const OracleConfig & config) -> void
        {
            if (config.max_n < 1)
                throw InputError("oracle max_n must be at least 1");
            if (graph.n() > config.max_n)
                throw InputError("oracle refuses instances with n = " + std::to_string(graph.n())
                        + " > " + std::to_string(config.max_n));
        }
    }

    auto is_vertex_cover(const ColouredGraph & graph, std::span<const Vertex> set) -> bool
    {
        std::vector<char> in(graph.n() + 1, 0);
        for (Vertex v : set)
            in[v] = 1;
        for (auto [u, v] : graph.edges())
            if (! in[u] && ! in[v])
                return false;
        return true;
    }

    auto is_fvs(const ColouredGraph & graph, std::span<const Vertex> set) -> bool
    {
        std::vector<char> removed(graph.n() + 1, 0);
        for (Vertex v : set)
            removed[v] = 1;
        return acyclic_without(graph, removed);
    }

    auto brute_force_fair(const ColouredGraph & graph, const ColourBudget & budget, Problem problem,
            const OracleConfig & config) -> SolveOutcome
    {
        check_size(graph, config);
        check_budget(graph, budget);
        auto found = FairSearch(graph, budget, problem, false).run();
        SolveOutcome outcome;
        outcome.yes = ! found.empty();
        if (outcome.yes)
            outcome.witness = found.front();
        return outcome;
    }

    auto brute_force_all_fair(const ColouredGraph & graph, const ColourBudget & budget, Problem problem,
            const OracleConfig & config) -> std::vector<VertexSet>
    {
        check_size(graph, config);
        check_budget(graph, budget);
        return FairSearch(graph, budget, problem, true).run();
    }

    auto brute_force_min_fvs_size(const ColouredGraph & graph, const OracleConfig & config) -> int
    {
        check_size(graph, config);
        int n = graph.n();
        std::vector<char> removed(n + 1, 0);

        // choose `left` more vertices from [from, n]
        auto search = [&](auto & self, Vertex from, int left) -> bool {
            if (left == 0)
                return acyclic_without(graph, removed);
            for (Vertex v = from; v + left - 1 <= n; ++v) {
                removed[v] = 1;
                bool ok = self(self, v + 1, left - 1);
                removed[v] = 0;
                if (ok)
                    return true;
            }
            return false;
        };

        for (int size = 0; size <= n; ++size)
            if (search(search, 1, size))
                return size;
        throw InternalError("removing every vertex must leave a forest");
    }
}
