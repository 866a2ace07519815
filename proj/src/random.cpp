#include <fair_cover/random.hpp>
#include <fair_cover/oracle.hpp>

#include <algorithm>
#include <numeric>

namespace fair_cover
{
    namespace
    {
        auto binomial(int n, int k) -> double
        {
            double result = 1;
            for (int i = 1; i <= k; ++i)
                result = result * (n - k + i) / i;
            return result;
        }

        auto random_colour_set(int t, int max_colours, Rng & rng) -> ColourSet
        {
            // size s is drawn with weight C(t, s), then a uniform s-subset
            std::vector<double> weights;
            for (int s = 1; s <= max_colours; ++s)
                weights.push_back(binomial(t, s));
            std::discrete_distribution<int> pick_size(weights.begin(), weights.end());
            int size = pick_size(rng) + 1;

            std::vector<int> palette(t);
            std::iota(palette.begin(), palette.end(), 1);
            ColourSet set = 0;
            for (int i = 0; i < size; ++i) {
                std::uniform_int_distribution<int> pick(i, t - 1);
                std::swap(palette[i], palette[pick(rng)]);
                set |= colour_bit(palette[i]);
            }
            return set;
        }

        auto shuffled_vertices(int n, Rng & rng) -> VertexSet
        {
            VertexSet order(n);
            std::iota(order.begin(), order.end(), 1);
            std::shuffle(order.begin(), order.end(), rng);
            return order;
        }
    }

    auto random_instance(int n, double edge_probability, int t, int max_colours_per_vertex,
            std::uint64_t seed) -> ColouredGraph
    {
        if (n < 1 || t < 1 || t > max_palette || max_colours_per_vertex < 1 || max_colours_per_vertex > t)
            throw InputError("random_instance: need n >= 1, 1 <= t <= 64, 1 <= max colours <= t");
        Rng rng(seed);
        std::vector<ColourSet> colours;
        for (int v = 0; v < n; ++v)
            colours.push_back(random_colour_set(t, max_colours_per_vertex, rng));

        std::bernoulli_distribution coin(std::clamp(edge_probability, 0.0, 1.0));
        std::vector<Edge> edges;
        for (Vertex u = 1; u <= n; ++u)
            for (Vertex v = u + 1; v <= n; ++v)
                if (coin(rng))
                    edges.emplace_back(u, v);
        return ColouredGraph(n, t, std::move(colours), std::move(edges));
    }

    auto random_budget(const ColouredGraph & graph, long max_total, Rng & rng) -> ColourBudget
    {
        ColourBudget budget{std::vector<int>(graph.t(), 0)};
        std::uniform_int_distribution<int> pick_size(0, graph.n());
        int wanted = pick_size(rng);
        long total = 0;
        for (Vertex v : shuffled_vertices(graph.n(), rng)) {
            if (wanted-- <= 0)
                break;
            auto colours = colour_list(graph.colours(v));
            if (total + static_cast<long>(colours.size()) > max_total)
                continue;
            total += static_cast<long>(colours.size());
            for (int c : colours)
                ++budget.k[c - 1];
        }
        return budget;
    }

    auto planted_budget(const ColouredGraph & graph, bool fvs, Rng & rng) -> ColourBudget
    {
        // start from V, drop vertices in random order while the predicate holds
        VertexSet solution(graph.n());
        std::iota(solution.begin(), solution.end(), 1);
        for (Vertex v : shuffled_vertices(graph.n(), rng)) {
            VertexSet trial;
            for (Vertex w : solution)
                if (w != v)
                    trial.push_back(w);
            if (fvs ? is_fvs(graph, trial) : is_vertex_cover(graph, trial))
                solution = std::move(trial);
        }
        return ColourBudget{colour_counts(graph, solution)};
    }

    auto random_planted_fvs_graph(int n, int fvs_size, double planted_edge_probability, int t,
            std::uint64_t seed) -> ColouredGraph
    {
        if (fvs_size < 0 || fvs_size > n || t < 1 || t > max_palette)
            throw InputError("random_planted_fvs_graph: need 0 <= fvs_size <= n and 1 <= t <= 64");
        Rng rng(seed);
        std::vector<ColourSet> colours;
        std::uniform_int_distribution<int> pick_colour(1, t);
        for (int v = 0; v < n; ++v)
            colours.push_back(colour_bit(pick_colour(rng)));

        // vertices 1..fvs_size are planted, the rest form a random tree
        std::vector<Edge> edges;
        for (Vertex v = fvs_size + 2; v <= n; ++v) {
            std::uniform_int_distribution<int> pick_parent(fvs_size + 1, v - 1);
            edges.emplace_back(pick_parent(rng), v);
        }
        std::bernoulli_distribution coin(std::clamp(planted_edge_probability, 0.0, 1.0));
        for (Vertex f = 1; f <= fvs_size; ++f)
            for (Vertex v = f + 1; v <= n; ++v)
                if (coin(rng))
                    edges.emplace_back(f, v);
        return ColouredGraph(n, t, std::move(colours), std::move(edges));
    }
}
