#include <doctest.h>

#include <fair_cover/fvs_fpt.hpp>
#include <fair_cover/tree_decomposition.hpp>

#include "test_support.hpp"

#include <algorithm>
#include <set>

using namespace fair_cover;

namespace
{
    auto mono(int n, std::vector<Edge> edges) -> ColouredGraph
    {
        return ColouredGraph(n, 1, std::vector<ColourSet>(n, 1), std::move(edges));
    }

    auto introduced_edges(const NiceTreeDecomposition & ntd) -> std::vector<Edge>
    {
        std::vector<Edge> edges;
        for (auto & node : ntd.nodes)
            if (node.kind == NiceKind::introduce_edge)
                edges.push_back(node.edge);
        std::sort(edges.begin(), edges.end());
        return edges;
    }

    auto check_structure(const NiceTreeDecomposition & ntd, const ColouredGraph & g) -> void
    {
        auto problems = validate(ntd, g);
        CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
        auto edges = introduced_edges(ntd);
        CHECK(edges == std::vector<Edge>(g.edges().begin(), g.edges().end()));
        CHECK(ntd.nodes[ntd.root()].bag.empty());
    }

    auto random_tree(int n, Rng & rng) -> ColouredGraph
    {
        std::vector<Edge> edges;
        for (int v = 2; v <= n; ++v)
            edges.emplace_back(1 + static_cast<int>(rng() % (v - 1)), v);
        return mono(n, edges);
    }
}

TEST_CASE("validate reports each violated condition")
{
    auto path = mono(3, {{1, 2}, {2, 3}});
    TreeDecomposition good{{{1, 2}, {2, 3}}, {{0, 1}}};
    CHECK(validate(good, path).empty());

    TreeDecomposition missing_edge{{{1, 2}, {3}}, {{0, 1}}};
    auto problems = validate(missing_edge, path);
    REQUIRE_FALSE(problems.empty());
    CHECK(problems.front().find("2") != std::string::npos);
    CHECK(problems.front().find("3") != std::string::npos);

    TreeDecomposition missing_vertex{{{1, 2}}, {}};
    CHECK_FALSE(validate(missing_vertex, path).empty());

    // vertex 2 occurs in bags 0 and 2 but not in bag 1 between them
    TreeDecomposition disconnected{{{1, 2}, {3}, {2, 3}}, {{0, 1}, {1, 2}}};
    CHECK_FALSE(validate(disconnected, path).empty());

    TreeDecomposition cyclic{{{1, 2}, {2, 3}, {2}}, {{0, 1}, {1, 2}, {2, 0}}};
    CHECK_FALSE(validate(cyclic, path).empty());
}

TEST_CASE("nice decompositions")
{
    ColouredGraph single(1, 1, {1}, {});
    auto ntd = make_nice(TreeDecomposition{{{}, {1}}, {{0, 1}}}, single);
    check_structure(ntd, single);

    auto p3 = mono(3, {{1, 2}, {2, 3}});
    auto nice = make_nice(TreeDecomposition{{{1, 2}, {2, 3}}, {{0, 1}}}, p3);
    check_structure(nice, p3);
    CHECK(nice.width() == 1);

    CHECK_THROWS_AS(make_nice(TreeDecomposition{{{1, 2}}, {}}, p3), InputError);

    // a broken nice decomposition is caught
    auto broken = nice;
    for (auto & node : broken.nodes)
        if (node.kind == NiceKind::introduce_edge) {
            node.kind = NiceKind::forget;
            break;
        }
    CHECK_FALSE(validate(broken, p3).empty());
}

TEST_CASE("nicification keeps width, introduces every edge once and stays linear")
{
    Rng rng(8);
    for (int i = 0; i < 80; ++i) {
        int n = 2 + static_cast<int>(rng() % 12);
        auto g = random_instance(n, 0.3, 2, 1, rng());
        auto fvs = approx_fvs_2(g).fvs;
        auto ntd = td_from_fvs(g, fvs);
        check_structure(ntd, g);
        CHECK(ntd.width() <= static_cast<int>(fvs.size()) + 1);

        auto plain = td_min_degree(g);
        CHECK(validate(plain, g).empty());
        auto nice = make_nice(plain, g);
        check_structure(nice, g);
        CHECK(nice.width() == plain.width());
        // node count within 4 (width + 1) n + m + 1
        long limit = 4L * (nice.width() + 1) * n + g.m() + 1;
        CHECK(nice.size() <= limit);
    }
}

TEST_CASE("subtree graphs grow towards the root")
{
    auto g = random_instance(9, 0.35, 2, 1, 12);
    auto ntd = td_from_fvs(g, approx_fvs_2(g).fvs);
    std::vector<std::set<Vertex>> vertices(ntd.size());
    std::vector<std::set<Edge>> edges(ntd.size());
    for (int x = 0; x < ntd.size(); ++x) {
        auto & node = ntd.nodes[x];
        for (int c : node.children)
            if (c >= 0) {
                CHECK(c < x);
                vertices[x].insert(vertices[c].begin(), vertices[c].end());
                edges[x].insert(edges[c].begin(), edges[c].end());
            }
        if (node.kind == NiceKind::introduce_vertex)
            vertices[x].insert(node.vertex);
        if (node.kind == NiceKind::introduce_edge)
            CHECK(edges[x].insert(node.edge).second);
    }
    CHECK(static_cast<int>(vertices[ntd.root()].size()) == g.n());
    CHECK(static_cast<int>(edges[ntd.root()].size()) == g.m());
}

TEST_CASE("paths and cycles")
{
    auto path = mono(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto ntd = td_paths_cycles(path);
    check_structure(ntd, path);
    CHECK(ntd.width() == 1);

    auto cycle = mono(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
    auto c = td_paths_cycles(cycle);
    check_structure(c, cycle);
    CHECK(c.width() == 2);

    // three paths, two cycles, and an isolated vertex
    auto mixed = mono(16, {{1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {8, 9},
        {10, 11}, {11, 12}, {10, 12}, {13, 14}, {14, 15}, {15, 16}, {13, 16}});
    auto m = td_paths_cycles(mixed);
    check_structure(m, mixed);
    CHECK(m.width() == 2);

    CHECK_THROWS(td_paths_cycles(mono(4, {{1, 2}, {1, 3}, {1, 4}})));
}

TEST_CASE("decompositions from a feedback vertex set")
{
    auto forest = mono(6, {{1, 2}, {2, 3}, {4, 5}});
    auto ntd = td_from_fvs(forest, VertexSet{});
    check_structure(ntd, forest);
    CHECK(ntd.width() == 1);

    auto c5 = mono(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}});
    auto with_one = td_from_fvs(c5, VertexSet{3});
    check_structure(with_one, c5);
    CHECK(with_one.width() <= 2);

    CHECK_THROWS_AS(td_from_fvs(c5, VertexSet{}), InputError);
}

TEST_CASE("PACE format")
{
    ColouredGraph k1(1, 1, {1}, {});
    auto td = parse_td("c comment\ns td 1 1 1\nb 1 1\n", k1);
    CHECK(td.bags.size() == 1);
    CHECK(validate(td, k1).empty());

    CHECK_THROWS_AS(parse_td("s td 1 1 1\nb 1 2\n", k1), InputError);
    CHECK_THROWS_AS(parse_td("s td 2 1 1\nb 1 1\n", k1), InputError);

    Rng rng(9);
    for (int i = 0; i < 30; ++i) {
        auto tree = random_tree(2 + static_cast<int>(rng() % 15), rng);
        auto ntd = td_from_fvs(tree, VertexSet{});
        auto plain = to_plain(ntd);
        CHECK(validate(plain, tree).empty());
        auto text = emit_td(plain, tree.n());
        auto back = parse_td(text, tree);
        CHECK(back == plain);
        CHECK(emit_td(back, tree.n()) == text);
    }
}
