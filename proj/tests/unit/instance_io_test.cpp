#include <doctest.h>

#include <fair_cover/instance_io.hpp>
#include <fair_cover/random.hpp>

#include <cstdio>
#include <filesystem>

using namespace fair_cover;

namespace
{
    auto kind_of(std::string_view text) -> ParseErrorKind
    {
        try {
            parse_instance(text);
        } catch (const ParseError & e) {
            return e.kind();
        }
        FAIL("expected a parse error");
        return ParseErrorKind::malformed_line;
    }
}

TEST_CASE("minimal instance")
{
    auto instance = parse_instance("fgr 1 0 1\nv 1 1\nb 0\n");
    CHECK(instance.graph.n() == 1);
    CHECK(instance.graph.m() == 0);
    CHECK(instance.budget.k == std::vector<int>{0});
}

TEST_CASE("comments and blank lines are ignored")
{
    auto instance = parse_instance("# header comment\n\nfgr 2 1 2   # trailing\nv 1 1 2\nv 2 2\ne 2 1\nb 1 1\n");
    CHECK(instance.graph.colours(1) == (colour_bit(1) | colour_bit(2)));
    CHECK(instance.graph.edges()[0] == Edge{1, 2});
}

TEST_CASE("each malformation has its own diagnostic")
{
    using K = ParseErrorKind;
    CHECK(kind_of("fgr 1 0\nv 1 1\nb 0\n") == K::malformed_header);
    CHECK(kind_of("graph 1 0 1\nv 1 1\nb 0\n") == K::malformed_header);
    CHECK(kind_of("") == K::malformed_header);
    CHECK(kind_of("fgr 1 0 1\nv 1\nb 0\n") == K::vertex_without_colours);
    CHECK(kind_of("fgr 1 0 1\nv 1 2\nb 0\n") == K::colour_out_of_range);
    CHECK(kind_of("fgr 2 1 1\nv 1 1\nv 2 1\ne 0 1\nb 0\n") == K::vertex_out_of_range);
    CHECK(kind_of("fgr 2 2 1\nv 1 1\nv 2 1\ne 1 2\ne 2 1\nb 0\n") == K::duplicate_edge);
    CHECK(kind_of("fgr 2 1 1\nv 1 1\nv 2 1\ne 1 1\nb 0\n") == K::self_loop);
    CHECK(kind_of("fgr 1 0 2\nv 1 1\nb 0\n") == K::budget_length_mismatch);
    CHECK(kind_of("fgr 1 0 1\nv 1 1\n") == K::missing_budget);
    CHECK(kind_of("fgr 1 0 1\nv 1 1\nb 0\nb 0\n") == K::duplicate_budget);
    CHECK(kind_of("fgr 2 0 1\nv 1 1\nb 0\n") == K::missing_vertex);
    CHECK(kind_of("fgr 1 0 1\nv 1 1\nv 1 1\nb 0\n") == K::duplicate_vertex);
    CHECK(kind_of("fgr 2 2 1\nv 1 1\nv 2 1\ne 1 2\nb 0\n") == K::edge_count_mismatch);
    CHECK(kind_of("fgr 1 0 1\nv 1 1\nx 3\nb 0\n") == K::malformed_line);
    CHECK(kind_of("fgr 1 0 1\nv 1 1\nb -1\n") == K::malformed_line);
}

TEST_CASE("parse errors carry the line number")
{
    try {
        parse_instance("fgr 2 1 1\nv 1 1\nv 2 1\ne 1 3\nb 0\n");
        FAIL("no error");
    } catch (const ParseError & e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("serialize then parse is the identity")
{
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        int n = 1 + static_cast<int>(rng() % 12);
        int t = 1 + static_cast<int>(rng() % 4);
        Instance instance{random_instance(n, 0.35, t, t, rng()), {}};
        instance.budget = random_budget(instance.graph, 5, rng);
        auto text = serialize_instance(instance);
        auto back = parse_instance(text);
        CHECK(back == instance);
        CHECK(serialize_instance(back) == text);
        CHECK(instance_digest(back) == instance_digest(instance));
    }
}

TEST_CASE("serialization normalizes order")
{
    auto a = parse_instance("fgr 3 2 1\nv 3 1\nv 1 1\nv 2 1\ne 3 2\ne 2 1\nb 1\n");
    auto b = parse_instance("fgr 3 2 1\nv 1 1\nv 2 1\nv 3 1\ne 1 2\ne 2 3\nb 1\n");
    CHECK(serialize_instance(a) == serialize_instance(b));
    CHECK(instance_digest(a).size() == 16);
}

TEST_CASE("files round-trip")
{
    auto path = (std::filesystem::temp_directory_path() / "fair_cover_io_test.fgr").string();
    Instance instance{random_instance(6, 0.5, 2, 2, 8), ColourBudget{{1, 1}}};
    write_instance_file(path, instance);
    CHECK(read_instance_file(path) == instance);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_instance_file(path), InputError);
}
