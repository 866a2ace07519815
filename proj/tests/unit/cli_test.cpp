#include <doctest.h>

#include <commands.hpp>
#include <json.hpp>

#include <fair_cover/instance_io.hpp>
#include <fair_cover/random.hpp>

#include "test_support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fair_cover;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace
{
    struct Run
    {
        int code = 0;
        std::string out;
        std::string err;

        auto report() const -> json { return json::parse(out); }
    };

    auto run(std::vector<std::string> args) -> Run
    {
        std::ostringstream out, err;
        Run result;
        result.code = cli::run_cli(args, out, err);
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    auto corpus_dir() -> std::string
    {
        if (const char * dir = std::getenv("FAIR_COVER_CORPUS"))
            return dir;
        return testing::source_dir() + "/corpus";
    }

    auto scratch(const std::string & name) -> fs::path
    {
        auto dir = fs::temp_directory_path() / ("fair_cover_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    auto write(const fs::path & path, const std::string & text) -> std::string
    {
        std::ofstream(path) << text;
        return path.string();
    }

    auto slurp(const fs::path & path) -> std::string
    {
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
}

TEST_CASE("solve-vc reports an answer, a witness and stats")
{
    auto k3 = corpus_dir() + "/k3.fgr";
    for (std::string algo : {"branch", "kernel+branch", "twdp", "oracle", "auto"}) {
        auto r = run({"solve-vc", k3, "--algo", algo, "--witness", "--stats"});
        CAPTURE(algo);
        CHECK(r.code == cli::exit_yes);
        auto report = r.report();
        CHECK(report["schema"] == 1);
        CHECK(report["command"] == "solve-vc");
        CHECK(report["problem"] == "vc");
        CHECK(report["answer"] == "yes");
        CHECK(report["witness"].size() == 2);
        CHECK(report["instance"]["n"] == 3);
        CHECK(report["instance"]["budget"] == json::array({2}));
        CHECK(report.contains("stats"));
        CHECK(report.contains("time_ms"));
    }
}

TEST_CASE("solve-fvs on both corpus files")
{
    auto two = corpus_dir() + "/twotriangles.fgr";
    for (std::string algo : {"twdp", "tcb", "oracle", "auto"}) {
        CAPTURE(algo);
        auto r = run({"solve-fvs", two, "--algo", algo});
        CHECK(r.code == cli::exit_no);
        CHECK(r.report()["answer"] == "no");
        CHECK_FALSE(r.report().contains("witness"));
    }
    auto r = run({"solve-fvs", corpus_dir() + "/k3.fgr", "--witness", "--no-reduce"});
    CHECK(r.code == cli::exit_yes);
    CHECK(r.report()["witness"].size() == 2);
}

TEST_CASE("relaxation flags")
{
    auto dir = scratch("relax");
    auto file = write(dir / "edge.fgr", "fgr 2 1 2\nv 1 1\nv 2 2\ne 1 2\nb 1 1\n");
    auto r = run({"solve-vc", file, "--alpha", "0", "--beta", "1", "--witness"});
    CHECK(r.code == cli::exit_yes);
    auto report = r.report();
    CHECK(report["relaxation"]["tuple"] == json::array({0, 1}));
    CHECK(report["relaxation"]["tuples"] == 4);
    CHECK(report["witness"] == json::array({2}));

    CHECK(run({"solve-vc", file, "--alpha", "2"}).code == cli::exit_error);
    CHECK(run({"solve-vc", file, "--beta", "x"}).code == cli::exit_error);
}

TEST_CASE("errors and exit codes")
{
    auto k3 = corpus_dir() + "/k3.fgr";
    auto bad_algo = run({"solve-vc", k3, "--algo", "magic"});
    CHECK(bad_algo.code == cli::exit_error);
    CHECK(bad_algo.err.rfind("error: ", 0) == 0);
    CHECK(run({"solve-fvs", k3, "--algo", "branch"}).code == cli::exit_error);
    CHECK(run({"solve-vc", "/nonexistent/file.fgr"}).code == cli::exit_error);
    CHECK(run({"no-such-command"}).code == cli::exit_error);
    CHECK(run({}).code == cli::exit_error);

    auto dir = scratch("errors");
    auto broken = write(dir / "broken.fgr", "fgr 2 1 1\nv 1 1\nv 2 1\ne 1 3\nb 0\n");
    auto r = run({"solve-vc", broken});
    CHECK(r.code == cli::exit_error);
    CHECK(r.err.find("line 4") != std::string::npos);

    // a decomposition that misses an edge
    auto td = write(dir / "k3.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
    CHECK(run({"solve-vc", k3, "--algo", "twdp", "--td", td}).code == cli::exit_error);
    auto good = write(dir / "k3good.td", "s td 1 3 3\nb 1 1 2 3\n");
    CHECK(run({"solve-vc", k3, "--algo", "twdp", "--td", good}).code == cli::exit_yes);
    CHECK(run({"solve-fvs", k3, "--algo", "twdp", "--td", good}).code == cli::exit_yes);
}

TEST_CASE("timeouts exit with 3")
{
    auto dir = scratch("timeout");
    Rng rng(4);
    Instance big{random_planted_fvs_graph(200, 10, 0.3, 2, 11), {}};
    big.budget = planted_budget(big.graph, true, rng);
    auto file = dir / "big.fgr";
    write_instance_file(file.string(), big);
    auto r = run({"solve-fvs", file.string(), "--algo", "twdp", "--timeout-ms", "1"});
    CHECK(r.code == cli::exit_timeout);
    CHECK(r.report()["answer"] == "timeout");
}

TEST_CASE("kernelize writes a kernel")
{
    auto dir = scratch("kernel");
    auto file = write(dir / "star.fgr", "fgr 4 3 1\nv 1 1\nv 2 1\nv 3 1\nv 4 1\ne 1 2\ne 1 3\ne 1 4\nb 1\n");
    auto out = dir / "kernel.fgr";
    auto r = run({"kernelize", file, "-o", out.string()});
    CHECK(r.code == cli::exit_yes);
    CHECK(r.report()["answer"] == "kernel");
    CHECK(r.report()["forced"] == json::array({1}));
    auto kernel = read_instance_file(out.string());
    CHECK(kernel.graph.n() == 0);
    CHECK(kernel.budget.k == std::vector<int>{0});

    auto blocked = write(dir / "blocked.fgr", "fgr 2 1 1\nv 1 1\nv 2 1\ne 1 2\nb 0\n");
    CHECK(run({"kernelize", blocked}).code == cli::exit_no);
}

TEST_CASE("oracle")
{
    auto r = run({"oracle", corpus_dir() + "/k3.fgr", "--problem", "vc", "--all"});
    CHECK(r.code == cli::exit_yes);
    CHECK(r.report()["solutions"].size() == 3);
    CHECK(run({"oracle", corpus_dir() + "/twotriangles.fgr", "--problem", "fvs"}).code == cli::exit_no);
    CHECK(run({"oracle", corpus_dir() + "/k3.fgr", "--problem", "tsp"}).code == cli::exit_error);
}

TEST_CASE("gen is deterministic")
{
    auto a = scratch("gen_a"), b = scratch("gen_b");
    std::vector<std::string> common{"--n", "7", "--count", "4", "--seed", "9", "--t", "2", "--golden"};
    auto with = [&](const fs::path & dir) {
        auto args = std::vector<std::string>{"gen", "--out", dir.string()};
        args.insert(args.end(), common.begin(), common.end());
        return run(args);
    };
    CHECK(with(a).code == cli::exit_yes);
    CHECK(with(b).code == cli::exit_yes);
    for (int i = 0; i < 4; ++i) {
        auto name = "gen-9-000" + std::to_string(i) + ".fgr";
        auto text = slurp(a / name);
        CHECK(text == slurp(b / name));
        CHECK(text.find("# expect-vc: ") != std::string::npos);
        CHECK(text.find("# expect-fvs: ") != std::string::npos);
        CHECK_NOTHROW(read_instance_file((a / name).string()));
    }
    auto none = scratch("gen_none");
    auto r = run({"gen", "--out", none.string(), "--count", "0"});
    CHECK(r.code == cli::exit_yes);
    CHECK(r.report()["files"].empty());
    CHECK(run({"gen", "--out", none.string(), "--t", "2", "--max-colours", "3"}).code == cli::exit_error);

    auto checked = run({"check", a.string()});
    CHECK(checked.code == cli::exit_yes);
    CHECK(checked.report()["ok"] == true);
    CHECK(checked.report()["instances"] == 4);
}

TEST_CASE("check compares every algorithm and the goldens")
{
    auto r = run({"check", corpus_dir(), "--random", "20", "--seed", "5"});
    CHECK(r.code == cli::exit_yes);
    CHECK(r.report()["failures"].empty());

    auto dir = scratch("check");
    auto text = slurp(corpus_dir() + "/k3.fgr");
    auto pos = text.find("# expect-vc: yes");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 16, "# expect-vc: no");
    write(dir / "wrong.fgr", text);
    auto wrong = run({"check", dir.string()});
    CHECK(wrong.code == cli::exit_no);
    CHECK(wrong.report()["ok"] == false);
    CHECK_FALSE(wrong.report()["failures"].empty());
}
