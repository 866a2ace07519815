#include "commands.hpp"

#include <fair_cover/alpha_beta.hpp>
#include <fair_cover/fvs_fpt.hpp>
#include <fair_cover/instance_io.hpp>
#include <fair_cover/oracle.hpp>
#include <fair_cover/random.hpp>
#include <fair_cover/vc_branch.hpp>
#include <fair_cover/vc_kernel.hpp>
#include <fair_cover/vc_twdp.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace fair_cover::cli
{
    namespace
    {
        using nlohmann::json;
        namespace fs = std::filesystem;

        constexpr int schema_version = 1;

        struct SolveArgs
        {
            std::string file;
            std::string algo = "auto";
            std::string td;
            std::string td_fallback = "fvs";
            std::string alpha, beta;
            bool witness = false;
            bool stats = false;
            bool no_reduce = false;
            long timeout_ms = 0;
        };

        auto answer_string(bool yes) -> std::string
        {
            return yes ? "yes" : "no";
        }

        auto stats_json(const SolveStats & stats) -> json
        {
            json j = json::object();
            if (stats.branch_calls > 0) {
                j["branch_nodes"] = stats.branch_nodes;
                j["branch_calls"] = stats.branch_calls;
            }
            if (stats.dp_nodes > 0) {
                j["dp_nodes"] = stats.dp_nodes;
                j["dp_cells"] = stats.dp_cells;
                j["width"] = stats.width;
            }
            if (stats.max_family_size > 0) {
                j["max_family_size"] = stats.max_family_size;
                j["reduce_calls"] = stats.reduce_calls;
            }
            return j;
        }

        auto instance_json(const Instance & instance) -> json
        {
            return {
                {"digest", instance_digest(instance)},
                {"n", instance.graph.n()},
                {"m", instance.graph.m()},
                {"t", instance.graph.t()},
                {"budget", instance.budget.k},
            };
        }

        auto algorithms_for(Problem problem) -> std::vector<std::string>
        {
            if (problem == Problem::vertex_cover)
                return {"branch", "kernel+branch", "twdp", "oracle", "auto"};
            return {"twdp", "tcb", "oracle", "auto"};
        }

        auto resolve_algo(Problem problem, const std::string & algo) -> std::string
        {
            auto known = algorithms_for(problem);
            if (std::find(known.begin(), known.end(), algo) == known.end())
                throw InputError("unknown algorithm '" + algo + "' for " + std::string(to_string(problem)));
            if (algo == "auto")
                return problem == Problem::vertex_cover ? "kernel+branch" : "tcb";
            return algo;
        }

        // Decomposition used by twdp; built once and shared by every budget tuple.
        auto decomposition_for(Problem problem, const ColouredGraph & graph, const SolveArgs & args) -> NiceTreeDecomposition
        {
            if (! args.td.empty())
                return make_nice(read_td_file(args.td, graph), graph);
            if (problem == Problem::vertex_cover && graph.max_degree() <= 2)
                return td_paths_cycles(graph);
            if (args.td_fallback == "fvs")
                return td_from_fvs(graph, approx_fvs_2(graph).fvs);
            if (args.td_fallback == "min-degree")
                return make_nice(td_min_degree(graph), graph);
            throw InputError("twdp needs --td for this graph (or --td-fallback fvs|min-degree)");
        }

        struct Solver
        {
            Problem problem;
            std::string algo;
            const ColouredGraph & graph;
            SolveOptions options;
            FvsOptions fvs_options;
            std::optional<NiceTreeDecomposition> ntd;
            json extra = json::object();

            auto operator() (const ColourBudget & budget) -> SolveOutcome
            {
                if (algo == "oracle")
                    return brute_force_fair(graph, budget, problem);
                if (problem == Problem::vertex_cover) {
                    if (algo == "branch")
                        return solve_branching(graph, budget, options);
                    if (algo == "kernel+branch")
                        return solve_kernel_branch(graph, budget, options);
                    return solve_vc_tw(graph, *ntd, budget, options);
                }
                if (algo == "tcb") {
                    auto report = run_fvs_tcb(graph, budget, options, fvs_options);
                    extra["approx_fvs_size"] = report.approx.fvs.size();
                    extra["cutoff"] = report.cutoff;
                    return report.outcome;
                }
                return solve_fvs_tw(graph, *ntd, budget, options, fvs_options);
            }
        };

        auto check_witness(Problem problem, const ColouredGraph & graph, const ColourBudget & budget,
                const SolveOutcome & outcome) -> void
        {
            if (outcome.yes && outcome.witness && ! is_fair_solution(problem, graph, budget, *outcome.witness))
                throw InternalError("solver returned an invalid witness");
        }

        auto run_solve(Problem problem, const std::string & command, const SolveArgs & args, std::ostream & out) -> int
        {
            auto started = std::chrono::steady_clock::now();
            auto instance = read_instance_file(args.file);
            auto algo = resolve_algo(problem, args.algo);

            std::optional<Deadline> deadline;
            if (args.timeout_ms > 0)
                deadline.emplace(std::chrono::milliseconds(args.timeout_ms));

            Solver solver{problem, algo, instance.graph, {}, {}, std::nullopt};
            solver.options.want_witness = args.witness;
            solver.options.deadline = deadline ? &*deadline : nullptr;
            solver.fvs_options.use_reduce = ! args.no_reduce;

            json report = {
                {"schema", schema_version},
                {"command", command},
                {"problem", to_string(problem)},
                {"algo", algo},
                {"instance", instance_json(instance)},
            };

            auto elapsed = [&] {
                return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
            };

            try {
                if (algo == "twdp")
                    solver.ntd = decomposition_for(problem, instance.graph, args);

                SolveOutcome outcome;
                ColourBudget used = instance.budget;
                if (! args.alpha.empty() || ! args.beta.empty()) {
                    RelaxationSpec spec;
                    spec.alpha = args.alpha.empty() ? Rational{1, 1} : Rational::parse(args.alpha);
                    spec.beta = args.beta.empty() ? Rational{1, 1} : Rational::parse(args.beta);
                    spec.base = instance.budget;
                    // the solver object carries per-call notes, so tuples run one at a time here
                    auto relaxed = solve_ab_fair(instance.graph, spec, std::ref(solver), 1);
                    outcome = relaxed.outcome;
                    json relaxation = {
                        {"alpha", spec.alpha.to_string()},
                        {"beta", spec.beta.to_string()},
                        {"tuples", relaxed.tuples},
                        {"solved", relaxed.solved},
                        {"multi_colour", relaxed.multi_colour},
                    };
                    if (relaxed.tuple) {
                        relaxation["tuple"] = relaxed.tuple->k;
                        used = *relaxed.tuple;
                    }
                    report["relaxation"] = relaxation;
                } else
                    outcome = solver(instance.budget);

                check_witness(problem, instance.graph, used, outcome);
                report["answer"] = answer_string(outcome.yes);
                if (args.witness && outcome.witness)
                    report["witness"] = *outcome.witness;
                if (args.stats) {
                    auto stats = stats_json(outcome.stats);
                    stats.update(solver.extra);
                    report["stats"] = stats;
                }
                report["time_ms"] = elapsed();
                out << report.dump(2) << "\n";
                return outcome.yes ? exit_yes : exit_no;
            } catch (const Timeout &) {
                report["answer"] = "timeout";
                report["time_ms"] = elapsed();
                out << report.dump(2) << "\n";
                return exit_timeout;
            }
        }

        auto run_kernelize(const std::string & file, const std::string & output, std::ostream & out) -> int
        {
            auto instance = read_instance_file(file);
            auto result = kernelize(instance.graph, instance.budget);
            json report = {
                {"schema", schema_version},
                {"command", "kernelize"},
                {"instance", instance_json(instance)},
                {"bound_v", result.bound_v},
                {"bound_e", result.bound_e},
                {"rounds", result.rounds},
                {"initial_reserve", result.initial_reserve.size()},
            };
            if (result.no) {
                report["answer"] = "no";
                out << report.dump(2) << "\n";
                return exit_no;
            }
            report["answer"] = "kernel";
            report["kernel"] = instance_json(result.kernel);
            report["forced"] = result.forced;
            report["removed_isolated"] = result.removed_isolated.size();
            report["original"] = result.original;
            if (! output.empty())
                write_instance_file(output, result.kernel);
            out << report.dump(2) << "\n";
            return exit_yes;
        }

        auto run_oracle(Problem problem, const std::string & file, bool all, std::ostream & out) -> int
        {
            auto instance = read_instance_file(file);
            json report = {
                {"schema", schema_version},
                {"command", "oracle"},
                {"problem", to_string(problem)},
                {"algo", "oracle"},
                {"instance", instance_json(instance)},
            };
            bool yes;
            if (all) {
                auto solutions = brute_force_all_fair(instance.graph, instance.budget, problem);
                yes = ! solutions.empty();
                report["solutions"] = solutions;
                if (yes)
                    report["witness"] = solutions.front();
            } else {
                auto outcome = brute_force_fair(instance.graph, instance.budget, problem);
                yes = outcome.yes;
                if (yes)
                    report["witness"] = *outcome.witness;
            }
            report["answer"] = answer_string(yes);
            out << report.dump(2) << "\n";
            return yes ? exit_yes : exit_no;
        }

        struct GenArgs
        {
            int n = 8;
            double p = 0.3;
            int t = 2;
            int max_colours = 1;
            int count = 10;
            std::uint64_t seed = 1;
            long max_budget = 4;
            std::string problem = "vc";
            std::string out_dir = ".";
            bool golden = false;
        };

        auto golden_lines(const Instance & instance) -> std::string
        {
            std::string text;
            for (Problem problem : {Problem::vertex_cover, Problem::feedback_vertex_set}) {
                bool yes = brute_force_fair(instance.graph, instance.budget, problem).yes;
                text += "# expect-" + std::string(to_string(problem)) + ": " + answer_string(yes) + "\n";
            }
            return text;
        }

        auto run_gen(const GenArgs & args, std::ostream & out) -> int
        {
            if (args.n < 1 || args.t < 1 || args.t > max_palette || args.max_colours < 1 || args.max_colours > args.t
                    || args.p < 0 || args.p > 1 || args.count < 0)
                throw InputError("invalid generator parameters");
            if (args.problem != "vc" && args.problem != "fvs")
                throw InputError("--problem must be vc or fvs");
            if (args.golden && args.n > OracleConfig{}.max_n)
                throw InputError("--golden needs n <= " + std::to_string(OracleConfig{}.max_n));
            fs::create_directories(args.out_dir);

            Rng rng(args.seed);
            json files = json::array();
            for (int i = 0; i < args.count; ++i) {
                auto graph_seed = rng();
                Instance instance{random_instance(args.n, args.p, args.t, args.max_colours, graph_seed), {}};
                // alternate planted (YES) and sampled budgets so both answers show up
                instance.budget = i % 2 == 0 ? planted_budget(instance.graph, args.problem == "fvs", rng)
                                             : random_budget(instance.graph, args.max_budget, rng);
                std::ostringstream name;
                name << "gen-" << args.seed << "-" << std::setw(4) << std::setfill('0') << i << ".fgr";
                auto path = (fs::path(args.out_dir) / name.str()).string();
                std::string text = args.golden ? golden_lines(instance) : std::string();
                text += serialize_instance(instance);
                std::ofstream file(path, std::ios::binary);
                if (! (file << text))
                    throw InputError("cannot write " + path);
                files.push_back(path);
            }
            json report = {
                {"schema", schema_version},
                {"command", "gen"},
                {"files", files},
            };
            out << report.dump(2) << "\n";
            return exit_yes;
        }

        // Reads "# expect-vc: yes" style goldens from the raw file text.
        auto read_goldens(const std::string & text) -> std::map<Problem, bool>
        {
            std::map<Problem, bool> goldens;
            std::istringstream lines(text);
            std::string line;
            while (std::getline(lines, line))
                for (Problem problem : {Problem::vertex_cover, Problem::feedback_vertex_set}) {
                    std::string prefix = "# expect-" + std::string(to_string(problem)) + ":";
                    if (line.rfind(prefix, 0) != 0)
                        continue;
                    std::istringstream value(line.substr(prefix.size()));
                    std::string word;
                    value >> word;
                    if (word != "yes" && word != "no")
                        throw InputError("bad golden line: " + line);
                    goldens[problem] = word == "yes";
                }
            return goldens;
        }

        struct CheckCase
        {
            std::string name;
            Instance instance;
            std::map<Problem, bool> goldens;
            std::string load_error;
        };

        struct CheckResult
        {
            json record;
            std::vector<std::string> failures;
        };

        auto check_one(const CheckCase & item, long timeout_ms) -> CheckResult
        {
            CheckResult result;
            result.record = {{"instance", item.name}};
            if (! item.load_error.empty()) {
                result.failures.push_back(item.name + ": " + item.load_error);
                result.record["error"] = item.load_error;
                return result;
            }
            auto & graph = item.instance.graph;
            auto & budget = item.instance.budget;
            for (Problem problem : {Problem::vertex_cover, Problem::feedback_vertex_set}) {
                std::string pname(to_string(problem));
                json answers = json::object();
                std::vector<std::pair<std::string, bool>> seen;
                for (auto & algo : algorithms_for(problem)) {
                    if (algo == "auto" || (algo == "oracle" && graph.n() > OracleConfig{}.max_n))
                        continue;
                    std::optional<Deadline> deadline;
                    if (timeout_ms > 0)
                        deadline.emplace(std::chrono::milliseconds(timeout_ms));
                    Solver solver{problem, algo, graph, {}, {}, std::nullopt};
                    solver.options.want_witness = true;
                    solver.options.deadline = deadline ? &*deadline : nullptr;
                    try {
                        if (algo == "twdp")
                            solver.ntd = decomposition_for(problem, graph, SolveArgs{});
                        auto outcome = solver(budget);
                        if (outcome.yes && (! outcome.witness || ! is_fair_solution(problem, graph, budget, *outcome.witness)))
                            result.failures.push_back(item.name + ": " + pname + " " + algo + " returned an invalid witness");
                        answers[algo] = answer_string(outcome.yes);
                        seen.emplace_back(algo, outcome.yes);
                    } catch (const Timeout &) {
                        answers[algo] = "timeout";
                    } catch (const std::exception & e) {
                        answers[algo] = "error";
                        result.failures.push_back(item.name + ": " + pname + " " + algo + " failed: " + e.what());
                    }
                }
                if (auto it = item.goldens.find(problem); it != item.goldens.end()) {
                    answers["golden"] = answer_string(it->second);
                    seen.emplace_back("golden", it->second);
                }
                for (std::size_t i = 0; i < seen.size(); ++i)
                    for (std::size_t j = i + 1; j < seen.size(); ++j)
                        if (seen[i].second != seen[j].second)
                            result.failures.push_back(item.name + ": " + pname + " mismatch " + seen[i].first + "="
                                    + answer_string(seen[i].second) + " " + seen[j].first + "=" + answer_string(seen[j].second));
                result.record[pname] = answers;
            }
            result.record["ok"] = result.failures.empty();
            return result;
        }

        auto run_check(const std::string & dir, int random_count, std::uint64_t seed, long timeout_ms,
                std::ostream & out, std::ostream & err) -> int
        {
            std::vector<CheckCase> cases;
            if (! dir.empty()) {
                if (! fs::is_directory(dir))
                    throw InputError("not a directory: " + dir);
                std::vector<fs::path> paths;
                for (auto & entry : fs::directory_iterator(dir))
                    if (entry.is_regular_file() && entry.path().extension() == ".fgr")
                        paths.push_back(entry.path());
                std::sort(paths.begin(), paths.end());
                for (auto & path : paths) {
                    CheckCase item;
                    item.name = path.filename().string();
                    try {
                        std::ifstream file(path, std::ios::binary);
                        std::stringstream buffer;
                        buffer << file.rdbuf();
                        item.instance = parse_instance(buffer.str());
                        item.goldens = read_goldens(buffer.str());
                    } catch (const std::exception & e) {
                        item.load_error = e.what();
                    }
                    cases.push_back(std::move(item));
                }
            }
            Rng rng(seed);
            for (int i = 0; i < random_count; ++i) {
                CheckCase item;
                item.name = "random-" + std::to_string(seed) + "-" + std::to_string(i);
                int n = 3 + static_cast<int>(rng() % 6);
                int t = 1 + static_cast<int>(rng() % 2);
                item.instance.graph = random_instance(n, 0.2 + 0.1 * static_cast<double>(rng() % 4), t, t, rng());
                item.instance.budget = random_budget(item.instance.graph, 3, rng);
                cases.push_back(std::move(item));
            }

            std::vector<CheckResult> results(cases.size());
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < cases.size(); i = next++)
                    results[i] = check_one(cases[i], timeout_ms);
            };
            std::vector<std::thread> pool;
            int threads = std::max(1, std::min<int>(worker_count(), static_cast<int>(cases.size())));
            for (int w = 0; w < threads; ++w)
                pool.emplace_back(worker);
            for (auto & thread : pool)
                thread.join();

            json records = json::array(), failures = json::array();
            for (auto & result : results) {
                records.push_back(result.record);
                for (auto & failure : result.failures) {
                    err << "check: " << failure << "\n";
                    failures.push_back(failure);
                }
            }
            json report = {
                {"schema", schema_version},
                {"command", "check"},
                {"instances", cases.size()},
                {"results", records},
                {"failures", failures},
                {"ok", failures.empty()},
            };
            out << report.dump(2) << "\n";
            return failures.empty() ? exit_yes : exit_no;
        }

        auto problem_from(const std::string & name) -> Problem
        {
            if (name == "vc")
                return Problem::vertex_cover;
            if (name == "fvs")
                return Problem::feedback_vertex_set;
            throw InputError("problem must be vc or fvs, got '" + name + "'");
        }

        auto add_solve_options(CLI::App & command, SolveArgs & args) -> void
        {
            command.add_option("file", args.file, "instance in .fgr format")->required();
            command.add_option("--algo", args.algo, "solver to use");
            command.add_option("--td", args.td, "tree decomposition in PACE .td format (twdp)");
            command.add_option("--td-fallback", args.td_fallback, "decomposition when --td is absent: fvs, min-degree or none")
                ->check(CLI::IsMember({"fvs", "min-degree", "none"}));
            command.add_option("--alpha", args.alpha, "lower relaxation factor, e.g. 1/2");
            command.add_option("--beta", args.beta, "upper relaxation factor, e.g. 3/2");
            command.add_flag("--witness", args.witness, "report a solution when the answer is yes");
            command.add_flag("--stats", args.stats, "report solver counters");
            command.add_option("--timeout-ms", args.timeout_ms, "give up after this many milliseconds (exit 3)");
        }
    }

    auto worker_count() -> int
    {
        if (const char * value = std::getenv("FAIR_COVER_THREADS")) {
            int n = std::atoi(value);
            if (n > 0)
                return n;
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{"Exact solvers for colour-budgeted vertex cover and feedback vertex set", "fair-cover"};
        app.require_subcommand(1);

        SolveArgs vc_args, fvs_args;
        auto * solve_vc = app.add_subcommand("solve-vc", "decide fair vertex cover");
        add_solve_options(*solve_vc, vc_args);
        auto * solve_fvs = app.add_subcommand("solve-fvs", "decide fair feedback vertex set");
        add_solve_options(*solve_fvs, fvs_args);
        solve_fvs->add_flag("--no-reduce", fvs_args.no_reduce, "keep partition families unreduced");

        std::string kernel_file, kernel_out;
        auto * kernel = app.add_subcommand("kernelize", "apply the vertex cover kernel");
        kernel->add_option("file", kernel_file)->required();
        kernel->add_option("-o,--output", kernel_out, "write the kernel as .fgr");

        std::string oracle_file, oracle_problem = "vc";
        bool oracle_all = false;
        auto * oracle = app.add_subcommand("oracle", "exhaustive reference solver");
        oracle->add_option("file", oracle_file)->required();
        oracle->add_option("--problem", oracle_problem)->check(CLI::IsMember({"vc", "fvs"}));
        oracle->add_flag("--all", oracle_all, "list every fair solution");

        GenArgs gen_args;
        auto * gen = app.add_subcommand("gen", "write random instances");
        gen->add_option("--n", gen_args.n);
        gen->add_option("--p", gen_args.p, "edge probability");
        gen->add_option("--t", gen_args.t, "palette size");
        gen->add_option("--max-colours", gen_args.max_colours);
        gen->add_option("--count", gen_args.count);
        gen->add_option("--seed", gen_args.seed);
        gen->add_option("--max-budget", gen_args.max_budget, "total of the sampled budgets");
        gen->add_option("--problem", gen_args.problem, "planted budgets are solutions of this problem")
            ->check(CLI::IsMember({"vc", "fvs"}));
        gen->add_option("--out", gen_args.out_dir)->required();
        gen->add_flag("--golden", gen_args.golden, "add expect-vc/expect-fvs lines from the oracle");

        std::string check_dir;
        int check_random = 0;
        std::uint64_t check_seed = 1;
        long check_timeout = 0;
        auto * check = app.add_subcommand("check", "run every algorithm and compare");
        check->add_option("dir", check_dir, "directory of .fgr files");
        check->add_option("--random", check_random, "also check this many random instances");
        check->add_option("--seed", check_seed);
        check->add_option("--timeout-ms", check_timeout, "per solver run");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? exit_yes : exit_error;
        }

        try {
            if (*solve_vc)
                return run_solve(Problem::vertex_cover, "solve-vc", vc_args, out);
            if (*solve_fvs)
                return run_solve(Problem::feedback_vertex_set, "solve-fvs", fvs_args, out);
            if (*kernel)
                return run_kernelize(kernel_file, kernel_out, out);
            if (*oracle)
                return run_oracle(problem_from(oracle_problem), oracle_file, oracle_all, out);
            if (*gen)
                return run_gen(gen_args, out);
            if (*check)
                return run_check(check_dir, check_random, check_seed, check_timeout, out, err);
        } catch (const Timeout &) {
            err << "error: time limit exceeded\n";
            return exit_timeout;
        } catch (const std::exception & e) {
            err << "error: " << e.what() << "\n";
            return exit_error;
        }
        return exit_error;
    }
}
