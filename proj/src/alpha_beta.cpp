#include <fair_cover/alpha_beta.hpp>
#include <fair_cover/fvs_fpt.hpp>
#include <fair_cover/oracle.hpp>
#include <fair_cover/vc_kernel.hpp>

#include <atomic>
#include <bit>
#include <charconv>
#include <mutex>
#include <numeric>
#include <thread>

namespace fair_cover
{
    namespace
    {
        auto parse_long(std::string_view text) -> long
        {
            long value = 0;
            auto [end, error] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (text.empty() || error != std::errc{} || end != text.data() + text.size() || value < 0)
                throw InputError("not a non-negative rational: '" + std::string(text) + "'");
            return value;
        }

        auto floor_div(long a, long b) -> long
        {
            return a / b;     // a >= 0, b > 0
        }
    }

    auto Rational::parse(std::string_view text) -> Rational
    {
        Rational result;
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            result.num = parse_long(text.substr(0, slash));
            result.den = parse_long(text.substr(slash + 1));
        } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
            auto whole = text.substr(0, dot), fraction = text.substr(dot + 1);
            if (whole.empty() || fraction.empty())
                throw InputError("malformed decimal: '" + std::string(text) + "'");
            if (fraction.size() > 12)
                throw InputError("too many decimal digits: '" + std::string(text) + "'");
            result.den = 1;
            for (std::size_t i = 0; i < fraction.size(); ++i)
                result.den *= 10;
            result.num = parse_long(whole) * result.den + parse_long(fraction);
        } else
            result.num = parse_long(text);
        if (result.den == 0)
            throw InputError("zero denominator: '" + std::string(text) + "'");
        long g = std::gcd(result.num, result.den);
        result.num /= g;
        result.den /= g;
        return result;
    }

    auto Rational::ceil_times(long k) const -> long
    {
        return floor_div(num * k + den - 1, den);
    }

    auto Rational::floor_times(long k) const -> long
    {
        return floor_div(num * k, den);
    }

    auto Rational::to_string() const -> std::string
    {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    auto operator<=> (const Rational & a, const Rational & b) -> std::strong_ordering
    {
        return a.num * b.den <=> b.num * a.den;
    }

    auto RelaxationSpec::check() const -> void
    {
        if (alpha > Rational{1, 1})
            throw InputError("alpha must be at most 1, got " + alpha.to_string());
        if (beta < Rational{1, 1})
            throw InputError("beta must be at least 1, got " + beta.to_string());
        for (int k : base.k)
            if (k < 0)
                throw InputError("budgets must be non-negative");
    }

    auto tuple_box_size(const RelaxationSpec & spec) -> long
    {
        long size = 1;
        for (int k : spec.base.k)
            size *= spec.beta.floor_times(k) - spec.alpha.ceil_times(k) + 1;
        return size;
    }

    auto enumerate_tuples(const RelaxationSpec & spec) -> std::vector<ColourBudget>
    {
        spec.check();
        int t = spec.base.size();
        long cap = spec.base.total();
        std::vector<int> low(t), high(t);
        for (int i = 0; i < t; ++i) {
            low[i] = static_cast<int>(spec.alpha.ceil_times(spec.base.k[i]));
            high[i] = static_cast<int>(spec.beta.floor_times(spec.base.k[i]));
        }
        // the cheapest completion of a prefix, for pruning against the sum cap
        std::vector<long> suffix_low(t + 1, 0);
        for (int i = t - 1; i >= 0; --i)
            suffix_low[i] = suffix_low[i + 1] + low[i];

        std::vector<ColourBudget> result;
        ColourBudget current{std::vector<int>(t)};
        auto visit = [&](auto & self, int i, long sum) -> void {
            if (i == t) {
                result.push_back(current);
                return;
            }
            for (int value = low[i]; value <= high[i] && sum + value + suffix_low[i + 1] <= cap; ++value) {
                current.k[i] = value;
                self(self, i + 1, sum + value);
            }
        };
        if (suffix_low[0] <= cap)
            visit(visit, 0, 0);
        return result;
    }

    auto solve_ab_fair(const ColouredGraph & graph, const RelaxationSpec & spec, const ExactSolver & exact,
            int threads) -> RelaxedOutcome
    {
        check_budget(graph, spec.base);
        RelaxedOutcome result;
        for (Vertex v = 1; v <= graph.n(); ++v)
            result.multi_colour = result.multi_colour || std::popcount(graph.colours(v)) > 1;

        auto tuples = enumerate_tuples(spec);
        result.tuples = static_cast<long>(tuples.size());
        std::vector<std::optional<SolveOutcome>> outcomes(tuples.size());

        auto first_yes = [&]() -> long {
            for (std::size_t i = 0; i < outcomes.size(); ++i)
                if (outcomes[i] && outcomes[i]->yes)
                    return static_cast<long>(i);
            return -1;
        };

        if (threads <= 1 || tuples.size() < 2) {
            for (std::size_t i = 0; i < tuples.size(); ++i) {
                outcomes[i] = exact(tuples[i]);
                if (outcomes[i]->yes)
                    break;
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::atomic<std::size_t> best{tuples.size()};
            std::mutex lock;
            std::exception_ptr failure;
            auto worker = [&] {
                while (true) {
                    std::size_t i = next++;
                    if (i >= tuples.size() || i > best.load())
                        return;
                    try {
                        auto outcome = exact(tuples[i]);
                        std::lock_guard guard(lock);
                        if (outcome.yes && i < best.load())
                            best = i;
                        outcomes[i] = std::move(outcome);
                    } catch (...) {
                        std::lock_guard guard(lock);
                        if (! failure)
                            failure = std::current_exception();
                        best = 0;
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w)
                pool.emplace_back(worker);
            for (auto & thread : pool)
                thread.join();
            if (failure)
                std::rethrow_exception(failure);
        }

        long winner = first_yes();
        for (std::size_t i = 0; i < outcomes.size(); ++i)
            if (outcomes[i] && (winner < 0 || static_cast<long>(i) <= winner)) {
                ++result.solved;
                result.outcome.stats.merge(outcomes[i]->stats);
            }
        if (winner >= 0) {
            result.outcome.yes = true;
            result.outcome.witness = outcomes[winner]->witness;
            result.tuple = tuples[winner];
        }
        return result;
    }

    auto solve_ab_fair(const ColouredGraph & graph, const RelaxationSpec & spec, Problem problem,
            const SolveOptions & options, int threads) -> RelaxedOutcome
    {
        ExactSolver exact = [&](const ColourBudget & budget) {
            return problem == Problem::vertex_cover ? solve_kernel_branch(graph, budget, options)
                                                    : solve_fvs_tcb(graph, budget, options);
        };
        return solve_ab_fair(graph, spec, exact, threads);
    }

    auto brute_force_ab_fair(const ColouredGraph & graph, const RelaxationSpec & spec, Problem problem,
            int max_n) -> SolveOutcome
    {
        spec.check();
        check_budget(graph, spec.base);
        int n = graph.n();
        if (n > max_n)
            throw InputError("instance too large for exhaustive search: n = " + std::to_string(n));
        int t = graph.t();
        long k = spec.base.total();
        std::vector<long> low(t), high(t);
        for (int i = 0; i < t; ++i) {
            low[i] = spec.alpha.ceil_times(spec.base.k[i]);
            high[i] = spec.beta.floor_times(spec.base.k[i]);
        }

        SolveOutcome outcome;
        // increasing size, then lexicographic within a size: the witness is deterministic
        for (int size = 0; size <= std::min<long>(n, k) && ! outcome.yes; ++size) {
            std::vector<int> pick(size);
            std::iota(pick.begin(), pick.end(), 1);
            while (true) {
                auto counts = colour_counts(graph, pick);
                bool fair = true;
                for (int i = 0; i < t && fair; ++i)
                    fair = counts[i] >= low[i] && counts[i] <= high[i];
                bool valid = fair && (problem == Problem::vertex_cover ? is_vertex_cover(graph, pick) : is_fvs(graph, pick));
                if (valid) {
                    outcome.yes = true;
                    outcome.witness = pick;
                    break;
                }
                int i = size - 1;
                while (i >= 0 && pick[i] == n - size + i + 1)
                    --i;
                if (i < 0)
                    break;
                ++pick[i];
                for (int j = i + 1; j < size; ++j)
                    pick[j] = pick[j - 1] + 1;
            }
        }
        return outcome;
    }
}
