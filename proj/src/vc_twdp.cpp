#include <fair_cover/vc_twdp.hpp>

#include "bag_mask.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace fair_cover
{
    namespace
    {
        using State = std::pair<std::uint64_t, std::uint64_t>;
        using detail::position;
        using detail::insert_bit;
        using detail::remove_bit;

        auto counts_of(const ColouredGraph & graph, const VertexSet & bag, std::uint64_t mask) -> std::vector<int>
        {
            std::vector<int> counts(graph.t(), 0);
            for (; mask; mask &= mask - 1)
                for (ColourSet c = graph.colours(bag[std::countr_zero(mask)]); c; c &= c - 1)
                    ++counts[std::countr_zero(c)];
            return counts;
        }

        auto normalize(std::vector<State> & states) -> void
        {
            std::sort(states.begin(), states.end());
            states.erase(std::unique(states.begin(), states.end()), states.end());
        }

        auto subtract_colours(const BudgetIndex & index, std::uint64_t r, ColourSet colours) -> std::uint64_t
        {
            auto values = index.decode(r);
            for (; colours; colours &= colours - 1)
                --values[std::countr_zero(colours)];
            return index.encode(values);
        }

        class VcDp
        {
            public:
                VcDp(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
                        const SolveOptions & options) :
                    _graph(graph), _ntd(ntd), _index(budget.k), _options(options)
                {
                }

                auto run(bool keep_all) -> std::vector<VcTable>
                {
                    std::vector<VcTable> tables(_ntd.size());
                    for (int x = 0; x < _ntd.size(); ++x) {
                        _options.check_time();
                        tables[x] = compute(x, tables);
                        _cells += static_cast<long>(tables[x].states.size());
                        if (! keep_all)
                            for (int c : _ntd.nodes[x].children)
                                if (c >= 0)
                                    tables[c] = {};
                    }
                    return tables;
                }

                auto witness(const std::vector<VcTable> & tables, std::uint64_t root_r) const -> VertexSet
                {
                    VertexSet solution;
                    std::vector<std::tuple<int, std::uint64_t, std::uint64_t>> stack{{_ntd.root(), 0, root_r}};
                    while (! stack.empty()) {
                        auto [x, s, r] = stack.back();
                        stack.pop_back();
                        auto & node = _ntd.nodes[x];
                        for (std::uint64_t m = s; m; m &= m - 1)
                            solution.push_back(node.bag[std::countr_zero(m)]);

                        int y = node.children[0];
                        switch (node.kind) {
                            case NiceKind::leaf:
                                break;
                            case NiceKind::introduce_vertex: {
                                int p = position(node.bag, node.vertex);
                                bool taken = (s >> p) & 1U;
                                stack.emplace_back(y, remove_bit(s, p), taken ? subtract_colours(_index, r, _graph.colours(node.vertex)) : r);
                                break;
                            }
                            case NiceKind::forget: {
                                int p = position(_ntd.nodes[y].bag, node.vertex);
                                std::uint64_t with_v = insert_bit(s, p, true);
                                stack.emplace_back(y, tables[y].contains(with_v, r) ? with_v : insert_bit(s, p, false), r);
                                break;
                            }
                            case NiceKind::introduce_edge:
                                stack.emplace_back(y, s, r);
                                break;
                            case NiceKind::join: {
                                int z = node.children[1];
                                auto base = counts_of(_graph, node.bag, s);
                                auto & ys = tables[y].states;
                                auto it = std::lower_bound(ys.begin(), ys.end(), State{s, 0});
                                bool found = false;
                                for (; it != ys.end() && it->first == s && ! found; ++it) {
                                    // b = r - a + c(S)
                                    auto a = _index.decode(it->second);
                                    auto target = _index.decode(r);
                                    std::vector<int> b(a.size());
                                    bool ok = true;
                                    for (std::size_t i = 0; i < a.size(); ++i) {
                                        b[i] = target[i] - a[i] + base[i];
                                        ok = ok && b[i] >= 0 && b[i] <= _index.bounds()[i];
                                    }
                                    if (! ok)
                                        continue;
                                    auto bi = _index.encode(b);
                                    if (tables[z].contains(s, bi)) {
                                        stack.emplace_back(y, s, it->second);
                                        stack.emplace_back(z, s, bi);
                                        found = true;
                                    }
                                }
                                if (! found)
                                    throw InternalError("vertex cover DP replay found no join predecessor");
                                break;
                            }
                        }
                    }
                    return sorted_unique(std::move(solution));
                }

                auto cells() const -> long { return _cells; }

            private:
                const ColouredGraph & _graph;
                const NiceTreeDecomposition & _ntd;
                BudgetIndex _index;
                const SolveOptions & _options;
                long _cells = 0;

                auto compute(int x, const std::vector<VcTable> & tables) const -> VcTable
                {
                    auto & node = _ntd.nodes[x];
                    std::vector<State> out;
                    switch (node.kind) {
                        case NiceKind::leaf:
                            out.emplace_back(0, 0);
                            break;

                        case NiceKind::introduce_vertex: {
                            int p = position(node.bag, node.vertex);
                            ColourSet colours = _graph.colours(node.vertex);
                            for (auto [s, r] : tables[node.children[0]].states) {
                                out.emplace_back(insert_bit(s, p, false), r);
                                if (auto taken = _index.add_colours(r, colours))
                                    out.emplace_back(insert_bit(s, p, true), *taken);
                            }
                            break;
                        }

                        case NiceKind::forget: {
                            auto & child = _ntd.nodes[node.children[0]];
                            int p = position(child.bag, node.vertex);
                            for (auto [s, r] : tables[node.children[0]].states)
                                out.emplace_back(remove_bit(s, p), r);
                            break;
                        }

                        case NiceKind::introduce_edge: {
                            std::uint64_t need = (std::uint64_t{1} << position(node.bag, node.edge.first))
                                | (std::uint64_t{1} << position(node.bag, node.edge.second));
                            for (auto state : tables[node.children[0]].states)
                                if (state.first & need)
                                    out.push_back(state);
                            break;
                        }

                        case NiceKind::join: {
                            auto & ys = tables[node.children[0]].states;
                            auto & zs = tables[node.children[1]].states;
                            std::size_t i = 0, j = 0;
                            while (i < ys.size() && j < zs.size()) {
                                if (ys[i].first < zs[j].first) { ++i; continue; }
                                if (zs[j].first < ys[i].first) { ++j; continue; }
                                std::uint64_t s = ys[i].first;
                                std::size_t i_end = i, j_end = j;
                                while (i_end < ys.size() && ys[i_end].first == s) ++i_end;
                                while (j_end < zs.size() && zs[j_end].first == s) ++j_end;
                                auto base = counts_of(_graph, node.bag, s);
                                for (std::size_t a = i; a < i_end; ++a) {
                                    _options.check_time();
                                    for (std::size_t b = j; b < j_end; ++b)
                                        if (auto r = _index.combine(ys[a].second, zs[b].second, base))
                                            out.emplace_back(s, *r);
                                }
                                i = i_end;
                                j = j_end;
                            }
                            break;
                        }
                    }
                    normalize(out);
                    return VcTable{std::move(out)};
                }
        };
    }

    BudgetIndex::BudgetIndex(std::vector<int> bounds) :
        _bounds(std::move(bounds))
    {
        for (int b : _bounds) {
            if (b < 0)
                throw InputError("negative budget entry");
            _stride.push_back(_size);
            if (_size > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(b + 1))
                throw InputError("budget space too large to index");
            _size *= static_cast<std::uint64_t>(b + 1);
        }
    }

    auto BudgetIndex::encode(std::span<const int> r) const -> std::uint64_t
    {
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < _bounds.size(); ++i)
            index += static_cast<std::uint64_t>(r[i]) * _stride[i];
        return index;
    }

    auto BudgetIndex::decode(std::uint64_t index) const -> std::vector<int>
    {
        std::vector<int> r(_bounds.size());
        for (std::size_t i = 0; i < _bounds.size(); ++i)
            r[i] = component(index, static_cast<int>(i));
        return r;
    }

    auto BudgetIndex::add_colours(std::uint64_t index, ColourSet colours) const -> std::optional<std::uint64_t>
    {
        for (; colours; colours &= colours - 1) {
            int i = std::countr_zero(colours);
            if (component(index, i) >= _bounds[i])
                return std::nullopt;
            index += _stride[i];
        }
        return index;
    }

    auto BudgetIndex::combine(std::uint64_t a, std::uint64_t b, std::span<const int> base) const -> std::optional<std::uint64_t>
    {
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < _bounds.size(); ++i) {
            int value = component(a, static_cast<int>(i)) + component(b, static_cast<int>(i)) - base[i];
            if (value < 0 || value > _bounds[i])
                return std::nullopt;
            index += static_cast<std::uint64_t>(value) * _stride[i];
        }
        return index;
    }

    auto VcTable::contains(std::uint64_t s, std::uint64_t r) const -> bool
    {
        return std::binary_search(states.begin(), states.end(), State{s, r});
    }

    auto run_vc_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options, bool keep_tables) -> VcDpResult
    {
        check_budget(graph, budget);
        if (auto problems = validate(ntd, graph); ! problems.empty())
            throw InputError("invalid nice tree decomposition: " + problems.front());
        if (ntd.width() + 1 > 63)
            throw InputError("bags larger than 63 vertices are not supported");

        VcDp dp(graph, ntd, budget, options);
        VcDpResult result;
        result.tables = dp.run(keep_tables || options.want_witness);
        std::uint64_t target = BudgetIndex(budget.k).encode(budget.k);

        auto & outcome = result.outcome;
        outcome.yes = result.tables[ntd.root()].contains(0, target);
        outcome.stats.dp_cells = dp.cells();
        outcome.stats.dp_nodes = ntd.size();
        outcome.stats.width = ntd.width();
        if (outcome.yes && options.want_witness)
            outcome.witness = dp.witness(result.tables, target);
        if (! keep_tables)
            result.tables.clear();
        return result;
    }

    auto solve_vc_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options) -> SolveOutcome
    {
        return run_vc_tw(graph, ntd, budget, options, false).outcome;
    }
}
