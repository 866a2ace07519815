#include <fair_cover/fvs_twdp.hpp>
#include <fair_cover/vc_twdp.hpp>

#include "bag_mask.hpp"

#include <algorithm>
#include <bit>

namespace fair_cover
{
    namespace
    {
        using detail::insert_bit;
        using detail::masked;
        using detail::position;
        using detail::remove_bit;

        auto glue_row(std::span<const Label> row, int a, int b, std::vector<Label> & out) -> void
        {
            out.assign(row.begin(), row.end());
            Label from = out[b], to = out[a];
            for (auto & label : out)
                if (label == from)
                    label = to;
            canonicalize(out);
        }

        auto unit_family() -> PartitionFamily
        {
            FamilyBuilder builder({});
            builder.add({});
            return builder.finish();
        }

        auto row_index(const PartitionFamily & family, std::span<const Label> row) -> int
        {
            for (int i = 0; i < family.size(); ++i)
                if (std::equal(row.begin(), row.end(), family.row(i).begin()))
                    return i;
            return -1;
        }

        struct ReplayItem
        {
            int node;
            FvsKey key;
            std::vector<Label> row;
        };

        class FvsDp
        {
            public:
                FvsDp(const AugmentedInstance & augmented, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
                        const SolveOptions & options, const FvsOptions & fvs_options) :
                    _aug(augmented), _graph(augmented.graph), _ntd(ntd), _budget(budget),
                    _options(options), _fvs(fvs_options), _index(bounds(augmented)),
                    _tables(ntd.size()), _seen(ntd.size()), _seen_original(ntd.size())
                {
                }

                auto run() -> void
                {
                    bool keep = _fvs.keep_tables || _options.want_witness;
                    for (int x = 0; x < _ntd.size(); ++x) {
                        _options.check_time();
                        count_seen(x);
                        compute(x);
                        for (auto & [key, family] : _tables[x]) {
                            ++_stats.dp_cells;
                            _stats.max_family_size = std::max(_stats.max_family_size, static_cast<long>(family.size()));
                        }
                        // the root's child holds the accepting cells
                        if (! keep && x != _ntd.root())
                            for (int c : _ntd.nodes[x].children)
                                if (c >= 0)
                                    _tables[c] = {};
                    }
                    _stats.dp_nodes = _ntd.size();
                    _stats.width = _ntd.width();
                }

                auto accepting_key() const -> std::optional<FvsKey>
                {
                    int root = _ntd.root();
                    auto & top = _ntd.nodes[root];
                    if (top.kind != NiceKind::forget || top.vertex != _aug.v0)
                        throw InternalError("augmented decomposition root does not forget v0");
                    int y = top.children[0];
                    std::vector<int> target(_budget.size());
                    for (int i = 0; i < _budget.size(); ++i)
                        target[i] = _aug.colour_totals[i] - _budget.k[i] + 1;
                    std::uint64_t r = _index.encode(target);
                    for (int j1 = 1; j1 <= _graph.n(); ++j1) {
                        FvsKey key{1, j1, j1 - 1, r};
                        if (auto it = _tables[y].find(key); it != _tables[y].end() && ! it->second.empty())
                            return key;
                    }
                    return std::nullopt;
                }

                // Walks the stored tables from the accepting cell down to the leaves.
                auto replay(const FvsKey & accepted, VertexSet & kept, std::vector<Edge> & kept_e0) const -> void
                {
                    int y = _ntd.nodes[_ntd.root()].children[0];
                    std::vector<ReplayItem> stack{{y, accepted, {0}}};
                    std::vector<Label> scratch;
                    while (! stack.empty()) {
                        auto item = std::move(stack.back());
                        stack.pop_back();
                        auto & node = _ntd.nodes[item.node];
                        for (Vertex v : masked(node.bag, item.key.mask))
                            kept.push_back(v);
                        int c = node.children[0];
                        auto & key = item.key;

                        switch (node.kind) {
                            case NiceKind::leaf:
                                break;

                            case NiceKind::introduce_vertex: {
                                int p = position(node.bag, node.vertex);
                                FvsKey child{remove_bit(key.mask, p), key.j1, key.j2, key.r};
                                std::vector<Label> row = item.row;
                                if ((key.mask >> p) & 1U) {
                                    child.j1 -= 1;
                                    child.r = subtract(key.r, _graph.colours(node.vertex));
                                    row.erase(row.begin() + std::popcount(key.mask & ((std::uint64_t{1} << p) - 1)));
                                    canonicalize(row);
                                }
                                require(c, child, row);
                                stack.push_back({c, child, std::move(row)});
                                break;
                            }

                            case NiceKind::forget: {
                                int p = position(_ntd.nodes[c].bag, node.vertex);
                                FvsKey out_key{insert_bit(key.mask, p, false), key.j1, key.j2, key.r};
                                if (has(c, out_key, item.row)) {
                                    stack.push_back({c, out_key, item.row});
                                    break;
                                }
                                FvsKey in_key{insert_bit(key.mask, p, true), key.j1, key.j2, key.r};
                                auto & family = family_at(c, in_key);
                                int q = -1;
                                int pv = position(masked(_ntd.nodes[c].bag, in_key.mask), node.vertex);
                                for (int i = 0; i < family.size() && q < 0; ++i) {
                                    auto row = family.row(i);
                                    bool singleton = true;
                                    for (int j = 0; j < static_cast<int>(row.size()); ++j)
                                        singleton = singleton && (j == pv || row[j] != row[pv]);
                                    if (singleton)
                                        continue;
                                    scratch.assign(row.begin(), row.end());
                                    scratch.erase(scratch.begin() + pv);
                                    canonicalize(scratch);
                                    if (scratch == item.row)
                                        q = i;
                                }
                                if (q < 0)
                                    throw InternalError("feedback vertex set replay found no forget predecessor");
                                auto row = family.row(q);
                                stack.push_back({c, in_key, {row.begin(), row.end()}});
                                break;
                            }

                            case NiceKind::introduce_edge: {
                                auto [a, b] = node.edge;
                                auto ground = masked(node.bag, key.mask);
                                int pa = position(node.bag, a), pb = position(node.bag, b);
                                bool in_a = (key.mask >> pa) & 1U, in_b = (key.mask >> pb) & 1U;
                                bool v0_edge = b == _aug.v0;
                                if (! (in_a && in_b)) {
                                    stack.push_back({c, key, item.row});
                                    break;
                                }
                                if (v0_edge && has(c, key, item.row)) {
                                    stack.push_back({c, key, item.row});
                                    break;
                                }
                                FvsKey child{key.mask, key.j1, key.j2 - 1, key.r};
                                auto & family = family_at(c, child);
                                int ga = position(ground, a), gb = position(ground, b), q = -1;
                                for (int i = 0; i < family.size() && q < 0; ++i) {
                                    glue_row(family.row(i), ga, gb, scratch);
                                    if (scratch == item.row)
                                        q = i;
                                }
                                if (q < 0)
                                    throw InternalError("feedback vertex set replay found no edge predecessor");
                                if (v0_edge)
                                    kept_e0.emplace_back(a, b);
                                auto row = family.row(q);
                                stack.push_back({c, child, {row.begin(), row.end()}});
                                break;
                            }

                            case NiceKind::join: {
                                int z = node.children[1];
                                auto base = colour_counts(_graph, masked(node.bag, key.mask));
                                int size = std::popcount(key.mask);
                                bool found = false;
                                auto & ys = _tables[c];
                                for (auto it = ys.lower_bound(FvsKey{key.mask, 0, 0, 0});
                                        it != ys.end() && it->first.mask == key.mask && ! found; ++it) {
                                    auto & ky = it->first;
                                    FvsKey kz{key.mask, key.j1 + size - ky.j1, key.j2 - ky.j2, 0};
                                    auto rz = difference(key.r, ky.r, base);
                                    if (! rz)
                                        continue;
                                    kz.r = *rz;
                                    auto jt = _tables[z].find(kz);
                                    if (jt == _tables[z].end())
                                        continue;
                                    auto & fy = it->second;
                                    auto & fz = jt->second;
                                    scratch.resize(item.row.size());
                                    for (int i = 0; i < fy.size() && ! found; ++i)
                                        for (int j = 0; j < fz.size() && ! found; ++j) {
                                            meet_join_labels(fy.row(i), fz.row(j), scratch);
                                            if (scratch == item.row) {
                                                stack.push_back({c, ky, {fy.row(i).begin(), fy.row(i).end()}});
                                                stack.push_back({z, kz, {fz.row(j).begin(), fz.row(j).end()}});
                                                found = true;
                                            }
                                        }
                                }
                                if (! found)
                                    throw InternalError("feedback vertex set replay found no join predecessor");
                                break;
                            }
                        }
                    }
                }

                auto stats() const -> const SolveStats & { return _stats; }
                auto take_tables() -> std::vector<FvsTable> { return std::move(_tables); }

            private:
                const AugmentedInstance & _aug;
                const ColouredGraph & _graph;
                const NiceTreeDecomposition & _ntd;
                const ColourBudget & _budget;
                const SolveOptions & _options;
                const FvsOptions & _fvs;
                BudgetIndex _index;
                std::vector<FvsTable> _tables;
                std::vector<std::vector<int>> _seen, _seen_original;
                SolveStats _stats;

                static auto bounds(const AugmentedInstance & augmented) -> std::vector<int>
                {
                    std::vector<int> result;
                    for (int total : augmented.colour_totals)
                        result.push_back(total + 1);
                    return result;
                }

                auto subtract(std::uint64_t r, ColourSet colours) const -> std::uint64_t
                {
                    auto values = _index.decode(r);
                    for (; colours; colours &= colours - 1)
                        --values[std::countr_zero(colours)];
                    return _index.encode(values);
                }

                // r - ry + base, coordinate-wise and in range
                auto difference(std::uint64_t r, std::uint64_t ry, std::span<const int> base) const -> std::optional<std::uint64_t>
                {
                    auto a = _index.decode(r), b = _index.decode(ry);
                    for (std::size_t i = 0; i < a.size(); ++i) {
                        a[i] = a[i] - b[i] + base[i];
                        if (a[i] < 0 || a[i] > _index.bounds()[i])
                            return std::nullopt;
                    }
                    return _index.encode(a);
                }

                auto family_at(int node, const FvsKey & key) const -> const PartitionFamily &
                {
                    static const PartitionFamily none;
                    auto it = _tables[node].find(key);
                    return it == _tables[node].end() ? none : it->second;
                }

                auto has(int node, const FvsKey & key, const std::vector<Label> & row) const -> bool
                {
                    auto it = _tables[node].find(key);
                    return it != _tables[node].end() && row_index(it->second, row) >= 0;
                }

                auto require(int node, const FvsKey & key, const std::vector<Label> & row) const -> void
                {
                    if (! has(node, key, row))
                        throw InternalError("feedback vertex set replay lost a predecessor");
                }

                // c'(V_x), with and without v0
                auto count_seen(int x) -> void
                {
                    auto & node = _ntd.nodes[x];
                    int t = _graph.t();
                    auto & seen = _seen[x];
                    auto & original = _seen_original[x];
                    seen.assign(t, 0);
                    original.assign(t, 0);
                    int y = node.children[0];
                    switch (node.kind) {
                        case NiceKind::leaf:
                            break;
                        case NiceKind::introduce_vertex:
                            seen = _seen[y];
                            original = _seen_original[y];
                            for (int c : colour_list(_graph.colours(node.vertex))) {
                                ++seen[c - 1];
                                if (node.vertex != _aug.v0)
                                    ++original[c - 1];
                            }
                            break;
                        case NiceKind::forget:
                        case NiceKind::introduce_edge:
                            seen = _seen[y];
                            original = _seen_original[y];
                            break;
                        case NiceKind::join: {
                            int z = node.children[1];
                            bool has_v0 = std::binary_search(node.bag.begin(), node.bag.end(), _aug.v0);
                            for (int i = 0; i < t; ++i) {
                                seen[i] = _seen[y][i] + _seen[z][i];
                                original[i] = _seen_original[y][i] + _seen_original[z][i];
                            }
                            for (Vertex v : node.bag)
                                for (int c : colour_list(_graph.colours(v))) {
                                    --seen[c - 1];
                                    if (v != _aug.v0 || ! has_v0)
                                        --original[c - 1];
                                }
                            break;
                        }
                    }
                }

                // deletions so far must fit the budget and still be able to reach it
                auto admit(int x, const FvsKey & key) const -> bool
                {
                    if (_fvs.paranoid)
                        return true;
                    for (int i = 0; i < _graph.t(); ++i) {
                        int deleted = _seen[x][i] - _index.component(key.r, i);
                        int unseen = _aug.colour_totals[i] - _seen_original[x][i];
                        if (deleted < 0 || deleted > _budget.k[i] || deleted + unseen < _budget.k[i])
                            return false;
                    }
                    return true;
                }

                class Accumulator
                {
                    public:
                        Accumulator(const FvsDp & dp, int x) : _dp(dp), _x(x) { }

                        auto add(const FvsKey & key, const PartitionFamily & family) -> void
                        {
                            if (family.empty() || ! _dp.admit(_x, key))
                                return;
                            auto it = _cells.find(key);
                            if (it == _cells.end())
                                it = _cells.emplace(key, FamilyBuilder(family.ground())).first;
                            for (int i = 0; i < family.size(); ++i) {
                                auto row = family.row(i);
                                // every component must keep a forest: j2 = j1 - blocks
                                if (! _dp._fvs.paranoid && key.j2 != key.j1 - block_count(row))
                                    continue;
                                it->second.add(row);
                            }
                        }

                        auto finish(SolveStats & stats, bool use_reduce) -> FvsTable
                        {
                            FvsTable table;
                            for (auto & [key, builder] : _cells) {
                                auto family = builder.finish();
                                if (family.empty())
                                    continue;
                                int s = family.stride();
                                if (use_reduce && s >= 1 && family.size() > (1 << (s - 1))) {
                                    ++stats.reduce_calls;
                                    family = reduce(family);
                                }
                                table.emplace(key, std::move(family));
                            }
                            return table;
                        }

                    private:
                        const FvsDp & _dp;
                        int _x;
                        std::map<FvsKey, FamilyBuilder> _cells;
                };

                auto compute(int x) -> void
                {
                    auto & node = _ntd.nodes[x];
                    Accumulator out(*this, x);
                    int y = node.children[0];

                    switch (node.kind) {
                        case NiceKind::leaf:
                            out.add(FvsKey{0, 0, 0, 0}, unit_family());
                            break;

                        case NiceKind::introduce_vertex: {
                            Vertex v = node.vertex;
                            int p = position(node.bag, v);
                            for (auto & [key, family] : _tables[y]) {
                                _options.check_time();
                                if (v != _aug.v0)
                                    out.add(FvsKey{insert_bit(key.mask, p, false), key.j1, key.j2, key.r}, family);
                                if (auto r = _index.add_colours(key.r, _graph.colours(v)))
                                    out.add(FvsKey{insert_bit(key.mask, p, true), key.j1 + 1, key.j2, *r}, ins(v, family));
                            }
                            break;
                        }

                        case NiceKind::forget: {
                            Vertex v = node.vertex;
                            int p = position(_ntd.nodes[y].bag, v);
                            for (auto & [key, family] : _tables[y]) {
                                _options.check_time();
                                FvsKey target{remove_bit(key.mask, p), key.j1, key.j2, key.r};
                                if ((key.mask >> p) & 1U)
                                    out.add(target, proj(v, family));
                                else
                                    out.add(target, family);
                            }
                            break;
                        }

                        case NiceKind::introduce_edge: {
                            auto [a, b] = node.edge;
                            int pa = position(node.bag, a), pb = position(node.bag, b);
                            bool v0_edge = b == _aug.v0;
                            for (auto & [key, family] : _tables[y]) {
                                _options.check_time();
                                bool both = ((key.mask >> pa) & 1U) && ((key.mask >> pb) & 1U);
                                if (! both || v0_edge)
                                    out.add(key, family);
                                if (both)
                                    out.add(FvsKey{key.mask, key.j1, key.j2 + 1, key.r}, glue(a, b, family));
                            }
                            break;
                        }

                        case NiceKind::join: {
                            auto & ys = _tables[y];
                            auto & zs = _tables[node.children[1]];
                            auto iy = ys.begin();
                            while (iy != ys.end()) {
                                std::uint64_t mask = iy->first.mask;
                                auto y_end = iy;
                                while (y_end != ys.end() && y_end->first.mask == mask)
                                    ++y_end;
                                auto z_begin = zs.lower_bound(FvsKey{mask, 0, 0, 0});
                                auto base = colour_counts(_graph, masked(node.bag, mask));
                                int size = std::popcount(mask);
                                for (auto a = iy; a != y_end; ++a)
                                    for (auto b = z_begin; b != zs.end() && b->first.mask == mask; ++b) {
                                        _options.check_time();
                                        auto r = _index.combine(a->first.r, b->first.r, base);
                                        if (! r)
                                            continue;
                                        FvsKey key{mask, a->first.j1 + b->first.j1 - size, a->first.j2 + b->first.j2, *r};
                                        if (! admit(x, key))
                                            continue;
                                        out.add(key, join_families(a->second, b->second));
                                    }
                                iy = y_end;
                            }
                            break;
                        }
                    }
                    _tables[x] = out.finish(_stats, _fvs.use_reduce);
                }
        };

        // The nice decomposition as a plain one rooted at its root, with runs of equal bags merged.
        auto plain_from_root(const NiceTreeDecomposition & ntd) -> TreeDecomposition
        {
            TreeDecomposition td;
            std::vector<int> node_of(ntd.size(), -1);
            int root = ntd.root();
            node_of[root] = 0;
            td.bags.push_back(ntd.nodes[root].bag);
            for (int x = root; x >= 0; --x)
                for (int c : ntd.nodes[x].children) {
                    if (c < 0)
                        continue;
                    if (ntd.nodes[c].bag == ntd.nodes[x].bag)
                        node_of[c] = node_of[x];
                    else {
                        node_of[c] = static_cast<int>(td.bags.size());
                        td.bags.push_back(ntd.nodes[c].bag);
                        td.tree_edges.emplace_back(node_of[x], node_of[c]);
                    }
                }
            return td;
        }
    }

    auto augment_with_v0(const ColouredGraph & graph) -> AugmentedInstance
    {
        AugmentedInstance result;
        int n = graph.n();
        result.v0 = n + 1;
        std::vector<ColourSet> colours;
        for (Vertex v = 1; v <= n; ++v)
            colours.push_back(graph.colours(v));
        colours.push_back(graph.t() == 64 ? ~ColourSet{0} : (ColourSet{1} << graph.t()) - 1);
        std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
        for (Vertex v = 1; v <= n; ++v) {
            edges.emplace_back(v, result.v0);
            result.e0.emplace_back(v, result.v0);
        }
        result.graph = ColouredGraph(n + 1, graph.t(), std::move(colours), std::move(edges));
        VertexSet all(n);
        for (Vertex v = 1; v <= n; ++v)
            all[v - 1] = v;
        result.colour_totals = colour_counts(graph, all);
        return result;
    }

    auto augment_decomposition(const NiceTreeDecomposition & ntd, const AugmentedInstance & augmented) -> NiceTreeDecomposition
    {
        auto td = plain_from_root(ntd);
        for (auto & bag : td.bags)
            bag.push_back(augmented.v0);
        return make_nice(td, augmented.graph);
    }

    auto run_fvs_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options, const FvsOptions & fvs_options) -> FvsDpResult
    {
        check_budget(graph, budget);
        if (auto problems = validate(ntd, graph); ! problems.empty())
            throw InputError("invalid nice tree decomposition: " + problems.front());

        FvsDpResult result;
        result.augmented = augment_with_v0(graph);
        for (int i = 0; i < budget.size(); ++i)
            if (budget.k[i] > result.augmented.colour_totals[i])
                return result;

        result.decomposition = augment_decomposition(ntd, result.augmented);
        if (result.decomposition.width() + 1 > 63)
            throw InputError("bags larger than 63 vertices are not supported");

        FvsDp dp(result.augmented, result.decomposition, budget, options, fvs_options);
        dp.run();
        result.outcome.stats = dp.stats();
        auto accepted = dp.accepting_key();
        result.outcome.yes = accepted.has_value();
        if (accepted && options.want_witness) {
            dp.replay(*accepted, result.kept, result.kept_e0);
            result.kept = sorted_unique(std::move(result.kept));
            std::sort(result.kept_e0.begin(), result.kept_e0.end());
            VertexSet deleted;
            for (Vertex v = 1; v <= graph.n(); ++v)
                if (! std::binary_search(result.kept.begin(), result.kept.end(), v))
                    deleted.push_back(v);
            result.outcome.witness = std::move(deleted);
        }
        if (fvs_options.keep_tables)
            result.tables = dp.take_tables();
        return result;
    }

    auto solve_fvs_tw(const ColouredGraph & graph, const NiceTreeDecomposition & ntd, const ColourBudget & budget,
            const SolveOptions & options, const FvsOptions & fvs_options) -> SolveOutcome
    {
        FvsOptions local = fvs_options;
        local.keep_tables = false;
        return run_fvs_tw(graph, ntd, budget, options, local).outcome;
    }
}
