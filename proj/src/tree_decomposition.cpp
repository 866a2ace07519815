#include <fair_cover/tree_decomposition.hpp>
#include <fair_cover/oracle.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace fair_cover
{
    namespace
    {
        auto contains(const VertexSet & bag, Vertex v) -> bool
        {
            return std::binary_search(bag.begin(), bag.end(), v);
        }

        auto minus(const VertexSet & a, const VertexSet & b) -> VertexSet
        {
            VertexSet result;
            std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(result));
            return result;
        }

        auto with(VertexSet bag, Vertex v) -> VertexSet
        {
            bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
            return bag;
        }

        auto without(VertexSet bag, Vertex v) -> VertexSet
        {
            bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
            return bag;
        }

        auto edge_key(Vertex u, Vertex v) -> std::uint64_t
        {
            if (u > v)
                std::swap(u, v);
            return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
        }

        auto describe(const Edge & e) -> std::string
        {
            return std::to_string(e.first) + "-" + std::to_string(e.second);
        }

        class NiceBuilder
        {
            public:
                explicit NiceBuilder(const ColouredGraph & graph) : _graph(graph) { }

                auto leaf() -> int
                {
                    return push(NiceNode{NiceKind::leaf, {}, 0, {0, 0}, {-1, -1}});
                }

                auto introduce(int child, Vertex v) -> int
                {
                    return push(NiceNode{NiceKind::introduce_vertex, with(bag(child), v), v, {0, 0}, {child, -1}});
                }

                // edges from v to the rest of the bag that are still pending go in just below the forget
                auto forget(int child, Vertex v) -> int
                {
                    for (Vertex w : _graph.neighbours(v))
                        if (contains(bag(child), w) && _introduced.insert(edge_key(v, w)).second)
                            child = push(NiceNode{NiceKind::introduce_edge, bag(child), 0,
                                    {std::min(v, w), std::max(v, w)}, {child, -1}});
                    return push(NiceNode{NiceKind::forget, without(bag(child), v), v, {0, 0}, {child, -1}});
                }

                auto join(int left, int right) -> int
                {
                    return push(NiceNode{NiceKind::join, bag(left), 0, {0, 0}, {left, right}});
                }

                auto bag(int node) const -> const VertexSet & { return _result.nodes[node].bag; }

                auto finish() -> NiceTreeDecomposition { return std::move(_result); }

            private:
                const ColouredGraph & _graph;
                NiceTreeDecomposition _result;
                std::unordered_set<std::uint64_t> _introduced;

                auto push(NiceNode node) -> int
                {
                    _result.nodes.push_back(std::move(node));
                    return static_cast<int>(_result.nodes.size()) - 1;
                }
        };

        // Hub node 0 with the given bag; every component decomposition hangs off it.
        struct PlainBuilder
        {
            TreeDecomposition td;

            explicit PlainBuilder(VertexSet hub = {})
            {
                td.bags.push_back(std::move(hub));
            }

            auto add(VertexSet bag, int parent) -> int
            {
                std::sort(bag.begin(), bag.end());
                td.bags.push_back(std::move(bag));
                int id = static_cast<int>(td.bags.size()) - 1;
                td.tree_edges.emplace_back(parent, id);
                return id;
            }
        };

        auto parse_int(std::string_view token, int line) -> long
        {
            long value = 0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || end != token.data() + token.size())
                throw InputError("td line " + std::to_string(line) + ": '" + std::string(token) + "' is not an integer");
            return value;
        }
    }

    auto to_string(NiceKind kind) -> std::string_view
    {
        switch (kind) {
            case NiceKind::leaf:             return "leaf";
            case NiceKind::introduce_vertex: return "introduce-vertex";
            case NiceKind::introduce_edge:   return "introduce-edge";
            case NiceKind::forget:           return "forget";
            case NiceKind::join:             return "join";
        }
        return "unknown";
    }

    auto TreeDecomposition::width() const -> int
    {
        int result = -1;
        for (auto & bag : bags)
            result = std::max(result, static_cast<int>(bag.size()) - 1);
        return result;
    }

    auto NiceTreeDecomposition::width() const -> int
    {
        int result = -1;
        for (auto & node : nodes)
            result = std::max(result, static_cast<int>(node.bag.size()) - 1);
        return result;
    }

    auto validate(const TreeDecomposition & td, const ColouredGraph & graph) -> std::vector<std::string>
    {
        std::vector<std::string> problems;
        int count = static_cast<int>(td.bags.size());
        int n = graph.n();

        if (count == 0) {
            if (n > 0)
                problems.push_back("decomposition has no bags");
            return problems;
        }

        std::vector<std::vector<int>> occurrences(n + 1);
        for (int x = 0; x < count; ++x) {
            auto & bag = td.bags[x];
            if (! std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
                problems.push_back("bag " + std::to_string(x) + " is not a sorted set");
            for (Vertex v : bag) {
                if (! graph.contains(v))
                    problems.push_back("bag " + std::to_string(x) + " references unknown vertex " + std::to_string(v));
                else
                    occurrences[v].push_back(x);
            }
        }
        if (! problems.empty())
            return problems;

        // the node graph must be a tree
        std::vector<std::vector<int>> adjacency(count);
        for (auto [a, b] : td.tree_edges) {
            if (a < 0 || a >= count || b < 0 || b >= count || a == b) {
                problems.push_back("tree edge " + std::to_string(a) + "-" + std::to_string(b) + " is invalid");
                continue;
            }
            adjacency[a].push_back(b);
            adjacency[b].push_back(a);
        }
        if (! problems.empty())
            return problems;
        if (static_cast<int>(td.tree_edges.size()) != count - 1)
            problems.push_back("decomposition has " + std::to_string(td.tree_edges.size()) + " tree edges for "
                    + std::to_string(count) + " bags, so it is not a tree");
        std::vector<char> seen(count, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (! stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adjacency[x])
                if (! seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != count)
            problems.push_back("decomposition tree is disconnected");
        if (! problems.empty())
            return problems;

        for (Vertex v = 1; v <= n; ++v)
            if (occurrences[v].empty())
                problems.push_back("vertex " + std::to_string(v) + " is in no bag");

        for (auto [u, v] : graph.edges()) {
            bool together = false;
            for (int x : occurrences[u])
                together = together || contains(td.bags[x], v);
            if (! together)
                problems.push_back("edge " + describe({u, v}) + " is in no bag");
        }

        // in a tree, a node subset is connected iff it spans |subset| - 1 tree edges
        std::vector<int> spanned(n + 1, 0);
        for (auto [a, b] : td.tree_edges) {
            auto & small = td.bags[a].size() < td.bags[b].size() ? td.bags[a] : td.bags[b];
            auto & large = td.bags[a].size() < td.bags[b].size() ? td.bags[b] : td.bags[a];
            for (Vertex v : small)
                if (contains(large, v))
                    ++spanned[v];
        }
        for (Vertex v = 1; v <= n; ++v)
            if (! occurrences[v].empty() && spanned[v] != static_cast<int>(occurrences[v].size()) - 1)
                problems.push_back("bags containing vertex " + std::to_string(v) + " are not connected");
        return problems;
    }

    auto validate(const NiceTreeDecomposition & ntd, const ColouredGraph & graph) -> std::vector<std::string>
    {
        std::vector<std::string> problems;
        if (ntd.nodes.empty()) {
            problems.push_back("nice decomposition has no nodes");
            return problems;
        }

        std::vector<int> parents(ntd.size(), 0);
        std::map<Edge, int> introduced;
        for (int x = 0; x < ntd.size(); ++x) {
            auto & node = ntd.nodes[x];
            auto where = "node " + std::to_string(x) + " (" + std::string(to_string(node.kind)) + ")";
            int expected_children = node.kind == NiceKind::leaf ? 0 : node.kind == NiceKind::join ? 2 : 1;
            if (node.child_count() != expected_children || (expected_children == 1 && node.children[0] < 0)) {
                problems.push_back(where + " has the wrong number of children");
                continue;
            }
            bool bad_child = false;
            for (int i = 0; i < expected_children; ++i) {
                if (node.children[i] >= x) {
                    problems.push_back(where + " has a child that is not stored before it");
                    bad_child = true;
                }
                else
                    ++parents[node.children[i]];
            }
            if (bad_child)
                continue;

            auto & child = expected_children ? ntd.nodes[node.children[0]].bag : node.bag;
            switch (node.kind) {
                case NiceKind::leaf:
                    if (! node.bag.empty())
                        problems.push_back(where + " has a nonempty bag");
                    break;
                case NiceKind::introduce_vertex:
                    if (contains(child, node.vertex) || node.bag != with(child, node.vertex))
                        problems.push_back(where + " does not add exactly vertex " + std::to_string(node.vertex));
                    break;
                case NiceKind::forget:
                    if (! contains(child, node.vertex) || node.bag != without(child, node.vertex))
                        problems.push_back(where + " does not remove exactly vertex " + std::to_string(node.vertex));
                    break;
                case NiceKind::introduce_edge: {
                    auto [u, v] = node.edge;
                    if (node.bag != child)
                        problems.push_back(where + " changes the bag");
                    if (u >= v || ! contains(node.bag, u) || ! contains(node.bag, v))
                        problems.push_back(where + " edge " + describe(node.edge) + " is not inside the bag");
                    else if (! graph.contains(u) || ! graph.contains(v) || ! graph.adjacent(u, v))
                        problems.push_back(where + " introduces non-edge " + describe(node.edge));
                    ++introduced[node.edge];
                    break;
                }
                case NiceKind::join:
                    if (node.bag != child || node.bag != ntd.nodes[node.children[1]].bag)
                        problems.push_back(where + " children bags differ from its own");
                    break;
            }
        }
        for (int x = 0; x + 1 < ntd.size(); ++x)
            if (parents[x] != 1)
                problems.push_back("node " + std::to_string(x) + " has " + std::to_string(parents[x]) + " parents");
        if (! ntd.nodes.back().bag.empty())
            problems.push_back("root bag is not empty");

        for (auto [e, count] : introduced)
            if (count > 1)
                problems.push_back("edge " + describe(e) + " introduced " + std::to_string(count) + " times");
        for (auto e : graph.edges())
            if (! introduced.count(e))
                problems.push_back("edge " + describe(e) + " is never introduced");

        if (problems.empty())
            for (auto & p : validate(to_plain(ntd), graph))
                problems.push_back(p);
        return problems;
    }

    auto make_nice(const TreeDecomposition & td, const ColouredGraph & graph) -> NiceTreeDecomposition
    {
        if (auto problems = validate(td, graph); ! problems.empty())
            throw InputError("invalid tree decomposition: " + problems.front());

        NiceBuilder builder(graph);
        if (td.bags.empty()) {
            builder.leaf();
            return builder.finish();
        }

        int count = static_cast<int>(td.bags.size());
        std::vector<std::vector<int>> adjacency(count);
        for (auto [a, b] : td.tree_edges) {
            adjacency[a].push_back(b);
            adjacency[b].push_back(a);
        }
        for (auto & row : adjacency)
            std::sort(row.begin(), row.end());

        std::vector<int> parent(count, -1), order{0};
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int y : adjacency[order[i]])
                if (y != parent[order[i]] && y != 0) {
                    parent[y] = order[i];
                    order.push_back(y);
                }

        std::vector<int> top(count, -1);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int x = *it;
            auto & bag = td.bags[x];
            std::vector<int> branches;
            for (int c : adjacency[x]) {
                if (c == parent[x])
                    continue;
                int cur = top[c];
                for (Vertex v : minus(td.bags[c], bag))
                    cur = builder.forget(cur, v);
                for (Vertex v : minus(bag, td.bags[c]))
                    cur = builder.introduce(cur, v);
                branches.push_back(cur);
            }
            if (branches.empty()) {
                int cur = builder.leaf();
                for (Vertex v : bag)
                    cur = builder.introduce(cur, v);
                branches.push_back(cur);
            }
            int cur = branches.front();
            for (std::size_t i = 1; i < branches.size(); ++i)
                cur = builder.join(cur, branches[i]);
            top[x] = cur;
        }

        int cur = top[0];
        for (Vertex v : td.bags[0])
            cur = builder.forget(cur, v);
        return builder.finish();
    }

    auto to_plain(const NiceTreeDecomposition & ntd) -> TreeDecomposition
    {
        TreeDecomposition td;
        for (int x = 0; x < ntd.size(); ++x) {
            td.bags.push_back(ntd.nodes[x].bag);
            for (int c : ntd.nodes[x].children)
                if (c >= 0)
                    td.tree_edges.emplace_back(x, c);
        }
        return td;
    }

    auto td_paths_cycles(const ColouredGraph & graph) -> NiceTreeDecomposition
    {
        if (graph.max_degree() > 2)
            throw InternalError("td_paths_cycles needs maximum degree at most 2");

        PlainBuilder plain;
        std::vector<char> seen(graph.n() + 1, 0);
        for (Vertex s = 1; s <= graph.n(); ++s) {
            if (seen[s])
                continue;

            // collect the component, then find the smallest endpoint if it is a path
            VertexSet component{s};
            seen[s] = 1;
            for (std::size_t i = 0; i < component.size(); ++i)
                for (Vertex w : graph.neighbours(component[i]))
                    if (! seen[w]) {
                        seen[w] = 1;
                        component.push_back(w);
                    }
            std::sort(component.begin(), component.end());
            Vertex start = 0;
            for (Vertex v : component)
                if (graph.degree(v) <= 1) {
                    start = v;
                    break;
                }
            bool cycle = start == 0;
            if (cycle)
                start = component.front();

            VertexSet walk{start};
            Vertex previous = 0, cur = start;
            while (true) {
                Vertex next = 0;
                for (Vertex w : graph.neighbours(cur))
                    if (w != previous && (walk.size() < 2 || w != walk.front())) {
                        next = w;
                        break;
                    }
                if (next == 0 || next == start)
                    break;
                previous = cur;
                cur = next;
                walk.push_back(cur);
            }

            if (walk.size() == 1) {
                plain.add({start}, 0);
                continue;
            }
            int last = 0;
            if (cycle)
                for (std::size_t i = 1; i + 1 < walk.size(); ++i)
                    last = plain.add({walk[0], walk[i], walk[i + 1]}, last);
            else
                for (std::size_t i = 0; i + 1 < walk.size(); ++i)
                    last = plain.add({walk[i], walk[i + 1]}, last);
        }
        return make_nice(plain.td, graph);
    }

    auto td_from_fvs(const ColouredGraph & graph, std::span<const Vertex> fvs) -> NiceTreeDecomposition
    {
        VertexSet f = sorted_unique(VertexSet(fvs.begin(), fvs.end()));
        for (Vertex v : f)
            if (! graph.contains(v))
                throw InputError("feedback vertex set references unknown vertex " + std::to_string(v));
        if (! is_fvs(graph, f))
            throw InputError("td_from_fvs: the given set is not a feedback vertex set");

        std::vector<char> in_f(graph.n() + 1, 0);
        for (Vertex v : f)
            in_f[v] = 1;

        PlainBuilder plain;
        std::vector<int> node_of(graph.n() + 1, -1);
        for (Vertex r = 1; r <= graph.n(); ++r) {
            if (in_f[r] || node_of[r] >= 0)
                continue;
            node_of[r] = plain.add({r}, 0);
            std::vector<Vertex> queue{r};
            for (std::size_t i = 0; i < queue.size(); ++i) {
                Vertex y = queue[i];
                for (Vertex x : graph.neighbours(y))
                    if (! in_f[x] && node_of[x] < 0) {
                        node_of[x] = plain.add({x, y}, node_of[y]);
                        queue.push_back(x);
                    }
            }
        }
        for (auto & bag : plain.td.bags) {
            bag.insert(bag.end(), f.begin(), f.end());
            std::sort(bag.begin(), bag.end());
        }
        return make_nice(plain.td, graph);
    }

    auto td_min_degree(const ColouredGraph & graph) -> TreeDecomposition
    {
        int n = graph.n();
        std::vector<std::set<Vertex>> adjacency(n + 1);
        for (auto [u, v] : graph.edges()) {
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }

        std::vector<char> eliminated(n + 1, 0);
        std::vector<int> position(n + 1, -1);
        std::vector<Vertex> order;
        std::vector<VertexSet> bags;
        for (int step = 0; step < n; ++step) {
            Vertex best = 0;
            for (Vertex v = 1; v <= n; ++v)
                if (! eliminated[v] && (best == 0 || adjacency[v].size() < adjacency[best].size()))
                    best = v;
            VertexSet bag(adjacency[best].begin(), adjacency[best].end());
            for (Vertex a : bag) {
                adjacency[a].erase(best);
                for (Vertex b : bag)
                    if (a != b)
                        adjacency[a].insert(b);
            }
            eliminated[best] = 1;
            position[best] = step;
            order.push_back(best);
            bags.push_back(with(bag, best));
        }

        // bag of step i hangs below the bag of its earliest-eliminated remaining neighbour
        PlainBuilder plain;
        std::vector<int> parent_step(n, -1);
        for (int i = 0; i < n; ++i) {
            int best = -1;
            for (Vertex w : bags[i])
                if (w != order[i] && (best < 0 || position[w] < best))
                    best = position[w];
            parent_step[i] = best;
        }
        plain.td.bags.resize(n + 1);
        for (int i = 0; i < n; ++i) {
            plain.td.bags[i + 1] = bags[i];
            plain.td.tree_edges.emplace_back(parent_step[i] < 0 ? 0 : parent_step[i] + 1, i + 1);
        }
        return plain.td;
    }

    auto parse_td(std::string_view text, const ColouredGraph & graph) -> TreeDecomposition
    {
        TreeDecomposition td;
        std::vector<char> defined;
        long declared_bags = -1, declared_size = 0;
        int line_no = 0;
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream fields(line);
            std::vector<std::string> tokens;
            for (std::string token; fields >> token; )
                tokens.push_back(token);
            if (tokens.empty() || tokens[0] == "c")
                continue;

            if (tokens[0] == "s") {
                if (declared_bags >= 0)
                    throw InputError("td line " + std::to_string(line_no) + ": second 's' line");
                if (tokens.size() != 5 || tokens[1] != "td")
                    throw InputError("td line " + std::to_string(line_no) + ": expected 's td <bags> <width+1> <n>'");
                declared_bags = parse_int(tokens[2], line_no);
                declared_size = parse_int(tokens[3], line_no);
                long n = parse_int(tokens[4], line_no);
                if (declared_bags < 0 || declared_size < 0)
                    throw InputError("td line " + std::to_string(line_no) + ": negative counts");
                if (n != graph.n())
                    throw InputError("td declares " + std::to_string(n) + " vertices, graph has " + std::to_string(graph.n()));
                td.bags.resize(declared_bags);
                defined.assign(declared_bags, 0);
                continue;
            }
            if (declared_bags < 0)
                throw InputError("td line " + std::to_string(line_no) + ": missing 's td' header");

            if (tokens[0] == "b") {
                if (tokens.size() < 2)
                    throw InputError("td line " + std::to_string(line_no) + ": expected 'b <id> <vertices...>'");
                long id = parse_int(tokens[1], line_no);
                if (id < 1 || id > declared_bags)
                    throw InputError("td line " + std::to_string(line_no) + ": bag id " + std::to_string(id) + " out of range");
                if (defined[id - 1])
                    throw InputError("td line " + std::to_string(line_no) + ": bag " + std::to_string(id) + " defined twice");
                defined[id - 1] = 1;
                VertexSet bag;
                for (std::size_t i = 2; i < tokens.size(); ++i) {
                    long v = parse_int(tokens[i], line_no);
                    if (v < 1 || v > graph.n())
                        throw InputError("td line " + std::to_string(line_no) + ": bag references unknown vertex " + std::to_string(v));
                    bag.push_back(static_cast<Vertex>(v));
                }
                bag = sorted_unique(std::move(bag));
                if (static_cast<long>(bag.size()) > declared_size)
                    throw InputError("td line " + std::to_string(line_no) + ": bag larger than the declared width + 1");
                td.bags[id - 1] = std::move(bag);
                continue;
            }

            if (tokens.size() != 2)
                throw InputError("td line " + std::to_string(line_no) + ": expected a tree edge '<a> <b>'");
            long a = parse_int(tokens[0], line_no), b = parse_int(tokens[1], line_no);
            if (a < 1 || a > declared_bags || b < 1 || b > declared_bags)
                throw InputError("td line " + std::to_string(line_no) + ": tree edge references unknown bag");
            td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
        if (declared_bags < 0)
            throw InputError("td input has no 's td' header");
        for (long i = 0; i < declared_bags; ++i)
            if (! defined[i])
                throw InputError("td bag " + std::to_string(i + 1) + " is never defined");
        if (auto problems = validate(td, graph); ! problems.empty())
            throw InputError("invalid tree decomposition: " + problems.front());
        return td;
    }

    auto emit_td(const TreeDecomposition & td, int n) -> std::string
    {
        std::ostringstream out;
        out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
        for (std::size_t i = 0; i < td.bags.size(); ++i) {
            out << "b " << i + 1;
            for (Vertex v : td.bags[i])
                out << ' ' << v;
            out << '\n';
        }
        for (auto [a, b] : td.tree_edges)
            out << a + 1 << ' ' << b + 1 << '\n';
        return out.str();
    }

    auto read_td_file(const std::string & path, const ColouredGraph & graph) -> TreeDecomposition
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw InputError("cannot open " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_td(buffer.str(), graph);
    }
}
