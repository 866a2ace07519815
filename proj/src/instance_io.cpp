#include <fair_cover/instance_io.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace fair_cover
{
    namespace
    {
        auto tokenize(std::string_view line) -> std::vector<std::string_view>
        {
            std::vector<std::string_view> tokens;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                    ++i;
                std::size_t start = i;
                while (i < line.size() && ! (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                    ++i;
                if (i > start)
                    tokens.push_back(line.substr(start, i - start));
            }
            return tokens;
        }

        auto to_int(std::string_view token) -> std::optional<long>
        {
            long value = 0;
            auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || end != token.data() + token.size())
                return std::nullopt;
            return value;
        }
    }

    auto to_string(ParseErrorKind kind) -> std::string_view
    {
        switch (kind) {
            case ParseErrorKind::malformed_header:        return "malformed header";
            case ParseErrorKind::malformed_line:          return "malformed line";
            case ParseErrorKind::vertex_without_colours:  return "vertex without colours";
            case ParseErrorKind::colour_out_of_range:     return "colour out of range";
            case ParseErrorKind::vertex_out_of_range:     return "vertex out of range";
            case ParseErrorKind::duplicate_vertex:        return "duplicate vertex";
            case ParseErrorKind::missing_vertex:          return "missing vertex";
            case ParseErrorKind::self_loop:               return "self-loop";
            case ParseErrorKind::duplicate_edge:          return "duplicate edge";
            case ParseErrorKind::edge_count_mismatch:     return "edge count mismatch";
            case ParseErrorKind::budget_length_mismatch:  return "budget length mismatch";
            case ParseErrorKind::missing_budget:          return "missing budget";
            case ParseErrorKind::duplicate_budget:        return "duplicate budget";
        }
        return "unknown";
    }

    ParseError::ParseError(ParseErrorKind kind, int line, const std::string & message) :
        InputError("line " + std::to_string(line) + ": " + std::string(to_string(kind)) + ": " + message),
        _kind(kind),
        _line(line)
    {
    }

    auto parse_instance(std::string_view text) -> Instance
    {
        using K = ParseErrorKind;

        std::optional<long> n, m, t;
        std::vector<ColourSet> colours;
        std::vector<Edge> edges;
        std::set<Edge> seen_edges;
        std::optional<ColourBudget> budget;

        int line_no = 0;
        int header_line = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string_view::npos)
                eol = text.size();
            std::string_view line = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;

            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            auto tokens = tokenize(line);
            if (tokens.empty())
                continue;

            if (! n) {
                if (tokens.size() != 4 || tokens[0] != "fgr")
                    throw ParseError(K::malformed_header, line_no, "expected 'fgr <n> <m> <t>'");
                n = to_int(tokens[1]);
                m = to_int(tokens[2]);
                t = to_int(tokens[3]);
                if (! n || ! m || ! t || *n < 0 || *m < 0 || *t < 1)
                    throw ParseError(K::malformed_header, line_no, "header counts must be integers with n >= 0, m >= 0, t >= 1");
                if (*t > max_palette)
                    throw ParseError(K::malformed_header, line_no, "palettes larger than " + std::to_string(max_palette) + " colours are not supported");
                colours.assign(*n, 0);
                header_line = line_no;
                continue;
            }

            if (tokens[0] == "v") {
                if (tokens.size() < 2)
                    throw ParseError(K::malformed_line, line_no, "expected 'v <id> <colours...>'");
                auto id = to_int(tokens[1]);
                if (! id)
                    throw ParseError(K::malformed_line, line_no, "vertex id is not an integer");
                if (*id < 1 || *id > *n)
                    throw ParseError(K::vertex_out_of_range, line_no, "vertex " + std::string(tokens[1]) + " outside [1, " + std::to_string(*n) + "]");
                if (colours[*id - 1] != 0)
                    throw ParseError(K::duplicate_vertex, line_no, "vertex " + std::to_string(*id) + " listed twice");
                if (tokens.size() == 2)
                    throw ParseError(K::vertex_without_colours, line_no, "vertex " + std::to_string(*id) + " has no colours");
                ColourSet set = 0;
                for (std::size_t i = 2; i < tokens.size(); ++i) {
                    auto c = to_int(tokens[i]);
                    if (! c)
                        throw ParseError(K::malformed_line, line_no, "colour is not an integer");
                    if (*c < 1 || *c > *t)
                        throw ParseError(K::colour_out_of_range, line_no, "colour " + std::to_string(*c) + " outside [1, " + std::to_string(*t) + "]");
                    set |= colour_bit(static_cast<int>(*c));
                }
                colours[*id - 1] = set;
            }
            else if (tokens[0] == "e") {
                if (tokens.size() != 3)
                    throw ParseError(K::malformed_line, line_no, "expected 'e <u> <v>'");
                auto u = to_int(tokens[1]), v = to_int(tokens[2]);
                if (! u || ! v)
                    throw ParseError(K::malformed_line, line_no, "edge endpoint is not an integer");
                for (long w : {*u, *v})
                    if (w < 1 || w > *n)
                        throw ParseError(K::vertex_out_of_range, line_no, "edge endpoint " + std::to_string(w) + " outside [1, " + std::to_string(*n) + "]");
                if (*u == *v)
                    throw ParseError(K::self_loop, line_no, "edge " + std::to_string(*u) + " " + std::to_string(*v));
                Edge e{static_cast<int>(std::min(*u, *v)), static_cast<int>(std::max(*u, *v))};
                if (! seen_edges.insert(e).second)
                    throw ParseError(K::duplicate_edge, line_no, "edge " + std::to_string(e.first) + " " + std::to_string(e.second));
                edges.push_back(e);
            }
            else if (tokens[0] == "b") {
                if (budget)
                    throw ParseError(K::duplicate_budget, line_no, "more than one budget line");
                if (static_cast<long>(tokens.size()) - 1 != *t)
                    throw ParseError(K::budget_length_mismatch, line_no, "budget has " + std::to_string(tokens.size() - 1) + " entries, palette has " + std::to_string(*t));
                ColourBudget b;
                for (std::size_t i = 1; i < tokens.size(); ++i) {
                    auto k = to_int(tokens[i]);
                    if (! k || *k < 0)
                        throw ParseError(K::malformed_line, line_no, "budget entries must be non-negative integers");
                    b.k.push_back(static_cast<int>(*k));
                }
                budget = std::move(b);
            }
            else
                throw ParseError(K::malformed_line, line_no, "unknown record '" + std::string(tokens[0]) + "'");
        }

        if (! n)
            throw ParseError(K::malformed_header, line_no, "missing 'fgr' header");
        for (long v = 1; v <= *n; ++v)
            if (colours[v - 1] == 0)
                throw ParseError(K::missing_vertex, header_line, "no 'v' line for vertex " + std::to_string(v));
        if (static_cast<long>(edges.size()) != *m)
            throw ParseError(K::edge_count_mismatch, header_line, "header declares " + std::to_string(*m) + " edges, found " + std::to_string(edges.size()));
        if (! budget)
            throw ParseError(K::missing_budget, line_no, "no 'b' line");

        return Instance{ColouredGraph(static_cast<int>(*n), static_cast<int>(*t), std::move(colours), std::move(edges)), std::move(*budget)};
    }

    auto serialize_instance(const Instance & instance) -> std::string
    {
        const auto & g = instance.graph;
        std::ostringstream out;
        out << "fgr " << g.n() << ' ' << g.m() << ' ' << g.t() << '\n';
        for (Vertex v = 1; v <= g.n(); ++v) {
            out << "v " << v;
            for (int c : colour_list(g.colours(v)))
                out << ' ' << c;
            out << '\n';
        }
        for (auto [u, v] : g.edges())
            out << "e " << u << ' ' << v << '\n';
        out << 'b';
        for (int k : instance.budget.k)
            out << ' ' << k;
        out << '\n';
        return out.str();
    }

    auto read_instance_file(const std::string & path) -> Instance
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw InputError("cannot open " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_instance(buffer.str());
    }

    auto write_instance_file(const std::string & path, const Instance & instance) -> void
    {
        std::ofstream out(path, std::ios::binary);
        if (! out)
            throw InputError("cannot write " + path);
        out << serialize_instance(instance);
        if (! out)
            throw InputError("write failed for " + path);
    }

    auto instance_digest(const Instance & instance) -> std::string
    {
        std::uint64_t hash = 14695981039346656037ULL;
        for (unsigned char ch : serialize_instance(instance)) {
            hash ^= ch;
            hash *= 1099511628211ULL;
        }
        char buffer[17];
        std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
        return buffer;
    }
}
