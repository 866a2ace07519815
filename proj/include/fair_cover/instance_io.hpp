#pragma once

#include <fair_cover/graph.hpp>

#include <string>
#include <string_view>

namespace fair_cover
{
    struct Instance
    {
        ColouredGraph graph;
        ColourBudget budget;

        auto operator== (const Instance &) const -> bool = default;
    };

    enum class ParseErrorKind
    {
        malformed_header,
        malformed_line,
        vertex_without_colours,
        colour_out_of_range,
        vertex_out_of_range,
        duplicate_vertex,
        missing_vertex,
        self_loop,
        duplicate_edge,
        edge_count_mismatch,
        budget_length_mismatch,
        missing_budget,
        duplicate_budget
    };

    auto to_string(ParseErrorKind kind) -> std::string_view;

    class ParseError : public InputError
    {
        public:
            ParseError(ParseErrorKind kind, int line, const std::string & message);

            auto kind() const -> ParseErrorKind { return _kind; }
            auto line() const -> int { return _line; }

        private:
            ParseErrorKind _kind;
            int _line;
    };

    /**
     * Line-oriented format, '#' starts a comment:
     *
     *     fgr <n> <m> <t>
     *     v <id> <c1> [<c2> ...]     (n lines)
     *     e <u> <v>                  (m lines)
     *     b <k1> ... <kt>
     */
    auto parse_instance(std::string_view text) -> Instance;
    auto serialize_instance(const Instance & instance) -> std::string;

    auto read_instance_file(const std::string & path) -> Instance;
    auto write_instance_file(const std::string & path, const Instance & instance) -> void;

    /// FNV-1a over the canonical serialization, as 16 hex digits.
    auto instance_digest(const Instance & instance) -> std::string;
}
