#pragma once

#include <fair_cover/graph.hpp>

#include <cstdint>
#include <string>

namespace fair_cover
{
    using Label = std::uint8_t;

    inline constexpr int max_ground_size = 64;
    inline constexpr int max_reduce_ground_size = 26;

    /// Block labels by ground-set position, renumbered by first occurrence.
    struct Partition
    {
        VertexSet ground;
        std::vector<Label> labels;

        static auto from_blocks(VertexSet ground, const std::vector<VertexSet> & blocks) -> Partition;
        static auto singletons(VertexSet ground) -> Partition;

        auto blocks() const -> std::vector<VertexSet>;
        auto block_count() const -> int;

        auto operator== (const Partition &) const -> bool = default;
    };

    /// Rewrites labels into first-occurrence order in place.
    auto canonicalize(std::span<Label> labels) -> void;
    auto block_count(std::span<const Label> labels) -> int;

    /// p joined with q: blocks are the components of the union of both block relations.
    auto meet_join(const Partition & p, const Partition & q) -> Partition;
    auto meet_join_labels(std::span<const Label> p, std::span<const Label> q, std::span<Label> out) -> void;

    /**
     * A duplicate-free set of partitions over a common ground set, stored as one
     * contiguous label buffer.  Members are kept in lexicographic label order.
     */
    class PartitionFamily
    {
        public:
            PartitionFamily() = default;
            explicit PartitionFamily(VertexSet ground);

            static auto from(VertexSet ground, const std::vector<Partition> & members) -> PartitionFamily;

            auto ground() const -> const VertexSet & { return _ground; }
            auto stride() const -> int { return static_cast<int>(_ground.size()); }
            auto size() const -> int { return _count; }
            auto empty() const -> bool { return _count == 0; }

            auto row(int i) const -> std::span<const Label>
            {
                return {_rows.data() + static_cast<std::size_t>(i) * _ground.size(), _ground.size()};
            }

            auto member(int i) const -> Partition;
            auto members() const -> std::vector<Partition>;
            auto contains(const Partition & p) const -> bool;

            auto dump() const -> std::string;

            auto operator== (const PartitionFamily &) const -> bool = default;

        private:
            friend class FamilyBuilder;

            VertexSet _ground;
            std::vector<Label> _rows;
            int _count = 0;
    };

    /// Accumulates canonical rows with hashing, then sorts them into a family.
    class FamilyBuilder
    {
        public:
            explicit FamilyBuilder(VertexSet ground);

            /// `row` must already be canonical.
            auto add(std::span<const Label> row) -> void;
            auto add_family(const PartitionFamily & family) -> void;
            auto size() const -> int { return _count; }
            auto finish() -> PartitionFamily;

        private:
            VertexSet _ground;
            std::vector<Label> _rows;
            std::vector<int> _slots;
            int _count = 0;

            auto hash(std::span<const Label> row) const -> std::size_t;
            auto grow() -> void;
    };

    auto ins(Vertex v, const PartitionFamily & family) -> PartitionFamily;
    auto proj(Vertex v, const PartitionFamily & family) -> PartitionFamily;
    auto glue(Vertex u, Vertex v, const PartitionFamily & family) -> PartitionFamily;
    auto join_families(const PartitionFamily & a, const PartitionFamily & b) -> PartitionFamily;
    auto unite(const PartitionFamily & a, const PartitionFamily & b) -> PartitionFamily;

    /// A subfamily of at most 2^{|U|-1} members that still has, for every q with
    /// p joined with q a single block for some member p, such a member.
    auto reduce(const PartitionFamily & family) -> PartitionFamily;
}
