#include <fair_cover/partition.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <numeric>

namespace fair_cover
{
    namespace
    {
        auto position(const VertexSet & ground, Vertex v) -> int
        {
            auto it = std::lower_bound(ground.begin(), ground.end(), v);
            return it != ground.end() && *it == v ? static_cast<int>(it - ground.begin()) : -1;
        }

        auto check_ground(const VertexSet & ground) -> void
        {
            if (static_cast<int>(ground.size()) > max_ground_size)
                throw InputError("partition ground sets are limited to " + std::to_string(max_ground_size) + " elements");
            if (! std::is_sorted(ground.begin(), ground.end())
                    || std::adjacent_find(ground.begin(), ground.end()) != ground.end())
                throw InputError("partition ground set must be sorted and duplicate-free");
        }

        struct SmallUnionFind
        {
            std::array<int, max_ground_size> parent;

            explicit SmallUnionFind(int n)
            {
                std::iota(parent.begin(), parent.begin() + n, 0);
            }

            auto find(int x) -> int
            {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            }

            auto unite(int a, int b) -> void
            {
                a = find(a);
                b = find(b);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        };

        // one bit per cut; bit c set iff no block crosses the cut whose side-1 set is c (position 0 excluded)
        auto cut_row(std::span<const Label> labels, std::vector<std::uint64_t> & row) -> void
        {
            std::fill(row.begin(), row.end(), 0);
            std::array<std::uint64_t, max_ground_size> block{};
            int blocks = 0;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                block[labels[i]] |= std::uint64_t{1} << i;
                blocks = std::max(blocks, labels[i] + 1);
            }
            // blocks other than the one holding position 0, shifted to drop bit 0
            std::array<std::uint64_t, max_ground_size> free_blocks{};
            int m = 0;
            for (int b = 0; b < blocks; ++b)
                if (! (block[b] & 1U))
                    free_blocks[m++] = block[b] >> 1;

            std::uint64_t cut = 0;
            row[0] |= 1U;
            for (std::uint64_t gray = 1; gray < (std::uint64_t{1} << m); ++gray) {
                cut ^= free_blocks[std::countr_zero(gray)];
                row[cut >> 6] |= std::uint64_t{1} << (cut & 63);
            }
        }
    }

    auto canonicalize(std::span<Label> labels) -> void
    {
        std::array<int, 256> renamed;
        renamed.fill(-1);
        int next = 0;
        for (auto & label : labels) {
            if (renamed[label] < 0)
                renamed[label] = next++;
            label = static_cast<Label>(renamed[label]);
        }
    }

    auto block_count(std::span<const Label> labels) -> int
    {
        std::array<bool, 256> seen{};
        int count = 0;
        for (Label label : labels)
            if (! seen[label]) {
                seen[label] = true;
                ++count;
            }
        return count;
    }

    auto meet_join_labels(std::span<const Label> p, std::span<const Label> q, std::span<Label> out) -> void
    {
        int n = static_cast<int>(p.size());
        SmallUnionFind uf(n);
        std::array<int, 256> last_p, last_q;
        last_p.fill(-1);
        last_q.fill(-1);
        for (int i = 0; i < n; ++i) {
            if (last_p[p[i]] >= 0)
                uf.unite(i, last_p[p[i]]);
            last_p[p[i]] = i;
            if (last_q[q[i]] >= 0)
                uf.unite(i, last_q[q[i]]);
            last_q[q[i]] = i;
        }
        // roots are minimal positions, so root labels come out in first-occurrence order
        std::array<int, max_ground_size> label_of_root;
        int next = 0;
        for (int i = 0; i < n; ++i) {
            int r = uf.find(i);
            if (r == i)
                label_of_root[i] = next++;
            out[i] = static_cast<Label>(label_of_root[r]);
        }
    }

    auto Partition::from_blocks(VertexSet ground, const std::vector<VertexSet> & blocks) -> Partition
    {
        check_ground(ground);
        Partition p{std::move(ground), {}};
        std::vector<int> labels(p.ground.size(), -1);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].empty())
                throw InputError("partition blocks must be nonempty");
            for (Vertex v : blocks[b]) {
                int i = position(p.ground, v);
                if (i < 0)
                    throw InputError("block element " + std::to_string(v) + " is outside the ground set");
                if (labels[i] >= 0)
                    throw InputError("element " + std::to_string(v) + " is in two blocks");
                labels[i] = static_cast<int>(b);
            }
        }
        for (int label : labels)
            if (label < 0)
                throw InputError("blocks do not cover the ground set");
        p.labels.assign(labels.begin(), labels.end());
        canonicalize(p.labels);
        return p;
    }

    auto Partition::singletons(VertexSet ground) -> Partition
    {
        check_ground(ground);
        Partition p{std::move(ground), {}};
        for (std::size_t i = 0; i < p.ground.size(); ++i)
            p.labels.push_back(static_cast<Label>(i));
        return p;
    }

    auto Partition::blocks() const -> std::vector<VertexSet>
    {
        std::vector<VertexSet> result(block_count());
        for (std::size_t i = 0; i < labels.size(); ++i)
            result[labels[i]].push_back(ground[i]);
        return result;
    }

    auto Partition::block_count() const -> int
    {
        return fair_cover::block_count(labels);
    }

    auto meet_join(const Partition & p, const Partition & q) -> Partition
    {
        if (p.ground != q.ground)
            throw InputError("meet_join: ground sets differ");
        Partition result{p.ground, std::vector<Label>(p.labels.size())};
        meet_join_labels(p.labels, q.labels, result.labels);
        return result;
    }

    PartitionFamily::PartitionFamily(VertexSet ground) :
        _ground(std::move(ground))
    {
        check_ground(_ground);
    }

    auto PartitionFamily::from(VertexSet ground, const std::vector<Partition> & members) -> PartitionFamily
    {
        FamilyBuilder builder(ground);
        for (auto & p : members) {
            if (p.ground != ground)
                throw InputError("family member has a different ground set");
            std::vector<Label> labels = p.labels;
            canonicalize(labels);
            builder.add(labels);
        }
        return builder.finish();
    }

    auto PartitionFamily::member(int i) const -> Partition
    {
        auto r = row(i);
        return Partition{_ground, {r.begin(), r.end()}};
    }

    auto PartitionFamily::members() const -> std::vector<Partition>
    {
        std::vector<Partition> result;
        for (int i = 0; i < _count; ++i)
            result.push_back(member(i));
        return result;
    }

    auto PartitionFamily::contains(const Partition & p) const -> bool
    {
        if (p.ground != _ground)
            return false;
        for (int i = 0; i < _count; ++i)
            if (std::equal(p.labels.begin(), p.labels.end(), row(i).begin()))
                return true;
        return false;
    }

    auto PartitionFamily::dump() const -> std::string
    {
        std::string out = "{blocks: [";
        for (int i = 0; i < _count; ++i) {
            out += i ? ", [" : "[";
            auto blocks = member(i).blocks();
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                out += b ? ", [" : "[";
                for (std::size_t j = 0; j < blocks[b].size(); ++j)
                    out += (j ? ", " : "") + std::to_string(blocks[b][j]);
                out += "]";
            }
            out += "]";
        }
        return out + "]}";
    }

    FamilyBuilder::FamilyBuilder(VertexSet ground) :
        _ground(std::move(ground)),
        _slots(16, -1)
    {
        check_ground(_ground);
    }

    auto FamilyBuilder::hash(std::span<const Label> row) const -> std::size_t
    {
        std::uint64_t h = 14695981039346656037ULL;
        for (Label label : row) {
            h ^= label;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }

    auto FamilyBuilder::grow() -> void
    {
        std::vector<int> slots(_slots.size() * 2, -1);
        std::size_t mask = slots.size() - 1;
        std::size_t width = _ground.size();
        for (int i = 0; i < _count; ++i) {
            std::size_t h = hash({_rows.data() + i * width, width}) & mask;
            while (slots[h] >= 0)
                h = (h + 1) & mask;
            slots[h] = i;
        }
        _slots = std::move(slots);
    }

    auto FamilyBuilder::add(std::span<const Label> row) -> void
    {
        std::size_t width = _ground.size();
        std::size_t mask = _slots.size() - 1;
        std::size_t h = hash(row) & mask;
        while (_slots[h] >= 0) {
            if (std::equal(row.begin(), row.end(), _rows.begin() + _slots[h] * width))
                return;
            h = (h + 1) & mask;
        }
        _slots[h] = _count++;
        _rows.insert(_rows.end(), row.begin(), row.end());
        if (2 * static_cast<std::size_t>(_count) > _slots.size())
            grow();
    }

    auto FamilyBuilder::add_family(const PartitionFamily & family) -> void
    {
        if (family.ground() != _ground)
            throw InputError("family ground set differs from the builder's");
        for (int i = 0; i < family.size(); ++i)
            add(family.row(i));
    }

    auto FamilyBuilder::finish() -> PartitionFamily
    {
        std::size_t width = _ground.size();
        std::vector<int> order(_count);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::lexicographical_compare(_rows.begin() + a * width, _rows.begin() + (a + 1) * width,
                    _rows.begin() + b * width, _rows.begin() + (b + 1) * width);
        });

        PartitionFamily family;
        family._ground = std::move(_ground);
        family._count = _count;
        family._rows.reserve(_rows.size());
        for (int i : order)
            family._rows.insert(family._rows.end(), _rows.begin() + i * width, _rows.begin() + (i + 1) * width);
        _rows.clear();
        _slots.assign(16, -1);
        _count = 0;
        return family;
    }

    auto ins(Vertex v, const PartitionFamily & family) -> PartitionFamily
    {
        auto & ground = family.ground();
        if (position(ground, v) >= 0)
            throw InputError("ins: vertex " + std::to_string(v) + " is already in the ground set");
        VertexSet extended = ground;
        int p = static_cast<int>(std::lower_bound(extended.begin(), extended.end(), v) - extended.begin());
        extended.insert(extended.begin() + p, v);

        FamilyBuilder builder(extended);
        std::vector<Label> row(extended.size());
        for (int i = 0; i < family.size(); ++i) {
            auto old = family.row(i);
            std::copy(old.begin(), old.begin() + p, row.begin());
            row[p] = static_cast<Label>(ground.size());
            std::copy(old.begin() + p, old.end(), row.begin() + p + 1);
            canonicalize(row);
            builder.add(row);
        }
        return builder.finish();
    }

    auto proj(Vertex v, const PartitionFamily & family) -> PartitionFamily
    {
        auto & ground = family.ground();
        int p = position(ground, v);
        if (p < 0)
            throw InputError("proj: vertex " + std::to_string(v) + " is not in the ground set");
        VertexSet reduced = ground;
        reduced.erase(reduced.begin() + p);

        FamilyBuilder builder(reduced);
        std::vector<Label> row(reduced.size());
        for (int i = 0; i < family.size(); ++i) {
            auto old = family.row(i);
            bool singleton = true;
            for (std::size_t j = 0; j < old.size() && singleton; ++j)
                singleton = static_cast<int>(j) == p || old[j] != old[p];
            if (singleton)
                continue;
            std::copy(old.begin(), old.begin() + p, row.begin());
            std::copy(old.begin() + p + 1, old.end(), row.begin() + p);
            canonicalize(row);
            builder.add(row);
        }
        return builder.finish();
    }

    auto glue(Vertex u, Vertex v, const PartitionFamily & family) -> PartitionFamily
    {
        if (u == v)
            throw InputError("glue: endpoints must differ");
        PartitionFamily extended = family;
        if (position(extended.ground(), u) < 0)
            extended = ins(u, extended);
        if (position(extended.ground(), v) < 0)
            extended = ins(v, extended);

        int pu = position(extended.ground(), u), pv = position(extended.ground(), v);
        FamilyBuilder builder(extended.ground());
        std::vector<Label> row(extended.stride());
        for (int i = 0; i < extended.size(); ++i) {
            auto old = extended.row(i);
            Label from = old[pv], to = old[pu];
            for (std::size_t j = 0; j < old.size(); ++j)
                row[j] = old[j] == from ? to : old[j];
            canonicalize(row);
            builder.add(row);
        }
        return builder.finish();
    }

    auto join_families(const PartitionFamily & a, const PartitionFamily & b) -> PartitionFamily
    {
        if (a.ground() != b.ground())
            throw InputError("join_families: ground sets differ");
        FamilyBuilder builder(a.ground());
        std::vector<Label> row(a.stride());
        for (int i = 0; i < a.size(); ++i)
            for (int j = 0; j < b.size(); ++j) {
                meet_join_labels(a.row(i), b.row(j), row);
                builder.add(row);
            }
        return builder.finish();
    }

    auto unite(const PartitionFamily & a, const PartitionFamily & b) -> PartitionFamily
    {
        if (a.ground() != b.ground())
            throw InputError("unite: ground sets differ");
        FamilyBuilder builder(a.ground());
        builder.add_family(a);
        builder.add_family(b);
        return builder.finish();
    }

    auto reduce(const PartitionFamily & family) -> PartitionFamily
    {
        int u = family.stride();
        if (u == 0 || family.size() <= 1)
            return family;
        if (u > max_reduce_ground_size)
            throw InputError("reduce supports ground sets of at most " + std::to_string(max_reduce_ground_size) + " elements");

        std::size_t columns = std::size_t{1} << (u - 1);
        std::size_t words = (columns + 63) / 64;
        std::vector<std::vector<std::uint64_t>> basis;
        std::vector<std::size_t> pivots;
        std::vector<std::uint64_t> row(words);

        FamilyBuilder builder(family.ground());
        for (int i = 0; i < family.size() && basis.size() < columns; ++i) {
            cut_row(family.row(i), row);
            for (std::size_t b = 0; b < basis.size(); ++b)
                if ((row[pivots[b] >> 6] >> (pivots[b] & 63)) & 1U)
                    for (std::size_t w = 0; w < words; ++w)
                        row[w] ^= basis[b][w];
            std::size_t w = 0;
            while (w < words && row[w] == 0)
                ++w;
            if (w == words)
                continue;
            pivots.push_back(w * 64 + std::countr_zero(row[w]));
            basis.push_back(row);
            builder.add(family.row(i));
        }
        return builder.finish();
    }
}
