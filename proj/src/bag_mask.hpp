#pragma once

#include <fair_cover/graph.hpp>

#include <algorithm>
#include <cstdint>

namespace fair_cover::detail
{
    inline auto position(const VertexSet & bag, Vertex v) -> int
    {
        return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    }

    inline auto insert_bit(std::uint64_t mask, int p, bool bit) -> std::uint64_t
    {
        std::uint64_t low = mask & ((std::uint64_t{1} << p) - 1);
        std::uint64_t high = (mask >> p) << (p + 1);
        return low | high | (std::uint64_t{bit} << p);
    }

    inline auto remove_bit(std::uint64_t mask, int p) -> std::uint64_t
    {
        std::uint64_t low = mask & ((std::uint64_t{1} << p) - 1);
        return low | ((mask >> (p + 1)) << p);
    }

    inline auto masked(const VertexSet & bag, std::uint64_t mask) -> VertexSet
    {
        VertexSet result;
        for (std::size_t i = 0; i < bag.size(); ++i)
            if ((mask >> i) & 1U)
                result.push_back(bag[i]);
        return result;
    }
}
