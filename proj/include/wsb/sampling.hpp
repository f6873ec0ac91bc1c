#pragma once

// Exact uniform sampling of ordered partitions and stacked flip-graph
// vertices, using integer block-count weights so the draw is unbiased for
// every supported id range.

#include <random>
#include <stdexcept>
#include <vector>

#include "wsb/flip_graph.hpp"

namespace wsb {

// Uniform draw from [0, bound) over the full 128-bit stream, by rejection.
inline Int128 uniform_int128(Int128 bound, std::mt19937_64& rng) {
    if (bound == 0) throw std::domain_error("uniform_int128: empty range");
    Int128 min = (Int128(0) - bound) % bound;  // 2^128 mod bound
    for (;;) {
        Int128 v = (Int128(rng()) << 64) | Int128(rng());
        if (v >= min) return v % bound;
    }
}

// Uniform ordered partition of the ids in `support`: the first block is a
// k-subset drawn with probability C(m,k) * a(m-k) / a(m), where a is the
// ordered-partition count, then the remainder recurses.
inline FullTuple sample_partition(int n, IdSet support, std::mt19937_64& rng) {
    FullTuple out{n, {}};
    IdSet rest = support;
    while (rest != 0) {
        std::vector<int> ids = ids_of(rest);
        int m = static_cast<int>(ids.size());
        Int128 u = uniform_int128(fubini(m), rng);
        int k = 0;
        for (k = 1; k <= m; ++k) {
            Int128 w = binomial(m, k) * fubini(m - k);
            if (u < w) break;
            u -= w;
        }
        // draw a uniform k-subset of the remaining ids by Fisher-Yates prefix
        for (int i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(uniform_int128(
                                    static_cast<Int128>(m - i), rng));
            std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
        }
        IdSet block = 0;
        for (int i = 0; i < k; ++i) block |= id_bit(ids[static_cast<std::size_t>(i)]);
        out.blocks.push_back(block);
        rest &= ~block;
    }
    return out;
}

inline FullTuple sample_full_tuple(int n, std::mt19937_64& rng) {
    return sample_partition(n, full_set(n), rng);
}

// Uniform vertex of the depth-d flip graph: the rounds are independent.
inline FlipVertex sample_flip_vertex(int n, int rounds, std::mt19937_64& rng) {
    if (rounds < 1) throw std::domain_error("sample_flip_vertex: rounds must be positive");
    FlipVertex v{n, {}};
    for (int r = 0; r < rounds; ++r) v.rounds.push_back(sample_full_tuple(n, rng));
    return v;
}

}  // namespace wsb
