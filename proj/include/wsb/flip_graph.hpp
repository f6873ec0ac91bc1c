#pragma once

// Flip graphs on tuples of ordered partitions: flippable sets, flips, the
// induced subgraphs cut out by a forbidden set V and a prefix family Omega,
// vertex enumeration, and support maps onto shallower levels.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsb/tuples.hpp"

namespace wsb {

// A vertex of the depth-d flip graph: d full [n]-tuples, one per round.
struct FlipVertex {
    int n = 0;
    std::vector<FullTuple> rounds;

    int depth() const { return static_cast<int>(rounds.size()); }

    friend bool operator==(const FlipVertex&, const FlipVertex&) = default;
};

inline FlipVertex make_vertex(const FullTuple& t) {
    return FlipVertex{t.n, {t}};
}

inline bool valid_vertex(const FlipVertex& v) {
    if (v.rounds.empty()) return false;
    for (const FullTuple& t : v.rounds) {
        if (t.n != v.n || !valid_full_tuple(t)) return false;
    }
    return true;
}

inline std::string encode_vertex(const FlipVertex& v) {
    std::string out;
    for (const FullTuple& t : v.rounds) {
        if (!out.empty()) out += "||";
        out += encode_tuple(t);
    }
    return out;
}

inline FlipVertex parse_vertex(const std::string& s, int n) {
    FlipVertex v{n, {}};
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find("||", pos);
        if (next == std::string::npos) next = s.size();
        v.rounds.push_back(parse_full_tuple(s.substr(pos, next - pos), n));
        if (next == s.size()) break;
        pos = next + 2;
    }
    return v;
}

inline bool canonical_less(const FlipVertex& a, const FlipVertex& b) {
    return encode_vertex(a) < encode_vertex(b);
}

// --- flips ------------------------------------------------------------------

// Ids eligible to flip at a single round: everything except x when the last
// block is the singleton {x}, everything otherwise.
inline IdSet flippable_set(const FullTuple& t) {
    IdSet last = t.last_block();
    if (set_size(last) == 1) return full_set(t.n) & ~last;
    return full_set(t.n);
}

// For a depth-d vertex the flippable set is the union over rounds.
inline IdSet flippable_set(const FlipVertex& v) {
    IdSet f = 0;
    for (const FullTuple& t : v.rounds) f |= flippable_set(t);
    return f;
}

// Flip a single round by id x.  Let A_k be the block containing x: if
// |A_k| >= 2, x is split off into its own block directly in front of the
// rest of A_k; if A_k = {x} (necessarily k < t since x is flippable), x is
// merged into the following block.  Applying the same flip twice returns
// the original tuple.
inline FullTuple flip(const FullTuple& t, int x) {
    if (!contains(flippable_set(t), x))
        throw std::domain_error("flip: id not flippable");
    FullTuple out = t;
    IdSet xb = id_bit(x);
    for (std::size_t k = 0; k < out.blocks.size(); ++k) {
        if (!(out.blocks[k] & xb)) continue;
        if (set_size(out.blocks[k]) >= 2) {
            out.blocks[k] &= ~xb;
            out.blocks.insert(out.blocks.begin() + static_cast<std::ptrdiff_t>(k), xb);
        } else {
            out.blocks.erase(out.blocks.begin() + static_cast<std::ptrdiff_t>(k));
            out.blocks[k] |= xb;
        }
        return out;
    }
    throw std::logic_error("flip: id not found");  // unreachable for valid input
}

// Flip a depth-d vertex by x: the flip happens at the deepest round whose
// flippable set contains x.
inline FlipVertex flip(const FlipVertex& v, int x) {
    for (int k = v.depth() - 1; k >= 0; --k) {
        if (contains(flippable_set(v.rounds[static_cast<std::size_t>(k)]), x)) {
            FlipVertex out = v;
            out.rounds[static_cast<std::size_t>(k)] =
                flip(out.rounds[static_cast<std::size_t>(k)], x);
            return out;
        }
    }
    throw std::domain_error("flip: id not flippable at any round");
}

inline std::vector<std::pair<int, FlipVertex>> neighbors(const FlipVertex& v) {
    std::vector<std::pair<int, FlipVertex>> out;
    for (int x : ids_of(flippable_set(v))) out.emplace_back(x, flip(v, x));
    return out;
}

// --- induced subgraphs ------------------------------------------------------

// Membership spec for the subgraph of the depth-1 graph induced by all
// sigma whose V-prefix belongs to the family Omega.  The plain forbidden-set
// graph (first block not inside V) is the special case Omega = {empty tuple}.
struct SubgraphSpec {
    IdSet V = 0;
    std::vector<STuple> omega;  // each member has all blocks inside V

    bool valid() const {
        for (const STuple& t : omega) {
            if (!valid_stuple(t) || (t.support() & ~V)) return false;
        }
        return true;
    }
};

inline SubgraphSpec forbidden_set_spec(IdSet V) {
    return SubgraphSpec{V, {STuple{}}};
}

inline bool member(const FullTuple& sigma, const SubgraphSpec& spec) {
    STuple pr = v_prefix(sigma, spec.V);
    return std::find(spec.omega.begin(), spec.omega.end(), pr) != spec.omega.end();
}

// --- enumeration ------------------------------------------------------------

// Visit every ordered partition of the id set `support` (taken in any block
// order), invoking fn on each.  Enumeration order is by choice of first
// block over nonempty subsets, recursively; callers that need the canonical
// order sort afterwards.
inline void for_each_partition(IdSet support, std::vector<IdSet>& prefix,
                               const std::function<void(const std::vector<IdSet>&)>& fn) {
    if (support == 0) {
        fn(prefix);
        return;
    }
    // Enumerate nonempty subsets of `support` as the next block.
    for (IdSet b = support; b != 0; b = (b - 1) & support) {
        prefix.push_back(b);
        for_each_partition(support & ~b, prefix, fn);
        prefix.pop_back();
    }
}

// All full [n]-tuples, optionally filtered by a subgraph spec, in canonical
// (encoding-lexicographic) ascending order.
inline std::vector<FullTuple> enumerate_tuples(int n,
                                               const SubgraphSpec* spec = nullptr) {
    std::vector<FullTuple> out;
    std::vector<IdSet> prefix;
    for_each_partition(full_set(n), prefix, [&](const std::vector<IdSet>& blocks) {
        FullTuple t{n, blocks};
        if (spec && !member(t, *spec)) return;
        out.push_back(std::move(t));
    });
    std::sort(out.begin(), out.end(),
              [](const FullTuple& a, const FullTuple& b) { return canonical_less(a, b); });
    return out;
}

inline std::vector<FlipVertex> enumerate_vertices(int n, int d,
                                                  const SubgraphSpec* spec = nullptr) {
    if (d < 1) throw std::domain_error("enumerate_vertices: depth must be >= 1");
    if (spec && d != 1)
        throw std::domain_error("enumerate_vertices: subgraph specs apply to depth 1 only");
    std::vector<FullTuple> level1 = enumerate_tuples(n, spec);
    std::vector<FlipVertex> out;
    if (d == 1) {
        out.reserve(level1.size());
        for (const FullTuple& t : level1) out.push_back(make_vertex(t));
        return out;
    }
    std::vector<FlipVertex> prev{FlipVertex{n, {}}};
    for (int r = 0; r < d; ++r) {
        std::vector<FlipVertex> next;
        for (const FlipVertex& v : prev) {
            for (const FullTuple& t : level1) {
                FlipVertex w = v;
                w.rounds.push_back(t);
                next.push_back(std::move(w));
            }
        }
        prev = std::move(next);
    }
    std::sort(prev.begin(), prev.end(), [](const FlipVertex& a, const FlipVertex& b) {
        return canonical_less(a, b);
    });
    return prev;
}

// --- support maps -----------------------------------------------------------

// First c rounds of a depth-d vertex, 1 <= c < d.
inline FlipVertex support_map(const FlipVertex& v, int c) {
    if (c < 1 || c >= v.depth()) throw std::domain_error("support_map: level out of range");
    return FlipVertex{v.n, {v.rounds.begin(), v.rounds.begin() + c}};
}

}  // namespace wsb
