#pragma once

// Template-generated alternating paths in the depth-1 flip graph: the swap,
// up, special-up and star building blocks used by the conduction routines.
// Each path is instantiated from its row template, then validated flip by
// flip: consecutive vertices must be flips, the matching/non-matching flag
// pattern must agree with the standard matching of the supplied order, and
// every vertex must belong to the supplied subgraph.

#include <stdexcept>
#include <string>
#include <vector>

#include "wsb/matching.hpp"

namespace wsb {

enum class KitKind {
    swapI_k,   // swap singleton blocks k, k+1 of a first-type head (3 <= k <= n-1)
    swapII_k,  // swap element positions k, k+1 of a second-type head (3 <= k <= n-1)
    swapI_2,   // swap blocks 2, 3 of a first-type head (long form)
    swapII_2,  // exchange the second head element with block 2 (long form)
    upI_k,     // move the distinguished id one block to the right, singleton head
    upII_k,    // move the distinguished id one block right, two-element head
    upII_2,    // pull the distinguished id out of the head and park it second
    specupII,  // exchange the distinguished id with its successor inside the head
    star       // walk the distinguished id from the head to the last block
};

struct KitPathSpec {
    KitKind kind;
    int k = 0;          // position parameter where the kind uses one
    FullTuple start;
    OrderR R;
    SubgraphSpec spec;
};

namespace detail {

inline FullTuple merge_at(FullTuple t, int i) {
    std::size_t p = static_cast<std::size_t>(i);
    if (p + 1 >= t.blocks.size()) throw std::logic_error("kit merge_at: position out of range");
    t.blocks[p] |= t.blocks[p + 1];
    t.blocks.erase(t.blocks.begin() + static_cast<std::ptrdiff_t>(p) + 1);
    return t;
}

inline FullTuple split_at(FullTuple t, int i, IdSet front) {
    std::size_t p = static_cast<std::size_t>(i);
    if (p >= t.blocks.size() || (front & ~t.blocks[p]) || front == 0 || front == t.blocks[p])
        throw std::logic_error("kit split_at: invalid split");
    IdSet rest = t.blocks[p] & ~front;
    t.blocks[p] = front;
    t.blocks.insert(t.blocks.begin() + static_cast<std::ptrdiff_t>(p) + 1, rest);
    return t;
}

inline FullTuple swap_blocks(FullTuple t, int i) {
    std::size_t p = static_cast<std::size_t>(i);
    if (p + 1 >= t.blocks.size())
        throw std::logic_error("kit swap_blocks: position out of range");
    std::swap(t.blocks[p], t.blocks[p + 1]);
    return t;
}

inline void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(std::string("kit_path: ") + what);
}

inline bool singleton(const FullTuple& t, int i) {
    return set_size(t.blocks[static_cast<std::size_t>(i)]) == 1;
}

// The raw vertex rows of each figure, head element = the largest id n.
inline std::vector<FullTuple> kit_rows(const KitPathSpec& s) {
    const FullTuple& a = s.start;
    int n = a.n;
    int k = s.k;
    IdSet nb = id_bit(n);
    std::vector<FullTuple> r;
    switch (s.kind) {
        case KitKind::swapI_k: {
            require(k >= 3 && k <= n - 1, "swapI_k needs 3 <= k <= n-1");
            require(a.length() > k, "swapI_k: start too short");
            require(a.blocks[0] == nb && singleton(a, 1) && singleton(a, k - 1) &&
                        singleton(a, k),
                    "swapI_k: start does not match the template");
            r = {a, merge_at(a, 0), merge_at(merge_at(a, 0), k - 2), merge_at(a, k - 1),
                 swap_blocks(a, k - 1)};
            break;
        }
        case KitKind::swapII_k: {
            require(k >= 3 && k <= n - 1, "swapII_k needs 3 <= k <= n-1");
            require(a.length() > k - 1, "swapII_k: start too short");
            require(set_size(a.blocks[0]) == 2 && contains(a.blocks[0], n) &&
                        singleton(a, k - 2) && singleton(a, k - 1),
                    "swapII_k: start does not match the template");
            FullTuple b = split_at(a, 0, nb);
            r = {a, b, merge_at(b, k - 1), merge_at(a, k - 2), swap_blocks(a, k - 2)};
            break;
        }
        case KitKind::swapI_2: {
            require(a.length() == n && a.blocks[0] == nb,
                    "swapI_2: start must be a singleton tuple headed by the largest id");
            FullTuple b = merge_at(a, 0);                   // n,x2 | x3 | ... | xn
            FullTuple c = merge_at(a, n - 2);               // n | ... | xn-1,xn
            FullTuple d = merge_at(c, 1);                   // n | x2,x3 | ... | xn-1,xn
            FullTuple e = merge_at(a, 1);                   // n | x2,x3 | x4 | ... | xn
            IdSet x3 = a.blocks[2];
            r = {a, b, merge_at(b, n - 3), c, d, merge_at(d, 0), merge_at(e, 0), e,
                 split_at(e, 1, x3)};
            break;
        }
        case KitKind::swapII_2: {
            require(a.length() == n - 1 && set_size(a.blocks[0]) == 2 &&
                        contains(a.blocks[0], n),
                    "swapII_2: start must be a second-type head over singletons");
            for (int i = 1; i < n - 1; ++i)
                require(singleton(a, i), "swapII_2: tail blocks must be singletons");
            FullTuple b = split_at(a, 0, nb);               // n | x2 | x3 | ...
            FullTuple c = merge_at(b, 1);                   // n | x2,x3 | ...
            FullTuple d = merge_at(c, 0);                   // n,x2,x3 | x4 | ... | xn
            FullTuple e = merge_at(d, n - 4);               // n,x2,x3 | ... | xn-1,xn
            IdSet x3 = a.blocks[1];
            FullTuple f = split_at(split_at(e, 0, nb), 1, x3);  // n | x3 | x2 | ...,last merged
            FullTuple g = merge_at(f, 0);                   // n,x3 | x2 | ... | xn-1,xn
            IdSet xn1 = a.blocks[static_cast<std::size_t>(n - 3)];
            r = {a, b, c, d, e, split_at(e, 0, nb), f, g, split_at(g, n - 3, xn1)};
            break;
        }
        case KitKind::upI_k: {
            require(k >= 1 && k <= n - 1, "upI_k needs 1 <= k <= n-1");
            require(a.length() > k, "upI_k: start too short");
            require(a.blocks[static_cast<std::size_t>(k - 1)] == nb,
                    "upI_k: the distinguished id must be the k-th singleton block");
            FullTuple b = merge_at(a, k - 1);
            IdSet next = a.blocks[static_cast<std::size_t>(k)];
            r = {a, b, split_at(b, k - 1, next)};
            break;
        }
        case KitKind::upII_k: {
            require(k >= 3 && k <= n - 1, "upII_k needs 3 <= k <= n-1");
            require(set_size(a.blocks[0]) == 2 && !contains(a.blocks[0], n),
                    "upII_k: head must be a two-element block without the distinguished id");
            require(a.length() > k - 2 + 1, "upII_k: start too short");
            require(a.blocks[static_cast<std::size_t>(k - 2)] == nb,
                    "upII_k: the distinguished id must sit at element position k");
            FullTuple b = merge_at(a, k - 2);
            IdSet next = a.blocks[static_cast<std::size_t>(k - 1)];
            r = {a, b, split_at(b, k - 2, next)};
            break;
        }
        case KitKind::upII_2: {
            require(a.length() == n - 1 && a.blocks[0] == (nb | id_bit(n - 1)),
                    "upII_2: start must be {n-1,n} | singletons");
            IdSet m = id_bit(n - 1);
            IdSet a3 = a.blocks[1];
            FullTuple b = split_at(a, 0, nb);               // n | n-1 | a3 | a4 | ...
            FullTuple c = merge_at(b, 2);                   // n | n-1 | a3,a4 | ...
            FullTuple d = merge_at(c, 0);                   // n-1,n | a3,a4 | ...
            FullTuple e = split_at(d, 0, m);                // n-1 | n | a3,a4 | ...
            FullTuple f = merge_at(e, 1);                   // n-1 | n,a3,a4 | ...
            FullTuple g = split_at(f, 1, a3);               // n-1 | a3 | n,a4 | ...
            FullTuple h = split_at(g, 2, nb);               // n-1 | a3 | n | a4 | ...
            r = {a, b, c, d, e, f, g, h, merge_at(h, 0)};
            break;
        }
        case KitKind::specupII: {
            require(a.length() == n - 1 && set_size(a.blocks[0]) == 2 &&
                        contains(a.blocks[0], n) && a.blocks[1] == id_bit(n - 1),
                    "specupII: start must be {n,y} | n-1 | singletons");
            IdSet m = id_bit(n - 1);
            IdSet y = a.blocks[0] & ~nb;
            FullTuple b = split_at(a, 0, nb);               // n | y | n-1 | ...
            FullTuple c = merge_at(b, 1);                   // n | y,n-1 | ...
            FullTuple d = merge_at(c, 0);                   // n,y,n-1 | ...
            FullTuple e = split_at(d, 0, m);                // n-1 | n,y | ...
            FullTuple f = split_at(e, 1, nb);               // n-1 | n | y | ...
            FullTuple g = merge_at(f, 2);                   // n-1 | n | y,a4 | ...
            FullTuple h = merge_at(g, 1);                   // n-1 | n,y,a4 | ...
            FullTuple i = split_at(h, 1, y);                // n-1 | y | n,a4 | ...
            FullTuple j = split_at(i, 2, nb);               // n-1 | y | n | a4 | ...
            r = {a, b, c, d, e, f, g, h, i, j, merge_at(j, 0)};
            break;
        }
        case KitKind::star: {
            require(a.length() == n - 1 && set_size(a.blocks[0]) == 2 &&
                        contains(a.blocks[0], n),
                    "star: start must be {n,y1} | y2 | ... | y_{n-1}");
            for (int i = 1; i < n - 1; ++i)
                require(singleton(a, i), "star: tail blocks must be singletons");
            IdSet y1 = a.blocks[0] & ~nb;
            IdSet y2 = a.blocks[1];
            FullTuple b = split_at(a, 0, nb);               // n | y1 | y2 | y3 | ...
            FullTuple c = merge_at(b, 2);                   // n | y1 | y2,y3 | ...
            FullTuple d = merge_at(c, 0);                   // n,y1 | y2,y3 | ...
            FullTuple e = split_at(d, 0, y1);               // y1 | n | y2,y3 | ...
            FullTuple f = merge_at(e, 1);                   // y1 | n,y2,y3 | ...
            FullTuple g = split_at(f, 1, y2);               // y1 | y2 | n,y3 | ...
            FullTuple h = split_at(g, 2, nb);               // y1 | y2 | n | y3 | ...
            FullTuple i = merge_at(h, 0);                   // y1,y2 | n | y3 | ...
            r = {a, b, c, d, e, f, g, h, i};
            FullTuple cur = i;
            int p = 1;  // block index of the distinguished id within cur
            while (p + 1 < cur.length()) {
                FullTuple m1 = merge_at(cur, p);
                IdSet next = cur.blocks[static_cast<std::size_t>(p + 1)];
                FullTuple m2 = split_at(m1, p, next);
                r.push_back(m1);
                r.push_back(m2);
                cur = m2;
                ++p;
            }
            break;
        }
    }
    return r;
}

}  // namespace detail

// The color of the flip joining two adjacent tuples, if any.
inline std::optional<int> flip_color_between(const FullTuple& u, const FullTuple& v) {
    for (int x : ids_of(flippable_set(u))) {
        if (flip(u, x) == v) return x;
    }
    return std::nullopt;
}

// Instantiate a figure template and validate it: edges must be flips, flags
// must alternate starting on a matching edge of the standard matching for
// spec.R, and every vertex must lie in spec.spec.
inline AltPath kit_path(const KitPathSpec& s) {
    if (s.start.n < 5) throw std::domain_error("kit_path: n must be at least 5");
    if (!valid_full_tuple(s.start)) throw std::invalid_argument("kit_path: invalid start");
    std::vector<FullTuple> rows = detail::kit_rows(s);
    AltPath out;
    for (const FullTuple& t : rows) {
        if (!member(t, s.spec))
            throw std::invalid_argument("kit_path: legality violation (vertex outside subgraph)");
        out.vertices.push_back(make_vertex(t));
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        auto c = flip_color_between(rows[i], rows[i + 1]);
        if (!c) throw std::logic_error("kit_path: template rows are not flip-adjacent");
        bool expect_mu = (i % 2 == 0);  // every figure starts with a matching edge
        bool is_mu = (standard_color(rows[i], s.R) == c) ||
                     (standard_color(rows[i + 1], s.R) == c);
        if (is_mu != expect_mu)
            throw std::logic_error("kit_path: flag pattern disagrees with the standard matching");
        out.colors.push_back(*c);
        out.is_matching.push_back(expect_mu);
    }
    if (!out.structurally_valid()) throw std::logic_error("kit_path: malformed path");
    return out;
}

}  // namespace wsb
