#pragma once

// Level-d nodes: chains of coherent pairs ending in a terminal (S,x) pair,
// their adjacency with flip-graph vertices, the parent operation, normal
// forms, binary node labelings, and monochromaticity tests.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsb/flip_graph.hpp"
#include "wsb/tuples.hpp"

namespace wsb {

// A node of level d holds d-1 leading coherent pairs and a terminal pair
// (S, x) with x in S.  Consecutive components chain: the color of each
// leading pair is the carrier of the next one (the terminal pair has
// carrier S).
struct Node {
    int n = 0;
    std::vector<CoherentPair> pairs;
    IdSet S = 0;
    int x = 0;

    int level() const { return static_cast<int>(pairs.size()) + 1; }
    IdSet carrier() const { return pairs.empty() ? S : pairs.front().carrier(); }
    int color() const { return x; }

    friend bool operator==(const Node&, const Node&) = default;
};

inline bool valid_node(const Node& v) {
    if (v.n < 1 || v.n > kMaxIds) return false;
    if (v.S == 0 || (v.S & ~full_set(v.n)) || !contains(v.S, v.x)) return false;
    for (std::size_t i = 0; i < v.pairs.size(); ++i) {
        if (!valid_coherent_pair(v.pairs[i])) return false;
        IdSet next = (i + 1 < v.pairs.size()) ? v.pairs[i + 1].carrier() : v.S;
        if (v.pairs[i].color() != next) return false;
    }
    return true;
}

inline bool internal(const Node& v) { return v.carrier() == full_set(v.n); }

inline std::string encode_node(const Node& v) {
    std::string out;
    for (const CoherentPair& p : v.pairs) out += encode_pair(p) + "||";
    out += "(" + encode_set(v.S) + ";" + std::to_string(v.x) + ")";
    return out;
}

namespace detail {

// Restriction of a coherent pair that also accepts T equal to the whole
// color (identity on the trace structure); restrict_pair proper rejects it.
inline CoherentPair restrict_to(const CoherentPair& cp, IdSet T) {
    if (T == cp.color()) {
        CoherentPair out = cp;
        // merge top blocks exactly as the general rule does (no-op here
        // since every block traces)
        return out;
    }
    return restrict_pair(cp, T);
}

}  // namespace detail

// The unique node of depth(v)-th level with color x adjacent to v: the
// terminal pair is the last round restricted to {x}, and each earlier
// component is that round restricted to the carrier of its successor.
inline Node adjacent_node(const FlipVertex& v, int x) {
    if (x < 1 || x > v.n) throw std::domain_error("adjacent_node: color out of range");
    Node out;
    out.n = v.n;
    out.x = x;
    CoherentPair last = detail::restrict_to(as_pair(v.rounds.back()), id_bit(x));
    out.S = last.carrier();
    IdSet want = out.S;
    std::vector<CoherentPair> lead;
    for (std::size_t i = v.rounds.size() - 1; i-- > 0;) {
        CoherentPair p = detail::restrict_to(as_pair(v.rounds[i]), want);
        lead.push_back(p);
        want = p.carrier();
    }
    out.pairs.assign(lead.rbegin(), lead.rend());
    return out;
}

inline std::vector<Node> adjacent_nodes(const FlipVertex& v) {
    std::vector<Node> out;
    out.reserve(static_cast<std::size_t>(v.n));
    for (int x = 1; x <= v.n; ++x) out.push_back(adjacent_node(v, x));
    return out;
}

// The parent drops one level: the terminal is the last leading pair
// restricted to the node's color, and the restrictions cascade upward.
inline Node parent(const Node& v) {
    if (v.pairs.empty()) throw std::domain_error("parent: level-1 nodes have no parent");
    Node out;
    out.n = v.n;
    out.x = v.x;
    CoherentPair term = detail::restrict_to(v.pairs.back(), id_bit(v.x));
    out.S = term.carrier();
    IdSet want = out.S;
    std::vector<CoherentPair> lead;
    for (std::size_t i = v.pairs.size() - 1; i-- > 0;) {
        CoherentPair p = detail::restrict_to(v.pairs[i], want);
        lead.push_back(p);
        want = p.carrier();
    }
    out.pairs.assign(lead.rbegin(), lead.rend());
    return out;
}

// Image under the rank map of the carrier onto an initial segment.
inline Node normal_form(const Node& v) {
    Normalizer phi(v.carrier());
    Node out;
    out.n = set_size(v.carrier());
    out.S = phi.apply_set(v.S);
    out.x = phi.apply(v.x);
    for (const CoherentPair& p : v.pairs) out.pairs.push_back(apply(phi, p));
    return out;
}

// Image of a node under an arbitrary order-preserving carrier relabeling.
inline Node relabel_node(const Node& v, IdSet target_carrier) {
    if (set_size(target_carrier) != set_size(v.carrier()))
        throw std::invalid_argument("relabel_node: carrier sizes differ");
    Normalizer down(v.carrier());
    Normalizer up(target_carrier);
    auto map_set = [&](IdSet s) { return up.invert_set(down.apply_set(s)); };
    Node out;
    out.n = v.n;
    out.S = map_set(v.S);
    out.x = up.invert(down.apply(v.x));
    for (const CoherentPair& p : v.pairs) {
        CoherentPair q;
        for (IdSet b : p.top.blocks) q.top.blocks.push_back(map_set(b));
        for (IdSet b : p.bottom.blocks) q.bottom.blocks.push_back(map_set(b));
        out.pairs.push_back(q);
    }
    return out;
}

// --- labelings ---------------------------------------------------------------

// An evaluation rule plus a short descriptor; labelings are never
// materialized as tables at level >= 2.
struct NodeLabeling {
    std::function<int(const Node&)> eval;
    std::string descriptor;
};

inline bool is_monochromatic(const FlipVertex& v, const NodeLabeling& L, int bit) {
    for (int x = 1; x <= v.n; ++x) {
        if (L.eval(adjacent_node(v, x)) != bit) return false;
    }
    return true;
}

struct ComplianceReport {
    std::size_t checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// For every sampled node and every target carrier of matching size, the
// label must be preserved by the order bijection between the carriers.
inline ComplianceReport check_compliance(const NodeLabeling& L, const std::vector<Node>& samples,
                                         const std::vector<IdSet>& target_carriers) {
    ComplianceReport rep;
    for (const Node& v : samples) {
        int lv = L.eval(v);
        for (IdSet T : target_carriers) {
            if (set_size(T) != set_size(v.carrier())) continue;
            Node w = relabel_node(v, T);
            ++rep.checked;
            if (L.eval(w) != lv) {
                rep.violations.push_back(encode_node(v) + " -> " + encode_node(w));
            }
        }
    }
    return rep;
}

}  // namespace wsb
