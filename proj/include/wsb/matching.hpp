#pragma once

// Heights and standard matchings determined by an order on the ids outside a
// forbidden set, generic matching storage with verification, alternating
// paths and the symmetric-difference rewrite used to reroute matchings along
// augmenting paths.

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wsb/flip_graph.hpp"

namespace wsb {

// An order R = (x_1,...,x_d) on [n] minus V.
struct OrderR {
    int n = 0;
    std::vector<int> seq;

    IdSet support() const {
        IdSet s = 0;
        for (int x : seq) s |= id_bit(x);
        return s;
    }
    IdSet v_of() const { return full_set(n) & ~support(); }
};

inline OrderR ascending_order(int n, IdSet V) {
    OrderR r{n, ids_of(full_set(n) & ~V)};
    return r;
}

// Height of sigma with respect to R: the unique h such that sigma ends with
// the singleton run x_{h+1}|...|x_d and the block before it is not {x_h}.
// Computed by matching singleton blocks right-to-left against R.
inline int height(const FullTuple& sigma, const OrderR& r) {
    int h = static_cast<int>(r.seq.size());
    int block = sigma.length() - 1;
    while (h >= 1 && block >= 0 &&
           sigma.blocks[static_cast<std::size_t>(block)] ==
               id_bit(r.seq[static_cast<std::size_t>(h - 1)])) {
        --h;
        --block;
    }
    return h;
}

// Standard matching partner: flip by x_h when the height h is positive;
// vertices of height 0 are critical (unmatched).
inline std::optional<FullTuple> standard_partner(const FullTuple& sigma, const OrderR& r) {
    int h = height(sigma, r);
    if (h == 0) return std::nullopt;
    return flip(sigma, r.seq[static_cast<std::size_t>(h - 1)]);
}

inline std::optional<int> standard_color(const FullTuple& sigma, const OrderR& r) {
    int h = height(sigma, r);
    if (h == 0) return std::nullopt;
    return r.seq[static_cast<std::size_t>(h - 1)];
}

// Critical vertices of the standard matching inside a subgraph spec, in
// canonical order.
inline std::vector<FullTuple> standard_critical_vertices(int n, const SubgraphSpec& spec,
                                                         const OrderR& r) {
    std::vector<FullTuple> out;
    for (const FullTuple& t : enumerate_tuples(n, &spec)) {
        if (height(t, r) == 0) out.push_back(t);
    }
    return out;
}

// --- explicit matchings -----------------------------------------------------

struct VertexHash {
    std::size_t operator()(const FlipVertex& v) const {
        std::size_t h = std::hash<int>()(v.n);
        for (const FullTuple& t : v.rounds) {
            for (IdSet b : t.blocks) {
                h ^= std::hash<IdSet>()(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            }
            h ^= 0x517cc1b727220a95ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// A matching stored explicitly: both endpoints map to the edge color, and
// the partner is recovered by flipping.
class Matching {
public:
    bool matched(const FlipVertex& v) const { return edge_color_.count(v) != 0; }

    std::optional<int> color(const FlipVertex& v) const {
        auto it = edge_color_.find(v);
        if (it == edge_color_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<FlipVertex> partner(const FlipVertex& v) const {
        auto it = edge_color_.find(v);
        if (it == edge_color_.end()) return std::nullopt;
        return flip(v, it->second);
    }

    void add_edge(const FlipVertex& v, int x) {
        FlipVertex w = flip(v, x);
        if (matched(v) || matched(w))
            throw std::logic_error("Matching::add_edge: endpoint already matched");
        edge_color_[v] = x;
        edge_color_[w] = x;
    }

    void remove_edge(const FlipVertex& v) {
        auto it = edge_color_.find(v);
        if (it == edge_color_.end())
            throw std::logic_error("Matching::remove_edge: vertex not matched");
        FlipVertex w = flip(v, it->second);
        edge_color_.erase(it);
        edge_color_.erase(w);
    }

    std::size_t edge_count() const { return edge_color_.size() / 2; }

    const std::unordered_map<FlipVertex, int, VertexHash>& raw() const { return edge_color_; }

private:
    std::unordered_map<FlipVertex, int, VertexHash> edge_color_;
};

// --- alternating paths ------------------------------------------------------

// A walk whose edges alternate between matching and non-matching edges.
struct AltPath {
    std::vector<FlipVertex> vertices;
    std::vector<int> colors;            // colors[i] joins vertices[i], vertices[i+1]
    std::vector<bool> is_matching;      // flag per edge

    int edge_count() const { return static_cast<int>(colors.size()); }

    bool structurally_valid() const {
        if (vertices.empty()) return false;
        if (colors.size() + 1 != vertices.size() || is_matching.size() != colors.size())
            return false;
        for (std::size_t i = 0; i < colors.size(); ++i) {
            if (!contains(flippable_set(vertices[i]), colors[i])) return false;
            if (!(flip(vertices[i], colors[i]) == vertices[i + 1])) return false;
        }
        for (std::size_t i = 0; i + 1 < is_matching.size(); ++i) {
            if (is_matching[i] == is_matching[i + 1]) return false;
        }
        return true;
    }

    bool self_intersecting() const {
        std::unordered_set<std::string> seen;
        for (const FlipVertex& v : vertices) {
            if (!seen.insert(encode_vertex(v)).second) return true;
        }
        return false;
    }

    AltPath reversed() const {
        AltPath out;
        out.vertices.assign(vertices.rbegin(), vertices.rend());
        out.colors.assign(colors.rbegin(), colors.rend());
        out.is_matching.assign(is_matching.rbegin(), is_matching.rend());
        return out;
    }
};

// Concatenate two paths sharing an endpoint (last vertex of a == first of b).
inline AltPath concat(const AltPath& a, const AltPath& b) {
    if (!(a.vertices.back() == b.vertices.front()))
        throw std::logic_error("concat: paths do not share an endpoint");
    if (!a.colors.empty() && !b.colors.empty() &&
        a.is_matching.back() == b.is_matching.front())
        throw std::logic_error("concat: alternation broken at the joint");
    AltPath out = a;
    out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    out.colors.insert(out.colors.end(), b.colors.begin(), b.colors.end());
    out.is_matching.insert(out.is_matching.end(), b.is_matching.begin(), b.is_matching.end());
    return out;
}

// Check the path's matching flags against an oracle telling which edges are
// matching edges ("properly alternating" = flags correct and alternating).
inline bool properly_alternating(
    const AltPath& p, const std::function<bool(const FlipVertex&, int)>& is_matching_edge) {
    if (!p.structurally_valid()) return false;
    for (std::size_t i = 0; i < p.colors.size(); ++i) {
        if (p.is_matching[i] != is_matching_edge(p.vertices[i], p.colors[i])) return false;
    }
    return true;
}

// Excise revisits: whenever a vertex appears twice, drop the (even-length,
// by bipartiteness) loop between the occurrences.  Endpoints and alternation
// survive.
inline AltPath remove_cycles(const AltPath& p) {
    AltPath out;
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        std::string key = encode_vertex(p.vertices[i]);
        auto it = pos.find(key);
        if (it != pos.end()) {
            std::size_t keep = it->second;
            for (std::size_t j = keep + 1; j < out.vertices.size(); ++j)
                pos.erase(encode_vertex(out.vertices[j]));
            out.vertices.resize(keep + 1);
            out.colors.resize(keep);
            out.is_matching.resize(keep);
        } else {
            if (!out.vertices.empty()) {
                out.colors.push_back(p.colors[i - 1]);
                out.is_matching.push_back(p.is_matching[i - 1]);
            }
            pos[key] = out.vertices.size();
            out.vertices.push_back(p.vertices[i]);
        }
    }
    return out;
}

// Symmetric-difference rewrite: matching edges on the path leave the
// matching, non-matching path edges enter it.
inline void apply_alternating(Matching& mu, const AltPath& gamma) {
    if (!gamma.structurally_valid())
        throw std::logic_error("apply_alternating: path is not structurally valid");
    if (gamma.self_intersecting())
        throw std::logic_error("apply_alternating: path is self-intersecting");
    for (std::size_t i = 0; i < gamma.colors.size(); ++i) {
        bool is_mu = mu.matched(gamma.vertices[i]) &&
                     mu.color(gamma.vertices[i]) == gamma.colors[i] &&
                     mu.matched(gamma.vertices[i + 1]) &&
                     mu.color(gamma.vertices[i + 1]) == gamma.colors[i];
        if (is_mu != static_cast<bool>(gamma.is_matching[i]))
            throw std::logic_error("apply_alternating: path is not properly alternating");
    }
    for (std::size_t i = 0; i < gamma.colors.size(); ++i) {
        if (gamma.is_matching[i]) mu.remove_edge(gamma.vertices[i]);
    }
    for (std::size_t i = 0; i < gamma.colors.size(); ++i) {
        if (!gamma.is_matching[i]) mu.add_edge(gamma.vertices[i], gamma.colors[i]);
    }
}

// --- verification -----------------------------------------------------------

struct MatchingReport {
    std::size_t involution_violations = 0;
    std::size_t out_of_scope = 0;
    std::size_t color_flip_violations = 0;
    std::size_t critical_count = 0;
    std::size_t vertex_count = 0;
    std::vector<std::string> details;

    bool clean() const {
        return involution_violations == 0 && out_of_scope == 0 && color_flip_violations == 0;
    }
    bool perfect() const { return clean() && critical_count == 0; }
    bool near_perfect() const { return clean() && critical_count == 1; }
};

// Streaming verification: callers provide the in-scope vertex stream and a
// membership predicate; the host graph is never materialized.
inline MatchingReport verify_matching(
    const std::function<void(const std::function<void(const FlipVertex&)>&)>& stream,
    const std::function<bool(const FlipVertex&)>& in_scope,
    const std::function<std::optional<int>(const FlipVertex&)>& mu_color) {
    MatchingReport rep;
    stream([&](const FlipVertex& v) {
        ++rep.vertex_count;
        std::optional<int> c = mu_color(v);
        if (!c) {
            ++rep.critical_count;
            return;
        }
        if (!contains(flippable_set(v), *c)) {
            ++rep.color_flip_violations;
            if (rep.details.size() < 10)
                rep.details.push_back("unflippable color at " + encode_vertex(v));
            return;
        }
        FlipVertex w = flip(v, *c);
        if (!in_scope(w)) {
            ++rep.out_of_scope;
            if (rep.details.size() < 10)
                rep.details.push_back("partner out of scope at " + encode_vertex(v));
            return;
        }
        std::optional<int> back = mu_color(w);
        if (!back || *back != *c) {
            ++rep.involution_violations;
            if (rep.details.size() < 10)
                rep.details.push_back("involution broken at " + encode_vertex(v));
        }
    });
    return rep;
}

}  // namespace wsb
