#pragma once

// Conduction between connector vertices of the depth-1 flip graph: the four
// tunnel/endpoint routines built from the kit paths, the standard paths
// between set-indexed vertices, the run-merging operation ds used to prove
// them disjoint, and the disjoint path system builder.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "wsb/kit_paths.hpp"

namespace wsb {

// --- relabelings ------------------------------------------------------------

// An arbitrary permutation of [n] acting on ids, sets, tuples and paths.
struct Permutation {
    int n = 0;
    std::vector<int> fwd;  // fwd[id-1] = image of id
    std::vector<int> inv;

    static Permutation from_images(int n, const std::vector<int>& images) {
        Permutation p{n, images, std::vector<int>(static_cast<std::size_t>(n), 0)};
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int id = 1; id <= n; ++id) {
            int im = images[static_cast<std::size_t>(id - 1)];
            if (im < 1 || im > n || seen[static_cast<std::size_t>(im - 1)])
                throw std::invalid_argument("Permutation: images are not a bijection");
            seen[static_cast<std::size_t>(im - 1)] = true;
            p.inv[static_cast<std::size_t>(im - 1)] = id;
        }
        return p;
    }

    int apply(int id) const { return fwd[static_cast<std::size_t>(id - 1)]; }
    int invert(int id) const { return inv[static_cast<std::size_t>(id - 1)]; }

    IdSet apply_set(IdSet s) const {
        IdSet out = 0;
        for (int id : ids_of(s)) out |= id_bit(apply(id));
        return out;
    }
    IdSet invert_set(IdSet s) const {
        IdSet out = 0;
        for (int id : ids_of(s)) out |= id_bit(invert(id));
        return out;
    }

    FullTuple apply_tuple(const FullTuple& t) const {
        FullTuple out{t.n, {}};
        for (IdSet b : t.blocks) out.blocks.push_back(apply_set(b));
        return out;
    }
    FullTuple invert_tuple(const FullTuple& t) const {
        FullTuple out{t.n, {}};
        for (IdSet b : t.blocks) out.blocks.push_back(invert_set(b));
        return out;
    }

    // Pull a path built in relabeled coordinates back to the original ones.
    AltPath invert_path(const AltPath& p) const {
        AltPath out;
        for (const FlipVertex& v : p.vertices) {
            FlipVertex w{v.n, {}};
            for (const FullTuple& t : v.rounds) w.rounds.push_back(invert_tuple(t));
            out.vertices.push_back(w);
        }
        for (int c : p.colors) out.colors.push_back(invert(c));
        out.is_matching = p.is_matching;
        return out;
    }
};

// --- connectors -------------------------------------------------------------

enum class ConnectorKind { first, second };

struct Connector {
    FullTuple vertex;
    ConnectorKind kind = ConnectorKind::first;
    int terminal = 0;  // the element of the last block
};

// Classify a depth-1 vertex as a connector, if it has one of the two shapes.
inline std::optional<Connector> connector_of(const FullTuple& sigma) {
    if (!valid_full_tuple(sigma) || sigma.length() < 2) return std::nullopt;
    int terminal = min_id(sigma.blocks.back());
    bool rest_singletons = true;
    for (int i = 1; i < sigma.length(); ++i) {
        if (set_size(sigma.blocks[static_cast<std::size_t>(i)]) != 1) {
            rest_singletons = false;
            break;
        }
    }
    if (!rest_singletons) return std::nullopt;
    if (set_size(sigma.blocks[0]) == 1) return Connector{sigma, ConnectorKind::first, terminal};
    if (set_size(sigma.blocks[0]) == 2) return Connector{sigma, ConnectorKind::second, terminal};
    return std::nullopt;
}

// A connector may be used inside the subgraph over V only when its first
// block is not swallowed by V.
inline bool connector_proper(const Connector& c, IdSet V) {
    return (c.vertex.blocks[0] & ~V) != 0;
}

// --- shared helpers ---------------------------------------------------------

namespace detail {

inline AltPath single_vertex_path(const FullTuple& t) {
    AltPath p;
    p.vertices.push_back(make_vertex(t));
    return p;
}

inline FullTuple last_tuple(const AltPath& p) { return p.vertices.back().rounds[0]; }

inline void append_kit(AltPath& path, KitKind kind, int k, const OrderR& R,
                       const SubgraphSpec& spec) {
    KitPathSpec ks{kind, k, last_tuple(path), R, spec};
    path = concat(path, kit_path(ks));
}

// Append the standard matching edge leaving the path's last vertex.
inline void append_matching_edge(AltPath& path, const OrderR& R, const SubgraphSpec& spec) {
    FullTuple u = last_tuple(path);
    auto c = standard_color(u, R);
    if (!c) throw std::logic_error("conduct: expected a matched vertex at the path end");
    FullTuple v = flip(u, *c);
    if (!member(v, spec)) throw std::logic_error("conduct: matching edge leaves the subgraph");
    if (!path.is_matching.empty() && path.is_matching.back())
        throw std::logic_error("conduct: alternation broken before the matching edge");
    path.vertices.push_back(make_vertex(v));
    path.colors.push_back(*c);
    path.is_matching.push_back(true);
}

// 1-based element position of id within a tuple whose blocks past the first
// are singletons; head elements count as positions 1..|first block|.
inline int element_position(const FullTuple& t, int id) {
    int pos = 0;
    for (IdSet b : t.blocks) {
        if (set_size(b) == 1) {
            ++pos;
            if (b == id_bit(id)) return pos;
        } else {
            if (contains(b, id)) {
                // position within the head: the largest id leads
                return contains(b, id) && id == max_id(b) ? pos + 1 : pos + 2;
            }
            pos += set_size(b);
        }
    }
    throw std::logic_error("conduct: id not found in tuple");
}

// The canonical relabeling: V to 1..d (in the given order), `head` to n,
// everything else ascending to d+1..n-1.
inline Permutation canonical_relabeling(int n, const std::vector<int>& v_order, int head) {
    std::vector<int> images(static_cast<std::size_t>(n), 0);
    int next = static_cast<int>(v_order.size()) + 1;
    for (std::size_t i = 0; i < v_order.size(); ++i)
        images[static_cast<std::size_t>(v_order[i] - 1)] = static_cast<int>(i) + 1;
    images[static_cast<std::size_t>(head - 1)] = n;
    for (int id = 1; id <= n; ++id) {
        if (images[static_cast<std::size_t>(id - 1)] == 0)
            images[static_cast<std::size_t>(id - 1)] = next++;
    }
    return Permutation::from_images(n, images);
}

inline SubgraphSpec apply_spec(const Permutation& pi, const SubgraphSpec& spec) {
    SubgraphSpec out;
    out.V = pi.apply_set(spec.V);
    for (const STuple& t : spec.omega) {
        STuple u;
        for (IdSet b : t.blocks) u.blocks.push_back(pi.apply_set(b));
        out.omega.push_back(u);
    }
    return out;
}

}  // namespace detail

// --- tunnel steps -----------------------------------------------------------

enum class ConductGoal { to_f, to_a1 };

struct TunnelStep {
    OrderR R;
    AltPath path;
    Connector end;
};

// Walk a proper connector to a connector of the opposite kind along a path
// that is non-augmenting for the standard matching of the returned order.
// With goal to_f the new terminal is f; with goal to_a1 it is the head
// element of the input connector.
inline TunnelStep conduct_tunnel_step(const Connector& sigma, int f, const SubgraphSpec& spec,
                                      ConductGoal goal) {
    const FullTuple& sv = sigma.vertex;
    int n = sv.n;
    if (n < 5) throw std::domain_error("conduct_tunnel_step: n must be at least 5");
    int d = set_size(spec.V);
    if (d < 1 || d > n - 1) throw std::domain_error("conduct_tunnel_step: V out of range");
    for (const STuple& w : spec.omega) {
        if (w.support() == spec.V)
            throw std::domain_error("conduct_tunnel_step: the family has a full tuple over V");
    }
    if (!connector_proper(sigma, spec.V))
        throw std::domain_error("conduct_tunnel_step: connector is not proper");
    if (!member(sv, spec))
        throw std::domain_error("conduct_tunnel_step: start vertex outside the subgraph");
    int a1 = sigma.kind == ConnectorKind::first ? min_id(sv.blocks[0])
                                                : min_id(sv.blocks[0] & ~spec.V);
    if (goal == ConductGoal::to_f) {
        if (f < 1 || f > n || f == a1)
            throw std::domain_error("conduct_tunnel_step: f must differ from the head element");
    } else {
        if (d > n - 2)
            throw std::domain_error("conduct_tunnel_step: to_a1 needs |V| <= n-2");
    }

    Permutation pi = detail::canonical_relabeling(n, ids_of(spec.V), a1);
    SubgraphSpec cs = detail::apply_spec(pi, spec);
    OrderR R{n, {}};
    for (int x = d + 1; x <= n; ++x) R.seq.push_back(x);
    FullTuple s2 = pi.apply_tuple(sv);
    AltPath path = detail::single_vertex_path(s2);

    if (sigma.kind == ConnectorKind::first) {
        if (goal == ConductGoal::to_f) {
            int l = detail::element_position(s2, pi.apply(f));
            if (l == 2) {
                detail::append_kit(path, KitKind::swapI_2, 0, R, cs);
                l = 3;
            }
            for (int k = l; k <= n - 1; ++k) detail::append_kit(path, KitKind::swapI_k, k, R, cs);
        } else {
            int l = detail::element_position(s2, n - 1);
            for (int k = l - 1; k >= 3; --k) detail::append_kit(path, KitKind::swapI_k, k, R, cs);
            if (l >= 3) detail::append_kit(path, KitKind::swapI_2, 0, R, cs);
            for (int k = 1; k <= n - 1; ++k) detail::append_kit(path, KitKind::upI_k, k, R, cs);
        }
    } else {
        if (goal == ConductGoal::to_f) {
            int l = detail::element_position(s2, pi.apply(f));
            if (l == 2) {
                detail::append_kit(path, KitKind::swapII_2, 0, R, cs);
                l = 3;
            }
            for (int k = l; k <= n - 1; ++k)
                detail::append_kit(path, KitKind::swapII_k, k, R, cs);
        } else {
            int l = detail::element_position(s2, n - 1);
            if (l == 2) {
                detail::append_kit(path, KitKind::upII_2, 0, R, cs);
            } else {
                for (int k = l - 1; k >= 3; --k)
                    detail::append_kit(path, KitKind::swapII_k, k, R, cs);
                detail::append_kit(path, KitKind::specupII, 0, R, cs);
            }
            for (int k = 3; k <= n - 1; ++k) detail::append_kit(path, KitKind::upII_k, k, R, cs);
        }
    }
    detail::append_matching_edge(path, R, cs);

    AltPath out = pi.invert_path(path);
    auto end = connector_of(out.vertices.back().rounds[0]);
    ConnectorKind want =
        sigma.kind == ConnectorKind::first ? ConnectorKind::second : ConnectorKind::first;
    int want_terminal = goal == ConductGoal::to_f ? f : a1;
    if (!end || end->kind != want || end->terminal != want_terminal ||
        !connector_proper(*end, spec.V))
        throw std::logic_error("conduct_tunnel_step: endpoint has the wrong shape");
    if (!out.is_matching.front() || !out.is_matching.back())
        throw std::logic_error("conduct_tunnel_step: path is not non-augmenting");
    OrderR orig{n, {}};
    for (int x : R.seq) orig.seq.push_back(pi.invert(x));
    return TunnelStep{orig, out, *end};
}

// --- endpoint routines ------------------------------------------------------

namespace detail {

// The members of the family with full support over V, in family order.
inline std::vector<STuple> full_members(const SubgraphSpec& spec) {
    std::vector<STuple> out;
    for (const STuple& w : spec.omega) {
        if (w.support() == spec.V) out.push_back(w);
    }
    return out;
}

inline std::set<std::string> encoded_family(const std::vector<STuple>& fam) {
    std::set<std::string> out;
    for (const STuple& t : fam) out.insert(encode_tuple(t));
    return out;
}

inline bool all_singletons(const STuple& t) {
    for (IdSet b : t.blocks)
        if (set_size(b) != 1) return false;
    return true;
}

}  // namespace detail

// For a family consisting of the truncations of one singleton tuple over V:
// a path from the unique critical vertex of the returned order's standard
// matching to the given first-type connector, semi-augmenting for it.
inline std::pair<OrderR, AltPath> conduct_endpoint_plus(const SubgraphSpec& spec,
                                                        const Connector& tau) {
    const FullTuple& tv = tau.vertex;
    int n = tv.n;
    if (n < 5) throw std::domain_error("conduct_endpoint_plus: n must be at least 5");
    if (tau.kind != ConnectorKind::first)
        throw std::domain_error("conduct_endpoint_plus: connector must be of the first kind");
    if ((tv.blocks[0] & ~spec.V) == 0)
        throw std::domain_error("conduct_endpoint_plus: connector head must lie outside V");
    std::vector<STuple> fulls = detail::full_members(spec);
    if (fulls.size() != 1 || !detail::all_singletons(fulls[0]))
        throw std::domain_error("conduct_endpoint_plus: family shape mismatch");
    if (detail::encoded_family(spec.omega) != detail::encoded_family(truncations(fulls[0])))
        throw std::domain_error("conduct_endpoint_plus: family is not the truncation closure");
    int d = set_size(spec.V);
    if (d < 1 || d > n - 1) throw std::domain_error("conduct_endpoint_plus: V out of range");

    std::vector<int> v_order;
    for (IdSet b : fulls[0].blocks) v_order.push_back(min_id(b));
    int head = min_id(tv.blocks[0]);
    Permutation pi = detail::canonical_relabeling(n, v_order, head);
    SubgraphSpec cs = detail::apply_spec(pi, spec);
    OrderR R{n, {}};
    for (int x = d + 1; x <= n; ++x) R.seq.push_back(x);

    AltPath path = detail::single_vertex_path(pi.apply_tuple(tv));
    // bubble-sort the tail into ascending order with adjacent swaps
    bool moved = true;
    while (moved) {
        moved = false;
        FullTuple cur = detail::last_tuple(path);
        for (int k = 2; k <= n - 1; ++k) {
            int a = min_id(cur.blocks[static_cast<std::size_t>(k - 1)]);
            int b = min_id(cur.blocks[static_cast<std::size_t>(k)]);
            if (a > b) {
                if (k == 2)
                    detail::append_kit(path, KitKind::swapI_2, 0, R, cs);
                else
                    detail::append_kit(path, KitKind::swapI_k, k, R, cs);
                moved = true;
                break;
            }
        }
    }
    for (int k = 1; k <= n - 1; ++k) detail::append_kit(path, KitKind::upI_k, k, R, cs);

    FullTuple expect{n, {}};
    for (int i = 1; i <= n; ++i) expect.blocks.push_back(id_bit(i));
    if (!(detail::last_tuple(path) == expect))
        throw std::logic_error("conduct_endpoint_plus: did not reach the critical vertex");
    AltPath out = pi.invert_path(path.reversed());
    OrderR orig{n, {}};
    for (int x : R.seq) orig.seq.push_back(pi.invert(x));
    return {orig, out};
}

struct EndpointMinus {
    OrderR R;
    std::pair<FullTuple, FullTuple> matched_pair;  // the two criticals matched to each other
    AltPath path;                                  // from the remaining critical vertex
    Connector end;
};

// For a family consisting of the truncation closures of the three related
// full tuples over V: match two of the three critical vertices to each
// other and walk the third to a second-type connector with terminal f.
inline EndpointMinus conduct_endpoint_minus(int n, const SubgraphSpec& spec, int f) {
    if (n < 5) throw std::domain_error("conduct_endpoint_minus: n must be at least 5");
    IdSet V = spec.V;
    int d = set_size(V);
    if ((V | full_set(n)) != full_set(n) || d > n - 1)
        throw std::domain_error("conduct_endpoint_minus: V out of range");
    if (f < 1 || f > n) throw std::domain_error("conduct_endpoint_minus: f out of range");
    if ((full_set(n) & ~V) == id_bit(f))
        throw std::domain_error("conduct_endpoint_minus: the complement of V is exactly {f}");
    std::vector<STuple> fulls = detail::full_members(spec);
    if (fulls.size() != 3)
        throw std::domain_error("conduct_endpoint_minus: need exactly three full tuples");
    const STuple* plain = nullptr;
    for (const STuple& t : fulls)
        if (detail::all_singletons(t)) plain = &t;
    if (!plain || d < 3) throw std::domain_error("conduct_endpoint_minus: family shape mismatch");
    std::vector<int> v_order;
    for (IdSet b : plain->blocks) v_order.push_back(min_id(b));
    // the two merged variants predicted by the order
    STuple m12, m23;
    m12.blocks.push_back(id_bit(v_order[0]) | id_bit(v_order[1]));
    for (std::size_t i = 2; i < v_order.size(); ++i) m12.blocks.push_back(id_bit(v_order[i]));
    m23.blocks.push_back(id_bit(v_order[0]));
    m23.blocks.push_back(id_bit(v_order[1]) | id_bit(v_order[2]));
    for (std::size_t i = 3; i < v_order.size(); ++i) m23.blocks.push_back(id_bit(v_order[i]));
    std::set<std::string> got = detail::encoded_family(fulls);
    std::set<std::string> want{encode_tuple(*plain), encode_tuple(m12), encode_tuple(m23)};
    if (got != want) throw std::domain_error("conduct_endpoint_minus: family shape mismatch");
    std::vector<STuple> closure = truncations(*plain);
    for (const STuple& t : truncations(m12)) closure.push_back(t);
    for (const STuple& t : truncations(m23)) closure.push_back(t);
    if (detail::encoded_family(spec.omega) != detail::encoded_family(closure))
        throw std::domain_error("conduct_endpoint_minus: family is not the truncation closure");

    // rename: the plain tuple becomes 1|2|...|d and some non-V id other than
    // f becomes n
    int g = 0;
    for (int id : ids_of(full_set(n) & ~V)) {
        if (id != f) g = id;  // keep the largest, so renaming is often trivial
    }
    Permutation pi = detail::canonical_relabeling(n, v_order, g);
    SubgraphSpec cs = detail::apply_spec(pi, spec);
    OrderR R{n, {}};
    for (int x = d + 1; x <= n; ++x) R.seq.push_back(x);
    int fc = pi.apply(f);

    // the connector we aim for, and the swap chain bringing its tail into
    // ascending order
    FullTuple tau{n, {}};
    AltPath path;
    if (fc >= 2) {
        tau.blocks.push_back(id_bit(n) | id_bit(1));
        for (int i = 2; i <= n - 1; ++i)
            if (i != fc) tau.blocks.push_back(id_bit(i));
        tau.blocks.push_back(id_bit(fc));
        path = detail::single_vertex_path(tau);
        for (int j = n - 1; j >= fc + 1; --j)
            detail::append_kit(path, KitKind::swapII_k, j, R, cs);
    } else {
        tau.blocks.push_back(id_bit(n) | id_bit(2));
        for (int i = 3; i <= n - 1; ++i) tau.blocks.push_back(id_bit(i));
        tau.blocks.push_back(id_bit(1));
        path = detail::single_vertex_path(tau);
        for (int j = n - 1; j >= 3; --j) detail::append_kit(path, KitKind::swapII_k, j, R, cs);
        detail::append_kit(path, KitKind::swapII_2, 0, R, cs);
    }
    FullTuple sorted{n, {}};
    sorted.blocks.push_back(id_bit(n) | id_bit(1));
    for (int i = 2; i <= n - 1; ++i) sorted.blocks.push_back(id_bit(i));
    if (!(detail::last_tuple(path) == sorted))
        throw std::logic_error("conduct_endpoint_minus: swap chain went astray");
    detail::append_kit(path, KitKind::star, 0, R, cs);

    // the three critical vertices in canonical coordinates
    FullTuple alpha1{n, {}}, alpha2{n, {}}, sigma{n, {}};
    for (int i = 1; i <= n; ++i) alpha1.blocks.push_back(id_bit(i));
    alpha2.blocks.push_back(id_bit(1));
    alpha2.blocks.push_back(id_bit(2) | id_bit(3));
    for (int i = 4; i <= n; ++i) alpha2.blocks.push_back(id_bit(i));
    sigma.blocks.push_back(id_bit(1) | id_bit(2));
    for (int i = 3; i <= n; ++i) sigma.blocks.push_back(id_bit(i));
    if (!(detail::last_tuple(path) == sigma))
        throw std::logic_error("conduct_endpoint_minus: did not reach the critical vertex");
    for (const FlipVertex& v : path.vertices) {
        if (v.rounds[0] == alpha1 || v.rounds[0] == alpha2)
            throw std::logic_error("conduct_endpoint_minus: path touches a matched critical");
    }

    AltPath out = pi.invert_path(path.reversed());
    auto end = connector_of(out.vertices.back().rounds[0]);
    if (!end || end->kind != ConnectorKind::second || end->terminal != f ||
        !connector_proper(*end, V))
        throw std::logic_error("conduct_endpoint_minus: endpoint has the wrong shape");
    OrderR orig{n, {}};
    for (int x : R.seq) orig.seq.push_back(pi.invert(x));
    return EndpointMinus{orig,
                         {pi.invert_tuple(alpha1), pi.invert_tuple(alpha2)},
                         out,
                         *end};
}

// --- standard paths between set-indexed vertices ----------------------------

// An ordered nested pair of sets: the order lists all of S before T minus S.
struct WellOrderedPair {
    IdSet S = 0;
    IdSet T = 0;
    std::vector<int> order_on_T;
};

inline bool valid_well_ordered_pair(const WellOrderedPair& p, int n) {
    if (p.S == 0 || p.S == p.T || (p.S & ~p.T) != 0) return false;
    if (p.T == full_set(n) || (p.T & ~full_set(n)) != 0) return false;
    if (static_cast<int>(p.order_on_T.size()) != set_size(p.T)) return false;
    IdSet seen = 0;
    int s = set_size(p.S);
    for (std::size_t i = 0; i < p.order_on_T.size(); ++i) {
        int id = p.order_on_T[i];
        if (!contains(p.T, id) || contains(seen, id)) return false;
        if (static_cast<int>(i) < s && !contains(p.S, id)) return false;
        seen |= id_bit(id);
    }
    return true;
}

// Build a well-ordered pair with the ascending default order.
inline WellOrderedPair make_well_ordered_pair(IdSet S, IdSet T) {
    WellOrderedPair p{S, T, ids_of(S)};
    for (int id : ids_of(T & ~S)) p.order_on_T.push_back(id);
    return p;
}

// The vertex S | [n] minus S.
inline FullTuple set_vertex(IdSet S, int n) {
    FullTuple t{n, {}};
    if (S != 0) t.blocks.push_back(S);
    if (S != full_set(n)) t.blocks.push_back(full_set(n) & ~S);
    return t;
}

// The edge path from the T-vertex to the S-vertex: split the S-prefix into
// singletons, gather it back into one block, split the middle segment, then
// absorb it element by element into the tail.  The path carries no matching;
// its flags hold a formal alternation so the container invariants hold.
inline AltPath standard_pst(const WellOrderedPair& p, int n) {
    if (!valid_well_ordered_pair(p, n))
        throw std::invalid_argument("standard_pst: invalid well-ordered pair");
    int s = set_size(p.S);
    int t = set_size(p.T);
    IdSet Y = full_set(n) & ~p.T;
    std::vector<FullTuple> rows;
    FullTuple cur = set_vertex(p.T, n);
    rows.push_back(cur);
    // split x_1 .. x_s off the front
    for (int i = 0; i < s; ++i) {
        cur = detail::split_at(cur, i, id_bit(p.order_on_T[static_cast<std::size_t>(i)]));
        rows.push_back(cur);
    }
    // gather them back, rightmost singleton first
    for (int i = s - 2; i >= 0; --i) {
        cur = detail::merge_at(cur, i);
        rows.push_back(cur);
    }
    // split the middle segment x_{s+1} .. x_t into singletons
    for (int i = 0; i < t - s - 1; ++i) {
        cur = detail::split_at(cur, 1 + i, id_bit(p.order_on_T[static_cast<std::size_t>(s + i)]));
        rows.push_back(cur);
    }
    // absorb it into the tail, last element first
    for (int i = t - s - 1; i >= 0; --i) {
        if (Y == 0 && i == t - s - 1) continue;  // nothing to absorb into
        cur = detail::merge_at(cur, 1 + i);
        rows.push_back(cur);
    }
    AltPath out;
    for (const FullTuple& r : rows) out.vertices.push_back(make_vertex(r));
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        auto c = flip_color_between(rows[i], rows[i + 1]);
        if (!c) throw std::logic_error("standard_pst: rows are not flip-adjacent");
        out.colors.push_back(*c);
        out.is_matching.push_back(i % 2 == 1);
    }
    if (!(detail::last_tuple(out) == set_vertex(p.S, n)))
        throw std::logic_error("standard_pst: did not reach the S-vertex");
    return out;
}

// Merge every run of singletons into the next bigger block; whatever trails
// the last bigger block becomes one final block.  All-singleton input
// collapses to the one-block tuple.
inline FullTuple ds(const FullTuple& sigma) {
    FullTuple out{sigma.n, {}};
    IdSet acc = 0;
    bool has_big = false;
    for (IdSet b : sigma.blocks) {
        acc |= b;
        if (set_size(b) >= 2) {
            out.blocks.push_back(acc);
            acc = 0;
            has_big = true;
        }
    }
    if (!has_big) return FullTuple{sigma.n, {full_set(sigma.n)}};
    if (acc != 0) out.blocks.push_back(acc);
    return out;
}

inline bool pairs_disjoint(const WellOrderedPair& a, const WellOrderedPair& b) {
    return a.S != b.S && a.S != b.T && a.T != b.S && a.T != b.T;
}

inline bool pairs_nested(const WellOrderedPair& a, const WellOrderedPair& b) {
    auto inside = [](const WellOrderedPair& p, const WellOrderedPair& q) {
        return (q.S & ~p.S) == 0 && (p.T & ~q.T) == 0;  // p.S superset chain q.S in p interval
    };
    return inside(a, b) || inside(b, a);
}

// Standard paths for pairwise disjoint, non-nested well-ordered pairs; the
// returned paths are verified to be pairwise vertex-disjoint.
inline std::vector<AltPath> disjoint_path_system(const std::vector<WellOrderedPair>& pairs,
                                                 int n) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!valid_well_ordered_pair(pairs[i], n))
            throw std::invalid_argument("disjoint_path_system: invalid pair");
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (!pairs_disjoint(pairs[i], pairs[j]))
                throw std::invalid_argument("disjoint_path_system: pairs share a set");
            if (pairs_nested(pairs[i], pairs[j]))
                throw std::invalid_argument("disjoint_path_system: pairs are nested");
        }
    }
    std::vector<AltPath> out;
    std::unordered_set<std::string> seen;
    for (const WellOrderedPair& p : pairs) {
        AltPath path = standard_pst(p, n);
        for (const FlipVertex& v : path.vertices) {
            if (!seen.insert(encode_vertex(v)).second)
                throw std::logic_error("disjoint_path_system: paths intersect");
        }
        out.push_back(path);
    }
    return out;
}

}  // namespace wsb
