#pragma once

// Pattern sets: graded families of level-1 nodes, the associated binary
// labeling, composability of tuples, the induced prefix families, and the
// fiber descriptions they cut out of the depth-2 flip graph.

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsb/flip_graph.hpp"
#include "wsb/nodes.hpp"
#include "wsb/tuples.hpp"

namespace wsb {

// A graded family B_1, ..., B_{n-1}; grade k holds pairs (S, x) with
// x in S subset of [k].  Optionally remembers the generating vector.
struct PatternSet {
    int n = 0;
    // index 0 unused; by_k[k] is the grade-k list
    std::vector<std::vector<std::pair<IdSet, int>>> by_k;
    std::optional<std::vector<int>> generator;

    bool contains(int k, IdSet S, int x) const {
        if (k < 1 || k >= n) return false;
        const auto& lst = by_k[static_cast<std::size_t>(k)];
        return std::find(lst.begin(), lst.end(), std::make_pair(S, x)) != lst.end();
    }
};

inline bool valid_pattern_set(const PatternSet& B) {
    if (B.n < 2 || static_cast<int>(B.by_k.size()) != B.n) return false;
    for (int k = 1; k < B.n; ++k) {
        for (const auto& [S, x] : B.by_k[static_cast<std::size_t>(k)]) {
            if (S == 0 || (S & ~full_set(k)) || !contains(S, x)) return false;
        }
    }
    return true;
}

// The increasing chain (1,1), (12,2), ..., ([k],k).
inline std::vector<std::pair<IdSet, int>> plus_grade(int k) {
    std::vector<std::pair<IdSet, int>> out;
    for (int i = 1; i <= k; ++i) out.emplace_back(full_set(i), i);
    return out;
}

// The chain plus the two extra pairs (12,1) and (123,2); defined for k >= 3.
inline std::vector<std::pair<IdSet, int>> minus_grade(int k) {
    if (k < 3) throw std::domain_error("minus_grade: needs k >= 3");
    std::vector<std::pair<IdSet, int>> out = plus_grade(k);
    out.emplace_back(full_set(2), 1);
    out.emplace_back(full_set(3), 2);
    return out;
}

// The graded family generated by a vector x with x1, x2 in {0,1} and the
// remaining entries in {-1,0,1}: grade k is the plus chain when x_k = 1,
// the minus chain when x_k = -1, and empty otherwise.
inline PatternSet pattern_set_from_vector(int n, const std::vector<int>& x) {
    if (static_cast<int>(x.size()) != n - 1)
        throw std::invalid_argument("pattern_set_from_vector: vector must have n-1 entries");
    PatternSet B;
    B.n = n;
    B.by_k.resize(static_cast<std::size_t>(n));
    for (int k = 1; k < n; ++k) {
        int xk = x[static_cast<std::size_t>(k - 1)];
        if ((k <= 2 && xk != 0 && xk != 1) || (xk < -1 || xk > 1))
            throw std::invalid_argument("pattern_set_from_vector: entry out of range");
        if (xk == 1)
            B.by_k[static_cast<std::size_t>(k)] = plus_grade(k);
        else if (xk == -1)
            B.by_k[static_cast<std::size_t>(k)] = minus_grade(k);
    }
    B.generator = x;
    return B;
}

// The explicit six-id family used for regression against earlier work.
inline PatternSet six_id_pattern_set() {
    PatternSet B;
    B.n = 6;
    B.by_k.resize(6);
    B.by_k[1] = {{parse_set("1"), 1}};
    B.by_k[2] = {{parse_set("1"), 1}, {parse_set("1,2"), 2}};
    B.by_k[3] = {{parse_set("1"), 1},
                 {parse_set("1,2"), 1},
                 {parse_set("1,2"), 2},
                 {parse_set("1,2,3"), 2},
                 {parse_set("1,2,3"), 3}};
    return B;
}

// --- the associated labeling -------------------------------------------------

// 0 on internal nodes; 1 on boundary nodes whose leading pair has two or
// more blocks; otherwise the terminal pair, pushed onto an initial segment
// by the carrier's rank map, is tested against the grade of the carrier
// size.
inline int lambda_B(const Node& v, const PatternSet& B) {
    if (v.level() != 2) throw std::domain_error("lambda_B: level-2 nodes only");
    if (internal(v)) return 0;
    const CoherentPair& lead = v.pairs[0];
    if (lead.length() >= 2) return 1;
    IdSet A = lead.carrier();
    Normalizer phi(A);
    return B.contains(set_size(A), phi.apply_set(v.S), phi.apply(v.x)) ? 0 : 1;
}

inline NodeLabeling make_pattern_labeling(const PatternSet& B) {
    return NodeLabeling{[B](const Node& v) { return lambda_B(v, B); }, "patterns"};
}

// --- composability -----------------------------------------------------------

// A tuple C_1|...|C_t can be composed from grade k when every prefix union
// paired with every element of its last block lies in the grade.
inline bool composable(const PatternSet& B, int k, const STuple& t) {
    IdSet acc = 0;
    for (IdSet block : t.blocks) {
        acc |= block;
        for (int x : ids_of(block)) {
            if (!B.contains(k, acc, x)) return false;
        }
    }
    return true;
}

namespace detail {

// Depth-first extension: a nonempty next block must raise the prefix union
// to another set occurring in the grade, with every new element's pair
// present.  Restricting the union to `inside` confines the search.
inline void compose_extend(const PatternSet& B, int k, IdSet inside, IdSet acc, STuple& cur,
                           std::vector<STuple>& out) {
    std::set<IdSet> unions;
    for (const auto& [S, x] : B.by_k[static_cast<std::size_t>(k)]) {
        if ((S & ~inside) == 0 && (acc & ~S) == 0 && S != acc) unions.insert(S);
    }
    for (IdSet next : unions) {
        IdSet block = next & ~acc;
        bool ok = true;
        for (int x : ids_of(block)) {
            if (!B.contains(k, next, x)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        cur.blocks.push_back(block);
        out.push_back(cur);
        compose_extend(B, k, inside, next, cur, out);
        cur.blocks.pop_back();
    }
}

}  // namespace detail

// All nonempty tuples over [k] composable from grade k, canonically sorted.
inline std::vector<STuple> compose(const PatternSet& B, int k) {
    if (k < 1 || k >= B.n) throw std::domain_error("compose: grade out of range");
    std::vector<STuple> out;
    STuple cur;
    detail::compose_extend(B, k, full_set(k), 0, cur, out);
    std::sort(out.begin(), out.end(),
              [](const STuple& a, const STuple& b) { return canonical_less(a, b); });
    return out;
}

// --- induced prefix families -------------------------------------------------

// The family of V-tuples cut out by the pattern set below a full tuple
// sigma = A_1|...|A_t with V = [n] minus A_t: the union over l < t of the
// tuples supported inside A_l whose image under the rank map of
// A_1 u ... u A_l is composable from the matching grade.  Always contains
// the empty tuple and is closed under truncation.
inline std::vector<STuple> omega(const PatternSet& B, const FullTuple& sigma) {
    if (B.n != sigma.n) throw std::invalid_argument("omega: id-range mismatch");
    std::set<std::string> seen;
    std::vector<STuple> out;
    out.push_back(STuple{});
    seen.insert(encode_tuple(STuple{}));
    IdSet acc_union = 0;
    for (int l = 0; l + 1 < sigma.length(); ++l) {
        IdSet Al = sigma.blocks[static_cast<std::size_t>(l)];
        acc_union |= Al;
        int k = set_size(acc_union);
        if (k >= B.n) break;  // grades stop below n
        Normalizer phi(acc_union);
        // enumerate composable tuples inside the rank image of A_l and
        // pull them back
        std::vector<STuple> comp;
        STuple cur;
        detail::compose_extend(B, k, phi.apply_set(Al), 0, cur, comp);
        for (const STuple& c : comp) {
            STuple back;
            for (IdSet b : c.blocks) back.blocks.push_back(phi.invert_set(b));
            if (seen.insert(encode_tuple(back)).second) out.push_back(back);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const STuple& a, const STuple& b) { return canonical_less(a, b); });
    return out;
}

// The fiber of the depth-2 flip graph over sigma, described as a subgraph
// family: its members, sent to sigma-stacked vertices, are exactly the
// 0-monochromatic vertices for the labeling of the pattern set.
inline SubgraphSpec m_lambda_fiber(const FullTuple& sigma, const PatternSet& B) {
    SubgraphSpec spec;
    spec.V = sigma.v_set();
    spec.omega = omega(B, sigma);
    return spec;
}

// --- serialization -----------------------------------------------------------

// Generated families are written as their vector; explicit families list
// one "k (S;x)" line per element.
inline std::string write_pattern_set(const PatternSet& B) {
    std::ostringstream os;
    if (B.generator) {
        os << "x=";
        for (std::size_t i = 0; i < B.generator->size(); ++i) {
            if (i) os << ",";
            os << (*B.generator)[i];
        }
        os << "\n";
        return os.str();
    }
    os << "n=" << B.n << "\n";
    for (int k = 1; k < B.n; ++k) {
        for (const auto& [S, x] : B.by_k[static_cast<std::size_t>(k)]) {
            os << k << " (" << encode_set(S) << ";" << x << ")\n";
        }
    }
    return os.str();
}

inline PatternSet read_pattern_set(const std::string& text, int n_hint = 0) {
    std::istringstream is(text);
    std::string line;
    PatternSet B;
    std::vector<std::tuple<int, IdSet, int>> entries;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("x=", 0) == 0) {
            std::vector<int> x;
            std::istringstream vs(line.substr(2));
            std::string tok;
            while (std::getline(vs, tok, ',')) x.push_back(std::stoi(tok));
            return pattern_set_from_vector(static_cast<int>(x.size()) + 1, x);
        }
        if (line.rfind("n=", 0) == 0) {
            B.n = std::stoi(line.substr(2));
            continue;
        }
        std::size_t sp = line.find(' ');
        std::size_t semi = line.find(';');
        if (sp == std::string::npos || semi == std::string::npos ||
            line.front() == '(' || line.back() != ')')
            throw std::invalid_argument("read_pattern_set: bad line: " + line);
        int k = std::stoi(line.substr(0, sp));
        IdSet S = parse_set(line.substr(sp + 2, semi - sp - 2));
        int x = std::stoi(line.substr(semi + 1, line.size() - semi - 2));
        entries.emplace_back(k, S, x);
    }
    if (B.n == 0) B.n = n_hint;
    if (B.n < 2) throw std::invalid_argument("read_pattern_set: id range not determined");
    B.by_k.resize(static_cast<std::size_t>(B.n));
    for (const auto& [k, S, x] : entries) {
        if (k < 1 || k >= B.n) throw std::invalid_argument("read_pattern_set: grade out of range");
        B.by_k[static_cast<std::size_t>(k)].emplace_back(S, x);
    }
    if (!valid_pattern_set(B)) throw std::invalid_argument("read_pattern_set: invalid family");
    return B;
}

}  // namespace wsb
