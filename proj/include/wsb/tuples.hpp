#pragma once

// Ordered tuples of disjoint id blocks, full [n]-tuples, and coherent pairs,
// together with the primitive operations everything else is built from:
// restriction, deletion, prefixes, truncations and the canonical text
// encoding used in files and for deterministic ordering.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsb/ids.hpp"

namespace wsb {

// A tuple (A_1,...,A_t) of pairwise-disjoint nonempty id sets.  The empty
// tuple (t = 0) is a legitimate value: it shows up as a prefix.
struct STuple {
    std::vector<IdSet> blocks;

    int length() const { return static_cast<int>(blocks.size()); }
    bool empty() const { return blocks.empty(); }

    IdSet support() const {
        IdSet u = 0;
        for (IdSet b : blocks) u |= b;
        return u;
    }

    friend bool operator==(const STuple&, const STuple&) = default;
};

// Validity: blocks nonempty and pairwise disjoint.
inline bool valid_stuple(const STuple& t) {
    IdSet seen = 0;
    for (IdSet b : t.blocks) {
        if (b == 0 || (b & seen)) return false;
        seen |= b;
    }
    return true;
}

// A full [n]-tuple: an ordered partition of [n] into nonempty blocks.
struct FullTuple {
    int n = 0;
    std::vector<IdSet> blocks;

    int length() const { return static_cast<int>(blocks.size()); }
    IdSet last_block() const { return blocks.back(); }

    // V(sigma) = [n] minus the last block.
    IdSet v_set() const { return full_set(n) & ~blocks.back(); }

    STuple as_stuple() const { return STuple{blocks}; }

    friend bool operator==(const FullTuple&, const FullTuple&) = default;
};

inline bool valid_full_tuple(const FullTuple& t) {
    if (t.n < 1 || t.n > kMaxIds || t.blocks.empty()) return false;
    STuple s{t.blocks};
    return valid_stuple(s) && s.support() == full_set(t.n);
}

// Two stacked equal-length tuples with blockwise containment
// (bottom_i subset of top_i).  Carrier = union of top, color = union of bottom.
struct CoherentPair {
    STuple top;
    STuple bottom;

    int length() const { return top.length(); }
    IdSet carrier() const { return top.support(); }
    IdSet color() const { return bottom.support(); }

    friend bool operator==(const CoherentPair&, const CoherentPair&) = default;
};

inline bool valid_coherent_pair(const CoherentPair& cp) {
    if (cp.top.length() != cp.bottom.length()) return false;
    if (!valid_stuple(cp.top) || !valid_stuple(cp.bottom)) return false;
    for (int i = 0; i < cp.length(); ++i) {
        if (cp.bottom.blocks[static_cast<std::size_t>(i)] &
            ~cp.top.blocks[static_cast<std::size_t>(i)])
            return false;
    }
    return true;
}

// --- canonical text encoding ------------------------------------------------
//
// Elements ascending, comma-joined; blocks joined by "|"; the empty tuple is
// the literal epsilon character; a coherent pair is "top::bottom".

inline std::string encode_set(IdSet s) {
    std::string out;
    for (int id : ids_of(s)) {
        if (!out.empty()) out += ',';
        out += std::to_string(id);
    }
    return out;
}

inline const char* kEpsilon = "\xce\xb5";  // UTF-8 epsilon

inline std::string encode_tuple(const STuple& t) {
    if (t.empty()) return kEpsilon;
    std::string out;
    for (IdSet b : t.blocks) {
        if (!out.empty()) out += '|';
        out += encode_set(b);
    }
    return out;
}

inline std::string encode_tuple(const FullTuple& t) {
    return encode_tuple(STuple{t.blocks});
}

inline std::string encode_pair(const CoherentPair& cp) {
    return encode_tuple(cp.top) + "::" + encode_tuple(cp.bottom);
}

inline IdSet parse_set(const std::string& s) {
    IdSet out = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        int id = std::stoi(s.substr(pos, next - pos));
        if (id < 1 || id > kMaxIds) throw std::invalid_argument("parse_set: id out of range");
        out |= id_bit(id);
        pos = next + 1;
    }
    return out;
}

inline STuple parse_tuple(const std::string& s) {
    STuple t;
    if (s.empty() || s == kEpsilon) return t;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find('|', pos);
        if (next == std::string::npos) next = s.size();
        t.blocks.push_back(parse_set(s.substr(pos, next - pos)));
        if (next == s.size()) break;
        pos = next + 1;
    }
    if (!valid_stuple(t)) throw std::invalid_argument("parse_tuple: invalid tuple " + s);
    return t;
}

inline FullTuple parse_full_tuple(const std::string& s, int n) {
    STuple t = parse_tuple(s);
    FullTuple f{n, t.blocks};
    if (!valid_full_tuple(f)) throw std::invalid_argument("parse_full_tuple: not full: " + s);
    return f;
}

// Canonical ordering = lexicographic on the text encoding.
inline bool canonical_less(const STuple& a, const STuple& b) {
    return encode_tuple(a) < encode_tuple(b);
}
inline bool canonical_less(const FullTuple& a, const FullTuple& b) {
    return encode_tuple(a) < encode_tuple(b);
}

// --- normalizer application -------------------------------------------------

inline STuple apply(const Normalizer& phi, const STuple& t) {
    STuple out;
    out.blocks.reserve(t.blocks.size());
    for (IdSet b : t.blocks) out.blocks.push_back(phi.apply_set(b));
    return out;
}

inline CoherentPair apply(const Normalizer& phi, const CoherentPair& cp) {
    return CoherentPair{apply(phi, cp.top), apply(phi, cp.bottom)};
}

// --- restriction and deletion ----------------------------------------------

// (sigma,tau) restricted to T, for nonempty T properly contained in the
// color.  The bottom blocks become the nonempty traces T_j = T & bottom_{i_j};
// the top blocks between consecutive trace positions are merged, and
// everything after the last trace position is dropped.
inline CoherentPair restrict_pair(const CoherentPair& cp, IdSet T) {
    IdSet color = cp.color();
    if (T == 0 || T == color || (T & ~color))
        throw std::domain_error("restrict_pair: T must be a nonempty proper subset of the color");
    CoherentPair out;
    IdSet pending_top = 0;
    for (int i = 0; i < cp.length(); ++i) {
        pending_top |= cp.top.blocks[static_cast<std::size_t>(i)];
        IdSet trace = T & cp.bottom.blocks[static_cast<std::size_t>(i)];
        if (trace) {
            out.top.blocks.push_back(pending_top);
            out.bottom.blocks.push_back(trace);
            pending_top = 0;
        }
    }
    return out;
}

// Deleting T = restricting to color minus T.
inline CoherentPair delete_from_pair(const CoherentPair& cp, IdSet T) {
    return restrict_pair(cp, cp.color() & ~T);
}

// A full tuple viewed as the coherent pair (sigma, sigma).
inline CoherentPair as_pair(const FullTuple& t) {
    return CoherentPair{t.as_stuple(), t.as_stuple()};
}

// --- prefixes and truncations ----------------------------------------------

// Longest initial run of blocks each contained in V; empty when the first
// block is not inside V.
inline STuple v_prefix(const FullTuple& sigma, IdSet V) {
    STuple out;
    for (IdSet b : sigma.blocks) {
        if (b & ~V) break;
        out.blocks.push_back(b);
    }
    return out;
}

// All prefixes A_1|...|A_k for 0 <= k <= t, shortest first.
inline std::vector<STuple> truncations(const STuple& t) {
    std::vector<STuple> out;
    out.reserve(t.blocks.size() + 1);
    STuple cur;
    out.push_back(cur);
    for (IdSet b : t.blocks) {
        cur.blocks.push_back(b);
        out.push_back(cur);
    }
    return out;
}

}  // namespace wsb
