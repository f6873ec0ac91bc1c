#pragma once

// Subsets of [n] viewed through their support vectors: suffix-pattern
// membership, the branch decompositions of the power set, the containment
// bijections between adjacent cardinality classes, and the size-mod-3
// bijection (with its final augmenting-path fix) used when 6 divides n.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsb/ids.hpp"

namespace wsb {

// Support vector text (a_1...a_n), left to right: position i prints '1'
// exactly when id i is in the set.
inline std::string encode_bits(IdSet S, int n) {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int i = 1; i <= n; ++i) {
        if (contains(S, i)) out[static_cast<std::size_t>(i - 1)] = '1';
    }
    return out;
}

inline IdSet parse_bits(const std::string& s) {
    IdSet out = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') out |= id_bit(static_cast<int>(i) + 1);
        else if (s[i] != '0') throw std::invalid_argument("parse_bits: bad character");
    }
    return out;
}

inline int bit_at(IdSet S, int pos) { return contains(S, pos) ? 1 : 0; }

// --- suffix patterns --------------------------------------------------------

// A suffix pattern is a sequence of literal bit groups and starred bit
// groups, e.g. "1[10]*00[01]*".  Membership is decided scanning right to
// left; a starred group eats the maximal number of whole repetitions.
struct SuffixPattern {
    struct Token {
        std::string bits;
        bool star = false;
    };
    std::vector<Token> tokens;

    static SuffixPattern parse(const std::string& text) {
        SuffixPattern p;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == '[') {
                std::size_t close = text.find(']', i);
                if (close == std::string::npos || close + 1 >= text.size() ||
                    text[close + 1] != '*')
                    throw std::invalid_argument("SuffixPattern: malformed star block");
                p.tokens.push_back({text.substr(i + 1, close - i - 1), true});
                i = close + 2;
            } else if (text[i] == '0' || text[i] == '1') {
                std::size_t j = i;
                while (j < text.size() && (text[j] == '0' || text[j] == '1')) ++j;
                p.tokens.push_back({text.substr(i, j - i), false});
                i = j;
            } else {
                throw std::invalid_argument("SuffixPattern: bad character");
            }
        }
        return p;
    }
};

inline bool suffix_member(IdSet S, int n, const SuffixPattern& p) {
    int pos = n;  // next unread position, scanning right to left
    for (auto it = p.tokens.rbegin(); it != p.tokens.rend(); ++it) {
        int len = static_cast<int>(it->bits.size());
        auto chunk_matches = [&](int end) {
            if (end - len < 0) return false;
            for (int i = 0; i < len; ++i) {
                if (bit_at(S, end - len + 1 + i) != it->bits[static_cast<std::size_t>(i)] - '0')
                    return false;
            }
            return true;
        };
        if (it->star) {
            while (chunk_matches(pos)) pos -= len;
        } else {
            if (!chunk_matches(pos)) return false;
            pos -= len;
        }
    }
    return pos >= 0;
}

inline bool suffix_member(IdSet S, int n, const std::string& pattern) {
    return suffix_member(S, n, SuffixPattern::parse(pattern));
}

// [alpha]^infty truncated from the left to length n: the vector of length n
// ending with as many whole copies of alpha as fit, preceded by a partial
// copy cut off on its left.
inline IdSet repeat_trunc(const std::string& alpha, int n) {
    IdSet out = 0;
    int len = static_cast<int>(alpha.size());
    for (int pos = n; pos >= 1; --pos) {
        // distance from the right end, 0-based
        int r = n - pos;
        char c = alpha[static_cast<std::size_t>(len - 1 - (r % len))];
        if (c == '1') out |= id_bit(pos);
    }
    return out;
}

// --- branch classification --------------------------------------------------

enum class Scheme { lm_alpha, exp_even, exp_odd, c001_even, c001_odd, p110_even, p110_odd };

// The unique branch of the named disjoint decomposition containing S.
// Branch numbering follows the order the branches are written in:
//   lm_alpha(alpha): 0 = the truncated repetition itself,
//                    i = deviation at the i-th position of alpha (1-based);
//   exp:  0 = <0[01]*>, 1 = <11[01]*>, 2 = the single repetition vector;
//   c001: 0 = <10[01]*>, 1 = <1[10]*00[01]*>, 2 = <00[10]*00[01]*>,
//         then the singleton branches, bundled as one id 3;
//   p110: 0 = <11[01]*>, 1 = <1[10]*10[01]*>, 2 = <00[10]*01[01]*>,
//         then the singleton branches, bundled as one id 3.
inline int classify(IdSet S, int n, Scheme scheme, const std::string& alpha = "") {
    auto in = [&](const std::string& pat) { return suffix_member(S, n, pat); };
    switch (scheme) {
        case Scheme::lm_alpha: {
            if (alpha.empty()) throw std::invalid_argument("classify: alpha required");
            if (S == repeat_trunc(alpha, n)) return 0;
            int t = static_cast<int>(alpha.size());
            for (int i = 1; i <= t; ++i) {
                // suffix: negated alpha_i, then alpha_{i+1..t}, then [alpha]*
                std::string pat;
                pat += (alpha[static_cast<std::size_t>(i - 1)] == '0') ? '1' : '0';
                pat += alpha.substr(static_cast<std::size_t>(i));
                pat += "[" + alpha + "]*";
                if (in(pat)) return i;
            }
            throw std::logic_error("classify: decomposition missed the set");
        }
        case Scheme::exp_even:
        case Scheme::exp_odd: {
            bool even = (scheme == Scheme::exp_even);
            if (even != (n % 2 == 0)) throw std::domain_error("classify: parity mismatch");
            if (in("0[01]*")) return 0;
            if (in("11[01]*")) return 1;
            if (S == repeat_trunc("01", n)) return 2;
            throw std::logic_error("classify: decomposition missed the set");
        }
        case Scheme::c001_even:
        case Scheme::c001_odd: {
            bool even = (scheme == Scheme::c001_even);
            if (even != (n % 2 == 0)) throw std::domain_error("classify: parity mismatch");
            if (n / 2 < 2) throw std::domain_error("classify: n out of the stated range");
            if (!in("0[01]*")) throw std::domain_error("classify: set outside the domain");
            if (in("10[01]*")) return 0;
            if (in("1[10]*00[01]*")) return 1;
            if (in("00[10]*00[01]*")) return 2;
            return 3;  // one of the fully-specified singleton vectors
        }
        case Scheme::p110_even:
        case Scheme::p110_odd: {
            bool even = (scheme == Scheme::p110_even);
            if (even != (n % 2 == 0)) throw std::domain_error("classify: parity mismatch");
            // even form needs p >= 3, odd form needs p >= 2
            if ((even && n < 6) || (!even && n < 5))
                throw std::domain_error("classify: n out of the stated range");
            if (!in("1[10]*")) throw std::domain_error("classify: set outside the domain");
            if (in("11[01]*")) return 0;
            if (in("1[10]*10[01]*")) return 1;
            if (in("00[10]*01[01]*")) return 2;
            return 3;
        }
    }
    throw std::logic_error("classify: unreachable");
}

// --- the containment bijections ---------------------------------------------

// Send S (ending with 0 followed by 01-repetitions) to the superset with one
// extra element, following the branch-indexed single-bit rewrites: the
// trailing 01-run is kept, and the first 0 left of it is promoted depending
// on what precedes it.
inline IdSet phi(int n, int t, IdSet S) {
    if (n < 5) throw std::domain_error("phi: n must be at least 5");
    if (set_size(S) != t) throw std::domain_error("phi: cardinality mismatch");
    if (!suffix_member(S, n, "0[01]*")) throw std::domain_error("phi: set outside the domain");
    // strip the maximal trailing 01-run
    int j = n;
    while (j >= 2 && bit_at(S, j) == 1 && bit_at(S, j - 1) == 0) j -= 2;
    // domain membership guarantees position j exists and holds 0
    if (j == 1) return S | id_bit(1);  // odd-length head case: 0[01]^p -> 1[01]^p
    if (bit_at(S, j - 1) == 1) return S | id_bit(j);  // ...10 -> ...11
    // "00" at j-1, j: strip the maximal 10-run to its left
    int i = j - 2;
    while (i >= 2 && bit_at(S, i) == 0 && bit_at(S, i - 1) == 1) i -= 2;
    if (i >= 1 && bit_at(S, i) == 1) return S | id_bit(j - 1);  // 1[10]^m00 -> 1[10]^m10
    return S | id_bit(j);  // 00[10]^m00 -> 00[10]^m01, and the head vectors
}

// Inverse of phi, found by scanning the n candidate one-element-smaller
// subsets; injectivity of phi makes the preimage unique.
inline IdSet phi_inverse(int n, int t, IdSet T) {
    if (!suffix_member(T, n, "1[10]*"))
        throw std::domain_error("phi_inverse: set outside the codomain");
    std::optional<IdSet> found;
    for (int i = 1; i <= n; ++i) {
        if (!contains(T, i)) continue;
        IdSet S = T & ~id_bit(i);
        if (!suffix_member(S, n, "0[01]*")) continue;
        if (phi(n, t - 1, S) == T) {
            if (found) throw std::logic_error("phi_inverse: preimage not unique");
            found = S;
        }
    }
    if (!found) throw std::logic_error("phi_inverse: no preimage");
    return *found;
}

// Send S (ending with two 1s followed by 01-repetitions) two cardinality
// classes down: drop the last id, pull the length-(n-1) result back through
// the containment bijection, and re-append a trailing 0.
inline IdSet psi(int n, int t, IdSet S) {
    if (t < 2 || t > n) throw std::domain_error("psi: cardinality out of range");
    if (set_size(S) != t) throw std::domain_error("psi: cardinality mismatch");
    if (!suffix_member(S, n, "11[01]*")) throw std::domain_error("psi: set outside the domain");
    IdSet stripped = S & ~id_bit(n);          // now a subset of [n-1] ending 1[10]^k
    IdSet pre = phi_inverse(n - 1, t - 1, stripped);
    return pre;                                // re-appending 0 keeps the same id set
}

// --- the mod-3 bijection for n = 6t ----------------------------------------

// Defined on the size-divisible-by-3 subsets of [6t] except the alternating
// vector; lands in the size-1-mod-3 subsets; always comparable to its input.
inline IdSet lambda_bij(int t, IdSet S) {
    int n = 6 * t;
    if (set_size(S) % 3 != 0) throw std::domain_error("lambda_bij: size not divisible by 3");
    if (S == repeat_trunc("01", n))
        throw std::domain_error("lambda_bij: the alternating vector is excluded");
    if (suffix_member(S, n, "0[01]*")) return phi(n, set_size(S), S);
    return psi(n, set_size(S), S);
}

// An alternating path over subsets, edges being containments; used for the
// final rewiring that makes the mod-3 matching perfect on proper sets.
struct SetAltPath {
    std::vector<IdSet> sets;
    std::vector<bool> is_matching;
};

// The six-vertex augmenting path joining the two sets left unmatched once
// the improper pairs are discarded.
inline SetAltPath final_fix(int t) {
    if (t < 1) throw std::domain_error("final_fix: t must be positive");
    int n = 6 * t;
    IdSet v0 = repeat_trunc("01", n);
    IdSet v1 = v0 | id_bit(n - 1);
    IdSet v2 = v1 & ~id_bit(n);
    IdSet v3 = v2 | id_bit(n - 3);
    IdSet v4 = v3 & ~id_bit(n - 1);
    IdSet v5 = full_set(n - 2);
    return SetAltPath{{v0, v1, v2, v3, v4, v5}, {false, true, false, true, false}};
}

}  // namespace wsb
