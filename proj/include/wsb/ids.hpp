#pragma once

// Small-integer id sets as 64-bit masks, order-preserving relabelings, and
// the handful of exact integer sequences the rest of the library leans on.
//
// Process ids are 1..n with n <= 64; bit (i-1) of an IdSet represents id i.

#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsb {

using IdSet = std::uint64_t;
using Int128 = unsigned __int128;

inline constexpr int kMaxIds = 64;

inline constexpr IdSet id_bit(int id) {
    return IdSet{1} << (id - 1);
}

// [n] = {1,...,n}
inline constexpr IdSet full_set(int n) {
    return (n >= 64) ? ~IdSet{0} : ((IdSet{1} << n) - 1);
}

inline int set_size(IdSet s) {
    return std::popcount(s);
}

inline bool contains(IdSet s, int id) {
    return (s & id_bit(id)) != 0;
}

// Smallest id in a nonempty set.
inline int min_id(IdSet s) {
    assert(s != 0);
    return std::countr_zero(s) + 1;
}

// Largest id in a nonempty set.
inline int max_id(IdSet s) {
    assert(s != 0);
    return 64 - std::countl_zero(s);
}

inline std::vector<int> ids_of(IdSet s) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(set_size(s)));
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

// The unique order-preserving bijection from a fixed nonempty domain onto
// [k], k = |domain|.  Applying it to sets maps elementwise.
class Normalizer {
public:
    explicit Normalizer(IdSet domain) : domain_(domain) {
        if (domain == 0)
            throw std::domain_error("Normalizer: empty domain");
    }

    IdSet domain() const { return domain_; }
    int size() const { return set_size(domain_); }

    // id in domain -> its 1-based rank
    int apply(int id) const {
        assert(contains(domain_, id));
        return std::popcount(domain_ & (id_bit(id) - 1)) + 1;
    }

    // 1-based rank -> id in domain
    int invert(int rank) const {
        assert(rank >= 1 && rank <= size());
        IdSet s = domain_;
        for (int i = 1; i < rank; ++i) s &= s - 1;
        return std::countr_zero(s) + 1;
    }

    IdSet apply_set(IdSet s) const {
        assert((s & ~domain_) == 0);
        IdSet out = 0;
        while (s) {
            int id = std::countr_zero(s) + 1;
            out |= id_bit(apply(id));
            s &= s - 1;
        }
        return out;
    }

    IdSet invert_set(IdSet s) const {
        IdSet out = 0;
        while (s) {
            int rank = std::countr_zero(s) + 1;
            out |= id_bit(invert(rank));
            s &= s - 1;
        }
        return out;
    }

private:
    IdSet domain_;
};

// Exact binomial coefficient; the arguments stay small enough here that
// 128-bit intermediates never overflow (n <= 64).
inline Int128 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<Int128>(n - k + i) / static_cast<Int128>(i);
    }
    return r;
}

// Ordered-set-partition counts a(n) = sum_k C(n,k) a(n-k), a(0) = 1.
// a(1..6) = 1, 3, 13, 75, 541, 4683.
inline const std::vector<Int128>& fubini_table(int n) {
    static std::vector<Int128> table{1};
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        Int128 a = 0;
        for (int k = 1; k <= m; ++k) a += binomial(m, k) * table[static_cast<std::size_t>(m - k)];
        table.push_back(a);
    }
    return table;
}

inline Int128 fubini(int n) {
    return fubini_table(n)[static_cast<std::size_t>(n)];
}

inline std::string int128_to_string(Int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

}  // namespace wsb
