#pragma once

// Text export of the size-mod-3 bijection on subsets of [6t]: the
// one-bit-promotion rows grouped by suffix branch, the two-classes-down
// rows, and the final rewiring path.  Output is deterministic: sections in
// a fixed order, rows ascending by support vector text.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "wsb/suffix_bijections.hpp"

namespace wsb {

inline std::string export_lambda_tables(int t) {
    if (t < 1) throw std::domain_error("export_lambda_tables: t must be positive");
    int n = 6 * t;
    IdSet alternating = repeat_trunc("01", n);
    // section 0..3: phi rows by branch; section 4: psi rows
    std::vector<std::vector<std::string>> rows(5);
    for (IdSet S = 0; S <= full_set(n); ++S) {
        if (set_size(S) % 3 != 0 || S == alternating) continue;
        IdSet T = lambda_bij(t, S);
        std::string line = encode_bits(S, n) + " -> " + encode_bits(T, n);
        if (suffix_member(S, n, "0[01]*")) {
            int branch = classify(S, n, Scheme::c001_even);
            rows[static_cast<std::size_t>(branch)].push_back(line);
        } else {
            rows[4].push_back(line);
        }
    }
    for (auto& section : rows) std::sort(section.begin(), section.end());
    std::ostringstream os;
    os << "lambda tables n=" << n << "\n";
    const char* headers[5] = {
        "[phi 10[01]* -> 11[01]*]",
        "[phi 1[10]*00[01]* -> 1[10]*10[01]*]",
        "[phi 00[10]*00[01]* -> 00[10]*01[01]*]",
        "[phi remainder]",
        "[psi 11[01]* two classes down]",
    };
    for (std::size_t s = 0; s < 5; ++s) {
        os << headers[s] << "\n";
        for (const std::string& line : rows[s]) os << line << "\n";
    }
    os << "[final-fix]\n";
    SetAltPath fix = final_fix(t);
    auto edge = [&](std::size_t i) {
        IdSet a = fix.sets[i], b = fix.sets[i + 1];
        if (set_size(a) > set_size(b)) std::swap(a, b);
        return encode_bits(a, n) + " -> " + encode_bits(b, n);
    };
    for (std::size_t i = 0; i + 1 < fix.sets.size(); ++i)
        if (fix.is_matching[i]) os << "break " << edge(i) << "\n";
    for (std::size_t i = 0; i + 1 < fix.sets.size(); ++i)
        if (!fix.is_matching[i]) os << "add " << edge(i) << "\n";
    return os.str();
}

}  // namespace wsb
