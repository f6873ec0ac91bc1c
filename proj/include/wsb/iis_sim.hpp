#pragma once

// Simulation of the three-round protocol: an execution is a depth-3
// stacked vertex (one ordered participation per round); each id reads off
// the label of its adjacent node and the run succeeds when the outputs are
// neither all zero nor all one.

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsb/assembly.hpp"

namespace wsb {

using Execution = FlipVertex;  // depth 3

// Output bits indexed by id (bit of id x at position x-1).  Lenient label
// evaluation, so faulty artifacts produce wrong bits instead of throwing.
inline std::vector<int> run_protocol(const Execution& exec, const ProtocolArtifact& art) {
    if (exec.n != art.n || exec.depth() != 3)
        throw std::domain_error("run_protocol: execution must have three rounds");
    std::vector<int> bits(static_cast<std::size_t>(exec.n));
    for (int x = 1; x <= exec.n; ++x)
        bits[static_cast<std::size_t>(x - 1)] = rho_eval(adjacent_node(exec, x), art, false);
    return bits;
}

inline bool wsb_ok(const std::vector<int>& bits) {
    bool seen0 = false, seen1 = false;
    for (int b : bits) (b == 0 ? seen0 : seen1) = true;
    return seen0 && seen1;
}

struct SimReport {
    std::size_t trials = 0;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::vector<std::string> failing;  // up to ten failing executions

    bool ok() const { return fail == 0; }

    std::string summary() const {
        std::ostringstream os;
        os << "trials=" << trials << " pass=" << pass << " fail=" << fail;
        for (const std::string& f : failing) os << "\n  fail " << f;
        return os.str();
    }
};

namespace detail {

inline void record_run(SimReport& rep, const Execution& exec, const std::vector<int>& bits) {
    ++rep.trials;
    if (wsb_ok(bits)) {
        ++rep.pass;
        return;
    }
    ++rep.fail;
    if (rep.failing.size() < 10) {
        std::string bitstr;
        for (int b : bits) bitstr += static_cast<char>('0' + b);
        rep.failing.push_back(encode_vertex(exec) + " -> " + bitstr);
    }
}

}  // namespace detail

// Uniformly sampled executions; deterministic for a fixed seed.
inline SimReport batch_simulate(const ProtocolArtifact& art, std::size_t trials,
                                std::uint64_t seed) {
    SimReport rep;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trials; ++i) {
        Execution exec = sample_flip_vertex(art.n, 3, rng);
        detail::record_run(rep, exec, run_protocol(exec, art));
    }
    return rep;
}

// Remove one matched edge from a copy of the artifact; executions whose
// first two rounds land on either endpoint lose the symmetry-breaking
// guarantee.
inline ProtocolArtifact delete_matching_edge(const ProtocolArtifact& art, const FlipVertex& v) {
    auto c = art.col_mu(v);
    if (!c) throw std::invalid_argument("delete_matching_edge: vertex is unmatched");
    ProtocolArtifact out = art;
    out.deleted_vertices.insert(encode_vertex(v));
    out.deleted_vertices.insert(encode_vertex(flip(v, *c)));
    return out;
}

// Simulate every third-round extension of a fixed two-round prefix.
inline SimReport simulate_extensions(const ProtocolArtifact& art, const FlipVertex& prefix) {
    if (prefix.depth() != 2)
        throw std::domain_error("simulate_extensions: prefix must have two rounds");
    SimReport rep;
    for (const FullTuple& sigma3 : enumerate_tuples(art.n)) {
        Execution exec{art.n, {prefix.rounds[0], prefix.rounds[1], sigma3}};
        detail::record_run(rep, exec, run_protocol(exec, art));
    }
    return rep;
}

// Chi-square statistic of the execution sampler against the uniform
// distribution on all depth-d vertices (intended for small n and d, where
// the cell table is enumerable).
struct ChiSquare {
    double statistic = 0.0;
    std::size_t cells = 0;

    // mean +/- z * sqrt(2 dof) acceptance band for the statistic
    bool plausible(double z = 5.0) const {
        double dof = static_cast<double>(cells - 1);
        double dev = statistic - dof;
        if (dev < 0) dev = -dev;
        return dev <= z * std::sqrt(2.0 * dof);
    }
};

inline ChiSquare sampler_chi_square(int n, int rounds, std::size_t trials, std::uint64_t seed) {
    std::vector<FlipVertex> all = enumerate_vertices(n, rounds);
    std::unordered_map<std::string, std::size_t> counts;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trials; ++i)
        ++counts[encode_vertex(sample_flip_vertex(n, rounds, rng))];
    double expect = static_cast<double>(trials) / static_cast<double>(all.size());
    ChiSquare out;
    out.cells = all.size();
    std::size_t seen = 0;
    for (const FlipVertex& v : all) {
        auto it = counts.find(encode_vertex(v));
        double got = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        if (it != counts.end()) seen += it->second;
        out.statistic += (got - expect) * (got - expect) / expect;
    }
    if (seen != trials)
        throw std::logic_error("sampler_chi_square: sampler produced an unknown vertex");
    return out;
}

}  // namespace wsb
