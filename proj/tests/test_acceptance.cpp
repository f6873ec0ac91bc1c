// Acceptance harness: one verdict line per criterion, nonzero exit when any
// criterion fails.  All randomness is seeded; every run prints identical
// verdicts.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "wsb/assembly.hpp"
#include "wsb/export_tables.hpp"
#include "wsb/iis_sim.hpp"
#include "wsb/kit_paths.hpp"

using namespace wsb;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(int number, const char* title) : number_(number), title_(title) {
        start_ = std::chrono::steady_clock::now();
    }

    void check(bool ok, const std::string& detail) {
        if (ok) return;
        failed_ = true;
        if (details_.size() < 5) details_.push_back(detail);
    }

    void note(const std::string& text) { notes_ = text; }

    ~Criterion() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
        std::printf("CRITERION %2d [%s]: %s (%lld ms%s%s)\n", number_, title_,
                    failed_ ? "FAIL" : "PASS", static_cast<long long>(ms),
                    notes_.empty() ? "" : "; ", notes_.c_str());
        for (const std::string& d : details_) std::printf("    detail: %s\n", d.c_str());
        if (failed_) ++g_failures;
    }

private:
    int number_;
    const char* title_;
    bool failed_ = false;
    std::vector<std::string> details_;
    std::string notes_;
    std::chrono::steady_clock::time_point start_;
};

const ProtocolArtifact& artifact6() {
    static ProtocolArtifact art = pipeline(6);
    return art;
}

std::string tuple_key(const STuple& t) {
    std::string out;
    for (IdSet b : t.blocks) out += encode_set(b) + "|";
    return out;
}

// A random truncation-closed family of V-tuples.
std::vector<STuple> random_omega(int n, IdSet V, std::mt19937_64& rng) {
    std::set<std::string> seen;
    std::vector<STuple> out;
    auto add = [&](const STuple& t) {
        if (seen.insert(tuple_key(t)).second) out.push_back(t);
    };
    add(STuple{});
    int generators = 1 + static_cast<int>(rng() % 4);
    for (int g = 0; g < generators; ++g) {
        IdSet S = V & static_cast<IdSet>(rng());
        if (S == 0) continue;
        FullTuple part = sample_partition(n, S, rng);
        for (const STuple& tr : truncations(part.as_stuple())) add(tr);
    }
    return out;
}

// The structural description of the critical vertices: a full V-tuple
// prefix followed by the order's ids as singleton blocks.
bool shape_critical(const FullTuple& sigma, IdSet V, const OrderR& R) {
    int d = static_cast<int>(R.seq.size());
    if (sigma.length() < d) return false;
    int prefix_len = sigma.length() - d;
    IdSet prefix_union = 0;
    for (int i = 0; i < prefix_len; ++i)
        prefix_union |= sigma.blocks[static_cast<std::size_t>(i)];
    if (prefix_union != V) return false;
    for (int i = 0; i < d; ++i) {
        if (sigma.blocks[static_cast<std::size_t>(prefix_len + i)] !=
            id_bit(R.seq[static_cast<std::size_t>(i)]))
            return false;
    }
    return true;
}

void check_critical_characterization(Criterion& c, int n, const SubgraphSpec& spec,
                                     const OrderR& R) {
    for (const FullTuple& sigma : enumerate_tuples(n, &spec)) {
        bool crit = height(sigma, R) == 0;
        c.check(crit == shape_critical(sigma, spec.V, R),
                "characterization mismatch at " + encode_tuple(sigma));
        if (!crit) {
            FullTuple partner = *standard_partner(sigma, R);
            c.check(member(partner, spec), "partner left the subgraph at " + encode_tuple(sigma));
            c.check(standard_partner(partner, R) == std::optional<FullTuple>(sigma),
                    "involution broken at " + encode_tuple(sigma));
        }
    }
}

std::vector<int> shuffled_ids(IdSet S, std::mt19937_64& rng) {
    std::vector<int> ids = ids_of(S);
    std::shuffle(ids.begin(), ids.end(), rng);
    return ids;
}

FullTuple singles(int n, const std::vector<int>& order) {
    FullTuple t{n, {}};
    for (int id : order) t.blocks.push_back(id_bit(id));
    return t;
}

void criterion_1() {
    Criterion c(1, "vertex counts");
    const long expected[6] = {1, 3, 13, 75, 541, 4683};
    std::vector<Int128> rec{1};  // ordered-partition counts by the recurrence
    for (int n = 1; n <= 6; ++n) {
        Int128 a = 0;
        for (int k = 1; k <= n; ++k) a += binomial(n, k) * rec[static_cast<std::size_t>(n - k)];
        rec.push_back(a);
        c.check(a == static_cast<Int128>(expected[n - 1]),
                "recurrence value off at n=" + std::to_string(n));
        c.check(fubini(n) == static_cast<Int128>(expected[n - 1]),
                "table value off at n=" + std::to_string(n));
        c.check(enumerate_tuples(n).size() == static_cast<std::size_t>(expected[n - 1]),
                "enumeration count off at n=" + std::to_string(n));
    }
}

void criterion_2() {
    Criterion c(2, "bipartition");
    for (int n = 1; n <= 6; ++n) {
        long even = 0, odd = 0;
        for (const FullTuple& t : enumerate_tuples(n)) (t.length() % 2 == 0 ? even : odd)++;
        long a = std::max(even, odd), b = std::min(even, odd);
        c.check(a == b + 1, "parity classes differ by " + std::to_string(a - b) +
                                " at n=" + std::to_string(n));
    }
}

void criterion_3() {
    Criterion c(3, "critical characterization");
    for (int n = 1; n <= 5; ++n) {
        for (IdSet V = 0; V <= full_set(n); ++V) {
            check_critical_characterization(c, n, forbidden_set_spec(V),
                                            ascending_order(n, V));
        }
    }
    std::mt19937_64 rng(301);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        IdSet V = full_set(n) & static_cast<IdSet>(rng());
        SubgraphSpec spec{V, random_omega(n, V, rng)};
        check_critical_characterization(c, n, spec, ascending_order(n, V));
    }
    for (int trial = 0; trial < 200; ++trial) {
        int n = 6;
        IdSet V = full_set(n) & static_cast<IdSet>(rng());
        SubgraphSpec spec{V, random_omega(n, V, rng)};
        OrderR R{n, shuffled_ids(full_set(n) & ~V, rng)};
        check_critical_characterization(c, n, spec, R);
    }
}

void criterion_4() {
    Criterion c(4, "path kit");
    std::mt19937_64 rng(401);
    std::size_t built = 0;
    for (int n : {5, 6, 7}) {
        OrderR R = ascending_order(n, 0);
        SubgraphSpec spec = forbidden_set_spec(0);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<int> ids = shuffled_ids(full_set(n), rng);
            std::rotate(ids.begin(), std::find(ids.begin(), ids.end(), n), ids.end());
            std::vector<int> tail(ids.begin() + 1, ids.end());
            int k = 3 + static_cast<int>(rng() % (n - 3));

            auto run = [&](KitKind kind, int kk, const FullTuple& start) {
                AltPath p = kit_path({kind, kk, start, R, spec});
                c.check(p.structurally_valid() && !p.self_intersecting(),
                        "kit path invalid from " + encode_tuple(start));
                ++built;
            };

            // singleton tuple headed by the largest id
            run(KitKind::swapI_k, k, singles(n, ids));
            run(KitKind::swapI_2, 0, singles(n, ids));

            // two-element head containing the largest id
            FullTuple second{n, {}};
            second.blocks.push_back(id_bit(n) | id_bit(tail[0]));
            for (std::size_t i = 1; i < tail.size(); ++i)
                second.blocks.push_back(id_bit(tail[static_cast<std::size_t>(i)]));
            run(KitKind::swapII_k, k, second);
            run(KitKind::swapII_2, 0, second);
            run(KitKind::star, 0, second);

            // largest id as the k-th singleton
            int up = 1 + static_cast<int>(rng() % (n - 1));
            std::vector<int> placed = tail;
            placed.insert(placed.begin() + (up - 1), n);
            run(KitKind::upI_k, up, singles(n, placed));

            // two-element head without the largest id, which sits at position k
            FullTuple upii{n, {}};
            upii.blocks.push_back(id_bit(tail[0]) | id_bit(tail[1]));
            std::vector<int> rest(tail.begin() + 2, tail.end());
            rest.insert(rest.begin() + (k - 3), n);
            for (int id : rest) upii.blocks.push_back(id_bit(id));
            run(KitKind::upII_k, k, upii);

            // head {n-1, n} over singletons
            std::vector<int> others;
            for (int id : tail)
                if (id != n - 1) others.push_back(id);
            FullTuple u2{n, {}};
            u2.blocks.push_back(id_bit(n) | id_bit(n - 1));
            for (int id : others) u2.blocks.push_back(id_bit(id));
            run(KitKind::upII_2, 0, u2);

            // head {n, y} followed by the singleton n-1
            FullTuple sp{n, {}};
            sp.blocks.push_back(id_bit(n) | id_bit(others[0]));
            sp.blocks.push_back(id_bit(n - 1));
            for (std::size_t i = 1; i < others.size(); ++i)
                sp.blocks.push_back(id_bit(others[static_cast<std::size_t>(i)]));
            run(KitKind::specupII, 0, sp);
        }
    }
    c.note("instantiations=" + std::to_string(built));
}

void criterion_5() {
    Criterion c(5, "promotion bijection");
    for (int n = 5; n <= 14; ++n) {
        std::vector<std::set<IdSet>> images(static_cast<std::size_t>(n + 1));
        std::vector<long> domain_count(static_cast<std::size_t>(n + 1), 0);
        std::vector<long> codomain_count(static_cast<std::size_t>(n + 1), 0);
        for (IdSet S = 0; S <= full_set(n); ++S) {
            int t = set_size(S);
            if (suffix_member(S, n, "1[10]*") && t >= 1)
                ++codomain_count[static_cast<std::size_t>(t - 1)];
            if (!suffix_member(S, n, "0[01]*")) continue;
            ++domain_count[static_cast<std::size_t>(t)];
            IdSet T = phi(n, t, S);
            c.check((S & ~T) == 0 && set_size(T) == t + 1,
                    "image not a one-bigger superset at n=" + std::to_string(n) + " S=" +
                        encode_bits(S, n));
            c.check(suffix_member(T, n, "1[10]*"),
                    "image outside the codomain at " + encode_bits(S, n));
            c.check(images[static_cast<std::size_t>(t)].insert(T).second,
                    "image repeated at " + encode_bits(T, n));
        }
        for (int t = 0; t <= n - 1; ++t) {
            c.check(domain_count[static_cast<std::size_t>(t)] ==
                        codomain_count[static_cast<std::size_t>(t)],
                    "class sizes differ at n=" + std::to_string(n) + " t=" + std::to_string(t));
            c.check(static_cast<long>(images[static_cast<std::size_t>(t)].size()) ==
                        domain_count[static_cast<std::size_t>(t)],
                    "not injective at n=" + std::to_string(n) + " t=" + std::to_string(t));
        }
    }
}

void criterion_6() {
    Criterion c(6, "table reproduction");
    std::ifstream in(std::string(WSB_GOLDEN_DIR) + "/lambda_tables_t1.txt");
    c.check(in.good(), "golden file missing");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = export_lambda_tables(1);
    c.check(text == buf.str(), "export differs from the golden file");
    const char* rows[] = {
        "100101 -> 110101", "011001 -> 011101", "101001 -> 101101", "001110 -> 001111",
        "010110 -> 010111", "100110 -> 100111", "011010 -> 011011", "101010 -> 101011",
        "110010 -> 110011", "110100 -> 110110", "011100 -> 011110", "101100 -> 101110",
        "111000 -> 111010", "110001 -> 111001", "100011 -> 100000", "010011 -> 010000",
        "001101 -> 001000", "000111 -> 000100", "001011 -> 000010", "000000 -> 000001",
        "111111 -> 111100", "break 010110 -> 010111", "break 011100 -> 011110",
        "add 010101 -> 010111", "add 010110 -> 011110", "add 011100 -> 111100"};
    for (const char* row : rows) {
        c.check(text.find(std::string(row) + "\n") != std::string::npos,
                std::string("missing row: ") + row);
    }
}

void criterion_7() {
    Criterion c(7, "counting identities");
    c.check(identity_507(), "twelve-id identity");
    c.check(binomial(12, 1) + binomial(12, 4) == 507, "left side not 507");
    c.check(binomial(12, 0) + binomial(12, 3) + binomial(12, 9) + binomial(12, 10) == 507,
            "right side not 507");
    c.check(identity_6476(), "fifteen-id identity");
    c.check(binomial(15, 1) + binomial(15, 3) + binomial(15, 5) + binomial(15, 10) == 6476,
            "fifteen-id left side not 6476");
    for (int t = 1; t <= 5; ++t)
        c.check(identity_6t(t), "mod-3 identity fails at t=" + std::to_string(t));
}

void criterion_8() {
    Criterion c(8, "disjoint path system");
    int n = 6;
    struct Entry {
        WellOrderedPair p;
        std::unordered_set<std::string> vertices;
    };
    std::vector<Entry> entries;
    for (IdSet T = 1; T < full_set(n); ++T) {
        for (IdSet S = (T - 1) & T; S != 0; S = (S - 1) & T) {
            if (S == T) continue;
            WellOrderedPair p = make_well_ordered_pair(S, T);
            AltPath path = standard_pst(p, n);
            c.check(path.structurally_valid() && !path.self_intersecting(),
                    "standard path invalid for " + encode_set(S) + " in " + encode_set(T));
            Entry e{p, {}};
            for (const FlipVertex& v : path.vertices) e.vertices.insert(encode_vertex(v));
            entries.push_back(std::move(e));
        }
    }
    std::size_t compared = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (!pairs_disjoint(entries[i].p, entries[j].p) ||
                pairs_nested(entries[i].p, entries[j].p))
                continue;
            ++compared;
            const auto& small =
                entries[i].vertices.size() < entries[j].vertices.size() ? entries[i] : entries[j];
            const auto& big =
                entries[i].vertices.size() < entries[j].vertices.size() ? entries[j] : entries[i];
            for (const std::string& v : small.vertices) {
                if (big.vertices.count(v)) {
                    c.check(false, "paths intersect at " + v);
                    break;
                }
            }
        }
    }
    c.note("pairs=" + std::to_string(entries.size()) +
           " comparisons=" + std::to_string(compared));
}

void criterion_9() {
    Criterion c(9, "end-to-end matching");
    const ProtocolArtifact& art = artifact6();
    c.check(art.tunnels.size() == 20, "tunnel count");
    c.check(art.path_count == 21, "augmenting path count");
    MatchingReport rep = verify_matching_exhaustive(art);
    c.check(rep.perfect(), "matching not perfect");
    c.check(rep.involution_violations == 0, "involution violations");
    c.check(rep.out_of_scope == 0, "partners out of scope");
    c.check(rep.color_flip_violations == 0, "color flip violations");
    c.note("vertices=" + std::to_string(rep.vertex_count) +
           " criticals=" + std::to_string(rep.critical_count));
}

void criterion_10() {
    Criterion c(10, "labeling verification");
    const ProtocolArtifact& art = artifact6();
    SymmetryReport targeted = verify_symmetry_targeted(art);
    for (const std::string& v : targeted.violations) c.check(false, "targeted: " + v);
    SymmetryReport sampled = verify_symmetry_sampled(art, 10000000, 1001);
    for (const std::string& v : sampled.violations) c.check(false, "sampled: " + v);
    ComplianceReport comp = verify_compliance_sampled(art, 100000, 1002);
    for (const std::string& v : comp.violations) c.check(false, "compliance: " + v);
    c.note("targeted=" + std::to_string(targeted.vertices_checked) +
           " sampled=" + std::to_string(sampled.vertices_checked) +
           " compliance=" + std::to_string(comp.checked));
}

void criterion_11() {
    Criterion c(11, "simulator");
    const ProtocolArtifact& art = artifact6();
    SimReport rep = batch_simulate(art, 1000000, 1101);
    c.check(rep.ok() && rep.pass == 1000000, "clean simulation failed: " + rep.summary());
    std::mt19937_64 rng(1102);
    FlipVertex alpha = sample_flip_vertex(6, 2, rng);
    while (!art.member2(alpha)) alpha = sample_flip_vertex(6, 2, rng);
    ProtocolArtifact bad = delete_matching_edge(art, alpha);
    SimReport faulty = simulate_extensions(bad, alpha);
    c.check(faulty.fail > 0, "fault injection produced no failure");
    c.note(rep.summary() + "; injected fail=" + std::to_string(faulty.fail));
}

void criterion_12() {
    Criterion c(12, "twelve ids, partial");
    int n = 12, t = 2;
    // the mod-3 bijection over every subset
    IdSet alternating = repeat_trunc("01", n);
    std::set<IdSet> images;
    long domain = 0, codomain = 0;
    for (IdSet S = 0; S <= full_set(n); ++S) {
        if (set_size(S) % 3 == 1) ++codomain;
        if (set_size(S) % 3 != 0 || S == alternating) continue;
        ++domain;
        IdSet T = lambda_bij(t, S);
        c.check(set_size(T) % 3 == 1, "image size class wrong at " + encode_bits(S, n));
        c.check(comparable(S, T) && S != T, "image not comparable at " + encode_bits(S, n));
        c.check(images.insert(T).second, "image repeated at " + encode_bits(T, n));
    }
    c.check(domain == static_cast<long>(images.size()), "not injective");
    c.check(domain == codomain, "class sizes inconsistent");
    ComparableMatching cm = six_t_comparable_matching(t);
    c.check(valid_comparable_matching(cm), "constructive matching invalid");
    ComparableMatching repaired = make_non_nested(cm);
    c.check(valid_comparable_matching(repaired) && is_non_nested(repaired),
            "repair did not reach a non-nested matching");

    // the full construction is functional-form only; exhaustive level-3
    // verification stays out of scope, property checks substitute
    ProtocolArtifact art = pipeline(12);
    c.check(art.tunnels.size() == 506, "tunnel count");
    c.check(art.path_count == 507, "augmenting path count");
    std::mt19937_64 rng(1201);
    for (int i = 0; i < 1000; ++i) {
        FullTuple sigma = sample_full_tuple(n, rng);
        std::size_t predicted = predicted_critical_count(art, sigma);
        c.check(predicted == case_predicted_critical_count(art.x, sigma),
                "critical count off at fiber " + encode_tuple(sigma));
    }
    SymmetryReport sampled = verify_symmetry_sampled(art, 1000000, 1202);
    for (const std::string& v : sampled.violations) c.check(false, "sampled: " + v);
    c.note("matching pairs=" + std::to_string(cm.pairs.size()) +
           " sampled=" + std::to_string(sampled.vertices_checked));
}

void criterion_13() {
    Criterion c(13, "non-nested repair");
    std::mt19937_64 rng(1301);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 5 + static_cast<int>(rng() % 8);  // up to 12
        int a = 1 + static_cast<int>(rng() % (n - 1));
        int b = 1 + static_cast<int>(rng() % (n - 1));
        while (b == a) b = 1 + static_cast<int>(rng() % (n - 1));
        int lo = std::min(a, b), hi = std::max(a, b);
        // random comparable pairs between the two cardinality classes
        ComparableMatching m{n, {}};
        std::set<IdSet> lefts, rights;
        int target = 3 + static_cast<int>(rng() % 28);
        for (int attempt = 0; attempt < 400 && static_cast<int>(m.pairs.size()) < target;
             ++attempt) {
            std::vector<int> ids = shuffled_ids(full_set(n), rng);
            IdSet T = 0, S = 0;
            for (int i = 0; i < hi; ++i) T |= id_bit(ids[static_cast<std::size_t>(i)]);
            for (int i = 0; i < lo; ++i) S |= id_bit(ids[static_cast<std::size_t>(i)]);
            IdSet left = (a == lo) ? S : T;
            IdSet right = (a == lo) ? T : S;
            if (!lefts.insert(left).second) continue;
            if (!rights.insert(right).second) {
                lefts.erase(left);
                continue;
            }
            m.pairs.emplace_back(left, right);
        }
        c.check(valid_comparable_matching(m), "generated matching invalid");
        // repair loop with explicit monotonicity tracking
        std::map<int, int> profile = distance_profile(m);
        int guard = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < m.pairs.size() && !changed; ++i) {
                for (std::size_t j = i + 1; j < m.pairs.size() && !changed; ++j) {
                    if (!nested(oriented(m.pairs[i].first, m.pairs[i].second),
                                oriented(m.pairs[j].first, m.pairs[j].second)))
                        continue;
                    std::swap(m.pairs[i].second, m.pairs[j].second);
                    changed = true;
                }
            }
            if (changed) {
                std::map<int, int> next = distance_profile(m);
                c.check(!dist_lex_less(profile, next), "distance profile increased");
                profile = next;
                c.check(++guard < 100000, "repair did not terminate");
                if (guard >= 100000) return;
            }
        }
        c.check(valid_comparable_matching(m) && is_non_nested(m),
                "repair result invalid at trial " + std::to_string(trial));
        ComparableMatching lib = make_non_nested(m);
        c.check(is_non_nested(lib), "library repair not non-nested");
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    if (g_failures == 0) {
        std::printf("ALL 13 CRITERIA PASS\n");
        return 0;
    }
    std::printf("%d CRITERIA FAILED\n", g_failures);
    return 1;
}
