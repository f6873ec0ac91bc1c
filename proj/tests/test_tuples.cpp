#include <catch2/catch_amalgamated.hpp>

#include "wsb/tuples.hpp"

using namespace wsb;

namespace {

CoherentPair pair_of(const std::string& top, const std::string& bottom) {
    return CoherentPair{parse_tuple(top), parse_tuple(bottom)};
}

}  // namespace

TEST_CASE("normalizer is the order-preserving bijection onto [k]") {
    Normalizer phi(parse_set("3,7,9"));
    CHECK(phi.apply(3) == 1);
    CHECK(phi.apply(7) == 2);
    CHECK(phi.apply(9) == 3);
    CHECK(phi.invert(1) == 3);
    CHECK(phi.invert(2) == 7);
    CHECK(phi.invert(3) == 9);

    Normalizer ident(full_set(4));
    for (int i = 1; i <= 4; ++i) CHECK(ident.apply(i) == i);

    CHECK_THROWS_AS(Normalizer(0), std::domain_error);
}

TEST_CASE("normalizer composition law") {
    // Relabel {2,5} to {4,8} by the order bijection, then normalize: the
    // composite equals the normalizer of {4,8}.
    Normalizer a(parse_set("2,5"));
    Normalizer b(parse_set("4,8"));
    // order bijection gamma: 2->4, 5->8; normalizer(B) = normalizer(A) o gamma^{-1}
    CHECK(b.apply(4) == a.apply(2));
    CHECK(b.apply(8) == a.apply(5));
}

TEST_CASE("encoding round-trips and canonical form") {
    CHECK(encode_set(parse_set("1,2")) == "1,2");
    CHECK(encode_tuple(parse_tuple("1,2|3|4,5")) == "1,2|3|4,5");
    CHECK(encode_tuple(STuple{}) == kEpsilon);
    CHECK(parse_tuple(kEpsilon).empty());
    CHECK(encode_pair(pair_of("1,2|3", "1|3")) == "1,2|3::1|3");

    FullTuple t = parse_full_tuple("1|2,3", 3);
    CHECK(t.v_set() == parse_set("1"));
    CHECK_THROWS(parse_full_tuple("1|2", 3));
    CHECK_FALSE(valid_stuple(STuple{{id_bit(1), id_bit(1)}}));  // overlapping blocks
}

TEST_CASE("restriction follows the block-merging rule") {
    // Worked example: restricting {1,2}|3|4|5|6 to {1,2,3,5} keeps the traces
    // as bottom blocks and merges the skipped top blocks forward.
    CoherentPair sigma = as_pair(parse_full_tuple("1,2|3|4|5|6", 6));
    CoherentPair r1 = restrict_pair(sigma, parse_set("1,2,3,5"));
    CHECK(encode_pair(r1) == "1,2|3|4,5::1,2|3|5");

    CoherentPair r2 = restrict_pair(r1, parse_set("1,5"));
    CHECK(encode_pair(r2) == "1,2|3,4,5::1|5");

    CoherentPair simple = as_pair(parse_full_tuple("1|2", 2));
    CHECK(encode_pair(restrict_pair(simple, parse_set("1"))) == "1::1");
}

TEST_CASE("restriction rejects bad targets") {
    CoherentPair cp = as_pair(parse_full_tuple("1|2|3", 3));
    CHECK_THROWS_AS(restrict_pair(cp, 0), std::domain_error);
    CHECK_THROWS_AS(restrict_pair(cp, parse_set("1,2,3")), std::domain_error);
    CHECK_THROWS_AS(restrict_pair(cp, parse_set("4")), std::domain_error);
}

TEST_CASE("restriction is associative with intersection of targets") {
    // ((sigma,tau) | T) | T' = (sigma,tau) | T' whenever T' is inside T,
    // checked exhaustively for n <= 4 over all full tuples and targets.
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::vector<IdSet>> partitions;
        std::vector<IdSet> prefix;
        std::function<void(IdSet)> rec = [&](IdSet rest) {
            if (!rest) {
                partitions.push_back(prefix);
                return;
            }
            for (IdSet b = rest; b; b = (b - 1) & rest) {
                prefix.push_back(b);
                rec(rest & ~b);
                prefix.pop_back();
            }
        };
        rec(full_set(n));
        for (const auto& blocks : partitions) {
            CoherentPair cp = as_pair(FullTuple{n, blocks});
            for (IdSet T = 1; T < full_set(n); ++T) {
                if ((T & ~cp.color()) || T == cp.color() || T == 0) continue;
                CoherentPair rT = restrict_pair(cp, T);
                for (IdSet T2 = 1; T2 < T; ++T2) {
                    if ((T2 & ~T) || T2 == T || T2 == 0) continue;
                    CHECK(restrict_pair(rT, T2) == restrict_pair(cp, T2));
                }
            }
        }
    }
}

TEST_CASE("deletion is restriction to the complement") {
    // dl(1|23, {3}) over [3] is the coherent pair (1|23, 1|2).
    CoherentPair cp = as_pair(parse_full_tuple("1|2,3", 3));
    CHECK(encode_pair(delete_from_pair(cp, parse_set("3"))) == "1|2,3::1|2");

    // dl(1|2|3, {3}): the trailing top block is dropped entirely.
    CoherentPair cp2 = as_pair(parse_full_tuple("1|2|3", 3));
    CHECK(encode_pair(delete_from_pair(cp2, parse_set("3"))) == "1|2::1|2");

    CHECK_THROWS_AS(delete_from_pair(cp, cp.color()), std::domain_error);
}

TEST_CASE("V-prefix is the maximal initial run inside V") {
    CHECK(encode_tuple(v_prefix(parse_full_tuple("2|3|1", 3), parse_set("2,3"))) == "2|3");
    CHECK(v_prefix(parse_full_tuple("1|2|3", 3), parse_set("2,3")).empty());
    FullTuple t = parse_full_tuple("1,2|3", 3);
    CHECK(v_prefix(t, full_set(3)) == t.as_stuple());
}

TEST_CASE("truncations list every prefix, shortest first") {
    auto tr = truncations(parse_tuple("1|2,3"));
    REQUIRE(tr.size() == 3);
    CHECK(tr[0].empty());
    CHECK(encode_tuple(tr[1]) == "1");
    CHECK(encode_tuple(tr[2]) == "1|2,3");

    CHECK(truncations(STuple{}).size() == 1);
    CHECK(truncations(parse_tuple("1|2|3")).size() == 4);
}

TEST_CASE("V(sigma) and the last block partition [n]") {
    FullTuple t = parse_full_tuple("2|1,3|4", 4);
    CHECK((t.v_set() | t.last_block()) == full_set(4));
    CHECK((t.v_set() & t.last_block()) == 0);
}
