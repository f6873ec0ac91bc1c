#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wsb/diophantine.hpp"

using namespace wsb;

TEST_CASE("published primitive solutions") {
    auto r6 = primitive_solution_search(6);
    REQUIRE(r6.status == SolveStatus::found);
    CHECK(r6.solution->x == std::vector<int>{1, 1, -1, 0, 0});
    CHECK(r6.solution->valid());

    auto r12 = primitive_solution_search(12);
    REQUIRE(r12.status == SolveStatus::found);
    CHECK(r12.solution->x == std::vector<int>{1, 0, -1, 1, 0, 0, 0, 0, -1, -1, 0});
    CHECK(r12.solution->valid());

    auto r15 = primitive_solution_search(15);
    REQUIRE(r15.status == SolveStatus::found);
    CHECK(r15.solution->valid());
    CHECK(r15.solution->plus_cardinalities() == std::vector<int>{1, 3, 5, 10});
    CHECK(r15.solution->minus_cardinalities() == std::vector<int>{4, 6, 13});
}

TEST_CASE("prime powers admit no solutions, and 10 and 14 have none") {
    for (int n : {4, 8, 9, 16}) {
        CHECK(is_prime_power(n));
        CHECK(primitive_solution_search(n).status == SolveStatus::none);
    }
    CHECK_FALSE(is_prime_power(6));
    CHECK(primitive_solution_search(10).status == SolveStatus::none);
    CHECK(primitive_solution_search(14).status == SolveStatus::none);
}

TEST_CASE("the multiple-of-6 pattern solves the equation for every t <= 5") {
    for (int t = 3; t <= 5; ++t) {
        auto r = primitive_solution_search(6 * t);
        REQUIRE(r.status == SolveStatus::found);
        CHECK(r.solution->valid());
    }
}

TEST_CASE("families derived from a solution") {
    auto s = *primitive_solution_search(6).solution;
    auto sigma = sigma_family(s);
    auto lambda = lambda_family(s);
    CHECK(sigma.size() == 21);  // sizes 1 and 2
    CHECK(lambda.size() == 20);  // size 3
    CHECK(sigma.size() == lambda.size() + 1);

    auto s12 = *primitive_solution_search(12).solution;
    CHECK(sigma_family(s12).size() == 507);
    CHECK(lambda_family(s12).size() == 506);
}

TEST_CASE("arithmetic identities hold exactly") {
    CHECK(identity_507());
    CHECK(identity_6476());
    for (int t = 1; t <= 5; ++t) CHECK(identity_6t(t));
}

TEST_CASE("comparable matching search on toy families") {
    auto m = comparable_matching_search(3, {id_bit(1)}, {id_bit(1) | id_bit(2)});
    REQUIRE(m);
    CHECK(m->pairs.size() == 1);
    CHECK_FALSE(comparable_matching_search(3, {id_bit(1)}, {id_bit(2) | id_bit(3)}));
    CHECK_THROWS_AS(comparable_matching_search(3, {id_bit(1)}, {}), std::domain_error);
}

TEST_CASE("comparable matching search solves the n = 6 pipeline families") {
    auto s = *primitive_solution_search(6).solution;
    auto sigma = sigma_family(s);
    sigma.erase(std::remove(sigma.begin(), sigma.end(), id_bit(6)), sigma.end());
    auto m = comparable_matching_search(6, sigma, lambda_family(s));
    REQUIRE(m);
    CHECK(m->pairs.size() == 20);
    CHECK(valid_comparable_matching(*m));
}

TEST_CASE("comparable matching search solves the n = 15 identity families") {
    auto s = *primitive_solution_search(15).solution;
    auto sigma = sigma_family(s);
    auto lambda = lambda_family(s);
    CHECK(sigma.size() == 6476);
    CHECK(lambda.size() == 6475);
    sigma.erase(std::remove(sigma.begin(), sigma.end(), id_bit(15)), sigma.end());
    auto m = comparable_matching_search(15, sigma, lambda);
    REQUIRE(m);
    CHECK(valid_comparable_matching(*m));
}

TEST_CASE("the constructive matching for n = 6t is comparable and repairable") {
    for (int t = 1; t <= 2; ++t) {
        ComparableMatching m = six_t_comparable_matching(t);
        CHECK(valid_comparable_matching(m));
        // covers exactly the proper families of the canonical solution sizes
        std::size_t expect = 0;
        for (IdSet S = 1; S < full_set(6 * t); ++S)
            if (set_size(S) % 3 == 0) ++expect;
        CHECK(m.pairs.size() == expect);
        ComparableMatching r = make_non_nested(m);
        CHECK(is_non_nested(r));
        CHECK(valid_comparable_matching(r));
        CHECK_FALSE(dist_lex_less(distance_profile(m), distance_profile(r)));
    }
}

TEST_CASE("non-nested repair terminates and never increases the profile") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 6 + static_cast<int>(rng() % 7);  // up to 12
        // random disjoint cardinality classes for the two sides
        int a = 1 + static_cast<int>(rng() % (n - 1));
        int b = 1 + static_cast<int>(rng() % (n - 1));
        if (a == b) continue;
        std::vector<IdSet> sigma = cardinal_family(n, {a});
        std::vector<IdSet> lambda = cardinal_family(n, {b});
        std::size_t k = std::min(sigma.size(), lambda.size());
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::shuffle(lambda.begin(), lambda.end(), rng);
        sigma.resize(k);
        lambda.resize(k);
        auto m = comparable_matching_search(n, sigma, lambda);
        if (!m) continue;  // the truncated families need not admit a matching
        ComparableMatching r = make_non_nested(*m);
        CHECK(is_non_nested(r));
        CHECK(valid_comparable_matching(r));
        CHECK_FALSE(dist_lex_less(distance_profile(*m), distance_profile(r)));
    }
}

TEST_CASE("nestedness and repair rule basics") {
    // S < T < phi(T) < phi(S): swapping partners keeps comparability and
    // strictly shrinks the largest distance.
    IdSet S = parse_bits("1000");
    IdSet T = parse_bits("1100");
    IdSet fT = parse_bits("1110");
    IdSet fS = parse_bits("1111");
    ComparableMatching m{4, {{S, fS}, {T, fT}}};
    CHECK_FALSE(is_non_nested(m));
    ComparableMatching r = make_non_nested(m);
    CHECK(is_non_nested(r));
    CHECK(dist_lex_less(distance_profile(r), distance_profile(m)));
}
