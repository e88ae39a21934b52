#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riskfuzz/weights.hpp"

#include <algorithm>
#include <random>

using namespace riskfuzz;

TEST_CASE("ranking parser") {
    PreferenceRanking r = parse_ranking("K1 > K2 ~ K3");
    REQUIRE(r.groups.size() == 2);
    CHECK(r.groups[0] == std::vector<std::string>{"K1"});
    CHECK(r.groups[1] == std::vector<std::string>{"K2", "K3"});
    CHECK(format_ranking(r) == "K1 > K2 ~ K3");
    CHECK_THROWS_AS(parse_ranking(""), DomainError);
    CHECK_THROWS_AS(parse_ranking("K1 > > K2"), DomainError);
    CHECK_THROWS_AS(parse_ranking("K1 > K1"), DomainError);
}

TEST_CASE("rank-normalized criticality weights reproduce the nine-criterion example") {
    // K5, (K3, K7, K2), K1, (K6, K8), K9, K4
    PreferenceRanking r = parse_ranking("K5 > K3 ~ K7 ~ K2 > K1 > K6 ~ K8 > K9 > K4");
    WeightVector w = rank_weights(r);
    CHECK(w.fraction("K5") == Fraction::of(1, 29));
    CHECK(w.fraction("K3") == Fraction::of(2, 29));
    CHECK(w.fraction("K7") == Fraction::of(2, 29));
    CHECK(w.fraction("K2") == Fraction::of(2, 29));
    CHECK(w.fraction("K1") == Fraction::of(3, 29));
    CHECK(w.fraction("K6") == Fraction::of(4, 29));
    CHECK(w.fraction("K8") == Fraction::of(4, 29));
    CHECK(w.fraction("K9") == Fraction::of(5, 29));
    CHECK(w.fraction("K4") == Fraction::of(6, 29));
}

TEST_CASE("rank weights degenerate cases") {
    CHECK(rank_weights(parse_ranking("A")).fraction("A") == Fraction::of(1, 1));
    WeightVector w = rank_weights(parse_ranking("A ~ B ~ C ~ D"));
    for (const char* it : {"A", "B", "C", "D"}) {
        CHECK(w.fraction(it) == Fraction::of(1, 4));
    }
}

TEST_CASE("fishburn weights reproduce the published mappings") {
    WeightVector w1 = fishburn_weights(parse_ranking("K1 > K2 ~ K3"));
    CHECK(w1.fraction("K1") == Fraction::of(2, 4));
    CHECK(w1.fraction("K2") == Fraction::of(1, 4));
    CHECK(w1.fraction("K3") == Fraction::of(1, 4));

    WeightVector w2 = fishburn_weights(parse_ranking("U1 ~ U2 > U3"));
    CHECK(w2.fraction("U1") == Fraction::of(2, 5));
    CHECK(w2.fraction("U2") == Fraction::of(2, 5));
    CHECK(w2.fraction("U3") == Fraction::of(1, 5));

    WeightVector w3 = fishburn_weights(parse_ranking("U1 > U2 > U3"));
    CHECK(w3.fraction("U1") == Fraction::of(3, 6));
    CHECK(w3.fraction("U2") == Fraction::of(2, 6));
    CHECK(w3.fraction("U3") == Fraction::of(1, 6));

    WeightVector w4 = fishburn_weights(parse_ranking("U1 > U2 > U3 ~ U4"));
    CHECK(w4.fraction("U1") == Fraction::of(3, 8));

    WeightVector w5 = fishburn_weights(parse_ranking("A ~ B"));
    CHECK(w5.fraction("A") == Fraction::of(1, 2));
}

TEST_CASE("fishburn strict chain yields the arithmetic progression") {
    PreferenceRanking r = parse_ranking("A > B > C > D > E");
    WeightVector w = fishburn_weights(r);
    CHECK(w.fraction("A") == Fraction::of(5, 15));
    CHECK(w.fraction("B") == Fraction::of(4, 15));
    CHECK(w.fraction("C") == Fraction::of(3, 15));
    CHECK(w.fraction("D") == Fraction::of(2, 15));
    CHECK(w.fraction("E") == Fraction::of(1, 15));
}

TEST_CASE("weights sum to exactly 1 in rational arithmetic") {
    std::mt19937 rng(5);
    for (int it = 0; it < 100; ++it) {
        // random ranking over up to 9 items
        std::size_t n = 1 + rng() % 9;
        PreferenceRanking r;
        r.groups.emplace_back();
        for (std::size_t i = 0; i < n; ++i) {
            if (!r.groups.back().empty() && rng() % 2 == 0) {
                r.groups.emplace_back();
            }
            r.groups.back().push_back("X" + std::to_string(i));
        }
        for (auto scheme : {rank_weights, fishburn_weights}) {
            WeightVector w = scheme(r);
            // exact rational sum
            std::int64_t num = 0, den = 1;
            for (const auto& e : w.entries) {
                num = num * e.weight.den + e.weight.num * den;
                den *= e.weight.den;
                std::int64_t g = std::gcd(num, den);
                num /= g;
                den /= g;
            }
            REQUIRE(num == 1);
            REQUIRE(den == 1);
        }
    }
}

TEST_CASE("anonymity within an indifference group") {
    WeightVector a = fishburn_weights(parse_ranking("A > B ~ C > D"));
    WeightVector b = fishburn_weights(parse_ranking("A > C ~ B > D"));
    CHECK(a.fraction("B") == b.fraction("B"));
    CHECK(a.fraction("C") == b.fraction("C"));
}

TEST_CASE("aggregate_rankings") {
    PreferenceRanking r1 = parse_ranking("a > b > c");
    SUBCASE("identical rankings collapse to themselves") {
        PreferenceRanking out = aggregate_rankings({r1, r1, r1});
        CHECK(format_ranking(out) == "a > b > c");
    }
    SUBCASE("two reversed strict rankings merge into one group") {
        PreferenceRanking r2 = parse_ranking("b > a");
        PreferenceRanking r3 = parse_ranking("a > b");
        PreferenceRanking out = aggregate_rankings({r2, r3});
        REQUIRE(out.groups.size() == 1);
        CHECK(out.groups[0].size() == 2);
    }
    SUBCASE("means 1.33 / 1.67 / 3.0 with tolerance 0.5 give (a ~ b) > c") {
        // group indices: a: 1,1,2 -> 4/3;  b: 2,2,1 -> 5/3;  c: 3,3,3 -> 3
        PreferenceRanking x1 = parse_ranking("a > b > c");
        PreferenceRanking x2 = parse_ranking("a > b > c");
        PreferenceRanking x3 = parse_ranking("b > a > c");
        PreferenceRanking out = aggregate_rankings({x1, x2, x3}, 0.5);
        REQUIRE(out.groups.size() == 2);
        CHECK(out.groups[0].size() == 2);
        CHECK(out.groups[1] == std::vector<std::string>{"c"});
    }
    SUBCASE("mismatched item sets are rejected") {
        PreferenceRanking r2 = parse_ranking("a > d");
        CHECK_THROWS_AS(aggregate_rankings({r1, r2}), DomainError);
    }
}
