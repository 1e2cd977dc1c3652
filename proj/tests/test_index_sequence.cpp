#include <catch2/catch_amalgamated.hpp>

#include "efg/coeffs.hpp"
#include "efg/index_sequence.hpp"

using namespace efg;

TEST_CASE("built-in kinds enumerate strictly increasing positive integers") {
    auto evens = IndexSequence::evens();
    CHECK(evens.nth(1) == 2);
    CHECK(evens.nth(5) == 10);
    CHECK(evens.contains(100));
    CHECK_FALSE(evens.contains(7));

    auto odds = IndexSequence::odds();
    CHECK(odds.nth(1) == 1);
    CHECK(odds.nth(3) == 5);

    auto sq = IndexSequence::squares();
    CHECK(sq.nth(4) == 16);
    CHECK(sq.contains(81));
    CHECK_FALSE(sq.contains(80));

    auto pr = IndexSequence::primes();
    CHECK(pr.nth(1) == 2);
    CHECK(pr.nth(10) == 29);
    CHECK(pr.contains(97));
    CHECK_FALSE(pr.contains(91)); // 7*13

    auto pw = IndexSequence::power(2);
    CHECK(pw.nth(3) == 8);
    CHECK(pw.contains(1024));
    CHECK_FALSE(pw.contains(24));

    auto ls = IndexSequence::explicit_list({1, 5, 9});
    CHECK(ls.nth(2) == 5);
    CHECK(ls.contains(9));
    CHECK_THROWS_AS(IndexSequence::explicit_list({3, 3}), BadParam);
    CHECK_THROWS_AS(IndexSequence::arithmetic(1, 0), BadParam);
    CHECK_THROWS_AS(IndexSequence::power(1), BadParam);
}

TEST_CASE("complement examples") {
    auto odds = complement(IndexSequence::evens(), 100);
    for (index_t k = 1; k <= 20; ++k) CHECK(odds.nth(k) == 2 * k - 1);

    // complement of complement is the original on any horizon
    auto back = complement(complement(IndexSequence::squares(), 500), 500);
    for (index_t n = 1; n <= 500; ++n)
        CHECK(back.contains(n) == IndexSequence::squares().contains(n));

    // squares complement up to 10
    auto c = complement(IndexSequence::squares(), 10);
    std::vector<index_t> got;
    for (index_t k = 1; got.size() < 7; ++k) got.push_back(c.nth(k));
    CHECK(got == std::vector<index_t>{2, 3, 5, 6, 7, 8, 10});
}

TEST_CASE("complement rejects cofinite coverage") {
    // naturals cover everything
    CHECK_THROWS_AS(complement(IndexSequence::naturals(), 100), NotProper);
    // a finite explicit list is proper (its complement is cofinite), so the
    // complement call succeeds, but complementing that complement's
    // complement... stays consistent
    auto fin = IndexSequence::explicit_list({2, 4});
    auto co = complement(fin, 100);
    CHECK(co.contains(3));
    CHECK_FALSE(co.contains(4));
    // and the cofinite complement cannot be complemented again
    CHECK_THROWS_AS(complement(co, 100), NotProper);
}

TEST_CASE("partition of the initial segment is exact") {
    for (auto nu : {IndexSequence::evens(), IndexSequence::squares(), IndexSequence::primes()}) {
        auto mu = complement(nu, 2000);
        for (index_t n = 1; n <= 2000; ++n) {
            CHECK(nu.contains(n) != mu.contains(n)); // disjoint and covering
        }
    }
}

TEST_CASE("k_window_for maps coefficient ranges to k ranges") {
    auto evens = IndexSequence::evens();
    auto [lo, hi] = evens.k_window_for(1000, 2000);
    CHECK(evens.nth(lo) == 1000);
    CHECK(evens.nth(hi) == 2000);
    CHECK(evens.nth(lo - 1) < 1000);

    auto sq = IndexSequence::squares();
    auto [slo, shi] = sq.k_window_for(100, 400);
    CHECK(slo == 10);
    CHECK(shi == 20);

    auto pw = IndexSequence::power(2);
    auto [plo, phi] = pw.k_window_for(4, 64);
    CHECK(plo == 2);
    CHECK(phi == 6);
}

TEST_CASE("subexponential diagnostic") {
    // arithmetic q=2: ratio (2k+2)/(2k), max over k in [50,100] is 1.02
    auto rep = subexponential_diagnostic(IndexSequence::evens(), 100);
    CHECK(rep.max_tail_ratio == Catch::Approx(51.0 / 50.0).epsilon(1e-12));
    CHECK(rep.trend == SubexponentialReport::Trend::decreasing);
    CHECK_FALSE(rep.flagged_non_subexponential);

    // power b=2: ratio constant 2, flagged
    auto rep2 = subexponential_diagnostic(IndexSequence::power(2), 20);
    CHECK(rep2.max_tail_ratio == Catch::Approx(2.0));
    CHECK(rep2.flagged_non_subexponential);

    // squares: decreasing toward 1
    auto rep3 = subexponential_diagnostic(IndexSequence::squares(), 100);
    CHECK(rep3.max_tail_ratio == Catch::Approx(51.0 * 51.0 / (50.0 * 50.0)).epsilon(1e-12));
    CHECK(rep3.trend == SubexponentialReport::Trend::decreasing);
    CHECK_FALSE(rep3.flagged_non_subexponential);

    // primes: irregular gaps but small ratios
    auto rep4 = subexponential_diagnostic(IndexSequence::primes(), 100);
    CHECK(rep4.max_tail_ratio < 1.2);
    CHECK_FALSE(rep4.flagged_non_subexponential);

    CHECK_THROWS_AS(subexponential_diagnostic(IndexSequence::evens(), 5), BadParam);
}

TEST_CASE("sequence spec strings") {
    CHECK(parse_index_sequence("even").nth(1) == 2);
    CHECK(parse_index_sequence("odds").nth(1) == 1);
    CHECK(parse_index_sequence("squares").nth(3) == 9);
    CHECK(parse_index_sequence("primes").nth(4) == 7);
    CHECK(parse_index_sequence("power:b=3").nth(2) == 9);
    CHECK(parse_index_sequence("arith:q=3,r=1").nth(1) == 1);
    CHECK(parse_index_sequence("arith:q=3,r=1").nth(2) == 4);
    CHECK(parse_index_sequence("list:1,5,9").nth(3) == 9);
    CHECK(parse_index_sequence("complement:even").nth(2) == 3);
    CHECK_THROWS_AS(parse_index_sequence("fibonacci"), UnknownId);
}
