#include "doctest.h"

#include <random>

#include "kron/cf.hpp"

using namespace kron;

namespace {

CoefficientStream random_stream(std::mt19937_64& rng, std::size_t depth, int max_coeff = 9) {
    std::uniform_int_distribution<int> coeff(1, max_coeff);
    std::vector<Int> c;
    for (std::size_t i = 0; i < depth; ++i) c.emplace_back(coeff(rng));
    return CoefficientStream::terminating(std::move(c));
}

}  // namespace

TEST_SUITE_BEGIN("cf");

TEST_CASE("convergent seeds and single step") {
    auto s = CoefficientStream::parse("0;2");
    auto cs = convergents(s, 1);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].p == 0);
    CHECK(cs[0].q == 1);
    CHECK(cs[1].p == 1);
    CHECK(cs[1].q == 2);
}

TEST_CASE("all-ones stream gives Fibonacci denominators") {
    auto s = CoefficientStream::parse("0;1,1,1,1,1,1");
    auto cs = convergents(s, 6);
    std::vector<int> expected{1, 1, 2, 3, 5, 8, 13};
    for (std::size_t n = 0; n <= 6; ++n) CHECK(cs[n].q == expected[n]);
}

TEST_CASE("golden-angle prefix convergents") {
    auto s = CoefficientStream::parse("0;2,1,1,1,1");
    auto cs = convergents(s, 5);
    std::vector<std::pair<int, int>> expected{{1, 2}, {1, 3}, {2, 5}, {3, 8}, {5, 13}};
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(cs[n].p == expected[n - 1].first);
        CHECK(cs[n].q == expected[n - 1].second);
    }
    // 5/13 approximates (3-sqrt(5))/2 = 0.38197 to the expected accuracy
    CHECK(value_of(s, 5) == Rat(5, 13));
}

TEST_CASE("depth beyond a terminating stream is an error naming the cap") {
    auto s = CoefficientStream::parse("0;2,3");
    CHECK_THROWS_WITH_AS(convergents(s, 3), doctest::Contains("maximal depth is 2"), DomainError);
}

TEST_CASE("value_of evaluates nested fractions exactly") {
    CHECK(value_of(CoefficientStream::parse("0;2"), 1) == Rat(1, 2));
    CHECK(value_of(CoefficientStream::parse("0;1,2,2"), 3) == Rat(5, 7));
    CHECK(value_of(CoefficientStream::parse("0;3,2"), 2) == Rat(2, 7));
}

TEST_CASE("rational_to_cf canonical expansions") {
    CHECK(rational_to_cf(Rat(1, 2)).str() == "0;2");
    CHECK(rational_to_cf(Rat(5, 8)).str() == "0;1,1,1,2");
    CHECK(rational_to_cf(Rat(2, 7)).str() == "0;3,2");
    CHECK_THROWS_AS(rational_to_cf(Rat(3, 2)), DomainError);
    CHECK_THROWS_AS(rational_to_cf(Rat(0)), DomainError);
    CHECK_THROWS_AS(rational_to_cf(Rat(1)), DomainError);
}

TEST_CASE("complement drops the leading 1") {
    auto golden = CoefficientStream::periodic({}, {Int(1)});
    auto c = complement(golden);
    CHECK(c.at(1) == 2);
    CHECK(c.at(2) == 1);
    CHECK(c.at(3) == 1);

    auto s = CoefficientStream::parse("0;1,2,2");
    auto cs = complement(s);
    CHECK(cs.str() == "0;3,2");
    CHECK(value_of(s, 3) + value_of(cs, 2) == 1);

    auto t = CoefficientStream::parse("0;1,4,1,3");
    auto ct = complement(t);
    CHECK(ct.str() == "0;5,1,3");
    CHECK(value_of(t, 4) + value_of(ct, 3) == 1);

    CHECK_THROWS_AS(complement(CoefficientStream::parse("0;2,3")), DomainError);
}

TEST_CASE("complement of periodic streams keeps the right phase") {
    auto s = CoefficientStream::parse("0;1,(2,3)");
    auto c = complement(s);
    // original: 1,2,3,2,3,...  complement: 3,3,2,3,2,...
    CHECK(c.at(1) == 3);
    for (std::size_t i = 2; i <= 9; ++i) CHECK(c.at(i) == s.at(i + 1));

    auto u = CoefficientStream::parse("0;(1,2)");
    auto cu = complement(u);
    CHECK(cu.at(1) == 3);
    for (std::size_t i = 2; i <= 9; ++i) CHECK(cu.at(i) == u.at(i + 1));
}

TEST_CASE("stream text round trip and parse errors") {
    for (const char* text : {"0;1,2,2", "0;2,(1)", "0;1,2,(3,4)", "0;(5)"}) {
        auto s = CoefficientStream::parse(text);
        CHECK(s.str() == text);
    }
    CHECK_THROWS_AS(CoefficientStream::parse("1;2"), DomainError);
    CHECK_THROWS_AS(CoefficientStream::parse("0;"), DomainError);
    CHECK_THROWS_AS(CoefficientStream::parse("0;2,(3),4"), DomainError);
    CHECK_THROWS_AS(CoefficientStream::parse("0;0,2"), DomainError);
    CHECK_THROWS_AS(CoefficientStream::parse("nonsense"), DomainError);
}

TEST_CASE("determinant identity and denominator growth hold on random streams") {
    std::mt19937_64 rng(0xC0FFEE);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_stream(rng, 12);
        auto cs = convergents(s, 12);
        for (std::size_t n = 1; n <= 12; ++n) {
            // p_n q_{n-1} - p_{n-1} q_n = (-1)^{n+1}
            Int det = cs[n].p * cs[n - 1].q - cs[n - 1].p * cs[n].q;
            CHECK(det == (n % 2 == 1 ? 1 : -1));
        }
        for (std::size_t n = 2; n <= 12; ++n) CHECK(cs[n].q >= cs[n - 1].q + cs[n - 2].q);
    }
}

TEST_CASE("consecutive convergents differ by exactly 1/(q_K q_{K+1})") {
    std::mt19937_64 rng(0xBEEF);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_stream(rng, 10);
        for (std::size_t k = 1; k < 10; ++k) {
            Rat a = value_of(s, k), b = value_of(s, k + 1);
            Rat diff = a > b ? a - b : b - a;
            auto cs = convergents(s, k + 1);
            CHECK(diff == Rat(1, cs[k].q * cs[k + 1].q));
        }
    }
}

TEST_CASE("round trip: rational_to_cf inverts value_of") {
    std::mt19937_64 rng(0xFEED);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_stream(rng, 8);
        Rat v = value_of(s, 8);
        auto back = rational_to_cf(v);
        CHECK(value_of(back, *back.length()) == v);
        // canonical form never ends in 1
        CHECK(back.prefix().back() != 1);
    }
}

TEST_CASE("complement involution at the value level") {
    std::mt19937_64 rng(0xABCD);
    std::uniform_int_distribution<int> coeff(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> c{1};
        for (int i = 0; i < 9; ++i) c.emplace_back(coeff(rng));
        auto s = CoefficientStream::terminating(c);
        auto comp = complement(s);
        CHECK(value_of(comp, 9) == 1 - value_of(s, 10));
    }
}

TEST_CASE("rule streams are reproducible and complementable") {
    auto s = CoefficientStream::with_rule({Int(1)}, [](std::size_t i) { return Int(i % 3 + 1); });
    CHECK(s.at(1) == 1);
    CHECK(s.at(5) == s.at(5));
    auto c = complement(s);
    for (std::size_t i = 2; i <= 12; ++i) CHECK(c.at(i) == s.at(i + 1));
    CHECK_THROWS_AS(s.str(), DomainError);
}

TEST_SUITE_END();
