#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "uct/dyadic.hpp"

using uct::Dyadic;
using uct::DyadicInterval;

namespace {

Dyadic d(const char* s) { return Dyadic::parse(s); }

}  // namespace

TEST(Dyadic, Arithmetic) {
    EXPECT_EQ(d("1/2") + d("1/4"), d("3/4"));
    EXPECT_EQ(d("3/8") * Dyadic(2), d("3/4"));
    EXPECT_EQ(d("1/2") - d("3/4"), d("-1/4"));
    EXPECT_EQ(d("1/2") <=> d("4/8"), std::strong_ordering::equal);
}

TEST(Dyadic, CanonicalForm) {
    Dyadic x(uct::BigInt(12), 5);
    EXPECT_EQ(x.mantissa(), 3);
    EXPECT_EQ(x.exponent(), 3u);
    EXPECT_EQ(x.to_string(), "3/2^3");
    EXPECT_EQ(Dyadic(0).to_string(), "0/2^0");
    EXPECT_EQ(Dyadic(uct::BigInt(0), 9).exponent(), 0u);
    EXPECT_EQ(Dyadic(1).to_string(), "1/2^0");
}

TEST(Dyadic, ParseForms) {
    EXPECT_EQ(d("3/2^3"), Dyadic(uct::BigInt(3), 3));
    EXPECT_EQ(d("6/16"), Dyadic(uct::BigInt(3), 3));
    EXPECT_EQ(d("0.375"), Dyadic(uct::BigInt(3), 3));
    EXPECT_EQ(d("-5"), Dyadic(-5));
    EXPECT_THROW(d("1/3"), uct::InvalidNumber);
    EXPECT_THROW(d("0.1"), uct::InvalidNumber);
    EXPECT_THROW(d("abc"), uct::InvalidNumber);
    EXPECT_THROW(d(""), uct::InvalidNumber);
}

TEST(Dyadic, RoundTripString) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Dyadic x(uct::BigInt(static_cast<long long>(rng() % 2001) - 1000), rng() % 20);
        EXPECT_EQ(Dyadic::parse(x.to_string()), x);
    }
}

TEST(Dyadic, FloorCeilAgainstRationals) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        Dyadic x(uct::BigInt(static_cast<long long>(rng() % 100001) - 50000), rng() % 24);
        std::size_t p = rng() % 12;
        auto q = oracle::exact(x);
        auto fl = oracle::exact(x.floor_to(p));
        auto ce = oracle::exact(x.ceil_to(p));
        auto step = oracle::Rational(1) / oracle::pow2(p);
        EXPECT_LE(fl, q);
        EXPECT_GT(fl + step, q);
        EXPECT_GE(ce, q);
        EXPECT_LT(ce - step, q);
        EXPECT_LE(x.floor_to(p).exponent(), p);
    }
}

TEST(Dyadic, RoundedQuotientBrackets) {
    for (long long a = -20; a <= 20; ++a) {
        for (long long b : {-7LL, -3LL, 1LL, 3LL, 5LL, 12LL}) {
            Dyadic lo = uct::divide_rounded(Dyadic(a), Dyadic(b), 10, false);
            Dyadic hi = uct::divide_rounded(Dyadic(a), Dyadic(b), 10, true);
            oracle::Rational q = oracle::Rational(a) / b;
            EXPECT_LE(oracle::exact(lo), q);
            EXPECT_GE(oracle::exact(hi), q);
            EXPECT_LE(oracle::exact(hi - lo), oracle::Rational(1, 1024));
        }
    }
}

TEST(DyadicInterval, Basics) {
    DyadicInterval J(d("1/4"), d("3/4"));
    EXPECT_EQ(J.width(), d("1/2"));
    EXPECT_EQ(J.mid(), d("1/2"));
    EXPECT_EQ(J.left_half(), DyadicInterval(d("1/4"), d("1/2")));
    EXPECT_EQ(J.right_half(), DyadicInterval(d("1/2"), d("3/4")));
    EXPECT_TRUE(J.contains(d("1/4")));
    EXPECT_FALSE(J.contains(d("7/8")));
    EXPECT_EQ(J.to_string(), "[1/2^2, 3/2^2]");
    EXPECT_THROW(DyadicInterval(d("1"), d("0")), std::invalid_argument);
}

TEST(LevelGrid, Examples) {
    auto g1 = uct::level_grid(1);
    ASSERT_EQ(g1.size(), 3u);
    EXPECT_EQ(g1[1], d("1/2"));
    auto g2 = uct::level_grid(2);
    std::vector<Dyadic> want = {Dyadic(0), d("1/4"), d("1/2"), d("3/4"), Dyadic(1)};
    EXPECT_EQ(g2, want);
    auto g3 = uct::level_grid(3);
    ASSERT_EQ(g3.size(), 9u);
    for (std::size_t i = 1; i < g3.size(); ++i) {
        EXPECT_EQ(g3[i] - g3[i - 1], d("1/8"));
    }
    EXPECT_THROW(uct::level_grid(0), std::invalid_argument);
}
