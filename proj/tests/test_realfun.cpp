#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "uct/realfun.hpp"

using uct::CompareTag;
using uct::Dyadic;
using uct::DyadicInterval;

namespace {

Dyadic d(const char* s) { return Dyadic::parse(s); }

oracle::Rational slack(std::size_t k) { return oracle::Rational(1) / oracle::pow2(k); }

}  // namespace

TEST(ApproxCompare, Examples) {
    EXPECT_EQ(uct::approx_compare(uct::parse("2"), Dyadic(0), Dyadic(0), Dyadic(1)).tag, CompareTag::High);
    EXPECT_EQ(uct::approx_compare(uct::parse("-1"), Dyadic(0), Dyadic(0), Dyadic(1)).tag, CompareTag::Low);
    auto half = uct::approx_compare(uct::parse("1/2"), Dyadic(0), d("1/4"), d("3/4"));
    auto again = uct::approx_compare(uct::parse("1/2"), Dyadic(0), d("1/4"), d("3/4"));
    EXPECT_EQ(half.tag, again.tag);
    if (half.tag == CompareTag::High) {
        EXPECT_GT(half.certificate.lo, d("1/4"));
    } else {
        EXPECT_LT(half.certificate.hi, d("3/4"));
    }
    EXPECT_THROW(uct::approx_compare(uct::parse("x"), Dyadic(0), Dyadic(1), Dyadic(1)), std::invalid_argument);
}

TEST(ApproxCompare, CertificateSupportsTag) {
    auto f = uct::parse("1/3");
    for (int k = 1; k < 30; ++k) {
        Dyadic a(uct::BigInt(k), 6);
        Dyadic b = a + Dyadic::pow2_neg(10);
        auto c = uct::approx_compare(f, Dyadic(0), a, b);
        if (c.tag == CompareTag::High) {
            EXPECT_GT(c.certificate.lo, a);
            EXPECT_GT(oracle::Rational(1, 3), oracle::exact(a));
        } else {
            EXPECT_LT(c.certificate.hi, b);
            EXPECT_LT(oracle::Rational(1, 3), oracle::exact(b));
        }
    }
}

TEST(ApproxCompare, BudgetExceeded) {
    uct::EvalConfig cfg;
    cfg.start_precision = 8;
    cfg.precision_cap = 16;
    EXPECT_THROW(uct::approx_compare(uct::parse("1/3"), Dyadic(0), Dyadic(0), Dyadic::pow2_neg(40), cfg),
                 uct::RefinementBudgetExceeded);
}

TEST(Gamma, Examples) {
    uct::GammaContext ctx(uct::parse("x"), d("1/4"), d("1/2"));
    EXPECT_EQ(uct::gamma(ctx, Dyadic(0), d("3/8"), 4), 1);
    EXPECT_EQ(uct::gamma(ctx, Dyadic(0), Dyadic(1), 4), 0);

    uct::GammaContext zero(uct::parse("0"), d("1/1024"), d("1/2"));
    for (std::size_t n = 1; n < 8; ++n) {
        EXPECT_EQ(uct::gamma(zero, Dyadic(0), d("1/4"), n), 0);
    }
}

TEST(Gamma, StickyAcrossLevels) {
    uct::GammaContext ctx(uct::parse("x"), d("1/4"), d("1/2"));
    ASSERT_EQ(uct::gamma(ctx, d("3/8"), Dyadic(0), 3), 1);
    for (std::size_t n = 3; n < 12; ++n) {
        EXPECT_EQ(uct::gamma(ctx, Dyadic(0), d("3/8"), n), 1);
    }
}

TEST(Oscillation, Examples) {
    auto id = uct::oscillation_upper(uct::parse("x"), DyadicInterval(Dyadic(0), d("1/4")), 32);
    EXPECT_GE(oracle::exact(id), oracle::Rational(1, 4));
    EXPECT_LE(oracle::exact(id), oracle::Rational(1, 4) + slack(28));

    EXPECT_EQ(uct::oscillation_upper(uct::parse("5"), DyadicInterval::unit(), 32), Dyadic(0));

    auto kink = uct::oscillation_upper(uct::parse("abs(x-1/2)"), DyadicInterval(d("1/4"), d("3/4")), 32);
    EXPECT_GE(oracle::exact(kink), oracle::Rational(1, 4));
    EXPECT_LE(oracle::exact(kink), oracle::Rational(1, 4) + slack(20));
}

TEST(Oscillation, UpperBoundsSampledOscillation) {
    std::mt19937_64 rng(3);
    for (const auto& s : oracle::corpus()) {
        auto f = uct::parse(s);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t level = rng() % 5;
            std::size_t k = rng() % (std::size_t{1} << level);
            DyadicInterval J(Dyadic(uct::BigInt(k), level), Dyadic(uct::BigInt(k + 1), level));
            auto bound = oracle::exact(uct::oscillation_upper(f, J, 32));
            oracle::Rational lo, hi;
            for (int i = 0; i <= 64; ++i) {
                auto v = oracle::eval(f, J.lo() + J.width() * Dyadic(uct::BigInt(i), 6));
                lo = i == 0 ? v : std::min(lo, v);
                hi = i == 0 ? v : std::max(hi, v);
            }
            EXPECT_GE(bound, hi - lo) << s;
        }
    }
}

TEST(LocalModulus, Examples) {
    EXPECT_EQ(uct::local_modulus(uct::parse("x"), DyadicInterval::point(d("1/2")), d("1/4")), d("1/16"));
    EXPECT_EQ(uct::local_modulus(uct::parse("3"), DyadicInterval(d("1/4"), d("1/2")), d("1/1024")), d("1/2"));
    auto four = uct::local_modulus(uct::parse("4*x"), DyadicInterval::point(Dyadic(0)), d("1/2"));
    EXPECT_LE(four, d("1/8"));
    EXPECT_LT(oracle::Rational(4) * oracle::exact(four), oracle::Rational(1, 2));
    EXPECT_THROW(uct::local_modulus(uct::parse("x"), DyadicInterval::unit(), d("1/2"), {}, 0), uct::DepthExhausted);
}
