#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "uct/enclosure.hpp"

using uct::Dyadic;
using uct::DyadicInterval;

namespace {

Dyadic d(const char* s) { return Dyadic::parse(s); }

oracle::Rational slack(std::size_t k) { return oracle::Rational(1) / oracle::pow2(k); }

}  // namespace

TEST(Enclosure, Identity) {
    auto e = uct::eval_enclosure(uct::parse("x"), DyadicInterval(Dyadic(0), d("1/2")), 17);
    EXPECT_EQ(e.lo, Dyadic(0));
    EXPECT_EQ(e.hi, d("1/2"));
}

TEST(Enclosure, Square) {
    auto e = uct::eval_enclosure(uct::parse("x*x"), DyadicInterval::unit(), 32);
    EXPECT_LE(e.lo, Dyadic(0));
    EXPECT_GE(e.hi, Dyadic(1));
    EXPECT_LE(oracle::exact(e.width()), 1 + slack(28));
}

TEST(Enclosure, Reciprocal) {
    auto e = uct::eval_enclosure(uct::parse("1/(x+1)"), DyadicInterval::unit(), 32);
    EXPECT_LE(e.lo, d("1/2"));
    EXPECT_GE(e.hi, Dyadic(1));
    EXPECT_LE(oracle::exact(e.width()), oracle::Rational(1, 2) + slack(28));
    EXPECT_THROW(uct::eval_enclosure(uct::parse("1/x"), DyadicInterval::unit(), 32),
                 uct::DivisionByPossibleZero);
}

TEST(Enclosure, ContainsExactValuesOnCorpus) {
    std::mt19937_64 rng(5);
    for (const auto& s : oracle::corpus()) {
        auto f = uct::parse(s);
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t level = 1 + rng() % 8;
            std::size_t k = rng() % (std::size_t{1} << level);
            DyadicInterval J(Dyadic(uct::BigInt(k), level), Dyadic(uct::BigInt(k + 1), level));
            std::size_t p = 4 + rng() % 40;
            auto e = uct::eval_enclosure(f, J, p);
            for (int i = 0; i <= 4; ++i) {
                Dyadic t = J.lo() + J.width() * Dyadic(uct::BigInt(i), 2);
                auto v = oracle::eval(f, t);
                EXPECT_LE(oracle::exact(e.lo), v) << s;
                EXPECT_GE(oracle::exact(e.hi), v) << s;
            }
        }
    }
}

TEST(Enclosure, NestedInPrecision) {
    auto f = uct::parse("(1/3)*x*x - x/5");
    auto J = DyadicInterval::point(d("3/8"));
    auto prev = uct::eval_enclosure(f, J, 8).interval();
    for (std::size_t p = 9; p < 80; ++p) {
        auto cur = uct::eval_enclosure(f, J, p).interval();
        EXPECT_TRUE(prev.contains(cur)) << p;
        prev = cur;
    }
}

#if UCT_ENABLE_TRANSCENDENTALS
TEST(Enclosure, Transcendentals) {
    struct Case {
        const char* f;
        double (*ref)(double);
    } cases[] = {{"sin(x)", [](double t) { return std::sin(t); }},
                 {"cos(x)", [](double t) { return std::cos(t); }},
                 {"exp(x)", [](double t) { return std::exp(t); }},
                 {"sin(2*x - 1)", [](double t) { return std::sin(2 * t - 1); }}};
    for (const auto& c : cases) {
        auto f = uct::parse(c.f);
        for (int k = 0; k <= 16; ++k) {
            Dyadic t(uct::BigInt(k), 4);
            auto e = uct::eval_enclosure(f, DyadicInterval::point(t), 60);
            double ref = c.ref(k / 16.0);
            EXPECT_LE(oracle::approx(e.lo), ref + 1e-12) << c.f << " " << k;
            EXPECT_GE(oracle::approx(e.hi), ref - 1e-12) << c.f << " " << k;
            EXPECT_LT(oracle::approx(e.width()), 1e-15);
        }
        auto range = uct::eval_enclosure(f, DyadicInterval::unit(), 40);
        for (int k = 0; k <= 64; ++k) {
            double ref = c.ref(k / 64.0);
            EXPECT_LE(oracle::approx(range.lo), ref + 1e-12);
            EXPECT_GE(oracle::approx(range.hi), ref - 1e-12);
        }
    }
    EXPECT_THROW(uct::eval_enclosure(uct::parse("exp(3*x)"), DyadicInterval::unit(), 32), uct::DomainError);
}
#endif
