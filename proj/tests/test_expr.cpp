#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "uct/expr.hpp"

using uct::Op;

TEST(Parse, Examples) {
    auto sq = uct::parse("x*x");
    EXPECT_EQ(sq.op(), Op::Mul);
    EXPECT_EQ(sq.lhs().op(), Op::Var);
    EXPECT_EQ(sq.rhs().op(), Op::Var);

    auto a = uct::parse("abs(x - 1/2)");
    EXPECT_EQ(a.op(), Op::Abs);
    EXPECT_EQ(a.lhs().op(), Op::Sub);

    EXPECT_EQ(uct::parse("min(x, 1-x)").op(), Op::Min);
}

TEST(Parse, Precedence) {
    auto f = uct::parse("1 + 2*x - x/4");
    EXPECT_EQ(oracle::eval(f, uct::Dyadic(1)), oracle::Rational(11, 4));
    EXPECT_EQ(oracle::eval(uct::parse("-x*3"), uct::Dyadic(2)), -6);
    EXPECT_EQ(oracle::eval(uct::parse("2/3"), uct::Dyadic(0)), oracle::Rational(2, 3));
    EXPECT_EQ(oracle::eval(uct::parse("0.25*x"), uct::Dyadic(4)), 1);
    EXPECT_EQ(oracle::eval(uct::parse("max(x, 1/2)"), uct::Dyadic(0)), oracle::Rational(1, 2));
}

TEST(Parse, Errors) {
    try {
        uct::parse("x +");
        FAIL();
    } catch (const uct::SyntaxError& e) {
        EXPECT_EQ(e.position(), 3u);
    }
    try {
        uct::parse("foo(x)");
        FAIL();
    } catch (const uct::UnknownFunction& e) {
        EXPECT_EQ(e.position(), 0u);
    }
    EXPECT_THROW(uct::parse("(x"), uct::SyntaxError);
    EXPECT_THROW(uct::parse("min(x)"), uct::SyntaxError);
    EXPECT_THROW(uct::parse("x x"), uct::SyntaxError);
    EXPECT_THROW(uct::parse("1/0"), uct::SyntaxError);
}

TEST(Expr, RenderParsesBack) {
    for (const auto& s : oracle::corpus()) {
        auto f = uct::parse(s);
        auto g = uct::parse(f.to_string());
        for (int k = 0; k <= 8; ++k) {
            uct::Dyadic t(uct::BigInt(k), 3);
            EXPECT_EQ(oracle::eval(f, t), oracle::eval(g, t)) << s;
        }
    }
    EXPECT_TRUE(uct::parse("sin(x)").uses_transcendentals());
    EXPECT_FALSE(uct::parse("x*x").uses_transcendentals());
}
