#pragma once

// Certified range enclosures of expressions over dyadic intervals, using
// interval arithmetic rounded outward to the 2^-p grid after every step.

#include <cstddef>
#include <string>
#include <vector>

#include "uct/dyadic.hpp"
#include "uct/errors.hpp"
#include "uct/expr.hpp"

#ifndef UCT_ENABLE_TRANSCENDENTALS
#define UCT_ENABLE_TRANSCENDENTALS 1
#endif

namespace uct {

/// Knobs shared by everything that refines enclosures.
struct EvalConfig {
    std::size_t start_precision = 32;
    std::size_t precision_cap = 4096;
    std::size_t osc_split_depth = 8;
};

/// [lo, hi] containing f(t) for every t of the queried interval.
struct Enclosure {
    Dyadic lo;
    Dyadic hi;
    std::size_t precision = 0;

    DyadicInterval interval() const { return DyadicInterval(lo, hi); }
    Dyadic width() const { return hi - lo; }
};

namespace interval {

using I = DyadicInterval;

inline I round(const I& a, std::size_t p) { return I(a.lo().floor_to(p), a.hi().ceil_to(p)); }

inline I add(const I& a, const I& b, std::size_t p) { return round(I(a.lo() + b.lo(), a.hi() + b.hi()), p); }
inline I sub(const I& a, const I& b, std::size_t p) { return round(I(a.lo() - b.hi(), a.hi() - b.lo()), p); }
inline I neg(const I& a) { return I(-a.hi(), -a.lo()); }

inline I mul(const I& a, const I& b, std::size_t p) {
    Dyadic c[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
    Dyadic lo = c[0], hi = c[0];
    for (const auto& v : c) {
        lo = uct::min(lo, v);
        hi = uct::max(hi, v);
    }
    return round(I(lo, hi), p);
}

inline I div(const I& a, const I& b, std::size_t p) {
    if (b.lo().sign() <= 0 && b.hi().sign() >= 0) {
        throw DivisionByPossibleZero("denominator enclosure " + b.to_string() + " contains 0");
    }
    const Dyadic* num[2] = {&a.lo(), &a.hi()};
    const Dyadic* den[2] = {&b.lo(), &b.hi()};
    Dyadic lo = divide_rounded(*num[0], *den[0], p, false);
    Dyadic hi = divide_rounded(*num[0], *den[0], p, true);
    for (auto* n : num) {
        for (auto* d : den) {
            lo = uct::min(lo, divide_rounded(*n, *d, p, false));
            hi = uct::max(hi, divide_rounded(*n, *d, p, true));
        }
    }
    return I(lo, hi);
}

inline I abs(const I& a) {
    if (a.lo().sign() >= 0) {
        return a;
    }
    if (a.hi().sign() <= 0) {
        return neg(a);
    }
    return I(Dyadic(0), uct::max(-a.lo(), a.hi()));
}

inline I min(const I& a, const I& b) { return I(uct::min(a.lo(), b.lo()), uct::min(a.hi(), b.hi())); }
inline I max(const I& a, const I& b) { return I(uct::max(a.lo(), b.lo()), uct::max(a.hi(), b.hi())); }

inline I hull(const I& a, const I& b) { return I(uct::min(a.lo(), b.lo()), uct::max(a.hi(), b.hi())); }

inline bool intersects(const I& a, const I& b) { return !(a.hi() < b.lo() || b.hi() < a.lo()); }

inline I intersect(const I& a, const I& b) {
    return I(uct::max(a.lo(), b.lo()), uct::min(a.hi(), b.hi()));
}

inline I constant(const BigInt& num, const BigInt& den, std::size_t p) {
    if (detail::is_power_of_two(den)) {
        return round(I::point(Dyadic(num, boost::multiprecision::msb(den))), p);
    }
    return I(round_quotient(num, den, p, false), round_quotient(num, den, p, true));
}

}  // namespace interval

namespace detail {

// Lower bound of pi/2: floor(pi/2 * 2^30) / 2^30.
inline Dyadic half_pi_lower() { return Dyadic(BigInt(1686629713), 30); }

inline void require_small_argument(const DyadicInterval& a, const char* fn) {
    if (a.lo() < Dyadic(-2) || a.hi() > Dyadic(2)) {
        throw DomainError(std::string(fn) + " argument " + a.to_string() + " outside supported range [-2, 2]");
    }
}

// Enclosures of t^k / k! for k = 0..n at working precision w, plus the
// Lagrange bound 2^(n+1)/(n+1)! (derivatives bounded by 1 on |t| <= 2).
struct Taylor {
    std::vector<DyadicInterval> terms;
    Dyadic remainder;
};

inline Taylor taylor_terms(const Dyadic& t, std::size_t w) {
    // smallest n with 2^(n+1)/(n+1)! < 2^-(w+4)
    std::size_t n = 1;
    BigInt fact = 2;  // (n+1)!
    while (!((BigInt(1) << (n + 1 + w + 4)) < fact)) {
        ++n;
        fact *= (n + 1);
    }
    Taylor out;
    out.terms.reserve(n + 1);
    DyadicInterval term = DyadicInterval::point(Dyadic(1));
    out.terms.push_back(term);
    for (std::size_t k = 1; k <= n; ++k) {
        DyadicInterval scaled = interval::mul(term, DyadicInterval::point(t), w);
        term = interval::div(scaled, DyadicInterval::point(Dyadic(static_cast<long long>(k))), w);
        out.terms.push_back(term);
    }
    out.remainder = round_quotient(BigInt(1) << (n + 1), fact, w, true);
    return out;
}

// Point enclosures of exp, sin, cos at dyadic t with |t| <= 2.
inline DyadicInterval exp_point(const Dyadic& t, std::size_t p) {
    const std::size_t w = p + 20;
    Taylor tay = taylor_terms(t, w);
    DyadicInterval sum = DyadicInterval::point(Dyadic(0));
    for (const auto& term : tay.terms) {
        sum = interval::add(sum, term, w);
    }
    Dyadic r = tay.remainder * Dyadic(8);  // e^|xi| < 8
    return interval::round(DyadicInterval(sum.lo() - r, sum.hi() + r), p);
}

inline DyadicInterval trig_point(const Dyadic& t, std::size_t p, bool sine) {
    const std::size_t w = p + 20;
    Taylor tay = taylor_terms(t, w);
    DyadicInterval sum = DyadicInterval::point(Dyadic(0));
    for (std::size_t k = sine ? 1 : 0; k < tay.terms.size(); k += 2) {
        bool negative = ((sine ? k - 1 : k) / 2) % 2 == 1;
        sum = negative ? interval::sub(sum, tay.terms[k], w) : interval::add(sum, tay.terms[k], w);
    }
    const Dyadic& r = tay.remainder;
    DyadicInterval widened(sum.lo() - r, sum.hi() + r);
    // |sin|, |cos| <= 1
    widened = DyadicInterval(max(widened.lo(), Dyadic(-1)), min(widened.hi(), Dyadic(1)));
    return interval::round(widened, p);
}

inline DyadicInterval exp_range(const DyadicInterval& a, std::size_t p) {
    require_small_argument(a, "exp");
    return DyadicInterval(exp_point(a.lo(), p).lo(), exp_point(a.hi(), p).hi());
}

// sin is increasing on [-pi/2, pi/2] and decreasing on the rest of [-2, 2].
inline DyadicInterval sin_range(const DyadicInterval& a, std::size_t p) {
    require_small_argument(a, "sin");
    DyadicInterval r = interval::hull(trig_point(a.lo(), p, true), trig_point(a.hi(), p, true));
    Dyadic lo = r.lo(), hi = r.hi();
    const Dyadic hp = half_pi_lower();
    if (a.hi() >= hp) {
        hi = Dyadic(1);
    }
    if (a.lo() <= -hp) {
        lo = Dyadic(-1);
    }
    return DyadicInterval(lo, hi);
}

// cos is even and decreasing in |t| on [0, 2].
inline DyadicInterval cos_range(const DyadicInterval& a, std::size_t p) {
    require_small_argument(a, "cos");
    Dyadic far = max(a.lo().abs(), a.hi().abs());
    Dyadic near = (a.lo().sign() <= 0 && a.hi().sign() >= 0) ? Dyadic(0) : min(a.lo().abs(), a.hi().abs());
    return DyadicInterval(trig_point(far, p, false).lo(), trig_point(near, p, false).hi());
}

inline DyadicInterval eval(const ExprNode& n, const DyadicInterval& x, std::size_t p) {
    using namespace interval;
    switch (n.op) {
        case Op::Var: return round(x, p);
        case Op::Const: return constant(n.num, n.den, p);
        case Op::Neg: return neg(eval(*n.lhs, x, p));
        case Op::Abs: return abs(eval(*n.lhs, x, p));
        case Op::Add: return add(eval(*n.lhs, x, p), eval(*n.rhs, x, p), p);
        case Op::Sub: return sub(eval(*n.lhs, x, p), eval(*n.rhs, x, p), p);
        case Op::Mul: return mul(eval(*n.lhs, x, p), eval(*n.rhs, x, p), p);
        case Op::Div: return div(eval(*n.lhs, x, p), eval(*n.rhs, x, p), p);
        case Op::Min: return min(eval(*n.lhs, x, p), eval(*n.rhs, x, p));
        case Op::Max: return max(eval(*n.lhs, x, p), eval(*n.rhs, x, p));
        case Op::Sin:
        case Op::Cos:
        case Op::Exp: {
#if UCT_ENABLE_TRANSCENDENTALS
            DyadicInterval a = eval(*n.lhs, x, p);
            if (n.op == Op::Exp) {
                return exp_range(a, p);
            }
            return n.op == Op::Sin ? sin_range(a, p) : cos_range(a, p);
#else
            throw DomainError("transcendental functions are disabled in this build");
#endif
        }
    }
    throw std::logic_error("unhandled expression node");
}

}  // namespace detail

/// Sound enclosure of { f(t) : t in J } at working precision p.
inline Enclosure eval_enclosure(const Expr& f, const DyadicInterval& J, std::size_t precision) {
    DyadicInterval r = detail::eval(f.root(), J, precision);
    return Enclosure{r.lo(), r.hi(), precision};
}

}  // namespace uct
