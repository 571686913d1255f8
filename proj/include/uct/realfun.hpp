#pragma once

// Real-number access for expression functions: approximate comparison by
// refinement, the decision function gamma, oscillation bounds and local
// moduli of continuity.

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uct/dyadic.hpp"
#include "uct/enclosure.hpp"
#include "uct/errors.hpp"
#include "uct/expr.hpp"

namespace uct {

/// A real number presented by enclosures at any requested precision.
using RefinableReal = std::function<DyadicInterval(std::size_t precision)>;

enum class CompareTag { Low, High };

/// High certifies value > a, Low certifies value < b.
struct Comparison {
    CompareTag tag = CompareTag::Low;
    Enclosure certificate;
};

/// Splits on a < b: refines (doubling from start_precision, intersecting
/// successive enclosures) until the enclosure is narrower than b - a.
inline Comparison approx_compare(const RefinableReal& value, const Dyadic& a, const Dyadic& b,
                                 const EvalConfig& cfg = {}) {
    if (!(a < b)) {
        throw std::invalid_argument("approx_compare requires a < b");
    }
    const Dyadic gap = b - a;
    std::optional<DyadicInterval> acc;
    std::size_t p = cfg.start_precision;
    for (;;) {
        DyadicInterval e = value(p);
        if (acc) {
            if (!interval::intersects(*acc, e)) {
                throw std::logic_error("disjoint enclosures of one value: unsound evaluation");
            }
            acc = interval::intersect(*acc, e);
        } else {
            acc = e;
        }
        if (acc->width() < gap) {
            Comparison c;
            c.tag = a < acc->lo() ? CompareTag::High : CompareTag::Low;
            c.certificate = Enclosure{acc->lo(), acc->hi(), p};
            return c;
        }
        if (p >= cfg.precision_cap) {
            throw RefinementBudgetExceeded("enclosure width " + acc->width().to_string() +
                                           " not below " + gap.to_string() + " at " +
                                           std::to_string(p) + " bits");
        }
        p = std::min(p * 2, cfg.precision_cap);
    }
}

/// f evaluated at a single dyadic point, compared against a < b.
inline Comparison approx_compare(const Expr& f, const Dyadic& point, const Dyadic& a, const Dyadic& b,
                                 const EvalConfig& cfg = {}) {
    const auto at = DyadicInterval::point(point);
    return approx_compare([&](std::size_t p) { return eval_enclosure(f, at, p).interval(); }, a, b, cfg);
}

/// State for gamma(x, y, n) at fixed f, epsilon, delta. Point enclosures
/// and certified 1-answers are memoized; the caches are synchronized.
class GammaContext {
public:
    GammaContext(Expr f, Dyadic epsilon, Dyadic delta, EvalConfig cfg = {})
        : f_(std::move(f)), epsilon_(std::move(epsilon)), delta_(std::move(delta)), cfg_(cfg) {
        if (epsilon_.sign() <= 0 || delta_.sign() <= 0) {
            throw std::invalid_argument("gamma needs epsilon > 0 and delta > 0");
        }
    }

    const Expr& f() const noexcept { return f_; }
    const Dyadic& epsilon() const noexcept { return epsilon_; }
    const Dyadic& delta() const noexcept { return delta_; }
    const EvalConfig& config() const noexcept { return cfg_; }

    DyadicInterval point_value(const Dyadic& t, std::size_t precision) const {
        auto key = std::make_pair(t, precision);
        {
            std::lock_guard lock(mu_);
            if (auto it = points_.find(key); it != points_.end()) {
                return it->second;
            }
        }
        DyadicInterval v = eval_enclosure(f_, DyadicInterval::point(t), precision).interval();
        std::lock_guard lock(mu_);
        return points_.emplace(std::move(key), v).first->second;
    }

    struct CachedOne {
        std::size_t level;
        Comparison comparison;
    };

    std::optional<CachedOne> cached_one(const Dyadic& x, const Dyadic& y) const {
        std::lock_guard lock(mu_);
        if (auto it = ones_.find(key(x, y)); it != ones_.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    void record_one(const Dyadic& x, const Dyadic& y, std::size_t n, const Comparison& c) {
        std::lock_guard lock(mu_);
        auto [it, inserted] = ones_.try_emplace(key(x, y), CachedOne{n, c});
        if (!inserted && n < it->second.level) {
            it->second = CachedOne{n, c};
        }
    }

private:
    static std::pair<Dyadic, Dyadic> key(const Dyadic& x, const Dyadic& y) {
        return x < y ? std::make_pair(x, y) : std::make_pair(y, x);
    }

    Expr f_;
    Dyadic epsilon_;
    Dyadic delta_;
    EvalConfig cfg_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<Dyadic, std::size_t>, DyadicInterval> points_;
    std::map<std::pair<Dyadic, Dyadic>, CachedOne> ones_;
};

/// |f(x) - f(y)| as a refinable real over the context's point cache.
inline RefinableReal abs_difference(const GammaContext& ctx, const Dyadic& x, const Dyadic& y) {
    return [&ctx, x, y](std::size_t p) {
        return interval::abs(interval::sub(ctx.point_value(x, p), ctx.point_value(y, p), p));
    };
}

struct GammaResult {
    int value = 0;
    /// Present whenever the |f(x) - f(y)| comparison decided the answer.
    std::optional<Comparison> comparison;
};

/// 1 only if |x-y| < delta and |f(x)-f(y)| > epsilon (certified);
/// 0 only if |x-y| > delta - 2^-n or |f(x)-f(y)| < epsilon + 2^-n.
inline GammaResult gamma_detail(GammaContext& ctx, const Dyadic& x, const Dyadic& y, std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("gamma requires n >= 1");
    }
    if (auto hit = ctx.cached_one(x, y); hit && hit->level <= n) {
        return GammaResult{1, hit->comparison};
    }
    if ((x - y).abs() >= ctx.delta()) {
        return GammaResult{0, std::nullopt};
    }
    Comparison c = approx_compare(abs_difference(ctx, x, y), ctx.epsilon(),
                                  ctx.epsilon() + Dyadic::pow2_neg(n), ctx.config());
    if (c.tag == CompareTag::High) {
        ctx.record_one(x, y, n, c);
        return GammaResult{1, c};
    }
    return GammaResult{0, c};
}

inline int gamma(GammaContext& ctx, const Dyadic& x, const Dyadic& y, std::size_t n) {
    return gamma_detail(ctx, x, y, n).value;
}

/// Certified upper bound on sup f - inf f over J. Pieces of J that might
/// hold an extreme value are bisected up to split_depth times; pieces
/// dominated by point values found so far are dropped.
inline Dyadic oscillation_upper(const Expr& f, const DyadicInterval& J, std::size_t precision,
                                std::size_t split_depth = EvalConfig{}.osc_split_depth) {
    struct Piece {
        DyadicInterval dom;
        DyadicInterval enc;
    };
    auto evaluate = [&](const DyadicInterval& d) {
        return Piece{d, eval_enclosure(f, d, precision).interval()};
    };
    std::vector<Piece> active{evaluate(J)};
    std::optional<Dyadic> max_lower;  // a value f attains is at least this
    std::optional<Dyadic> min_upper;  // a value f attains is at most this
    std::optional<Dyadic> best;
    for (std::size_t level = 0;; ++level) {
        Dyadic hi = active.front().enc.hi();
        Dyadic lo = active.front().enc.lo();
        for (const auto& piece : active) {
            DyadicInterval m = eval_enclosure(f, DyadicInterval::point(piece.dom.mid()), precision).interval();
            max_lower = max_lower ? max(*max_lower, m.lo()) : m.lo();
            min_upper = min_upper ? min(*min_upper, m.hi()) : m.hi();
            hi = max(hi, piece.enc.hi());
            lo = min(lo, piece.enc.lo());
        }
        hi = max(hi, *max_lower);
        lo = min(lo, *min_upper);
        Dyadic bound = hi - lo;
        best = best ? min(*best, bound) : bound;
        if (level == split_depth || best->is_zero()) {
            break;
        }
        std::vector<Piece> next;
        for (const auto& piece : active) {
            if (piece.enc.hi() > *max_lower || piece.enc.lo() < *min_upper) {
                next.push_back(evaluate(piece.dom.left_half()));
                next.push_back(evaluate(piece.dom.right_half()));
            }
        }
        if (next.empty()) {
            break;
        }
        active = std::move(next);
    }
    return *best;
}

/// delta = 2^-k for the least k >= 1 whose ball around mid(xi), clipped
/// to [0,1], has certified oscillation below epsilon.
inline Dyadic local_modulus(const Expr& f, const DyadicInterval& xi, const Dyadic& epsilon,
                            const EvalConfig& cfg = {}, std::size_t max_k = 40) {
    if (epsilon.sign() <= 0) {
        throw std::invalid_argument("local_modulus requires epsilon > 0");
    }
    const Dyadic centre = xi.mid();
    for (std::size_t k = 1; k <= max_k; ++k) {
        Dyadic delta = Dyadic::pow2_neg(k);
        DyadicInterval ball(max(Dyadic(0), centre - delta), min(Dyadic(1), centre + delta));
        if (oscillation_upper(f, ball, cfg.start_precision, cfg.osc_split_depth) < epsilon) {
            return delta;
        }
    }
    throw DepthExhausted("no local modulus 2^-k with k <= " + std::to_string(max_k));
}

}  // namespace uct
