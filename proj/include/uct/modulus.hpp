#pragma once

// Moduli of uniform continuity: the bisection tree over J_u with per-node
// witness pairs, a longest path to the interval xi, the local modulus at
// xi, and a verifier that certifies the final delta unconditionally.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uct/binseq.hpp"
#include "uct/dyadic.hpp"
#include "uct/enclosure.hpp"
#include "uct/realfun.hpp"
#include "uct/trees.hpp"
#include "uct/witness.hpp"

namespace uct {

enum class Strategy { Faithful, Greedy };

inline const char* to_string(Strategy s) { return s == Strategy::Faithful ? "faithful" : "greedy"; }

struct ModulusConfig {
    Strategy strategy = Strategy::Greedy;
    std::size_t max_depth = 0;  // tree depth; 0 selects 12 (faithful) or 24 (greedy)
    std::size_t node_witness_depth = 6;
    std::size_t max_delta_exp = 24;
    std::size_t local_modulus_cap = 40;
    std::size_t verify_refine_depth = 6;
    std::size_t verify_resolution_exp = 0;  // 0: least m with 2^-m <= delta/2
    std::size_t counterexample_level_cap = 20;
    EvalConfig eval;

    std::size_t effective_max_depth() const {
        if (max_depth != 0) {
            return max_depth;
        }
        return strategy == Strategy::Faithful ? 12 : 24;
    }
};

// ---------------------------------------------------------------------------
// Verifier

enum class Verdict { Certified, Counterexample, Inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Counterexample: return "counterexample";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct VerifyResult {
    Verdict verdict = Verdict::Inconclusive;
    std::size_t resolution_exp = 0;
    Dyadic max_osc_upper;   // Certified
    Dyadic x;               // Counterexample
    Dyadic y;
    Enclosure certificate;  // encloses |f(x) - f(y)|, lower bound > epsilon
};

namespace detail {

inline Dyadic gap_between(const DyadicInterval& a, const DyadicInterval& b) {
    return max(Dyadic(0), max(b.lo() - a.hi(), a.lo() - b.hi()));
}

// Upper bound on |f(s) - f(t)| for s in the first piece, t in the second.
inline Dyadic pair_bound(const DyadicInterval& ea, const DyadicInterval& eb) {
    return max(eb.hi() - ea.lo(), ea.hi() - eb.lo());
}

class PairVerifier {
public:
    PairVerifier(const Expr& f, const Dyadic& epsilon, const Dyadic& delta, const ModulusConfig& cfg)
        : f_(f), epsilon_(epsilon), delta_(delta), cfg_(cfg) {}

    // Certified bound below epsilon for all point pairs closer than delta,
    // or nullopt when the refinement budget runs out.
    std::optional<Dyadic> refine(const DyadicInterval& a, const DyadicInterval& b, std::size_t depth,
                                 std::size_t precision) const {
        if (depth == 0) {
            return std::nullopt;
        }
        const bool same = a == b;
        const DyadicInterval as[2] = {a.left_half(), a.right_half()};
        const DyadicInterval bs[2] = {b.left_half(), b.right_half()};
        std::optional<Dyadic> acc;
        for (int i = 0; i < 2; ++i) {
            for (int j = same ? i : 0; j < 2; ++j) {
                if (gap_between(as[i], bs[j]) >= delta_) {
                    continue;
                }
                Dyadic bound = pair_bound(eval_enclosure(f_, as[i], precision).interval(),
                                          eval_enclosure(f_, bs[j], precision).interval());
                if (!(bound < epsilon_)) {
                    auto deeper = refine(as[i], bs[j], depth - 1,
                                         std::min(precision + 16, cfg_.eval.precision_cap));
                    if (!deeper) {
                        return std::nullopt;
                    }
                    bound = *deeper;
                }
                acc = acc ? max(*acc, bound) : bound;
            }
        }
        return acc ? acc : std::optional<Dyadic>(Dyadic(0));
    }

    // Minimal grid pair (x first, then y) at levels 1..max_level with
    // |x - y| < delta and certified |f(x) - f(y)| > epsilon.
    std::optional<VerifyResult> counterexample(std::size_t max_level) const {
        for (std::size_t level = 1; level <= max_level; ++level) {
            const std::size_t count = (std::size_t{1} << level) + 1;
            std::vector<std::optional<DyadicInterval>> values(count);
            auto value = [&](std::size_t k) -> const DyadicInterval& {
                if (!values[k]) {
                    values[k] = eval_enclosure(f_, DyadicInterval::point(Dyadic(BigInt(k), level)),
                                               cfg_.eval.start_precision)
                                    .interval();
                }
                return *values[k];
            };
            for (std::size_t i = 0; i < count; ++i) {
                Dyadic xi(BigInt(i), level);
                for (std::size_t j = i + 1; j < count; ++j) {
                    Dyadic yj(BigInt(j), level);
                    if (yj - xi >= delta_) {
                        break;
                    }
                    auto diff = interval::abs(interval::sub(value(i), value(j), cfg_.eval.start_precision));
                    if (!(epsilon_ < diff.hi())) {
                        continue;
                    }
                    if (auto cert = certify_above(xi, yj, diff)) {
                        VerifyResult r;
                        r.verdict = Verdict::Counterexample;
                        r.x = xi;
                        r.y = yj;
                        r.certificate = *cert;
                        return r;
                    }
                }
            }
        }
        return std::nullopt;
    }

private:
    std::optional<Enclosure> certify_above(const Dyadic& x, const Dyadic& y, DyadicInterval diff) const {
        std::size_t p = cfg_.eval.start_precision;
        for (;;) {
            if (epsilon_ < diff.lo()) {
                return Enclosure{diff.lo(), diff.hi(), p};
            }
            if (!(epsilon_ < diff.hi()) || p >= cfg_.eval.precision_cap) {
                return std::nullopt;
            }
            p = std::min(2 * p, cfg_.eval.precision_cap);
            diff = interval::abs(interval::sub(eval_enclosure(f_, DyadicInterval::point(x), p).interval(),
                                               eval_enclosure(f_, DyadicInterval::point(y), p).interval(), p));
        }
    }

    const Expr& f_;
    const Dyadic& epsilon_;
    const Dyadic& delta_;
    const ModulusConfig& cfg_;
};

}  // namespace detail

/// Least m with 2^-m <= delta / 2.
inline std::size_t default_resolution(const Dyadic& delta) {
    std::size_t m = 1;
    while (Dyadic::pow2_neg(m) > delta.half()) {
        ++m;
    }
    return m;
}

/// Checks "|x - y| < delta implies |f(x) - f(y)| < epsilon" on [0,1] by
/// covering [0,1] with intervals of width 2^-m and bounding every pair of
/// intervals closer than delta.
inline VerifyResult verify_modulus(const Expr& f, const Dyadic& epsilon, const Dyadic& delta,
                                   const ModulusConfig& cfg = {}) {
    if (epsilon.sign() <= 0) {
        throw std::invalid_argument("verify_modulus requires epsilon > 0");
    }
    if (delta.sign() <= 0 || delta > Dyadic::pow2_neg(1)) {
        throw std::invalid_argument("verify_modulus requires 0 < delta <= 1/2");
    }
    const std::size_t m = cfg.verify_resolution_exp != 0 ? cfg.verify_resolution_exp : default_resolution(delta);
    if (m > 30) {
        throw DepthExhausted("verification resolution 2^-" + std::to_string(m) + " is beyond the supported range");
    }
    detail::PairVerifier verifier(f, epsilon, delta, cfg);
    const std::size_t count = std::size_t{1} << m;
    const Dyadic width = Dyadic::pow2_neg(m);
    // pieces i and j = i + s are closer than delta iff (s - 1) * width < delta
    std::size_t span = 1;
    while (width * Dyadic(static_cast<long long>(span)) < delta) {
        ++span;
    }
    std::vector<DyadicInterval> pieces;
    std::vector<DyadicInterval> values;
    pieces.reserve(count);
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        pieces.emplace_back(Dyadic(BigInt(i), m), Dyadic(BigInt(i + 1), m));
        values.push_back(eval_enclosure(f, pieces.back(), cfg.eval.start_precision).interval());
    }

    VerifyResult result;
    result.resolution_exp = m;
    Dyadic worst(0);
    bool resolved = true;
    for (std::size_t i = 0; i < count && resolved; ++i) {
        for (std::size_t j = i; j < count && j <= i + span; ++j) {
            if (detail::gap_between(pieces[i], pieces[j]) >= delta) {
                break;
            }
            Dyadic bound = detail::pair_bound(values[i], values[j]);
            if (!(bound < epsilon)) {
                auto refined = verifier.refine(pieces[i], pieces[j], cfg.verify_refine_depth,
                                               std::min(cfg.eval.start_precision + 16, cfg.eval.precision_cap));
                if (!refined) {
                    resolved = false;
                    break;
                }
                bound = *refined;
            }
            worst = max(worst, bound);
        }
    }
    if (resolved) {
        result.verdict = Verdict::Certified;
        result.max_osc_upper = worst;
        return result;
    }
    if (auto cex = verifier.counterexample(std::min(m + 2, cfg.counterexample_level_cap))) {
        cex->resolution_exp = m;
        return *cex;
    }
    result.verdict = Verdict::Inconclusive;
    return result;
}

// ---------------------------------------------------------------------------
// Bisection tree

enum class Membership { In, Out };

struct NodeData {
    BinaryWord u;
    DyadicInterval J;
    WitnessReport pair;
    Membership membership = Membership::Out;
    std::optional<Comparison> certificate;  // absent for NoneUpTo pairs
    std::optional<Dyadic> osc_upper;        // filled by the greedy descent
};

/// Witness pair for f restricted to J_u at epsilon/2 and distance 2^-|u|.
inline WitnessReport node_witness(const Expr& f, const Dyadic& epsilon, const BinaryWord& u,
                                  const ModulusConfig& cfg = {}) {
    return find_witnesses(f, epsilon.half(), Dyadic::pow2_neg(u.size()), cfg.node_witness_depth, cfg.eval,
                          interval_of_word(u));
}

/// In iff |f(x_u) - f(y_u)| > epsilon/4, Out iff < epsilon/2 (whichever the
/// refinement certifies); nodes without a pair are Out.
inline std::pair<Membership, std::optional<Comparison>> membership(const Expr& f, const Dyadic& epsilon,
                                                                   const NodeData& node,
                                                                   const EvalConfig& cfg = {}) {
    if (!node.pair.is_found()) {
        return {Membership::Out, std::nullopt};
    }
    const WitnessFound& w = *node.pair.found;
    auto diff = [&](std::size_t p) {
        return interval::abs(interval::sub(eval_enclosure(f, DyadicInterval::point(w.x), p).interval(),
                                           eval_enclosure(f, DyadicInterval::point(w.y), p).interval(), p));
    };
    Comparison c = approx_compare(diff, epsilon.half().half(), epsilon.half(), cfg);
    return {c.tag == CompareTag::High ? Membership::In : Membership::Out, c};
}

inline NodeData make_node(const Expr& f, const Dyadic& epsilon, const BinaryWord& u, const ModulusConfig& cfg) {
    NodeData node;
    node.u = u;
    node.J = interval_of_word(u);
    node.pair = node_witness(f, epsilon, u, cfg);
    auto [m, c] = membership(f, epsilon, node, cfg.eval);
    node.membership = m;
    node.certificate = std::move(c);
    return node;
}

struct ModulusCertificate {
    Dyadic epsilon;
    std::size_t delta_exp = 0;
    DyadicInterval xi_interval;
    Strategy strategy = Strategy::Greedy;
    std::size_t depth_used = 0;
    struct Verification {
        std::size_t resolution_exp = 0;
        Dyadic max_osc_upper;
        bool certified = false;
    } verification;

    // diagnostics
    BinaryWord path;
    Dyadic local_delta;
    std::size_t first_candidate_exp = 0;
    std::vector<std::size_t> tree_level_sizes;  // members per level

    Dyadic delta() const { return Dyadic::pow2_neg(delta_exp); }
};

namespace detail {

// Path word ending at xi; level sizes count tree members.
inline BinaryWord faithful_path(const Expr& f, const Dyadic& epsilon, const ModulusConfig& cfg,
                                std::vector<std::size_t>& level_sizes) {
    const std::size_t depth = cfg.effective_max_depth();
    std::set<BinaryWord> members{BinaryWord{}};
    std::vector<BinaryWord> frontier{BinaryWord{}};
    level_sizes = {1};
    std::size_t height = 0;
    for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
        std::vector<BinaryWord> next;
        for (const auto& u : frontier) {
            for (std::uint8_t b = 0; b < 2; ++b) {
                BinaryWord c = u.extended(b);
                if (make_node(f, epsilon, c, cfg).membership == Membership::In) {
                    members.insert(c);
                    next.push_back(c);
                }
            }
        }
        level_sizes.push_back(next.size());
        if (!next.empty()) {
            height = d;
        }
        frontier = std::move(next);
    }
    const std::size_t explored = std::min(height + 1, depth);
    return longest_path(DecidableTree::from_words(std::move(members)), explored).word;
}

inline BinaryWord greedy_path(const Expr& f, const Dyadic& epsilon, const ModulusConfig& cfg,
                              std::vector<std::size_t>& level_sizes) {
    const std::size_t depth = cfg.effective_max_depth();
    BinaryWord u;
    level_sizes = {1};
    while (u.size() < depth) {
        std::optional<NodeData> pick;
        std::size_t in_children = 0;
        for (std::uint8_t b = 0; b < 2; ++b) {
            NodeData node = make_node(f, epsilon, u.extended(b), cfg);
            if (node.membership != Membership::In) {
                continue;
            }
            ++in_children;
            node.osc_upper = oscillation_upper(f, node.J, cfg.eval.start_precision, cfg.eval.osc_split_depth);
            if (!pick || *pick->osc_upper < *node.osc_upper) {
                pick = std::move(node);
            }
        }
        level_sizes.push_back(in_children);
        if (!pick) {
            return u.extended(0);
        }
        u = pick->u;
    }
    return u;
}

}  // namespace detail

/// Builds the bisection tree, takes xi at the end of a longest path,
/// derives a candidate 2^-n from the local modulus at xi and halves it
/// until verify_modulus certifies it.
inline ModulusCertificate extract_modulus(const Expr& f, const Dyadic& epsilon, const ModulusConfig& cfg = {}) {
    if (epsilon.sign() <= 0) {
        throw std::invalid_argument("extract_modulus requires epsilon > 0");
    }
    ModulusCertificate cert;
    cert.epsilon = epsilon;
    cert.strategy = cfg.strategy;
    cert.path = cfg.strategy == Strategy::Faithful ? detail::faithful_path(f, epsilon, cfg, cert.tree_level_sizes)
                                                   : detail::greedy_path(f, epsilon, cfg, cert.tree_level_sizes);
    cert.xi_interval = interval_of_word(cert.path);
    cert.depth_used = cert.path.size();
    cert.local_delta = local_modulus(f, cert.xi_interval, epsilon.half().half(), cfg.eval, cfg.local_modulus_cap);

    const Dyadic target = min(cert.local_delta, epsilon);
    std::size_t n = 1;
    while (Dyadic::pow2_neg(n) > target) {
        ++n;
    }
    cert.first_candidate_exp = n;
    for (; n <= cfg.max_delta_exp; ++n) {
        ModulusConfig vcfg = cfg;
        vcfg.verify_resolution_exp = 0;
        VerifyResult v = verify_modulus(f, epsilon, Dyadic::pow2_neg(n), vcfg);
        if (v.verdict == Verdict::Certified) {
            cert.delta_exp = n;
            cert.verification = {v.resolution_exp, v.max_osc_upper, true};
            return cert;
        }
    }
    throw DepthExhausted("no certified modulus 2^-n with n <= " + std::to_string(cfg.max_delta_exp));
}

}  // namespace uct
