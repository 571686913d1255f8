#pragma once

// Witness extraction: the sticky level bits lambda_n, the grafted tree
// whose unique long branch codes the first violating grid pair, and
// decoding that pair back from a longest path.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "uct/binseq.hpp"
#include "uct/dyadic.hpp"
#include "uct/realfun.hpp"
#include "uct/trees.hpp"

namespace uct {

/// Words of one length in the tree: either all 2^length of them or an
/// explicit list.
struct LevelSet {
    std::size_t length = 0;
    bool full = false;
    std::vector<BinaryWord> words;

    std::size_t size() const { return full ? (std::size_t{1} << length) : words.size(); }
};

struct FlipData {
    std::size_t level = 0;
    BinaryWord x_word;
    BinaryWord y_word;
    BinaryWord branch;  // x_word ⊕ y_word
    Dyadic x;
    Dyadic y;
    Comparison certificate;
};

/// Level-by-level construction state. lambda[n-1] holds lambda_n.
struct LemmaTreeState {
    DyadicInterval domain = DyadicInterval::unit();
    std::vector<int> lambda;
    std::vector<LevelSet> levels{LevelSet{0, true, {}}};
    std::optional<FlipData> flip;

    std::size_t built() const { return lambda.size(); }
    std::size_t height() const { return levels.size() - 1; }

    bool contains(const BinaryWord& w) const {
        if (w.size() >= levels.size()) {
            return false;
        }
        const LevelSet& level = levels[w.size()];
        if (level.full) {
            return true;
        }
        for (const auto& m : level.words) {
            if (m == w) {
                return true;
            }
        }
        return false;
    }

    std::vector<std::size_t> level_sizes() const {
        std::vector<std::size_t> sizes;
        for (const auto& l : levels) {
            sizes.push_back(l.size());
        }
        return sizes;
    }

    DecidableTree tree() const {
        auto snapshot = std::make_shared<const LemmaTreeState>(*this);
        return DecidableTree([snapshot](const BinaryWord& w) { return snapshot->contains(w); }, height(),
                             level_sizes());
    }
};

/// Grid point coded by a word: domain.lo + g(w) * width(domain).
inline Dyadic grid_point(const DyadicInterval& domain, const BinaryWord& w) {
    return domain.lo() + encode_g(w) * domain.width();
}

struct LambdaScan {
    int value = 0;
    std::size_t x_index = 0;  // valid when value == 1
    std::size_t y_index = 0;
    std::optional<Comparison> certificate;
};

/// Scans pairs x < y of the level-n grid (x first, then y, ascending) for
/// a gamma = 1 answer; the first hit is the minimal pair.
inline LambdaScan lambda_scan(GammaContext& ctx, std::size_t n,
                              const DyadicInterval& domain = DyadicInterval::unit()) {
    if (n < 1 || n >= 63) {
        throw std::invalid_argument("lambda level out of range");
    }
    const std::size_t count = std::size_t{1} << n;
    const Dyadic step = domain.width() * Dyadic::pow2_neg(n);
    std::vector<Dyadic> points;
    points.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        points.push_back(domain.lo() + step * Dyadic(static_cast<long long>(k)));
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            if (points[j] - points[i] >= ctx.delta()) {
                break;  // gamma is 0 by the distance clause for the rest of the row
            }
            GammaResult g = gamma_detail(ctx, points[i], points[j], n);
            if (g.value == 1) {
                return LambdaScan{1, i, j, g.comparison};
            }
        }
    }
    return LambdaScan{};
}

inline int lambda_at(GammaContext& ctx, std::size_t n, const DyadicInterval& domain = DyadicInterval::unit()) {
    return lambda_scan(ctx, n, domain).value;
}

/// Adds stage n: the full level while lambda stays 0; on the flip, the
/// downward closure of x ⊕ y for the minimal pair; afterwards the unique
/// maximal branch extended by 0.
inline LemmaTreeState build_level(LemmaTreeState state, GammaContext& ctx, std::size_t n) {
    if (state.built() + 1 != n) {
        throw std::invalid_argument("build_level: levels must be built in order");
    }
    if (state.flip) {
        state.lambda.push_back(1);
        const BinaryWord& top = state.levels.back().words.front();
        state.levels.push_back(LevelSet{top.size() + 1, false, {top.extended(0)}});
        return state;
    }
    LambdaScan scan = lambda_scan(ctx, n, state.domain);
    state.lambda.push_back(scan.value);
    state.levels.push_back(LevelSet{n, true, {}});
    if (scan.value == 0) {
        return state;
    }
    FlipData flip;
    flip.level = n;
    flip.x_word = decode_g(Dyadic(BigInt(scan.x_index), n), n);
    flip.y_word = decode_g(Dyadic(BigInt(scan.y_index), n), n);
    flip.branch = sum_words(flip.x_word, flip.y_word);
    flip.x = grid_point(state.domain, flip.x_word);
    flip.y = grid_point(state.domain, flip.y_word);
    flip.certificate = *scan.certificate;
    for (std::size_t len = n + 1; len <= 2 * n; ++len) {
        state.levels.push_back(LevelSet{len, false, {flip.branch.prefix(len)}});
    }
    state.flip = std::move(flip);
    return state;
}

struct WitnessFound {
    Dyadic x;
    Dyadic y;
    std::size_t flip_level = 0;
    Enclosure certificate;  // encloses |f(x) - f(y)|, lower bound > epsilon
    BinaryWord path;        // longest path of the assembled tree
};

struct WitnessTrace {
    std::vector<int> lambda;
    std::vector<std::size_t> level_sizes;
};

/// Either a certified violating pair or the statement that no grid pair at
/// levels <= depth violates the margined condition.
struct WitnessReport {
    std::optional<WitnessFound> found;
    std::size_t depth = 0;
    WitnessTrace trace;

    bool is_found() const { return found.has_value(); }
};

/// Builds stages 1..max_depth over `domain`, takes a longest path of the
/// resulting tree and decodes x = g(proj0 path), y = g(proj1 path).
inline WitnessReport find_witnesses(const Expr& f, const Dyadic& epsilon, const Dyadic& delta,
                                    std::size_t max_depth, const EvalConfig& cfg = {},
                                    const DyadicInterval& domain = DyadicInterval::unit()) {
    GammaContext ctx(f, epsilon, delta, cfg);
    LemmaTreeState state;
    state.domain = domain;
    for (std::size_t n = 1; n <= max_depth; ++n) {
        state = build_level(std::move(state), ctx, n);
    }
    WitnessReport report;
    report.depth = max_depth;
    report.trace = WitnessTrace{state.lambda, state.level_sizes()};
    if (!state.flip) {
        return report;
    }
    PathResult path = longest_path(state.tree(), state.height());
    Dyadic x = grid_point(domain, proj0(path.word));
    Dyadic y = grid_point(domain, proj1(path.word));
    if (x != state.flip->x || y != state.flip->y) {
        throw std::logic_error("decoded path disagrees with the grafted pair");
    }
    report.found = WitnessFound{x, y, state.flip->level, state.flip->certificate.certificate, path.word};
    return report;
}

}  // namespace uct
