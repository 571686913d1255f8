#pragma once

// Decidable binary trees and bounded-depth path search: leftmost-branch
// WKL search, the longest-path reduction tree, and longest paths.

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uct/binseq.hpp"
#include "uct/errors.hpp"

namespace uct {

inline constexpr std::size_t kDefaultTreeDepth = 16;

/// A binary tree given by a total membership test. Prefix closure is the
/// caller's contract within the explored depth; explicit level sizes, when
/// known, let height queries skip enumeration.
class DecidableTree {
public:
    using Oracle = std::function<bool(const BinaryWord&)>;

    DecidableTree(Oracle member, std::size_t explored_depth,
                  std::optional<std::vector<std::size_t>> level_sizes = std::nullopt)
        : member_(std::make_shared<Oracle>(std::move(member))),
          explored_depth_(explored_depth),
          level_sizes_(std::move(level_sizes)) {}

    /// Tree with exactly the given words. The set must be prefix-closed.
    static DecidableTree from_words(std::set<BinaryWord> words) {
        std::size_t depth = 0;
        for (const auto& w : words) {
            depth = std::max(depth, w.size());
        }
        std::vector<std::size_t> sizes(words.empty() ? 0 : depth + 1, 0);
        for (const auto& w : words) {
            ++sizes[w.size()];
        }
        auto shared = std::make_shared<const std::set<BinaryWord>>(std::move(words));
        return DecidableTree([shared](const BinaryWord& w) { return shared->count(w) > 0; }, depth,
                             std::move(sizes));
    }

    /// All words of length <= depth.
    static DecidableTree full(std::size_t depth) {
        std::vector<std::size_t> sizes;
        for (std::size_t d = 0; d <= depth && d < 63; ++d) {
            sizes.push_back(std::size_t{1} << d);
        }
        if (depth >= 63) {
            return DecidableTree([depth](const BinaryWord& w) { return w.size() <= depth; }, depth);
        }
        return DecidableTree([depth](const BinaryWord& w) { return w.size() <= depth; }, depth,
                             std::move(sizes));
    }

    bool contains(const BinaryWord& w) const { return (*member_)(w); }
    std::size_t explored_depth() const noexcept { return explored_depth_; }
    const std::optional<std::vector<std::size_t>>& level_sizes() const noexcept { return level_sizes_; }

private:
    std::shared_ptr<const Oracle> member_;
    std::size_t explored_depth_;
    std::optional<std::vector<std::size_t>> level_sizes_;
};

/// ht(T) within a bounded depth.
struct TreeHeight {
    std::size_t value = 0;
    bool unbounded = false;  // level max_depth is nonempty
    bool empty = false;      // () is not a member

    friend bool operator==(const TreeHeight&, const TreeHeight&) = default;
};

/// A branch found by bounded search. Every prefix of `word` up to
/// `member_length` is a member of the searched tree.
struct PathResult {
    BinaryWord word;
    bool full_depth = false;
    std::size_t member_length = 0;  // meaningful when !full_depth ("longest(len)")

    friend bool operator==(const PathResult&, const PathResult&) = default;
};

namespace detail {

// Depth of the deepest member reachable through members, capped.
inline std::size_t deepest_member(const DecidableTree& tree, const BinaryWord& u, std::size_t cap) {
    if (u.size() == cap) {
        return cap;
    }
    std::size_t best = u.size();
    for (std::uint8_t b = 0; b < 2; ++b) {
        BinaryWord c = u.extended(b);
        if (tree.contains(c)) {
            best = std::max(best, deepest_member(tree, c, cap));
            if (best == cap) {
                break;
            }
        }
    }
    return best;
}

// Leftmost word of maximal length through members below `current`.
inline void leftmost_deepest(const DecidableTree& tree, BinaryWord& current, std::size_t cap,
                             BinaryWord& best) {
    if (current.size() > best.size()) {
        best = current;
    }
    if (current.size() == cap) {
        return;
    }
    for (std::uint8_t b = 0; b < 2; ++b) {
        BinaryWord c = current.extended(b);
        if (tree.contains(c)) {
            leftmost_deepest(tree, c, cap, best);
            if (best.size() == cap) {
                return;
            }
        }
    }
}

}  // namespace detail

inline TreeHeight tree_height(const DecidableTree& tree, std::size_t max_depth) {
    if (!tree.contains(BinaryWord{})) {
        return TreeHeight{0, false, true};
    }
    std::size_t h = 0;
    if (const auto& sizes = tree.level_sizes()) {
        for (std::size_t d = 0; d <= max_depth && d < sizes->size(); ++d) {
            if ((*sizes)[d] > 0) {
                h = d;
            }
        }
    } else {
        h = detail::deepest_member(tree, BinaryWord{}, max_depth);
    }
    return TreeHeight{h, h == max_depth, false};
}

/// Leftmost branch of greatest length <= depth whose prefixes are all
/// members; depth-first search with backtracking.
inline PathResult wkl_path(const DecidableTree& tree, std::size_t depth) {
    if (!tree.contains(BinaryWord{})) {
        throw EmptyTree("the root () is not a member");
    }
    BinaryWord current;
    BinaryWord best;
    detail::leftmost_deepest(tree, current, depth, best);
    PathResult r;
    r.full_depth = best.size() == depth;
    r.member_length = best.size();
    r.word = std::move(best);
    return r;
}

/// { a : a in T, or a extends a member b of T with |b| = ht(T) }. The
/// height is computed on first use against max_depth.
inline DecidableTree lpp_reduction(const DecidableTree& tree, std::size_t max_depth) {
    struct Lazy {
        Lazy(DecidableTree b, std::size_t d) : base(std::move(b)), max_depth(d) {}
        DecidableTree base;
        std::size_t max_depth;
        std::once_flag once;
        TreeHeight height;
    };
    auto lazy = std::make_shared<Lazy>(tree, max_depth);
    auto member = [lazy](const BinaryWord& a) {
        if (lazy->base.contains(a)) {
            return true;
        }
        std::call_once(lazy->once, [&] { lazy->height = tree_height(lazy->base, lazy->max_depth); });
        const TreeHeight& ht = lazy->height;
        if (ht.empty || a.size() <= ht.value) {
            return false;
        }
        return lazy->base.contains(a.prefix(ht.value));
    };
    return DecidableTree(member, std::max(max_depth, tree.explored_depth()));
}

/// A longest path: for every n <= max_depth, if the length-n prefix leaves
/// T then T has no member of length >= n.
inline PathResult longest_path(const DecidableTree& tree, std::size_t max_depth) {
    if (!tree.contains(BinaryWord{})) {
        throw EmptyTree("the root () is not a member");
    }
    PathResult r = wkl_path(lpp_reduction(tree, max_depth), max_depth);
    std::size_t in_tree = 0;
    while (in_tree < r.word.size() && tree.contains(r.word.prefix(in_tree + 1))) {
        ++in_tree;
    }
    r.member_length = in_tree;
    r.full_depth = in_tree == max_depth;
    return r;
}

}  // namespace uct
