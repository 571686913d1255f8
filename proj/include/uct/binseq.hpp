#pragma once

// Finite binary words and the combinators used to code grid points and
// point pairs as tree branches: the encoding g, the interleaving sum,
// its projections, prefix order and downward closure.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "uct/dyadic.hpp"
#include "uct/errors.hpp"

namespace uct {

/// A finite 0/1 sequence. Ordered lexicographically with 0 < 1 (a proper
/// prefix sorts before its extensions).
class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_) {
            if (b > 1) {
                throw InvalidWord("bit value out of range");
            }
        }
    }

    static BinaryWord parse(std::string_view text) {
        std::vector<std::uint8_t> bits;
        bits.reserve(text.size());
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw InvalidWord("not a binary word: \"" + std::string(text) + "\"");
            }
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return BinaryWord(std::move(bits));
    }

    static BinaryWord zeros(std::size_t n) { return BinaryWord(std::vector<std::uint8_t>(n, 0)); }

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    /// u * b
    BinaryWord extended(std::uint8_t bit) const {
        BinaryWord w = *this;
        w.bits_.push_back(bit ? 1 : 0);
        return w;
    }

    BinaryWord prefix(std::size_t n) const {
        if (n > bits_.size()) {
            throw InvalidWord("prefix length exceeds word length");
        }
        return BinaryWord(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    /// Non-strict: every word is a prefix of itself.
    bool is_prefix_of(const BinaryWord& other) const {
        if (size() > other.size()) {
            return false;
        }
        for (std::size_t i = 0; i < size(); ++i) {
            if (bits_[i] != other.bits_[i]) {
                return false;
            }
        }
        return true;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) {
            s.push_back(static_cast<char>('0' + b));
        }
        return s;
    }

    friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
    friend auto operator<=>(const BinaryWord& a, const BinaryWord& b) { return a.bits_ <=> b.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

/// Shorter words first, then lexicographic.
struct ShortLex {
    bool operator()(const BinaryWord& a, const BinaryWord& b) const {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a < b;
    }
};

/// g(a) = sum_i a(i) 2^-(i+1).
inline Dyadic encode_g(const BinaryWord& a) {
    if (a.empty()) {
        return Dyadic(0);
    }
    BigInt m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m <<= 1;
        m += a[i];
    }
    return Dyadic(std::move(m), a.size());
}

/// The unique length-n word a with g(a) = x.
inline BinaryWord decode_g(const Dyadic& x, std::size_t n) {
    if (x == Dyadic(1)) {
        throw EndpointNotRepresentable("1 has no length-" + std::to_string(n) + " preimage under g");
    }
    if (x.sign() < 0 || x > Dyadic(1) || x.exponent() > n) {
        throw NotOnGrid(x.to_string() + " is not of the form k/2^" + std::to_string(n) +
                        " with 0 <= k < 2^" + std::to_string(n));
    }
    BigInt k = x.mantissa() << (n - x.exponent());
    std::vector<std::uint8_t> bits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bits[n - 1 - i] = static_cast<std::uint8_t>(bit_test(k, static_cast<unsigned>(i)) ? 1 : 0);
    }
    return BinaryWord(std::move(bits));
}

/// a ⊕ b: even positions from a, odd positions from b.
inline BinaryWord sum_words(const BinaryWord& a, const BinaryWord& b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("sum of words of lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(2 * a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        bits.push_back(a[i]);
        bits.push_back(b[i]);
    }
    return BinaryWord(std::move(bits));
}

namespace detail {
inline BinaryWord every_other(const BinaryWord& c, std::size_t start) {
    std::vector<std::uint8_t> bits;
    bits.reserve(c.size() / 2 + 1);
    for (std::size_t i = start; i < c.size(); i += 2) {
        bits.push_back(c[i]);
    }
    return BinaryWord(std::move(bits));
}
}  // namespace detail

/// Positions 0, 2, 4, ... (total on odd lengths).
inline BinaryWord proj0(const BinaryWord& c) { return detail::every_other(c, 0); }
/// Positions 1, 3, 5, ...
inline BinaryWord proj1(const BinaryWord& c) { return detail::every_other(c, 1); }

/// All prefixes of members of A, members included.
inline std::set<BinaryWord> downward_closure(const std::set<BinaryWord>& words) {
    std::set<BinaryWord> closed;
    for (const auto& w : words) {
        for (std::size_t n = 0; n <= w.size(); ++n) {
            closed.insert(w.prefix(n));
        }
    }
    return closed;
}

/// J_u: J_() = [0,1], children are the left and right halves.
inline DyadicInterval interval_of_word(const BinaryWord& u) {
    Dyadic lo = encode_g(u);
    return DyadicInterval(lo, lo + Dyadic::pow2_neg(u.size()));
}

/// Finite-depth stand-in for an infinite 0/1 sequence: all prefixes up to
/// max_depth are determined by a single word of that length.
class BoundedStream {
public:
    explicit BoundedStream(BinaryWord word) : word_(std::move(word)) {}

    std::size_t max_depth() const noexcept { return word_.size(); }

    BinaryWord prefix(std::size_t n) const {
        if (n > word_.size()) {
            throw DepthExhausted("stream prefix " + std::to_string(n) + " requested beyond depth " +
                                 std::to_string(word_.size()));
        }
        return word_.prefix(n);
    }

private:
    BinaryWord word_;
};

}  // namespace uct
