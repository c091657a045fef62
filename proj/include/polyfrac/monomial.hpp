#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "polyfrac/errors.hpp"

namespace polyfrac {

/// Exponent vector packed into one 128-bit word: the total degree sits in the
/// top 16 bits, followed by one 16-bit field per variable (x_0 highest).
/// Integer comparison of the word is then graded lexicographic order, and
/// monomial multiplication is word addition.
class Monomial {
public:
    using Word = unsigned __int128;
    static constexpr std::size_t kMaxVars = 7;
    static constexpr unsigned kFieldBits = 16;
    static constexpr std::uint32_t kMaxDegree = (1u << kFieldBits) - 1;

    constexpr Monomial() = default;

    static Monomial from_exponents(std::span<const std::uint32_t> exps) {
        if (exps.size() > kMaxVars) throw DomainError("too many variables for a monomial");
        std::uint64_t total = 0;
        Word w = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            total += exps[i];
            w |= Word(exps[i]) << shift(i);
        }
        if (total > kMaxDegree) throw DomainError("monomial degree overflow");
        return Monomial(w | (Word(total) << total_shift()));
    }

    /// x_var^e
    static Monomial power_of(std::size_t var, std::uint32_t e) {
        if (e > kMaxDegree) throw DomainError("monomial degree overflow");
        return Monomial((Word(e) << shift(var)) | (Word(e) << total_shift()));
    }

    [[nodiscard]] std::uint32_t exponent(std::size_t var) const {
        return static_cast<std::uint32_t>((word_ >> shift(var)) & kFieldMask);
    }
    [[nodiscard]] std::uint32_t total_degree() const {
        return static_cast<std::uint32_t>(word_ >> total_shift());
    }
    [[nodiscard]] bool is_one() const { return word_ == 0; }

    [[nodiscard]] bool divides(Monomial other) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exponent(i) > other.exponent(i)) return false;
        return true;
    }

    friend Monomial operator*(Monomial a, Monomial b) {
        if (std::uint64_t(a.total_degree()) + b.total_degree() > kMaxDegree)
            throw DomainError("monomial degree overflow");
        return Monomial(a.word_ + b.word_);
    }
    // pre: b divides a
    friend Monomial operator/(Monomial a, Monomial b) { return Monomial(a.word_ - b.word_); }

    friend bool operator==(Monomial a, Monomial b) { return a.word_ == b.word_; }
    friend bool operator<(Monomial a, Monomial b) { return a.word_ < b.word_; }
    friend bool operator>(Monomial a, Monomial b) { return a.word_ > b.word_; }
    friend bool operator<=(Monomial a, Monomial b) { return a.word_ <= b.word_; }
    friend bool operator>=(Monomial a, Monomial b) { return a.word_ >= b.word_; }

    [[nodiscard]] std::size_t hash() const {
        auto lo = static_cast<std::uint64_t>(word_);
        auto hi = static_cast<std::uint64_t>(word_ >> 64);
        return std::size_t(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x7F4A7C15ull + (lo << 6)));
    }

private:
    constexpr explicit Monomial(Word w) : word_(w) {}
    static constexpr Word kFieldMask = (Word(1) << kFieldBits) - 1;
    static constexpr unsigned total_shift() { return kFieldBits * kMaxVars; }
    static constexpr unsigned shift(std::size_t var) {
        return kFieldBits * static_cast<unsigned>(kMaxVars - 1 - var);
    }

    Word word_ = 0;
};

} // namespace polyfrac
