#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "polyfrac/poly.hpp"

namespace polyfrac {

/// Dense square matrix of polynomials over one ring, row-major.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RingPtr ring, std::size_t n) : ring_(std::move(ring)), n_(n), data_(n * n, Poly(ring_)) {}

    static PolyMatrix zero(RingPtr ring, std::size_t n) { return PolyMatrix(std::move(ring), n); }
    static PolyMatrix identity(RingPtr ring, std::size_t n) { return scalar(std::move(ring), n, 1); }
    static PolyMatrix scalar(RingPtr ring, std::size_t n, long c) {
        PolyMatrix m(ring, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(ring, c);
        return m;
    }
    static PolyMatrix diagonal(RingPtr ring, std::size_t n, const Poly& c) {
        PolyMatrix m(std::move(ring), n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] const RingPtr& ring() const { return ring_; }

    Poly& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    [[nodiscard]] const std::vector<Poly>& entries() const { return data_; }

    /// Largest total degree over all entries; negative infinity for the zero matrix.
    [[nodiscard]] Degree max_degree() const {
        Degree d;
        for (const auto& p : data_) d = std::max(d, p.total_degree());
        return d;
    }

    [[nodiscard]] bool is_zero() const {
        for (const auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    /// k x k block with top-left corner (r0, c0).
    [[nodiscard]] PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t k) const {
        if (r0 + k > n_ || c0 + k > n_) throw SizeMismatch("block exceeds matrix bounds");
        PolyMatrix b(ring_, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const PolyMatrix& b) {
        if (r0 + b.size() > n_ || c0 + b.size() > n_) throw SizeMismatch("block exceeds matrix bounds");
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    [[nodiscard]] PolyMatrix transpose() const {
        PolyMatrix t(ring_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    PolyMatrix operator-() const {
        PolyMatrix r = *this;
        for (auto& p : r.data_) p = -p;
        return r;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        check_compatible(a, b);
        PolyMatrix r(a.ring_, a.n_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
        return r;
    }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        check_compatible(a, b);
        PolyMatrix r(a.ring_, a.n_);
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
        return r;
    }
    friend PolyMatrix operator*(const Poly& c, const PolyMatrix& a) {
        if (!same_ring(c.ring(), a.ring_)) throw RingMismatch();
        PolyMatrix r(a.ring_, a.n_);
        if (c.is_one()) return a;
        for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = c * a.data_[k];
        return r;
    }
    friend PolyMatrix operator*(const PolyMatrix& a, const Poly& c) { return c * a; }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

    static void check_compatible(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.n_ != b.n_)
            throw SizeMismatch("matrix sizes differ: " + std::to_string(a.n_) + " vs " + std::to_string(b.n_));
        if (!same_ring(a.ring_, b.ring_)) throw RingMismatch();
    }

private:
    RingPtr ring_;
    std::size_t n_ = 0;
    std::vector<Poly> data_;
};

inline PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b) { return a + b; }
inline PolyMatrix mat_sub(const PolyMatrix& a, const PolyMatrix& b) { return a - b; }
inline PolyMatrix mat_scalar_mul(const Poly& c, const PolyMatrix& a) { return c * a; }

struct Quadrants {
    PolyMatrix a11, a12, a21, a22;
};

inline Quadrants quadrants(const PolyMatrix& a) {
    if (a.size() % 2 != 0 || a.size() == 0) throw OddSize(a.size());
    std::size_t h = a.size() / 2;
    return {a.block(0, 0, h), a.block(0, h, h), a.block(h, 0, h), a.block(h, h, h)};
}

inline PolyMatrix join(const PolyMatrix& a11, const PolyMatrix& a12, const PolyMatrix& a21, const PolyMatrix& a22) {
    PolyMatrix::check_compatible(a11, a12);
    PolyMatrix::check_compatible(a11, a21);
    PolyMatrix::check_compatible(a11, a22);
    std::size_t h = a11.size();
    PolyMatrix r(a11.ring(), 2 * h);
    r.set_block(0, 0, a11);
    r.set_block(0, h, a12);
    r.set_block(h, 0, a21);
    r.set_block(h, h, a22);
    return r;
}

inline PolyMatrix join(const Quadrants& q) { return join(q.a11, q.a12, q.a21, q.a22); }

/// Entrywise exact division by c; throws NotDivisible if any entry leaves a remainder.
inline PolyMatrix mat_div_exact(const PolyMatrix& m, const Poly& c) {
    if (c.is_zero()) throw DomainError("matrix division by the zero polynomial");
    if (c.is_one()) return m;
    PolyMatrix r(m.ring(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            auto q = try_divide(m(i, j), c);
            if (!q) throw NotDivisible("matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") not divisible");
            r(i, j) = std::move(*q);
        }
    return r;
}

// Padding --------------------------------------------------------------------

enum class PadMode { UpperLeft, LowerRight };

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Embeds A in a target x target matrix, filling the new rows/columns with the
/// identity either before (UpperLeft) or after (LowerRight) A. Determinant is unchanged.
inline PolyMatrix pad(const PolyMatrix& a, std::size_t target, PadMode mode) {
    if (target < a.size()) throw DomainError("padding target smaller than matrix");
    if (target == a.size()) return a;
    std::size_t extra = target - a.size();
    PolyMatrix r = PolyMatrix::identity(a.ring(), target);
    r.set_block(mode == PadMode::UpperLeft ? extra : 0, mode == PadMode::UpperLeft ? extra : 0, a);
    return r;
}

inline PolyMatrix pad(const PolyMatrix& a, PadMode mode) { return pad(a, next_power_of_two(a.size()), mode); }

/// The adjugate of a padded matrix is block diagonal with det(A) I on the
/// padding block and Adj(A) on A's block; returns the latter.
inline PolyMatrix trim_adjugate(const PolyMatrix& b_padded, std::size_t original_n, PadMode mode) {
    if (original_n == 0 || original_n > b_padded.size()) throw SizeMismatch("trim size inconsistent with padded matrix");
    std::size_t extra = b_padded.size() - original_n;
    std::size_t at = mode == PadMode::UpperLeft ? extra : 0;
    return b_padded.block(at, at, original_n);
}

} // namespace polyfrac
