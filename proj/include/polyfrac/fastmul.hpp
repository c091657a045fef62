#pragma once

#include <cstdint>

#include "polyfrac/matrix.hpp"

namespace polyfrac {

enum class MulVariant { NaiveOnly, StrassenWinograd };

struct MulConfig {
    std::size_t cutoff = 2; // sizes <= cutoff multiply naively
    MulVariant variant = MulVariant::StrassenWinograd;
};

/// Counters for instrumented runs.
struct MulStats {
    std::uint64_t scalar_products = 0; // polynomial * polynomial in base cases
    std::uint64_t block_products = 0;  // recursive half-size products issued
    std::uint64_t matrix_products = 0; // top-level mul() calls
};

inline PolyMatrix mul_naive(const PolyMatrix& a, const PolyMatrix& b, MulStats* stats = nullptr) {
    PolyMatrix::check_compatible(a, b);
    std::size_t n = a.size();
    PolyMatrix c(a.ring(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly acc(a.ring());
            for (std::size_t k = 0; k < n; ++k) {
                acc += a(i, k) * b(k, j);
                if (stats) ++stats->scalar_products;
            }
            c(i, j) = std::move(acc);
        }
    return c;
}

namespace detail {

// Winograd's form of Strassen: 7 half-size products, 15 block additions.
inline PolyMatrix strassen_winograd(const PolyMatrix& a, const PolyMatrix& b, std::size_t cutoff, MulStats* stats) {
    std::size_t n = a.size();
    if (n <= cutoff || n % 2 != 0) return mul_naive(a, b, stats);

    auto [a11, a12, a21, a22] = quadrants(a);
    auto [b11, b12, b21, b22] = quadrants(b);

    PolyMatrix s1 = a21 + a22;
    PolyMatrix s2 = s1 - a11;
    PolyMatrix s3 = a11 - a21;
    PolyMatrix s4 = a12 - s2;
    PolyMatrix t1 = b12 - b11;
    PolyMatrix t2 = b22 - t1;
    PolyMatrix t3 = b22 - b12;
    PolyMatrix t4 = t2 - b21;

    auto rec = [&](const PolyMatrix& x, const PolyMatrix& y) {
        if (stats) ++stats->block_products;
        return strassen_winograd(x, y, cutoff, stats);
    };
    PolyMatrix p1 = rec(a11, b11);
    PolyMatrix p2 = rec(a12, b21);
    PolyMatrix p3 = rec(s4, b22);
    PolyMatrix p4 = rec(a22, t4);
    PolyMatrix p5 = rec(s1, t1);
    PolyMatrix p6 = rec(s2, t2);
    PolyMatrix p7 = rec(s3, t3);

    PolyMatrix u2 = p1 + p6;
    PolyMatrix u3 = u2 + p7;
    PolyMatrix u4 = u2 + p5;
    return join(p1 + p2, u4 + p3, u3 - p4, u3 + p5);
}

} // namespace detail

/// Exact product A*B. Strassen-Winograd recursion needs even sizes all the way
/// down to the cutoff; odd blocks above the cutoff fall back to naive.
inline PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b, const MulConfig& cfg = {}, MulStats* stats = nullptr) {
    PolyMatrix::check_compatible(a, b);
    if (cfg.cutoff < 1) throw DomainError("multiplication cutoff must be >= 1");
    if (stats) ++stats->matrix_products;
    if (cfg.variant == MulVariant::NaiveOnly) return mul_naive(a, b, stats);
    return detail::strassen_winograd(a, b, cfg.cutoff, stats);
}

} // namespace polyfrac
