#pragma once

#include <cstdint>
#include <vector>

#include "polyfrac/matrix.hpp"

namespace polyfrac {

/// Determinant by Laplace expansion, evaluated as a dynamic program over
/// column subsets: O(n 2^n) polynomial products, no divisions.
inline Poly cofactor_det(const PolyMatrix& a) {
    std::size_t n = a.size();
    if (n == 0) return Poly::constant(a.ring(), 1);
    if (n > 20) throw DomainError("cofactor determinant limited to n <= 20");
    std::vector<Poly> table(std::size_t(1) << n, Poly(a.ring()));
    table[0] = Poly::constant(a.ring(), 1);
    for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
        if (table[mask].is_zero()) continue;
        auto row = static_cast<std::size_t>(__builtin_popcount(mask));
        if (row == n) continue;
        // sign of placing column j after the columns already used: count of used columns above j
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            if (a(row, j).is_zero()) continue;
            auto above = __builtin_popcount(mask >> (j + 1));
            Poly t = table[mask] * a(row, j);
            if (above % 2) table[mask | (1u << j)] -= t;
            else table[mask | (1u << j)] += t;
        }
    }
    return table.back();
}

/// Fraction-free Gaussian elimination; every update division is exact.
/// A zero pivot switches to cofactor expansion instead of permuting rows.
inline Poly bareiss_det(const PolyMatrix& a) {
    std::size_t n = a.size();
    if (n == 0) return Poly::constant(a.ring(), 1);
    PolyMatrix m = a;
    Poly prev = Poly::constant(a.ring(), 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) return cofactor_det(a);
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = div_exact(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    return m(n - 1, n - 1);
}

inline PolyMatrix minor_matrix(const PolyMatrix& a, std::size_t row, std::size_t col) {
    std::size_t n = a.size();
    PolyMatrix r(a.ring(), n - 1);
    for (std::size_t i = 0, ri = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, rj = 0; j < n; ++j) {
            if (j == col) continue;
            r(ri, rj++) = a(i, j);
        }
        ++ri;
    }
    return r;
}

inline constexpr std::size_t kCofactorOracleMaxSize = 6;

/// Transpose of the cofactor matrix. Oracle only: limited to small sizes.
inline PolyMatrix cofactor_adjugate(const PolyMatrix& a) {
    std::size_t n = a.size();
    if (n > kCofactorOracleMaxSize)
        throw DomainError("cofactor adjugate oracle limited to n <= " + std::to_string(kCofactorOracleMaxSize));
    PolyMatrix adj(a.ring(), n);
    if (n == 1) {
        adj(0, 0) = Poly::constant(a.ring(), 1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly c = cofactor_det(minor_matrix(a, i, j));
            adj(j, i) = (i + j) % 2 ? -c : c;
        }
    return adj;
}

/// Det(A[0..k, 0..k]); 1 for k = 0.
inline Poly principal_minor_det(const PolyMatrix& a, std::size_t k) {
    if (k > a.size()) throw DomainError("principal minor size out of range");
    if (k == 0) return Poly::constant(a.ring(), 1);
    return bareiss_det(a.block(0, 0, k));
}

} // namespace polyfrac
