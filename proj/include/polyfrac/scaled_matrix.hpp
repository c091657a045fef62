#pragma once

#include "polyfrac/fastmul.hpp"

namespace polyfrac {

/// A polynomial matrix over a nonzero polynomial denominator, standing for
/// mat / denom. Never reduced automatically.
struct ScaledMatrix {
    PolyMatrix mat;
    Poly denom;

    ScaledMatrix(PolyMatrix m, Poly c) : mat(std::move(m)), denom(std::move(c)) {
        if (denom.is_zero()) throw DomainError("ScaledMatrix denominator must be nonzero");
        if (!same_ring(mat.ring(), denom.ring())) throw RingMismatch();
    }

    /// Same rational value: p.mat * q.denom == q.mat * p.denom.
    [[nodiscard]] bool same_value(const ScaledMatrix& other) const {
        return other.denom * mat == denom * other.mat;
    }
};

/// (M1, c1) * (M2, c2) = (M1 M2, c1 c2)
inline ScaledMatrix pair_mul(const ScaledMatrix& p, const ScaledMatrix& q, const MulConfig& cfg = {},
                             MulStats* stats = nullptr) {
    return {mul(p.mat, q.mat, cfg, stats), p.denom * q.denom};
}

/// (M1, c1) + (M2, c2) = (c2 M1 + c1 M2, c1 c2)
inline ScaledMatrix pair_add(const ScaledMatrix& p, const ScaledMatrix& q) {
    PolyMatrix::check_compatible(p.mat, q.mat);
    return {q.denom * p.mat + p.denom * q.mat, p.denom * q.denom};
}

inline ScaledMatrix pair_neg(const ScaledMatrix& p) { return {-p.mat, p.denom}; }

} // namespace polyfrac
