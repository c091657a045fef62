#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polyfrac/matrix.hpp"

namespace polyfrac {

/// Seeded source of small integers. Bounded draws use rejection sampling on
/// the raw mt19937_64 stream, so sequences are identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(engine_());
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % range);
    }

    /// Uniform in [-bound, bound] \ {0}.
    std::int64_t nonzero(std::int64_t bound) {
        std::int64_t v = uniform(-bound, bound - 1);
        return v >= 0 ? v + 1 : v;
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// All exponent vectors in `vars` variables with total degree <= d, in a fixed order.
inline std::vector<Monomial> monomials_up_to(std::size_t vars, std::uint32_t d) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> e(vars, 0);
    auto rec = [&](auto&& self, std::size_t v, std::uint32_t left) -> void {
        if (v == vars) {
            out.push_back(Monomial::from_exponents(e));
            return;
        }
        for (std::uint32_t k = 0; k <= left; ++k) {
            e[v] = k;
            self(self, v + 1, left - k);
        }
        e[v] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// Dense polynomial of total degree exactly d: every monomial of degree <= d
/// gets a nonzero coefficient in [-coeff_bound, coeff_bound].
inline Poly random_dense_poly(const RingPtr& ring, std::uint32_t d, std::int64_t coeff_bound, Rng& rng) {
    std::vector<Term> terms;
    for (Monomial m : monomials_up_to(ring->size(), d)) terms.push_back({m, Integer(static_cast<long>(rng.nonzero(coeff_bound)))});
    return Poly::from_terms(ring, std::move(terms));
}

inline std::vector<std::string> default_var_names(std::size_t m) {
    static const char* const names[] = {"x", "y", "z", "u", "v", "w", "t"};
    if (m > std::size(names)) throw DomainError("too many variables");
    return {names, names + m};
}

struct GenSpec {
    std::size_t n = 4;
    std::size_t m = 1;
    std::uint32_t d = 1;
    std::int64_t coeff_bound = 20;
    std::uint64_t seed = 1;
};

/// n x n matrix in m variables, every entry dense of total degree exactly d.
inline PolyMatrix random_matrix(const GenSpec& spec) {
    if (spec.n < 1) throw DomainError("generator needs n >= 1");
    if (spec.m < 1) throw DomainError("generator needs m >= 1");
    if (spec.coeff_bound < 1) throw DomainError("generator needs coeff_bound >= 1");
    auto ring = make_ring(default_var_names(spec.m));
    Rng rng(spec.seed);
    PolyMatrix a(ring, spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) a(i, j) = random_dense_poly(ring, spec.d, spec.coeff_bound, rng);
    return a;
}

} // namespace polyfrac
