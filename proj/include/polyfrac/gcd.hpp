#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "polyfrac/poly.hpp"

namespace polyfrac {

/// Sign normalization: leading graded-lex coefficient made positive.
inline Poly normalize(const Poly& p) {
    if (p.is_zero() || p.leading_term().coeff > 0) return p;
    return -p;
}

/// Equality up to a unit (sign).
inline bool equal_up_to_unit(const Poly& a, const Poly& b) { return normalize(a) == normalize(b); }

namespace detail {

// View of p as a polynomial in x_var: coefficient list, highest power first.
struct VarCoeffs {
    std::vector<std::pair<std::uint32_t, Poly>> coeffs;
};

inline VarCoeffs split_by_var(const Poly& p, std::size_t var) {
    std::vector<std::pair<std::uint32_t, std::vector<Term>>> buckets;
    for (const auto& t : p.terms()) {
        auto e = t.mono.exponent(var);
        auto it = std::find_if(buckets.begin(), buckets.end(), [e](const auto& b) { return b.first == e; });
        if (it == buckets.end()) {
            buckets.push_back({e, {}});
            it = std::prev(buckets.end());
        }
        it->second.push_back({t.mono / Monomial::power_of(var, e), t.coeff});
    }
    std::sort(buckets.begin(), buckets.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    VarCoeffs out;
    for (auto& [e, terms] : buckets) out.coeffs.emplace_back(e, Poly::from_terms(p.ring(), std::move(terms)));
    return out;
}

inline Poly leading_coeff_in(const Poly& p, std::size_t var, std::uint32_t& degree) {
    degree = p.degree_in(var);
    std::vector<Term> terms;
    for (const auto& t : p.terms())
        if (t.mono.exponent(var) == degree) terms.push_back({t.mono / Monomial::power_of(var, degree), t.coeff});
    return Poly::from_terms(p.ring(), std::move(terms));
}

inline int highest_var(const Poly& p) {
    int h = -1;
    for (const auto& t : p.terms())
        for (int v = static_cast<int>(Monomial::kMaxVars) - 1; v > h; --v)
            if (t.mono.exponent(static_cast<std::size_t>(v))) {
                h = v;
                break;
            }
    return h;
}

inline Poly gcd_upto(const Poly& a, const Poly& b, int var);

// gcd of the coefficients of p viewed in x_var; only variables < var remain.
inline Poly content_in(const Poly& p, int var) {
    auto split = split_by_var(p, static_cast<std::size_t>(var));
    Poly g = split.coeffs.front().second;
    for (std::size_t i = 1; i < split.coeffs.size() && !g.is_unit(); ++i)
        g = gcd_upto(g, split.coeffs[i].second, var - 1);
    return g;
}

// Pseudo-remainder of a by b with respect to x_var (b of positive degree in x_var).
inline Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
    std::uint32_t db = 0;
    Poly lcb = leading_coeff_in(b, var, db);
    while (!a.is_zero()) {
        std::uint32_t da = 0;
        Poly lca = leading_coeff_in(a, var, da);
        if (da < db) break;
        a = lcb * a - (lca * b).scale(Monomial::power_of(var, da - db), 1);
    }
    return a;
}

inline Poly integer_gcd(const Poly& a, const Poly& b) {
    Integer g = gcd(a.integer_content(), b.integer_content());
    return Poly::constant(a.ring() ? a.ring() : b.ring(), g);
}

// gcd where only variables x_0..x_var may occur.
inline Poly gcd_upto(const Poly& a, const Poly& b, int var) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant() || var < 0) return integer_gcd(a, b);

    auto v = static_cast<std::size_t>(var);
    if (a.degree_in(v) == 0 && b.degree_in(v) == 0) return gcd_upto(a, b, var - 1);

    Poly ca = content_in(a, var);
    Poly cb = content_in(b, var);
    Poly c = gcd_upto(ca, cb, var - 1);
    Poly pa = div_exact(a, ca);
    Poly pb = div_exact(b, cb);
    if (pa.degree_in(v) == 0 || pb.degree_in(v) == 0) return c;
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

    // Primitive polynomial remainder sequence.
    for (;;) {
        Poly r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) return c;
        pa = std::move(pb);
        pb = div_exact(r, content_in(r, var));
    }
    return c * pb;
}

inline Integer max_norm(const Poly& p) {
    Integer m = 0;
    for (const auto& t : p.terms())
        if (abs(t.coeff) > m) m = abs(t.coeff);
    return m;
}

// p with x_var replaced by the integer xi.
inline Poly substitute(const Poly& p, std::size_t var, const Integer& xi) {
    std::vector<Integer> powers{1};
    std::vector<Term> terms;
    terms.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        auto e = t.mono.exponent(var);
        while (powers.size() <= e) powers.push_back(powers.back() * xi);
        terms.push_back({t.mono / Monomial::power_of(var, e), t.coeff * powers[e]});
    }
    return Poly::from_terms(p.ring(), std::move(terms));
}

// Inverse of substitute for a polynomial whose x_var-coefficients are bounded
// by xi/2: reads them off as symmetric base-xi digits.
inline Poly xi_adic_lift(Poly h, std::size_t var, const Integer& xi) {
    Integer half = xi / 2;
    std::vector<Term> out;
    for (std::uint32_t i = 0; !h.is_zero(); ++i) {
        std::vector<Term> digit;
        for (const auto& t : h.terms()) {
            Integer c;
            mpz_fdiv_r(c.get_mpz_t(), t.coeff.get_mpz_t(), xi.get_mpz_t());
            if (c > half) c -= xi;
            if (c != 0) digit.push_back({t.mono, c});
        }
        Poly g = Poly::from_terms(h.ring(), digit);
        for (auto& t : digit) out.push_back({t.mono * Monomial::power_of(var, i), t.coeff});
        h = (h - g).divide_exact_integer(xi);
    }
    return Poly::from_terms(h.ring(), std::move(out));
}

// Heuristic gcd (Char, Geddes and Gonnet): evaluate the top variable at a
// large integer, recurse, lift the image gcd back and accept it only if it
// divides both inputs. Returns nullopt when the heuristic gives up.
inline std::optional<Poly> heuristic_gcd(const Poly& a, const Poly& b, int var) {
    Integer ga = a.integer_content(), gb = b.integer_content();
    Integer g = gcd(ga, gb);
    if (var < 0 || a.is_constant() || b.is_constant()) return Poly::constant(a.ring(), g);
    Poly pa = a.divide_exact_integer(ga), pb = b.divide_exact_integer(gb);
    auto v = static_cast<std::size_t>(var);
    std::uint32_t deg = std::max(pa.degree_in(v), pb.degree_in(v));
    if (deg == 0) {
        auto h = heuristic_gcd(pa, pb, var - 1);
        if (!h) return std::nullopt;
        return g * *h;
    }
    Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * deg > 4'000'000) break;
        Poly ea = substitute(pa, v, xi), eb = substitute(pb, v, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            if (auto h = heuristic_gcd(ea, eb, var - 1)) {
                Poly lifted = xi_adic_lift(*h, v, xi);
                if (!lifted.is_zero()) {
                    lifted = lifted.divide_exact_integer(lifted.integer_content());
                    if (divides(lifted, pa) && divides(lifted, pb)) return g * lifted;
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

} // namespace detail

/// Greatest common divisor in Z[x_0..x_{m-1}], normalized so the leading
/// graded-lex coefficient is positive. gcd(a, 0) is normalize(a).
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly::check_ring(a, b);
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    // Cheap exits that are common in content extraction.
    if (a.total_degree() <= b.total_degree()) {
        if (divides(a, b)) return normalize(a);
    } else if (divides(b, a)) {
        return normalize(b);
    }
    int var = std::max(detail::highest_var(a), detail::highest_var(b));
    if (auto g = detail::heuristic_gcd(a, b, var)) return normalize(*g);
    return normalize(detail::gcd_upto(a, b, var));
}

/// p with its integer content removed, sign-normalized.
inline Poly primitive_part(const Poly& p) {
    if (p.is_zero()) return p;
    return normalize(p.divide_exact_integer(p.integer_content()));
}

} // namespace polyfrac
