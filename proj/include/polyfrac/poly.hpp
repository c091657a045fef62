#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "polyfrac/errors.hpp"
#include "polyfrac/monomial.hpp"

namespace polyfrac {

using Integer = mpz_class;

/// Variable names of a polynomial ring Z[x_0, ..., x_{m-1}].
struct Ring {
    std::vector<std::string> vars;

    [[nodiscard]] std::size_t size() const { return vars.size(); }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars) {
    if (vars.size() > Monomial::kMaxVars)
        throw DomainError("at most " + std::to_string(Monomial::kMaxVars) + " variables supported");
    return std::make_shared<const Ring>(Ring{std::move(vars)});
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && a->vars == b->vars);
}

/// Total degree, with the zero polynomial mapped to negative infinity.
class Degree {
public:
    constexpr Degree() = default; // -infinity
    constexpr explicit Degree(std::uint32_t d) : value_(static_cast<std::int64_t>(d)) {}
    static constexpr Degree neg_infinity() { return Degree(); }

    [[nodiscard]] constexpr bool is_neg_infinity() const { return value_ < 0; }
    [[nodiscard]] std::uint32_t value() const {
        if (is_neg_infinity()) throw DomainError("degree of the zero polynomial has no value");
        return static_cast<std::uint32_t>(value_);
    }

    friend constexpr bool operator==(Degree, Degree) = default;
    friend constexpr auto operator<=>(Degree a, Degree b) { return a.value_ <=> b.value_; }

private:
    std::int64_t value_ = -1;
};

struct Term {
    Monomial mono;
    Integer coeff;
};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Terms are kept strictly decreasing in graded-lex order with
/// no zero coefficients, so equal polynomials have identical representations.
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly constant(RingPtr ring, const Integer& c) {
        Poly p(std::move(ring));
        if (c != 0) p.terms_.push_back({Monomial{}, c});
        return p;
    }
    static Poly constant(RingPtr ring, long c) { return constant(std::move(ring), Integer(c)); }

    static Poly variable(RingPtr ring, std::size_t index) {
        if (!ring || index >= ring->size()) throw DomainError("variable index out of range");
        Poly p(std::move(ring));
        p.terms_.push_back({Monomial::power_of(index, 1), 1});
        return p;
    }

    static Poly monomial(RingPtr ring, Monomial m, Integer c) {
        Poly p(std::move(ring));
        if (c != 0) p.terms_.push_back({m, std::move(c)});
        return p;
    }

    /// Builds from unordered, possibly repeated terms.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.mono > b.mono; });
        Poly p(std::move(ring));
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff += t.coeff;
                if (p.terms_.back().coeff == 0) p.terms_.pop_back();
            } else if (t.coeff != 0) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    [[nodiscard]] const RingPtr& ring() const { return ring_; }
    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    [[nodiscard]] bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
    [[nodiscard]] bool is_unit() const {
        return terms_.size() == 1 && terms_[0].mono.is_one() && abs(terms_[0].coeff) == 1;
    }

    [[nodiscard]] Degree total_degree() const {
        return terms_.empty() ? Degree::neg_infinity() : Degree(terms_.front().mono.total_degree());
    }
    [[nodiscard]] const Term& leading_term() const { return terms_.front(); }
    [[nodiscard]] Integer constant_value() const {
        if (terms_.empty()) return 0;
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_[0].coeff;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        check_ring(a, b);
        if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
        const Poly& small = a.terms_.size() <= b.terms_.size() ? a : b;
        const Poly& large = &small == &a ? b : a;
        if (small.terms_.size() == 1) return large.scale(small.terms_[0].mono, small.terms_[0].coeff);
        return heap_multiply(small, large);
    }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend Poly operator*(const Poly& a, const Integer& c) { return a.scale(Monomial{}, c); }
    friend Poly operator*(const Integer& c, const Poly& a) { return a.scale(Monomial{}, c); }

    /// this * c * m
    [[nodiscard]] Poly scale(Monomial m, const Integer& c) const {
        Poly r(ring_);
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
        return r;
    }

    [[nodiscard]] Poly pow(unsigned e) const {
        Poly result = constant(ring_, 1);
        Poly base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    friend std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
        check_ring(a, b);
        if (b.is_zero()) throw DomainError("division by the zero polynomial");
        if (a.is_zero()) return Poly(a.ring_);
        if (b.terms_.size() == 1) return a.divide_by_term(b.terms_[0]);
        const Term& lb = b.terms_.front();
        const Term& tb = b.terms_.back();
        // Quick rejections: leading and trailing terms must divide, degrees must fit.
        if (!lb.mono.divides(a.terms_.front().mono) || !tb.mono.divides(a.terms_.back().mono))
            return std::nullopt;
        if (!mpz_divisible_p(a.terms_.back().coeff.get_mpz_t(), tb.coeff.get_mpz_t())) return std::nullopt;

        std::map<Monomial, Integer, std::greater<>> rem;
        for (const auto& t : a.terms_) rem.emplace_hint(rem.end(), t.mono, t.coeff);
        std::vector<Term> quotient;
        Integer qc;
        while (!rem.empty()) {
            auto top = rem.begin();
            if (!lb.mono.divides(top->first)) return std::nullopt;
            if (!mpz_divisible_p(top->second.get_mpz_t(), lb.coeff.get_mpz_t())) return std::nullopt;
            mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), lb.coeff.get_mpz_t());
            Monomial qm = top->first / lb.mono;
            rem.erase(top);
            for (std::size_t j = 1; j < b.terms_.size(); ++j) {
                Monomial m = b.terms_[j].mono * qm;
                auto [it, inserted] = rem.try_emplace(m);
                mpz_submul(it->second.get_mpz_t(), b.terms_[j].coeff.get_mpz_t(), qc.get_mpz_t());
                if (it->second == 0) rem.erase(it);
            }
            quotient.push_back({qm, qc});
        }
        Poly q(a.ring_);
        q.terms_ = std::move(quotient);
        return q;
    }

    [[nodiscard]] Integer integer_content() const {
        Integer g = 0;
        for (const auto& t : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    /// Divides every coefficient by c, which must divide them all.
    [[nodiscard]] Poly divide_exact_integer(const Integer& c) const {
        Poly r = *this;
        for (auto& t : r.terms_) {
            if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t()))
                throw NotDivisible("integer does not divide polynomial");
            mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
        }
        return r;
    }

    /// Evaluation homomorphism Z[x] -> Z.
    [[nodiscard]] Integer evaluate(std::span<const Integer> point) const {
        if (ring_ && point.size() != ring_->size()) throw DomainError("evaluation point has wrong arity");
        Integer sum = 0, term, pw;
        for (const auto& t : terms_) {
            term = t.coeff;
            for (std::size_t v = 0; v < point.size(); ++v) {
                auto e = t.mono.exponent(v);
                if (e) {
                    mpz_pow_ui(pw.get_mpz_t(), point[v].get_mpz_t(), e);
                    term *= pw;
                }
            }
            sum += term;
        }
        return sum;
    }

    [[nodiscard]] std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
        return d;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
        return a.terms_.empty() || same_ring(a.ring_, b.ring_);
    }

    static void check_ring(const Poly& a, const Poly& b) {
        if (!same_ring(a.ring_, b.ring_)) throw RingMismatch();
    }

private:
    static Poly merge(const Poly& a, const Poly& b, bool subtract) {
        check_ring(a, b);
        Poly r(a.ring_ ? a.ring_ : b.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
                r.terms_.push_back({b.terms_[j].mono, subtract ? Integer(-b.terms_[j].coeff) : b.terms_[j].coeff});
                ++j;
            } else {
                Integer c = subtract ? Integer(a.terms_[i].coeff - b.terms_[j].coeff)
                                     : Integer(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    // Johnson's heap multiplication: one stream per term of the smaller
    // operand, merged in decreasing monomial order.
    static Poly heap_multiply(const Poly& small, const Poly& large) {
        struct Entry {
            Monomial mono;
            std::uint32_t i, j;
        };
        auto cmp = [](const Entry& x, const Entry& y) { return x.mono < y.mono; };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
        for (std::uint32_t i = 0; i < small.terms_.size(); ++i)
            heap.push({small.terms_[i].mono * large.terms_[0].mono, i, 0});

        Poly r(small.ring_);
        r.terms_.reserve(small.terms_.size() + large.terms_.size());
        while (!heap.empty()) {
            Entry e = heap.top();
            heap.pop();
            if (r.terms_.empty() || !(r.terms_.back().mono == e.mono)) {
                if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
                r.terms_.push_back({e.mono, 0});
            }
            mpz_addmul(r.terms_.back().coeff.get_mpz_t(), small.terms_[e.i].coeff.get_mpz_t(),
                       large.terms_[e.j].coeff.get_mpz_t());
            if (e.j + 1 < large.terms_.size())
                heap.push({small.terms_[e.i].mono * large.terms_[e.j + 1].mono, e.i, e.j + 1});
        }
        if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
        return r;
    }

    [[nodiscard]] std::optional<Poly> divide_by_term(const Term& d) const {
        Poly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!d.mono.divides(t.mono) || !mpz_divisible_p(t.coeff.get_mpz_t(), d.coeff.get_mpz_t()))
                return std::nullopt;
            Term q{t.mono / d.mono, 0};
            mpz_divexact(q.coeff.get_mpz_t(), t.coeff.get_mpz_t(), d.coeff.get_mpz_t());
            r.terms_.push_back(std::move(q));
        }
        return r;
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Exact quotient; throws NotDivisible when b does not divide a.
inline Poly div_exact(const Poly& a, const Poly& b) {
    auto q = try_divide(a, b);
    if (!q) throw NotDivisible("polynomial division is not exact");
    return std::move(*q);
}

inline bool divides(const Poly& d, const Poly& a) { return try_divide(a, d).has_value(); }

inline Degree total_degree(const Poly& p) { return p.total_degree(); }

} // namespace polyfrac
