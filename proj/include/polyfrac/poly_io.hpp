#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

#include "polyfrac/poly.hpp"

namespace polyfrac {

/// Canonical text form, terms in decreasing graded-lex order: "x^2*y - 3*x + 1".
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    const auto& vars = p.ring()->vars;
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool negative = t.coeff < 0;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        Integer mag = abs(t.coeff);
        std::string mono;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            auto e = t.mono.exponent(v);
            if (!e) continue;
            if (!mono.empty()) mono += '*';
            mono += vars[v];
            if (e > 1) mono += '^' + std::to_string(e);
        }
        if (mono.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += mono;
        } else {
            out += mag.get_str() + '*' + mono;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := '-' unary | '+' unary | power
// power  := atom ('^' integer)?
// atom   := integer | identifier | '(' expr ')'
class PolyParser {
public:
    PolyParser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly expr() {
        Poly acc = term();
        for (;;) {
            skip_ws();
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    Poly term() {
        Poly acc = unary();
        for (;;) {
            skip_ws();
            if (!eat('*')) return acc;
            acc *= unary();
        }
    }

    Poly unary() {
        skip_ws();
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Poly power() {
        Poly base = atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("exponent must be a non-negative integer literal");
            Integer e(read_digits());
            if (e > Monomial::kMaxDegree) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            skip_ws();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(ring_, Integer(read_digits()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            const auto& vars = ring_->vars;
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (vars[v] == name) return Poly::variable(ring_, v);
            fail("undeclared variable '" + std::string(name) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }

    std::string_view s_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, const RingPtr& ring) {
    return detail::PolyParser(text, ring).parse();
}

} // namespace polyfrac
