#pragma once

/**
 * @file poly_io.hpp
 * @brief Text format for polynomials.
 *
 * Printing is canonical: terms in the ring order, coefficient first, `*`
 * between factors, `^` for powers, e.g. "2*B*p + 2*p*t^2 - 3/8*u". The parser
 * accepts that format plus parentheses, integer powers of subexpressions,
 * and division by nonzero constants, so printed text always parses back to
 * the same polynomial.
 */

#include "bhv/poly.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

namespace bhv {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const Monomial &m, const VariableSet &vars)
{
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars.name(i);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

inline std::string to_string(const Polynomial &f)
{
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto &t : f.terms()) {
        const bool negative = t.coeff.sign() < 0;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Rational mag = t.coeff.abs();
        if (t.monomial.is_one()) {
            out += mag.to_string();
        } else {
            if (!mag.is_one()) out += mag.to_string() + "*";
            out += to_string(t.monomial, f.variables());
        }
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const Polynomial &f) { return os << to_string(f); }

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const VariableSet &vars, OrderKind order)
        : vars_(vars), order_(order)
    {
        // Normalize U+2212 and drop whitespace.
        for (std::size_t i = 0; i < text.size(); ++i) {
            unsigned char ch = static_cast<unsigned char>(text[i]);
            if (ch == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                static_cast<unsigned char>(text[i + 2]) == 0x92) {
                src_.push_back('-');
                i += 2;
            } else if (!std::isspace(ch)) {
                src_.push_back(static_cast<char>(ch));
            }
        }
    }

    Polynomial parse()
    {
        if (src_.empty()) fail("empty input");
        Polynomial p = expr();
        if (pos_ != src_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                         src_ + "'");
    }

    bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    Polynomial expr()
    {
        std::vector<Term> pool;
        auto add = [&](const Polynomial &p, bool negate) {
            for (const auto &t : p.terms()) pool.push_back({t.monomial, negate ? -t.coeff : t.coeff});
        };
        add(term(), false);
        while (pos_ < src_.size()) {
            if (accept('+')) add(term(), false);
            else if (accept('-')) add(term(), true);
            else break;
        }
        return Polynomial::from_terms(vars_, std::move(pool), order_);
    }

    Polynomial term()
    {
        Polynomial acc = unary();
        while (pos_ < src_.size()) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                acc = acc / d.constant_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (accept('^')) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(src_.substr(start, pos_ - start))));
        }
        return base;
    }

    Polynomial primary()
    {
        if (accept('(')) {
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (pos_ >= src_.size()) fail("unexpected end");
        const char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return Polynomial::constant(vars_, Rational(mpz_class(src_.substr(start, pos_ - start))), order_);
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            if (!vars_.find(name)) fail("unknown variable '" + name + "'");
            return Polynomial::variable(vars_, name, order_);
        }
        fail("unexpected character");
    }

    std::string src_;
    std::size_t pos_ = 0;
    const VariableSet &vars_;
    OrderKind order_;
};

} // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const VariableSet &vars, OrderKind order = OrderKind::lex)
{
    return detail::PolyParser(text, vars, order).parse();
}

} // namespace bhv
