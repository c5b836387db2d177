#pragma once

/**
 * @file poly.hpp
 * @brief Sparse multivariate polynomials over the rationals.
 *
 * A Polynomial lives in a ring described by an ordered VariableSet and a
 * MonomialOrder. Terms are kept strictly sorted, largest first, with no
 * zero coefficients; the zero polynomial has no terms. Every operation
 * returns a canonical value, so equality is term-wise comparison.
 */

#include "bhv/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bhv {

inline constexpr std::size_t kMaxVariables = 16;

class VariableSetMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered list of distinct symbol names; position 0 has the highest precedence.
class VariableSet {
public:
    VariableSet() : names_(std::make_shared<std::vector<std::string>>()) {}
    VariableSet(std::initializer_list<std::string> names) : VariableSet(std::vector<std::string>(names)) {}
    explicit VariableSet(std::vector<std::string> names)
    {
        if (names.size() > kMaxVariables) throw std::invalid_argument("VariableSet: too many variables");
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i].empty()) throw std::invalid_argument("VariableSet: empty name");
            for (std::size_t j = 0; j < i; ++j)
                if (names[i] == names[j]) throw std::invalid_argument("VariableSet: duplicate name " + names[i]);
        }
        names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
    }

    std::size_t size() const noexcept { return names_->size(); }
    const std::string &name(std::size_t i) const { return names_->at(i); }
    const std::vector<std::string> &names() const noexcept { return *names_; }

    std::optional<std::size_t> find(std::string_view n) const
    {
        for (std::size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == n) return i;
        return std::nullopt;
    }
    std::size_t index(std::string_view n) const
    {
        if (auto i = find(n)) return *i;
        throw UnknownVariable("unknown variable '" + std::string(n) + "'");
    }

    friend bool operator==(const VariableSet &a, const VariableSet &b)
    {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

enum class OrderKind { lex, grevlex };

/// Exponent vector with inline storage; the cached total degree always equals the sum.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars))
    {
        if (nvars > kMaxVariables) throw std::invalid_argument("Monomial: too many variables");
    }
    Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size())
    {
        std::size_t i = 0;
        for (unsigned e : exps) set(i++, e);
    }

    std::size_t size() const noexcept { return n_; }
    unsigned operator[](std::size_t i) const noexcept { return e_[i]; }
    unsigned degree() const noexcept { return deg_; }

    void set(std::size_t i, unsigned e)
    {
        if (e > 0xFFFFu) throw std::overflow_error("Monomial: exponent overflow");
        deg_ = deg_ - e_[i] + e;
        e_[i] = static_cast<std::uint16_t>(e);
    }

    bool is_one() const noexcept { return deg_ == 0; }

    bool divides(const Monomial &m) const noexcept
    {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.set(i, unsigned(a.e_[i]) + b.e_[i]);
        return r;
    }

    /// a / b; requires b | a.
    friend Monomial operator/(const Monomial &a, const Monomial &b)
    {
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            if (b.e_[i] > a.e_[i]) throw std::invalid_argument("Monomial: inexact division");
            r.set(i, unsigned(a.e_[i]) - b.e_[i]);
        }
        return r;
    }

    static Monomial lcm(const Monomial &a, const Monomial &b)
    {
        Monomial r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.set(i, std::max(a.e_[i], b.e_[i]));
        return r;
    }

    static bool coprime(const Monomial &a, const Monomial &b) noexcept
    {
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.e_[i] && b.e_[i]) return false;
        return true;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) noexcept
    {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

private:
    std::array<std::uint16_t, kMaxVariables> e_{};
    std::uint8_t n_ = 0;
    unsigned deg_ = 0;
};

/// Three-way comparison of monomials: negative if a < b.
inline int compare_monomials(const Monomial &a, const Monomial &b, OrderKind order) noexcept
{
    const std::size_t n = a.size();
    if (order == OrderKind::lex) {
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

struct Term {
    Monomial monomial;
    Rational coeff;
};

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(VariableSet vars, OrderKind order = OrderKind::lex) : vars_(std::move(vars)), order_(order) {}

    static Polynomial constant(const VariableSet &vars, const Rational &c, OrderKind order = OrderKind::lex)
    {
        Polynomial p(vars, order);
        if (!c.is_zero()) p.terms_.push_back({Monomial(vars.size()), c});
        return p;
    }

    static Polynomial variable(const VariableSet &vars, std::string_view name, OrderKind order = OrderKind::lex)
    {
        Monomial m(vars.size());
        m.set(vars.index(name), 1);
        return monomial(vars, m, Rational(1), order);
    }

    static Polynomial monomial(const VariableSet &vars, const Monomial &m, const Rational &c,
                               OrderKind order = OrderKind::lex)
    {
        if (m.size() != vars.size()) throw VariableSetMismatch("monomial length differs from variable set");
        Polynomial p(vars, order);
        if (!c.is_zero()) p.terms_.push_back({m, c});
        return p;
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated or zero) terms.
    static Polynomial from_terms(const VariableSet &vars, std::vector<Term> terms, OrderKind order = OrderKind::lex)
    {
        Polynomial p(vars, order);
        for (const auto &t : terms)
            if (t.monomial.size() != vars.size()) throw VariableSetMismatch("term length differs from variable set");
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    const VariableSet &variables() const noexcept { return vars_; }
    OrderKind order() const noexcept { return order_; }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

    const Term &leading_term() const
    {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_.front();
    }
    const Monomial &leading_monomial() const { return leading_term().monomial; }
    const Rational &leading_coefficient() const { return leading_term().coeff; }

    Rational constant_term() const
    {
        if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
        return Rational(0);
    }

    unsigned total_degree() const noexcept
    {
        unsigned d = 0;
        for (const auto &t : terms_) d = std::max(d, t.monomial.degree());
        return d;
    }

    unsigned degree_in(std::size_t var) const noexcept
    {
        unsigned d = 0;
        for (const auto &t : terms_) d = std::max(d, t.monomial[var]);
        return d;
    }
    unsigned degree_in(std::string_view var) const { return degree_in(vars_.index(var)); }

    bool involves(std::size_t var) const noexcept { return degree_in(var) > 0; }

    /// Same polynomial re-sorted under another order.
    Polynomial with_order(OrderKind order) const
    {
        Polynomial p(vars_, order);
        p.terms_ = terms_;
        p.sort_terms();
        return p;
    }

    Polynomial operator-() const
    {
        Polynomial p = *this;
        for (auto &t : p.terms_) t.coeff = -t.coeff;
        return p;
    }

    friend Polynomial operator+(const Polynomial &f, const Polynomial &g) { return combine(f, g, false); }
    friend Polynomial operator-(const Polynomial &f, const Polynomial &g) { return combine(f, g, true); }
    Polynomial &operator+=(const Polynomial &g) { return *this = *this + g; }
    Polynomial &operator-=(const Polynomial &g) { return *this = *this - g; }

    friend Polynomial operator*(const Polynomial &f, const Polynomial &g)
    {
        f.check_same_ring(g);
        if (f.is_zero() || g.is_zero()) return Polynomial(f.vars_, f.order_);
        if (g.is_constant()) return f * g.terms_[0].coeff;
        if (f.is_constant()) return g * f.terms_[0].coeff;
        const Polynomial &big = f.size() >= g.size() ? f : g;
        const Polynomial &small = f.size() >= g.size() ? g : f;
        // One shifted copy of `big` per term of `small` (each stays sorted since
        // the order is multiplicative), then a balanced merge tree.
        std::vector<Polynomial> parts;
        parts.reserve(small.size());
        const Polynomial zero(f.vars_, f.order_);
        for (const auto &s : small.terms_) parts.push_back(zero.add_scaled(big, s.coeff, s.monomial));
        while (parts.size() > 1) {
            std::vector<Polynomial> next;
            next.reserve((parts.size() + 1) / 2);
            for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
            if (parts.size() % 2) next.push_back(std::move(parts.back()));
            parts = std::move(next);
        }
        return std::move(parts.front());
    }
    Polynomial &operator*=(const Polynomial &g) { return *this = *this * g; }

    friend Polynomial operator*(const Polynomial &f, const Rational &c)
    {
        Polynomial p(f.vars_, f.order_);
        if (c.is_zero()) return p;
        p.terms_ = f.terms_;
        for (auto &t : p.terms_) t.coeff *= c;
        return p;
    }
    friend Polynomial operator*(const Rational &c, const Polynomial &f) { return f * c; }
    friend Polynomial operator/(const Polynomial &f, const Rational &c) { return f * c.inverse(); }

    /// this + c * m * g, computed by a single merge.
    Polynomial add_scaled(const Polynomial &g, const Rational &c, const Monomial &m) const
    {
        check_same_ring(g);
        Polynomial r(vars_, order_);
        if (c.is_zero()) return *this;
        r.terms_.reserve(terms_.size() + g.terms_.size());
        auto i = terms_.begin();
        auto j = g.terms_.begin();
        while (i != terms_.end() || j != g.terms_.end()) {
            if (j == g.terms_.end()) {
                r.terms_.push_back(*i++);
                continue;
            }
            Monomial mj = j->monomial * m;
            int cmp = i == terms_.end() ? -1 : compare_monomials(i->monomial, mj, order_);
            if (cmp > 0) {
                r.terms_.push_back(*i++);
            } else if (cmp < 0) {
                r.terms_.push_back({mj, j->coeff * c});
                ++j;
            } else {
                Rational s = i->coeff + j->coeff * c;
                if (!s.is_zero()) r.terms_.push_back({mj, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    Polynomial pow(unsigned e) const
    {
        Polynomial result = constant(vars_, Rational(1), order_);
        Polynomial base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    Polynomial partial_derivative(std::size_t var) const
    {
        if (var >= vars_.size()) throw UnknownVariable("partial_derivative: variable index out of range");
        std::vector<Term> out;
        for (const auto &t : terms_) {
            unsigned e = t.monomial[var];
            if (e == 0) continue;
            Monomial m = t.monomial;
            m.set(var, e - 1);
            out.push_back({m, t.coeff * Rational(static_cast<long>(e))});
        }
        return from_terms(vars_, std::move(out), order_);
    }
    Polynomial partial_derivative(std::string_view var) const { return partial_derivative(vars_.index(var)); }

    /// Exact value at a point; every variable that occurs must be bound.
    Rational evaluate(const std::map<std::string, Rational> &point) const
    {
        std::vector<std::optional<Rational>> values(vars_.size());
        for (const auto &[name, v] : point) {
            if (auto i = vars_.find(name)) values[*i] = v;
        }
        Rational sum(0);
        for (const auto &t : terms_) {
            Rational prod = t.coeff;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (t.monomial[i] == 0) continue;
                if (!values[i]) throw UnknownVariable("evaluate: unbound variable '" + vars_.name(i) + "'");
                prod *= values[i]->pow(static_cast<int>(t.monomial[i]));
            }
            sum += prod;
        }
        return sum;
    }

    /**
     * Replaces bound variables by polynomial images living in `target`.
     * Unbound variables are carried over by name and must exist in `target`.
     */
    Polynomial substitute(const std::map<std::string, Polynomial> &bindings, const VariableSet &target) const
    {
        std::vector<std::optional<Polynomial>> images(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = bindings.find(vars_.name(i));
            if (it != bindings.end()) {
                if (!(it->second.variables() == target))
                    throw VariableSetMismatch("substitute: image of '" + vars_.name(i) + "' is not in the target ring");
                images[i] = it->second.with_order(order_);
            } else if (auto j = target.find(vars_.name(i))) {
                images[i] = variable(target, target.name(*j), order_);
            } else if (involves(i)) {
                throw VariableSetMismatch("substitute: variable '" + vars_.name(i) + "' has no image in the target ring");
            }
        }
        // Cache powers per variable.
        std::vector<std::vector<Polynomial>> powers(vars_.size());
        auto power = [&](std::size_t i, unsigned e) -> const Polynomial & {
            auto &cache = powers[i];
            if (cache.empty()) cache.push_back(constant(target, Rational(1), order_));
            while (cache.size() <= e) cache.push_back(cache.back() * *images[i]);
            return cache[e];
        };
        Polynomial sum(target, order_);
        for (const auto &t : terms_) {
            Polynomial prod = constant(target, t.coeff, order_);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (t.monomial[i]) prod *= power(i, t.monomial[i]);
            sum += prod;
        }
        return sum;
    }
    Polynomial substitute(const std::map<std::string, Polynomial> &bindings) const
    {
        return substitute(bindings, vars_);
    }
    Polynomial substitute(const std::map<std::string, Rational> &values) const
    {
        std::map<std::string, Polynomial> b;
        for (const auto &[k, v] : values) b.emplace(k, constant(vars_, v, order_));
        return substitute(b, vars_);
    }

    /**
     * den^d * f(var = num/den) with d the degree of f in var; a polynomial
     * whenever den is. Used to eliminate a variable solved from a linear
     * relation without leaving the polynomial ring.
     */
    Polynomial substitute_fraction(std::string_view var, const Polynomial &num, const Polynomial &den) const
    {
        check_same_ring(num);
        check_same_ring(den);
        const std::size_t v = vars_.index(var);
        const unsigned d = degree_in(v);
        std::vector<Polynomial> num_pow{constant(vars_, Rational(1), order_)};
        std::vector<Polynomial> den_pow{constant(vars_, Rational(1), order_)};
        for (unsigned k = 1; k <= d; ++k) {
            num_pow.push_back(num_pow.back() * num);
            den_pow.push_back(den_pow.back() * den);
        }
        std::vector<Polynomial> by_power(d + 1, Polynomial(vars_, order_));
        for (const auto &t : terms_) {
            Monomial m = t.monomial;
            unsigned e = m[v];
            m.set(v, 0);
            by_power[e] = by_power[e].add_scaled(constant(vars_, Rational(1), order_), t.coeff, m);
        }
        Polynomial sum(vars_, order_);
        for (unsigned e = 0; e <= d; ++e)
            if (!by_power[e].is_zero()) sum += by_power[e] * num_pow[e] * den_pow[d - e];
        return sum;
    }

    /// Coefficient of var^e, as a polynomial free of var.
    Polynomial coefficient_of(std::size_t var, unsigned e) const
    {
        std::vector<Term> out;
        for (const auto &t : terms_) {
            if (t.monomial[var] != e) continue;
            Monomial m = t.monomial;
            m.set(var, 0);
            out.push_back({m, t.coeff});
        }
        return from_terms(vars_, std::move(out), order_);
    }
    Polynomial coefficient_of(std::string_view var, unsigned e) const { return coefficient_of(vars_.index(var), e); }

    /// Positive rational scalar times which the coefficients become coprime integers
    /// with positive leading coefficient (under this polynomial's order).
    Rational primitive_scale() const
    {
        if (is_zero()) throw std::domain_error("primitive_normalize: zero polynomial");
        mpz_class den_lcm = 1;
        mpz_class num_gcd = 0;
        for (const auto &t : terms_) {
            den_lcm = lcm(den_lcm, t.coeff.denominator());
            num_gcd = gcd(num_gcd, abs(t.coeff.numerator()));
        }
        Rational scale(den_lcm, num_gcd);
        if (leading_coefficient().sign() < 0) scale = -scale;
        return scale;
    }

    Polynomial primitive_normalize() const { return *this * primitive_scale(); }
    Polynomial primitive_normalize(OrderKind order) const { return with_order(order).primitive_normalize(); }

    Polynomial monic() const { return *this / leading_coefficient(); }

    friend bool operator==(const Polynomial &f, const Polynomial &g)
    {
        if (!(f.vars_ == g.vars_) || f.terms_.size() != g.terms_.size()) return false;
        if (f.order_ == g.order_) {
            for (std::size_t i = 0; i < f.terms_.size(); ++i)
                if (!(f.terms_[i].monomial == g.terms_[i].monomial) || !(f.terms_[i].coeff == g.terms_[i].coeff))
                    return false;
            return true;
        }
        return f == g.with_order(f.order_);
    }

    void check_same_ring(const Polynomial &g) const
    {
        if (!(vars_ == g.vars_)) throw VariableSetMismatch("polynomials over different variable sets");
        if (order_ != g.order_) throw VariableSetMismatch("polynomials under different monomial orders");
    }

    /// Structural self-check of the canonical-form invariants.
    bool is_canonical() const
    {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coeff.is_zero() || terms_[i].monomial.size() != vars_.size()) return false;
            unsigned d = 0;
            for (std::size_t k = 0; k < vars_.size(); ++k) d += terms_[i].monomial[k];
            if (d != terms_[i].monomial.degree()) return false;
            if (i > 0 && compare_monomials(terms_[i - 1].monomial, terms_[i].monomial, order_) <= 0) return false;
        }
        return true;
    }

private:
    static Polynomial combine(const Polynomial &f, const Polynomial &g, bool subtract)
    {
        return f.add_scaled(g, Rational(subtract ? -1 : 1), Monomial(f.vars_.size()));
    }

    void sort_terms()
    {
        std::sort(terms_.begin(), terms_.end(), [this](const Term &a, const Term &b) {
            return compare_monomials(a.monomial, b.monomial, order_) > 0;
        });
    }

    void canonicalize()
    {
        sort_terms();
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!out.empty() && out.back().monomial == t.monomial) {
                out.back().coeff += t.coeff;
            } else {
                if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        terms_ = std::move(out);
    }

    VariableSet vars_;
    OrderKind order_ = OrderKind::lex;
    std::vector<Term> terms_;
};

// Free-function spellings of the core operations.
inline Polynomial add(const Polynomial &f, const Polynomial &g) { return f + g; }
inline Polynomial mul(const Polynomial &f, const Polynomial &g) { return f * g; }
inline Polynomial partial_derivative(const Polynomial &f, std::string_view v) { return f.partial_derivative(v); }
inline Rational evaluate(const Polynomial &f, const std::map<std::string, Rational> &point) { return f.evaluate(point); }
inline Polynomial primitive_normalize(const Polynomial &f, OrderKind order) { return f.primitive_normalize(order); }

/// True when f is a nonzero rational multiple of g.
inline bool is_scalar_multiple(const Polynomial &f, const Polynomial &g)
{
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    return f.primitive_normalize() == g.with_order(f.order()).primitive_normalize();
}

/// The scalar s with f = s * g, if any.
inline std::optional<Rational> scalar_ratio(const Polynomial &f, const Polynomial &g)
{
    if (g.is_zero() || f.size() != g.size()) return std::nullopt;
    const Polynomial gg = g.with_order(f.order());
    Rational s = f.leading_coefficient() / gg.leading_coefficient();
    if (f == gg * s) return s;
    return std::nullopt;
}

} // namespace bhv
