#pragma once

/**
 * @file univariate.hpp
 * @brief Resultants, Sturm chains and exact real-root counting.
 *
 * resultant() works on polynomials viewed as univariate in one variable
 * with multivariate coefficients (subresultant PRS, exact divisions only).
 * The Sturm tools require genuinely univariate input and run on dense
 * rational coefficient vectors.
 */

#include "bhv/poly.hpp"

#include <optional>
#include <vector>

namespace bhv {

class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EndpointIsRoot : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact quotient f / g; throws when g does not divide f.
inline Polynomial divide_exact(Polynomial f, const Polynomial &g)
{
    f.check_same_ring(g);
    if (g.is_zero()) throw std::domain_error("divide_exact: division by zero");
    Polynomial q(f.variables(), f.order());
    const Term &lt = g.leading_term();
    while (!f.is_zero()) {
        const Term &ft = f.leading_term();
        if (!lt.monomial.divides(ft.monomial)) throw std::domain_error("divide_exact: not divisible");
        Monomial m = ft.monomial / lt.monomial;
        Rational c = ft.coeff / lt.coeff;
        q = q.add_scaled(Polynomial::constant(f.variables(), Rational(1), f.order()), c, m);
        f = f.add_scaled(g, -c, m);
    }
    return q;
}

namespace detail {

/// Coefficients in `var`, lowest power first; trailing entries nonzero.
using PolyCoeffs = std::vector<Polynomial>;

inline PolyCoeffs to_coeffs(const Polynomial &f, std::size_t var)
{
    PolyCoeffs c;
    if (f.is_zero()) return c;
    const unsigned d = f.degree_in(var);
    c.reserve(d + 1);
    for (unsigned e = 0; e <= d; ++e) c.push_back(f.coefficient_of(var, e));
    return c;
}

inline Polynomial from_coeffs(const PolyCoeffs &c, std::size_t var, const VariableSet &vars, OrderKind order)
{
    Polynomial sum(vars, order);
    for (std::size_t e = 0; e < c.size(); ++e) {
        Monomial m(vars.size());
        m.set(var, static_cast<unsigned>(e));
        sum += c[e] * Polynomial::monomial(vars, m, Rational(1), order);
    }
    return sum;
}

inline void trim(PolyCoeffs &c)
{
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

inline int degree(const PolyCoeffs &c) { return static_cast<int>(c.size()) - 1; }

/// lc(b)^(deg a - deg b + 1) * a  mod  b.
inline PolyCoeffs pseudo_remainder(PolyCoeffs a, const PolyCoeffs &b)
{
    const int db = degree(b);
    const Polynomial &lcb = b.back();
    int e = degree(a) - db + 1;
    while (!a.empty() && degree(a) >= db) {
        const int shift = degree(a) - db;
        const Polynomial lca = a.back();
        for (auto &x : a) x = x * lcb;
        for (int i = 0; i <= db; ++i) a[i + shift] -= lca * b[i];
        trim(a);
        --e;
    }
    if (e > 0) {
        const Polynomial s = lcb.pow(static_cast<unsigned>(e));
        for (auto &x : a) x = x * s;
    }
    return a;
}

} // namespace detail

/**
 * Resultant of f and g with respect to `var`, via the subresultant
 * polynomial remainder sequence. The result is not normalized.
 */
inline Polynomial resultant(const Polynomial &f, const Polynomial &g, std::string_view var)
{
    f.check_same_ring(g);
    const VariableSet &vars = f.variables();
    const OrderKind order = f.order();
    const std::size_t v = vars.index(var);
    const Polynomial zero(vars, order);
    const Polynomial one = Polynomial::constant(vars, Rational(1), order);
    if (f.is_zero() || g.is_zero()) return zero;

    detail::PolyCoeffs a = detail::to_coeffs(f, v);
    detail::PolyCoeffs b = detail::to_coeffs(g, v);
    int da = detail::degree(a);
    int db = detail::degree(b);
    if (da == 0 && db == 0) throw DegenerateInput("resultant: both inputs are constant in " + std::string(var));
    if (da == 0) return a[0].pow(static_cast<unsigned>(db));
    if (db == 0) return b[0].pow(static_cast<unsigned>(da));

    Polynomial sign = one;
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
        if ((da % 2) && (db % 2)) sign = -sign;
    }
    Polynomial gg = one;
    Polynomial h = one;
    while (true) {
        const int delta = detail::degree(a) - detail::degree(b);
        if ((detail::degree(a) % 2) && (detail::degree(b) % 2)) sign = -sign;
        detail::PolyCoeffs r = detail::pseudo_remainder(a, b);
        a = b;
        const Polynomial divisor = gg * h.pow(static_cast<unsigned>(delta));
        for (auto &x : r) x = divide_exact(x, divisor);
        b = std::move(r);
        gg = a.back();
        if (delta == 1) {
            h = gg;
        } else if (delta > 1) {
            h = divide_exact(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
        if (b.empty()) return zero;
        if (detail::degree(b) == 0) break;
    }
    const int deg_a = detail::degree(a);
    Polynomial res = divide_exact(b[0].pow(static_cast<unsigned>(deg_a)), h.pow(static_cast<unsigned>(deg_a - 1)));
    return sign * res;
}

inline Polynomial resultant_univariate(const Polynomial &f, const Polynomial &g, std::string_view var)
{
    return resultant(f, g, var);
}

/// Dense univariate polynomial over Q, lowest degree first.
class UnivariatePoly {
public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    /// The variable index is the unique one occurring in f (0 if f is constant).
    static UnivariatePoly from_polynomial(const Polynomial &f, std::optional<std::size_t> *var_out = nullptr)
    {
        std::optional<std::size_t> var;
        for (std::size_t i = 0; i < f.variables().size(); ++i) {
            if (!f.involves(i)) continue;
            if (var) throw DegenerateInput("expected a univariate polynomial, got " + std::to_string(f.size()) +
                                           " terms in several variables");
            var = i;
        }
        std::vector<Rational> c(var ? f.degree_in(*var) + 1 : 1, Rational(0));
        for (const auto &t : f.terms()) c[var ? t.monomial[*var] : 0] += t.coeff;
        if (var_out) *var_out = var;
        return UnivariatePoly(std::move(c));
    }

    Polynomial to_polynomial(const VariableSet &vars, std::size_t var, OrderKind order) const
    {
        std::vector<Term> terms;
        for (std::size_t e = 0; e < c_.size(); ++e) {
            Monomial m(vars.size());
            if (e) m.set(var, static_cast<unsigned>(e));
            terms.push_back({m, c_[e]});
        }
        return Polynomial::from_terms(vars, std::move(terms), order);
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational &leading() const { return c_.back(); }
    const std::vector<Rational> &coeffs() const { return c_; }

    Rational operator()(const Rational &x) const
    {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UnivariatePoly derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
        return UnivariatePoly(std::move(d));
    }

    /// Remainder of euclidean division by a nonzero divisor.
    UnivariatePoly remainder(const UnivariatePoly &d) const
    {
        if (d.is_zero()) throw std::domain_error("remainder: division by zero");
        std::vector<Rational> r = c_;
        const int dd = d.degree();
        while (static_cast<int>(r.size()) - 1 >= dd && !r.empty()) {
            const int shift = static_cast<int>(r.size()) - 1 - dd;
            const Rational q = r.back() / d.leading();
            for (int i = 0; i <= dd; ++i) r[i + shift] -= q * d.c_[i];
            r.pop_back();
            while (!r.empty() && r.back().is_zero()) r.pop_back();
        }
        return UnivariatePoly(std::move(r));
    }

    /// Quotient by (x - a)^k for the largest k with (x - a)^k | f.
    UnivariatePoly deflate(const Rational &a) const
    {
        UnivariatePoly p = *this;
        while (!p.is_zero() && p(a).is_zero()) {
            // synthetic division
            std::vector<Rational> q(p.c_.size() - 1, Rational(0));
            Rational carry(0);
            for (std::size_t i = p.c_.size(); i-- > 1;) {
                carry = carry * a + p.c_[i];
                q[i - 1] = carry;
            }
            p = UnivariatePoly(std::move(q));
        }
        return p;
    }

    /// f(x + a)
    UnivariatePoly shift(const Rational &a) const
    {
        std::vector<Rational> r(c_.size(), Rational(0));
        // Horner in the ring of polynomials: r = r*(x+a) + c_i
        for (std::size_t i = c_.size(); i-- > 0;) {
            std::vector<Rational> nr(c_.size(), Rational(0));
            for (std::size_t j = 0; j + 1 < c_.size(); ++j) {
                nr[j + 1] += r[j];
                nr[j] += r[j] * a;
            }
            nr[0] += c_[i];
            r = std::move(nr);
        }
        return UnivariatePoly(std::move(r));
    }

    UnivariatePoly operator-() const
    {
        UnivariatePoly p = *this;
        for (auto &x : p.c_) x = -x;
        return p;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// One end of a real interval; empty value means infinite in the obvious direction.
struct Endpoint {
    std::optional<Rational> value;
    static Endpoint infinite() { return {}; }
    static Endpoint at(Rational v) { return {std::move(v)}; }
};

namespace detail {

inline std::vector<UnivariatePoly> sturm_sequence(const UnivariatePoly &f)
{
    std::vector<UnivariatePoly> chain{f};
    if (f.degree() <= 0) return chain;
    chain.push_back(f.derivative());
    while (true) {
        UnivariatePoly r = chain[chain.size() - 2].remainder(chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

/// Sign of p at x, or at -inf / +inf when x is empty.
inline int sign_at(const UnivariatePoly &p, const std::optional<Rational> &x, bool at_minus_infinity)
{
    if (p.is_zero()) return 0;
    if (x) return p(*x).sign();
    int s = p.leading().sign();
    if (at_minus_infinity && (p.degree() % 2)) s = -s;
    return s;
}

inline int sign_variations(const std::vector<UnivariatePoly> &chain, const std::optional<Rational> &x,
                           bool minus_infinity)
{
    int count = 0;
    int last = 0;
    for (const auto &p : chain) {
        int s = sign_at(p, x, minus_infinity);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

} // namespace detail

/// Standard Sturm sequence f, f', -rem(...), ... with exact coefficients.
inline std::vector<Polynomial> sturm_chain(const Polynomial &f)
{
    if (f.is_zero()) throw DegenerateInput("sturm_chain: zero polynomial");
    std::optional<std::size_t> var;
    UnivariatePoly u = UnivariatePoly::from_polynomial(f, &var);
    std::vector<Polynomial> out;
    for (const auto &p : detail::sturm_sequence(u))
        out.push_back(p.to_polynomial(f.variables(), var.value_or(0), f.order()));
    return out;
}

/// Number of sign variations of the chain at an endpoint (lower = true for the -inf side).
inline int sturm_variations(const std::vector<Polynomial> &chain, const Endpoint &x, bool lower)
{
    std::vector<UnivariatePoly> u;
    for (const auto &p : chain) u.push_back(UnivariatePoly::from_polynomial(p));
    return detail::sign_variations(u, x.value, lower);
}

/**
 * Distinct real roots of f in the open interval (lo, hi). Finite endpoints
 * must not be roots of f (EndpointIsRoot otherwise).
 */
inline int count_real_roots(const Polynomial &f, const Endpoint &lo, const Endpoint &hi)
{
    if (f.is_zero()) throw DegenerateInput("count_real_roots: zero polynomial");
    UnivariatePoly u = UnivariatePoly::from_polynomial(f);
    if (lo.value && hi.value && !(*lo.value < *hi.value)) throw std::invalid_argument("count_real_roots: empty interval");
    for (const auto *e : {&lo, &hi})
        if (e->value && u(*e->value).is_zero())
            throw EndpointIsRoot("count_real_roots: endpoint " + e->value->to_string() + " is a root");
    auto chain = detail::sturm_sequence(u);
    return detail::sign_variations(chain, lo.value, true) - detail::sign_variations(chain, hi.value, false);
}

/**
 * Half of the Cauchy lower bound on |x - a| over the roots x != a of f.
 * Moving a finite endpoint that is a root by this amount crosses no other root.
 */
inline Rational root_free_radius(const Polynomial &f, const Rational &a)
{
    UnivariatePoly g = UnivariatePoly::from_polynomial(f).deflate(a).shift(a);
    const auto &c = g.coeffs();
    if (c.size() <= 1) return Rational(1);
    Rational h0 = c[0].abs();
    Rational m(0);
    for (std::size_t i = 1; i < c.size(); ++i) m = std::max(m, c[i].abs());
    return h0 / (h0 + m) / Rational(2);
}

/// As count_real_roots, but finite endpoints that are roots are pulled inward first.
inline int count_real_roots_shrinking(const Polynomial &f, Endpoint lo, Endpoint hi)
{
    UnivariatePoly u = UnivariatePoly::from_polynomial(f);
    if (lo.value && u(*lo.value).is_zero()) lo.value = *lo.value + root_free_radius(f, *lo.value);
    if (hi.value && u(*hi.value).is_zero()) hi.value = *hi.value - root_free_radius(f, *hi.value);
    if (lo.value && hi.value && !(*lo.value < *hi.value)) return 0;
    return count_real_roots(f, lo, hi);
}

struct RootInterval {
    Rational lo;
    Rational hi; // lo == hi when the root was hit exactly
};

/// Disjoint isolating intervals of width <= max_width for the roots in (lo, hi).
inline std::vector<RootInterval> isolate_real_roots(const Polynomial &f, const Rational &lo, const Rational &hi,
                                                    const Rational &max_width)
{
    UnivariatePoly u = UnivariatePoly::from_polynomial(f);
    std::vector<RootInterval> out;
    std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = count_real_roots(f, Endpoint::at(a), Endpoint::at(b));
        if (n == 0) continue;
        if (n == 1 && b - a <= max_width) {
            out.push_back({a, b});
            continue;
        }
        Rational m = (a + b) / Rational(2);
        if (u(m).is_zero()) {
            out.push_back({m, m});
            Rational r = root_free_radius(f, m);
            if (a < m - r) stack.push_back({a, m - r});
            if (m + r < b) stack.push_back({m + r, b});
        } else {
            stack.push_back({m, b});
            stack.push_back({a, m});
        }
    }
    std::sort(out.begin(), out.end(), [](const RootInterval &x, const RootInterval &y) { return x.lo < y.lo; });
    return out;
}

} // namespace bhv
