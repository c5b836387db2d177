#pragma once

/**
 * @file series.hpp
 * @brief Truncated Taylor series in tau with polynomial coefficients.
 *
 * Series use the exponential convention: s(tau) = sum_n s[n] tau^n / n!, so
 * differentiation is a shift and products are binomial convolutions.
 */

#include "bhv/poly.hpp"
#include "bhv/poly_io.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhv {

class TruncatedSeries {
public:
    TruncatedSeries() = default;

    /// Zero series with coefficients 0..order.
    TruncatedSeries(const VariableSet &vars, unsigned order, OrderKind ring_order = OrderKind::lex)
        : coeffs_(order + 1, Polynomial(vars, ring_order))
    {
    }

    explicit TruncatedSeries(std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: no coefficients");
        for (const auto &c : coeffs_) coeffs_.front().check_same_ring(c);
    }

    static TruncatedSeries constant(const Polynomial &c, unsigned order)
    {
        TruncatedSeries s(c.variables(), order, c.order());
        s.coeffs_[0] = c;
        return s;
    }

    /// a + b*tau.
    static TruncatedSeries linear(const Polynomial &a, const Polynomial &b, unsigned order)
    {
        TruncatedSeries s = constant(a, order);
        if (order >= 1) s.coeffs_[1] = b;
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const VariableSet &variables() const { return coeffs_.front().variables(); }
    const Polynomial &operator[](std::size_t n) const { return coeffs_.at(n); }
    Polynomial &operator[](std::size_t n) { return coeffs_.at(n); }
    const std::vector<Polynomial> &coefficients() const { return coeffs_; }

    bool is_zero() const
    {
        for (const auto &c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    TruncatedSeries truncated(unsigned order) const
    {
        if (order > this->order()) throw std::invalid_argument("TruncatedSeries: cannot extend by truncation");
        return TruncatedSeries(std::vector<Polynomial>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    friend TruncatedSeries operator+(const TruncatedSeries &f, const TruncatedSeries &g)
    {
        return zip(f, g, [](const Polynomial &a, const Polynomial &b) { return a + b; });
    }
    friend TruncatedSeries operator-(const TruncatedSeries &f, const TruncatedSeries &g)
    {
        return zip(f, g, [](const Polynomial &a, const Polynomial &b) { return a - b; });
    }
    friend TruncatedSeries operator*(const TruncatedSeries &f, const Polynomial &c)
    {
        TruncatedSeries out = f;
        for (auto &x : out.coeffs_) x = x * c;
        return out;
    }
    friend TruncatedSeries operator*(const TruncatedSeries &f, const Rational &c)
    {
        TruncatedSeries out = f;
        for (auto &x : out.coeffs_) x = x * c;
        return out;
    }

    /// Exponential-convention product: (fg)[n] = sum_j C(n,j) f[j] g[n-j].
    friend TruncatedSeries operator*(const TruncatedSeries &f, const TruncatedSeries &g)
    {
        f.coeffs_.front().check_same_ring(g.coeffs_.front());
        const unsigned n = std::min(f.order(), g.order());
        TruncatedSeries out(f.variables(), n, f.coeffs_.front().order());
        for (unsigned k = 0; k <= n; ++k) out.coeffs_[k] = product_coefficient(f, g, k);
        return out;
    }

    /// Single coefficient of the product, for recurrences that grow a series in place.
    static Polynomial product_coefficient(const TruncatedSeries &f, const TruncatedSeries &g, unsigned k)
    {
        Polynomial acc(f.variables(), f.coeffs_.front().order());
        for (unsigned j = 0; j <= k; ++j) {
            if (f.coeffs_[j].is_zero() || g.coeffs_[k - j].is_zero()) continue;
            acc += f.coeffs_[j] * g.coeffs_[k - j] * Rational(binomial(k, j));
        }
        return acc;
    }

    /// (s')[n] = s[n+1]; the order drops by one.
    TruncatedSeries derivative() const
    {
        if (order() == 0) throw std::invalid_argument("TruncatedSeries: derivative of an order-0 series");
        return TruncatedSeries(std::vector<Polynomial>(coeffs_.begin() + 1, coeffs_.end()));
    }

    /// tau * s: (tau s)[n] = n s[n-1].
    TruncatedSeries times_tau() const
    {
        TruncatedSeries out(variables(), order(), coeffs_.front().order());
        for (unsigned n = 1; n <= order(); ++n) out.coeffs_[n] = coeffs_[n - 1] * Rational(static_cast<long>(n));
        return out;
    }

    /// Ordinary Taylor coefficients s[n]/n!.
    std::vector<Polynomial> ordinary() const
    {
        std::vector<Polynomial> out;
        for (unsigned n = 0; n <= order(); ++n) out.push_back(coeffs_[n] / Rational(factorial(n)));
        return out;
    }

    static TruncatedSeries from_ordinary(const std::vector<Polynomial> &a)
    {
        std::vector<Polynomial> c;
        for (std::size_t n = 0; n < a.size(); ++n) c.push_back(a[n] * Rational(factorial(static_cast<unsigned>(n))));
        return TruncatedSeries(std::move(c));
    }

    /// Value of the truncated sum at a rational tau once every symbol is bound.
    Rational evaluate(const std::map<std::string, Rational> &point, const Rational &tau) const
    {
        Rational sum(0), power(1);
        for (unsigned n = 0; n <= order(); ++n) {
            sum += coeffs_[n].evaluate(point) * power / Rational(factorial(n));
            power *= tau;
        }
        return sum;
    }

    TruncatedSeries substitute(const std::map<std::string, Polynomial> &bindings, const VariableSet &target) const
    {
        std::vector<Polynomial> c;
        for (const auto &x : coeffs_) c.push_back(x.substitute(bindings, target));
        return TruncatedSeries(std::move(c));
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b) { return a.coeffs_ == b.coeffs_; }

private:
    template <typename Op>
    static TruncatedSeries zip(const TruncatedSeries &f, const TruncatedSeries &g, Op op)
    {
        f.coeffs_.front().check_same_ring(g.coeffs_.front());
        const unsigned n = std::min(f.order(), g.order());
        std::vector<Polynomial> c;
        for (unsigned k = 0; k <= n; ++k) c.push_back(op(f.coeffs_[k], g.coeffs_[k]));
        return TruncatedSeries(std::move(c));
    }

    std::vector<Polynomial> coeffs_;
};

inline TruncatedSeries series_mul(const TruncatedSeries &f, const TruncatedSeries &g) { return f * g; }
inline TruncatedSeries series_derivative(const TruncatedSeries &f) { return f.derivative(); }

/// One line per coefficient: "r[3] = r1 + 2*c0*r0*r1 + c1*r0^2".
inline std::string dump_series(const std::string &name, const TruncatedSeries &s)
{
    std::string out;
    for (unsigned n = 0; n <= s.order(); ++n) out += name + "[" + std::to_string(n) + "] = " + to_string(s[n]) + "\n";
    return out;
}

/**
 * Initial-value data for  x'' = a r^2,  y'' = b r^2,  r'' = r + c r^2,  c'' = c
 * with q = (a, b) = (a0 + a1 tau, b0 + b1 tau). Every entry is a polynomial in
 * `vars`, so parameters may be symbols or rational constants.
 */
struct ProfileIVP {
    VariableSet vars;
    Polynomial a0, a1, b0, b1;
    Polynomial r0, r1, c0, c1;
    Polynomial x1, y1;
    unsigned order = 10;

    static constexpr unsigned kMinimumOrder = 8;
};

struct ProfileSeries {
    TruncatedSeries x, y, r, c;
    TruncatedSeries a, b;
};

/// Coefficients by recurrence; x[0] = y[0] = 0 since only derivatives of x, y matter.
inline ProfileSeries solve_profile_ivp(const ProfileIVP &ivp)
{
    const unsigned N = ivp.order;
    if (N < ProfileIVP::kMinimumOrder)
        throw std::invalid_argument("solve_profile_ivp: truncation order " + std::to_string(N) + " is below " +
                                    std::to_string(ProfileIVP::kMinimumOrder));
    const VariableSet &v = ivp.vars;
    ProfileSeries s;
    s.c = TruncatedSeries(v, N);
    s.c[0] = ivp.c0;
    s.c[1] = ivp.c1;
    for (unsigned n = 2; n <= N; ++n) s.c[n] = s.c[n - 2];

    s.r = TruncatedSeries(v, N);
    s.r[0] = ivp.r0;
    s.r[1] = ivp.r1;
    TruncatedSeries r2(v, N), cr2(v, N);
    for (unsigned n = 0; n + 2 <= N; ++n) {
        r2[n] = TruncatedSeries::product_coefficient(s.r, s.r, n);
        cr2[n] = TruncatedSeries::product_coefficient(s.c, r2, n);
        s.r[n + 2] = s.r[n] + cr2[n];
    }
    for (unsigned n = N - 1; n <= N; ++n) r2[n] = TruncatedSeries::product_coefficient(s.r, s.r, n);

    s.a = TruncatedSeries::linear(ivp.a0, ivp.a1, N);
    s.b = TruncatedSeries::linear(ivp.b0, ivp.b1, N);
    const TruncatedSeries ar2 = s.a * r2;
    const TruncatedSeries br2 = s.b * r2;
    s.x = TruncatedSeries(v, N);
    s.y = TruncatedSeries(v, N);
    s.x[1] = ivp.x1;
    s.y[1] = ivp.y1;
    for (unsigned n = 0; n + 2 <= N; ++n) {
        s.x[n + 2] = ar2[n];
        s.y[n + 2] = br2[n];
    }
    return s;
}

/// Symbolic data for the case shapes q = (alpha tau, beta), (alpha tau, 0) and (alpha, 0).
namespace ivp {

inline Polynomial sym(const VariableSet &v, const char *name) { return Polynomial::variable(v, name); }

/// q = (alpha tau, beta); ring [r0, r1, c0, c1, alpha, beta, x1, y1].
inline ProfileIVP generic(unsigned order = 10)
{
    VariableSet v{"r0", "r1", "c0", "c1", "alpha", "beta", "x1", "y1"};
    Polynomial z(v);
    return {v, z, sym(v, "alpha"), sym(v, "beta"), z, sym(v, "r0"), sym(v, "r1"), sym(v, "c0"), sym(v, "c1"),
            sym(v, "x1"), sym(v, "y1"), order};
}

/// q = (alpha tau, 0); y' = k; ring [r0, r1, c0, c1, alpha, x1, k].
inline ProfileIVP parallel(unsigned order = 10)
{
    VariableSet v{"r0", "r1", "c0", "c1", "alpha", "x1", "k"};
    Polynomial z(v);
    return {v, z, sym(v, "alpha"), z, z, sym(v, "r0"), sym(v, "r1"), sym(v, "c0"), sym(v, "c1"),
            sym(v, "x1"), sym(v, "k"), order};
}

/// q = (alpha, 0); y' = k; ring [r0, r1, c0, c1, alpha, x1, k].
inline ProfileIVP constant_q(unsigned order = 10)
{
    VariableSet v{"r0", "r1", "c0", "c1", "alpha", "x1", "k"};
    Polynomial z(v);
    return {v, sym(v, "alpha"), z, z, z, sym(v, "r0"), sym(v, "r1"), sym(v, "c0"), sym(v, "c1"),
            sym(v, "x1"), sym(v, "k"), order};
}

} // namespace ivp

} // namespace bhv
