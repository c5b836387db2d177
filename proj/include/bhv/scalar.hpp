#pragma once

/**
 * @file scalar.hpp
 * @brief Exact arbitrary-precision rationals.
 *
 * Rational is a thin value type over GMP's mpq_class. GMP keeps every value
 * canonical (coprime, positive denominator, zero as 0/1); the wrapper adds
 * the text format used across the project and a few helpers the symbolic
 * layers need.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bhv {

class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long v) : q_(v) {} // NOLINT(google-explicit-constructor)
    Rational(long long v) : q_(mpz_class(std::to_string(v))) {} // NOLINT
    explicit Rational(mpz_class num) : q_(std::move(num)) {}
    Rational(mpz_class num, mpz_class den)
    {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(std::move(num), std::move(den));
        q_.canonicalize();
    }
    explicit Rational(const mpq_class &q) : q_(q) { q_.canonicalize(); }

    /// Exact value of a finite double (every finite double is a dyadic rational).
    static Rational from_double(double d)
    {
        if (!(d == d) || d - d != 0.0) throw std::domain_error("Rational: non-finite double");
        Rational r;
        mpq_set_d(r.q_.get_mpq_t(), d);
        return r;
    }

    /// Parses "n", "-n", "n/d"; accepts U+2212 as a minus sign.
    static Rational parse(std::string_view text)
    {
        std::string s;
        s.reserve(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            unsigned char ch = static_cast<unsigned char>(text[i]);
            if (ch == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                static_cast<unsigned char>(text[i + 2]) == 0x92) {
                s.push_back('-');
                i += 2;
            } else if (ch != ' ') {
                s.push_back(static_cast<char>(ch));
            }
        }
        auto slash = s.find('/');
        auto digits_ok = [](std::string_view part, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
            if (i == part.size()) return false;
            for (; i < part.size(); ++i)
                if (part[i] < '0' || part[i] > '9') return false;
            return true;
        };
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!digits_ok(num, true) || !digits_ok(den, false))
            throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
        if (num[0] == '+') num.erase(0, 1);
        return Rational(mpz_class(num), mpz_class(den));
    }

    const mpq_class &raw() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    bool is_one() const noexcept { return q_ == 1; }
    bool is_integer() const noexcept { return q_.get_den() == 1; }
    int sign() const noexcept { return sgn(q_); }
    double to_double() const { return q_.get_d(); }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational inverse() const
    {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / q_));
    }
    Rational pow(int e) const
    {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(std::move(n), std::move(d));
    }

    std::string to_string() const
    {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
    Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
    Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

inline Rational add(const Rational &x, const Rational &y) { return x + y; }
inline Rational mul(const Rational &x, const Rational &y) { return x * y; }
inline std::strong_ordering compare(const Rational &x, const Rational &y) { return x <=> y; }

/// gcd of two non-negative integers (used for primitive parts).
inline mpz_class gcd(const mpz_class &a, const mpz_class &b)
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm(const mpz_class &a, const mpz_class &b)
{
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline mpz_class binomial(unsigned n, unsigned k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline mpz_class factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace bhv

template <>
struct std::hash<bhv::Rational> {
    std::size_t operator()(const bhv::Rational &r) const noexcept
    {
        return std::hash<std::string>{}(r.to_string());
    }
};
