#pragma once

/**
 * @file fixtures.hpp
 * @brief Reference polynomials that derived results are compared against.
 *
 * Each fixture is text in the poly_io format and is parsed over whatever
 * ring the caller supplies, so a fixture only needs the symbols it uses.
 */

#include "bhv/poly.hpp"
#include "bhv/poly_io.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhv {

struct Fixture {
    std::string name;
    std::string note;
    std::string text;
};

class FixtureSet {
public:
    FixtureSet() = default;
    explicit FixtureSet(std::vector<Fixture> items) : items_(std::move(items)) {}

    const std::vector<Fixture> &items() const { return items_; }

    const Fixture &get(std::string_view name) const
    {
        for (const auto &f : items_)
            if (f.name == name) return f;
        throw std::out_of_range("no fixture '" + std::string(name) + "'");
    }

    bool contains(std::string_view name) const
    {
        for (const auto &f : items_)
            if (f.name == name) return true;
        return false;
    }

    Polynomial polynomial(std::string_view name, const VariableSet &vars, OrderKind order = OrderKind::lex) const
    {
        return parse_polynomial(get(name).text, vars, order);
    }

    /// Replaces the text of an existing fixture; used for negative controls.
    void set(std::string_view name, std::string text)
    {
        for (auto &f : items_)
            if (f.name == name) {
                f.text = std::move(text);
                return;
            }
        throw std::out_of_range("no fixture '" + std::string(name) + "'");
    }

private:
    std::vector<Fixture> items_;
};

inline const FixtureSet &default_fixtures()
{
    static const FixtureSet set(std::vector<Fixture>{
        // exponential-convention coefficients of r
        {"r2", "r[2]", "r0 + c0*r0^2"},
        {"r3", "r[3]", "r1 + 2*c0*r0*r1 + c1*r0^2"},
        {"r4", "r[4]", "r0 + 4*c0*r0^2 + 2*c0^2*r0^3 + 2*c0*r1^2 + 4*c1*r0*r1"},
        {"r5", "r[5]", "r1 + 16*c0*r0*r1 + 10*c0^2*r0^2*r1 + 8*c0*c1*r0^3 + 8*c1*r0^2 + 6*c1*r1^2"},
        {"r6", "r[6]",
         "r0 + 25*c0*r0^2 + 34*c0^2*r0^3 + 10*c0^3*r0^4 + 22*c0*r1^2 + 20*c0^2*r0*r1^2"
         " + 44*c1*r0*r1 + 56*c0*c1*r0^2*r1 + 8*c1^2*r0^3"},
        {"r7", "r[7]",
         "r1 + 138*c0*r0*r1 + 242*c0^2*r0^2*r1 + 80*c0^3*r0^3*r1 + 69*c1*r0^2"
         " + 184*c0*c1*r0^3 + 86*c0^2*c1*r0^4 + 66*c1*r1^2 + 152*c0*c1*r0*r1^2"
         " + 80*c1^2*r0^2*r1 + 20*c0^2*r1^3"},
        // q = (alpha tau, beta)
        {"x2", "x[2]", "0"},
        {"x3", "x[3]", "alpha*r0^2"},
        {"x4", "x[4]", "4*alpha*r0*r1"},
        {"x5", "x[5]", "6*alpha*r1^2 + 6*alpha*r0^2 + 6*alpha*c0*r0^3"},
        {"x6", "x[6]", "32*alpha*r0*r1 + 40*alpha*c0*r0^2*r1 + 8*alpha*c1*r0^3"},
        {"y2", "y[2]", "beta*r0^2"},
        {"y3", "y[3]", "2*beta*r0*r1"},
        {"y4", "y[4]", "2*beta*r1^2 + 2*beta*r0^2 + 2*beta*c0*r0^3"},
        {"y5", "y[5]", "8*beta*r0*r1 + 10*beta*c0*r0^2*r1 + 2*beta*c1*r0^3"},
        {"y6", "y[6]",
         "8*beta*r0^2 + 20*beta*c0*r0^3 + 10*beta*c0^2*r0^4 + 8*beta*r1^2 + 20*beta*c0*r0*r1^2"
         " + 16*beta*c1*r0^2*r1"},
        {"y7", "y[7]",
         "32*beta*r0*r1 + 132*beta*c0*r0^2*r1 + 36*beta*c1*r0^3 + 80*beta*c0^2*r0^3*r1"
         " + 36*beta*c0*c1*r0^4 + 20*beta*c0*r1^3 + 52*beta*c1*r0*r1^2"},
        // constraint system over [A, B, u, p, t]
        {"E0", "arc-length tau^0", "B*(B + p*u + t + t^2)^2 + A*p^2*(B + t^2) - A*B"},
        {"E2", "compatibility tau^2", "2*B*p + 2*p*t^2 + 2*p*t + 3*t*u + 2*u"},
        {"E3", "compatibility tau^3",
         "3*A + 2*B*p^2 + 2*B*t + 2*B + 2*p^2*t^2 + 10*p*t*u + 4*p*u + 2*t^3 + 7*t^2 + 4*t + 3*u^2"},
        {"E4", "compatibility tau^4",
         "8*A*p + 5*B*p*t + 4*B*p + B*u + 7*p^2*t*u + 5*p*t^3 + 14*p*t^2 + 4*p*t + 8*p*u^2 + 8*t^2*u"
         " + 17*t*u + 4*u"},
        {"E5", "compatibility tau^5",
         "15*A*p^2 + 15*A*t + 15*A + 10*B*p^2*t + 4*B*p^2 + 8*B*p*u + 5*B*t^2 + 10*B*t + 4*B"
         " + 10*p^2*t^3 + 21*p^2*t^2 + 15*p^2*u^2 + 53*p*t^2*u + 92*p*t*u + 8*p*u + 5*t^4 + 27*t^3"
         " + 35*t^2 + 24*t*u^2 + 8*t + 25*u^2"},
        {"E6", "compatibility tau^6",
         "120*A*p*t + 96*A*p + 24*A*u + 10*B*p^3*t + 26*B*p^2*u + 40*B*p*t^2 + 66*B*p*t + 16*B*p"
         " + 18*B*t*u + 18*B*u + 10*p^3*t^3 + 136*p^2*t^2*u + 164*p^2*t*u + 40*p*t^4 + 196*p*t^3"
         " + 204*p*t^2 + 208*p*t*u^2 + 16*p*t + 172*p*u^2 + 73*t^3*u + 274*t^2*u + 220*t*u + 24*u^3"
         " + 16*u"},
        {"VII.target", "ideal member", "p*t^4"},
        {"VII.t0.E4", "t = 0, u = -B p, divided by p", "8*A + 8*B^2*p^2 - B^2"},
        {"VII.t0.E3", "t = 0 after eliminating u and A", "3/8*B^2 + 2*B*(1 - p^2)"},
        {"VII.2a.E3", "p = u = 0, A eliminated", "3*(B + t + t^2)^2 + 2*B*(t + 1) + 2*t^3 + 7*t^2 + 4*t"},
        {"VII.2a.E5", "p = u = 0, A eliminated",
         "15*(B + t + t^2)^2*(t + 1) + 5*B*t^2 + 10*B*t + 4*B + 5*t^4 + 27*t^3 + 35*t^2 + 8*t"},
        {"VII.2a.B.num", "B numerator", "-(5*t^4 + 18*t^3 + 20*t^2 + 12*t)"},
        {"VII.2a.B.den", "B denominator", "5*t^2 + 10*t + 6"},
        {"VII.2a.eliminant", "B eliminated", "12*t^2*(18*t^4 + 73*t^3 + 140*t^2 + 120*t + 54)"},
        {"VII.2a.quartic", "eliminant factor", "18*t^4 + 73*t^3 + 140*t^2 + 120*t + 54"},
        {"VII.2a.decomposition", "sum of squares form",
         "18*(t^2 + 73/36*t + 120/73)^2 + 2612159/383688*t^2 + 2056752/383688"},
        {"VII.2b.B", "p = 0, t = -2/3", "34/9"},
        {"VII.2b.A", "p = 0, t = -2/3", "(32/9)^2"},
        {"VII.2b.E3", "p = 0, t = -2/3", "1088/27 + 3*u^2"},
        // q = (alpha tau, 0), over [A, u, v, p, t] unless noted
        {"VI.comp2", "tau^2/2! coefficient over [c0, c1, r2, r3]", "c1*r2 + c0/2*r3"},
        {"VI.comp2.r1zero", "after r1 = 0", "c1*r0*(1 + 3/2*c0*r0)"},
        {"VI.2a.r4", "r[4]/r0 at u = p = 0", "2*t^2 + 4*t + 1"},
        {"VI.2a.E3", "p = u = 0", "3*A + 2*t^3 + 7*t^2 + 4*t"},
        {"VI.2a.E5", "p = u = 0", "15*A*(t + 1) + 5*t^4 + 27*t^3 + 35*t^2 + 8*t"},
        {"VI.f", "A eliminated", "5*t^3 + 18*t^2 + 20*t + 12"},
        {"VI.phi", "3A = -t phi", "2*t^2 + 7*t + 4"},
        {"VI.interval.lo", "root bracket", "-12/5"},
        {"VI.interval.hi", "root bracket", "-9/4"},
        {"VI.2b.r2", "r[2]/r0 at t = -2/3", "1/3"},
        {"VI.2b.r3", "r[3]/r0 at t = -2/3", "u"},
        {"VI.2b.r4", "r[4]/r0 at t = -2/3", "-7/9"},
        {"VI.2b.r5", "r[5]/r0 at t = -2/3", "8/3*u"},
        {"VI.2b.E3", "81 r0^2 (alpha^2 + c1^2) = 4", "81*A + 81*u^2 - 4"},
        {"VI.2b.tau4", "ordinary tau^4 coefficient", "-17/54*u"},
        // q = (alpha, 0), over [r, rd, c, cd, alpha, sigma]
        {"V.arc", "arc-length with x' eliminated, over [r, rd, c, alpha, k]",
         "(alpha^2 + c^2)*rd^2 + alpha^2*k^2 - alpha^2*r^2"},
        {"V.G", "derivative of the compatibility relation", "cd*rd + c*r + (alpha^2 + c^2)*r^2"},
        {"V.1.G2.num", "second derivative at r = -c/(alpha^2 + c^2)",
         "2*(alpha^2 + c^2)^3*rd^2 + c^2*(c^2 - 2*alpha^2)"},
        {"V.1.G2.den", "", "(alpha^2 + c^2)^2"},
        {"V.1.G3.num", "third derivative", "-10*c^3*rd"},
        {"V.1.G3.den", "", "alpha^2 + c^2"},
        {"V.1.G4", "fourth derivative", "56/9"},
        {"V.2.G1", "first derivative at c = 0", "2*r*(alpha^2*rd + cd)"},
        {"V.2.G2.num", "second derivative", "3*cd^4"},
        {"V.2.G2.den", "", "alpha^4"},
        {"V.3.r.num", "", "-c*(c^2 + 4*alpha^2)"},
        {"V.3.r.den", "", "2*(alpha^2 + c^2)^2"},
        {"V.3.rd.num", "", "sigma*c*(c^2 - 2*alpha^2)*(c^2 + 4*alpha^2)"},
        {"V.3.rd.den", "", "4*(alpha^2 + c^2)^3"},
        {"V.3.G2.num", "second derivative", "c^4*(c^2 + 4*alpha^2)^2*(c^2 + 16*alpha^2)"},
        {"V.3.G2.den", "", "8*(alpha^2 + c^2)^5"},
        // q nonconstant, c = 0
        {"III.r2", "second derivative of L w^(-3/4), times w^(11/4)/L",
         "15/4*alpha^4*tau^2 - 3/2*alpha^2*beta^2"},
        {"III.tau4", "tau^4 coefficient of the difference with w^2", "-alpha^4"},
    });
    return set;
}

} // namespace bhv
