#include "bhv/poly_io.hpp"
#include "bhv/univariate.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace bhv;

namespace {

const VariableSet &T()
{
    static const VariableSet v{"t"};
    return v;
}

Polynomial P(std::string_view s) { return parse_polynomial(s, T()); }

const Endpoint kInf = Endpoint::infinite();

/// Number of sign changes of f on a uniform rational grid; exact for square-free f when the grid separates roots.
int grid_sign_changes(const Polynomial &f, const Rational &lo, const Rational &hi, int steps)
{
    int changes = 0, last = 0;
    for (int i = 0; i <= steps; ++i) {
        const Rational x = lo + (hi - lo) * Rational(i, steps);
        const int s = f.evaluate({{"t", x}}).sign();
        if (s != 0 && last != 0 && s != last) ++changes;
        if (s != 0) last = s;
    }
    return changes;
}

} // namespace

TEST(Resultant, EliminatesAInCaseVI)
{
    const VariableSet R{"A", "t"};
    const Polynomial e3 = parse_polynomial("3*A + 2*t^3 + 7*t^2 + 4*t", R);
    const Polynomial e5 = parse_polynomial("15*A*(t + 1) + 5*t^4 + 27*t^3 + 35*t^2 + 8*t", R);
    const Polynomial res = resultant_univariate(e3, e5, "A");
    EXPECT_FALSE(res.involves(R.index("A")));
    const Polynomial f = parse_polynomial("5*t^3 + 18*t^2 + 20*t + 12", R);
    EXPECT_TRUE(is_scalar_multiple(divide_exact(res, parse_polynomial("t", R)), f));
}

TEST(Resultant, LinearCase)
{
    const VariableSet R{"v", "a", "b"};
    const Polynomial res = resultant(parse_polynomial("v - a", R), parse_polynomial("v - b", R), "v");
    const Polynomial d = parse_polynomial("b - a", R);
    EXPECT_TRUE(res == d || res == -d);
}

TEST(Resultant, EliminatesBInCaseVII)
{
    const VariableSet R{"B", "t"};
    const Polynomial e3 = parse_polynomial("3*(B + t + t^2)^2 + 2*B*(t + 1) + 2*t^3 + 7*t^2 + 4*t", R);
    const Polynomial e5 =
        parse_polynomial("15*(B + t + t^2)^2*(t + 1) + 5*B*t^2 + 10*B*t + 4*B + 5*t^4 + 27*t^3 + 35*t^2 + 8*t", R);
    const Polynomial target = parse_polynomial("12*t^2*(18*t^4 + 73*t^3 + 140*t^2 + 120*t + 54)", R);
    EXPECT_TRUE(is_scalar_multiple(resultant(e3, e5, "B"), target));
}

TEST(Resultant, MatchesSylvesterDeterminantOnSmallCase)
{
    // res(x^2 + b x + c, x - r) = r^2 + b r + c
    const VariableSet R{"x", "b", "c", "r"};
    const Polynomial res = resultant(parse_polynomial("x^2 + b*x + c", R), parse_polynomial("x - r", R), "x");
    const Polynomial expect = parse_polynomial("r^2 + b*r + c", R);
    EXPECT_TRUE(res == expect || res == -expect);
}

TEST(Resultant, DegenerateInput)
{
    const VariableSet R{"x", "y"};
    EXPECT_THROW(resultant(parse_polynomial("y", R), parse_polynomial("y + 1", R), "x"), DegenerateInput);
}

TEST(Sturm, ChainExamples)
{
    const auto chain = sturm_chain(P("t^2 - 1"));
    ASSERT_EQ(chain.size(), 3u);
    EXPECT_EQ(chain[0], P("t^2 - 1"));
    EXPECT_EQ(chain[1], P("2*t"));
    EXPECT_EQ(chain[2], P("1"));
    const auto c = sturm_chain(P("7"));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0], P("7"));
    const auto f = sturm_chain(P("5*t^3 + 18*t^2 + 20*t + 12"));
    EXPECT_EQ(sturm_variations(f, kInf, true) - sturm_variations(f, kInf, false), 1);
}

TEST(Sturm, NonUnivariateRejected)
{
    const VariableSet R{"x", "y"};
    EXPECT_THROW(sturm_chain(parse_polynomial("x*y + 1", R)), std::invalid_argument);
}

TEST(Sturm, CountExamples)
{
    EXPECT_EQ(count_real_roots(P("5*t^3 + 18*t^2 + 20*t + 12"), Endpoint::at(Rational(-12, 5)),
                               Endpoint::at(Rational(-9, 4))),
              1);
    EXPECT_EQ(count_real_roots(P("18*t^4 + 73*t^3 + 140*t^2 + 120*t + 54"), kInf, kInf), 0);
    EXPECT_EQ(count_real_roots(P("2*t^2 + 7*t + 4"), Endpoint::at(Rational(-12, 5)), Endpoint::at(Rational(-9, 4))),
              0);
    EXPECT_EQ(count_real_roots(P("5*t^3 + 18*t^2 + 20*t + 12"), kInf, kInf), 1);
    EXPECT_EQ(count_real_roots(P("(t - 1)^3*(t + 2)"), kInf, kInf), 2);
}

TEST(Sturm, EndpointIsRoot)
{
    EXPECT_THROW(count_real_roots(P("t^2 - 1"), Endpoint::at(Rational(1)), Endpoint::at(Rational(3))), EndpointIsRoot);
    EXPECT_EQ(count_real_roots_shrinking(P("t^2 - 1"), Endpoint::at(Rational(1)), Endpoint::at(Rational(3))), 0);
    EXPECT_EQ(count_real_roots_shrinking(P("t^2 - 1"), Endpoint::at(Rational(-1)), Endpoint::at(Rational(1))), 0);
    EXPECT_EQ(count_real_roots_shrinking(P("(t^2 - 1)*(t - 1/1000)"), Endpoint::at(Rational(-1)),
                                         Endpoint::at(Rational(1))),
              1);
}

TEST(Sturm, IsolatesCaseViRoot)
{
    const auto roots = isolate_real_roots(P("5*t^3 + 18*t^2 + 20*t + 12"), Rational(-10), Rational(10), Rational(1, 1000));
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_GE(roots[0].lo, Rational(-12, 5));
    EXPECT_LE(roots[0].hi, Rational(-9, 4));
}

TEST(SturmProperty, AgreesWithBisectionOracleOnLowDegree)
{
    // f = c * prod (t - r_i)^{m_i} * q(t) with q > 0; the distinct r_i are the real roots.
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> nroots(0, 4), num(-40, 40), mult(1, 2), coin(0, 1);
    int checked = 0;
    while (checked < 200) {
        std::set<Rational> roots;
        Polynomial f = P("1");
        unsigned deg = 0;
        const int k = nroots(rng);
        for (int i = 0; i < k && deg < 4; ++i) {
            const Rational r(num(rng), 8);
            const unsigned m = std::min<unsigned>(static_cast<unsigned>(mult(rng)), 4 - deg);
            f = f * (P("t") - Polynomial::constant(T(), r)).pow(m);
            roots.insert(r);
            deg += m;
        }
        if (deg <= 2 && coin(rng)) f = f * P("t^2 + t + 1");
        if (f.is_constant()) continue;
        const int expect = static_cast<int>(roots.size());
        EXPECT_EQ(count_real_roots(f, kInf, kInf), expect) << to_string(f);
        // Independent bisection count on the square-free part over a grid that splits the 1/8 lattice.
        Polynomial sf = P("1");
        for (const auto &r : roots) sf = sf * (P("t") - Polynomial::constant(T(), r));
        if (!roots.empty()) {
            EXPECT_EQ(grid_sign_changes(sf, Rational(-81, 16), Rational(81, 16), 162), expect);
        }
        EXPECT_EQ(count_real_roots(f, Endpoint::at(Rational(-81, 16)), Endpoint::at(Rational(81, 16))), expect);
        const auto iso = isolate_real_roots(f, Rational(-81, 16), Rational(81, 16), Rational(1, 64));
        EXPECT_EQ(static_cast<int>(iso.size()), expect);
        for (const auto &iv : iso) {
            bool found = false;
            for (const auto &r : roots) found = found || (iv.lo <= r && r <= iv.hi);
            EXPECT_TRUE(found);
        }
        ++checked;
    }
}
