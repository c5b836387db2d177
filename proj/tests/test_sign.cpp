#include "bhv/poly_io.hpp"
#include "bhv/sign.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bhv;

namespace {

Polynomial T(std::string_view s)
{
    static const VariableSet v{"t"};
    return parse_polynomial(s, v);
}

} // namespace

TEST(SignFact, ExactEvaluation)
{
    const Polynomial f = T("5*t^3 + 18*t^2 + 20*t + 12");
    EXPECT_TRUE(SignFact::at_point("f(-12/5) < 0", f, Sign::negative, {{"t", Rational(-12, 5)}}).verify());
    EXPECT_TRUE(SignFact::at_point("f(-9/4) > 0", f, Sign::positive, {{"t", Rational(-9, 4)}}).verify());
    EXPECT_FALSE(SignFact::at_point("wrong", f, Sign::positive, {{"t", Rational(-12, 5)}}).verify());
    EXPECT_FALSE(SignFact::at_point("unbound", f, Sign::positive).verify());
    EXPECT_TRUE(SignFact::at_point("zero", T("t^2 - 1"), Sign::zero, {{"t", Rational(1)}}).verify());
    EXPECT_EQ(SignFact::at_point("x", f, Sign::negative, {{"t", Rational(-12, 5)}}).region(), "t = -12/5");
}

TEST(SignFact, SturmOnInterval)
{
    const Polynomial phi = T("2*t^2 + 7*t + 4");
    const Endpoint lo = Endpoint::at(Rational(-12, 5)), hi = Endpoint::at(Rational(-9, 4));
    EXPECT_TRUE(SignFact::on_interval("phi < 0", phi, Sign::negative, lo, hi).verify());
    EXPECT_FALSE(SignFact::on_interval("phi > 0", phi, Sign::positive, lo, hi).verify());
    const Polynomial quartic = T("18*t^4 + 73*t^3 + 140*t^2 + 120*t + 54");
    EXPECT_TRUE(SignFact::on_interval("quartic > 0", quartic, Sign::positive, Endpoint::infinite(), Endpoint::infinite())
                    .verify());
    EXPECT_FALSE(SignFact::on_interval("has a root", T("t^2 - 1"), Sign::positive, Endpoint::infinite(),
                                       Endpoint::infinite())
                     .verify());
    EXPECT_FALSE(SignFact::on_interval("root on the closed end", T("t - 1"), Sign::positive, Endpoint::at(Rational(1)),
                                       Endpoint::at(Rational(2)))
                     .verify());
    EXPECT_FALSE(SignFact::on_interval("zero claim", phi, Sign::zero, lo, hi).verify());
    EXPECT_EQ(SignFact::on_interval("x", phi, Sign::negative, lo, hi).region(), "[-12/5, -9/4]");
}

TEST(SignFact, PositiveCombination)
{
    const VariableSet v{"A", "B", "u"};
    auto P = [&](std::string_view s) { return parse_polynomial(s, v); };
    EXPECT_TRUE(SignFact::by_terms("3A > 0", P("3*A"), Sign::positive, {"A"}).verify());
    EXPECT_TRUE(SignFact::by_terms("1088/27 + 3u^2 > 0", P("1088/27 + 3*u^2"), Sign::positive, {}, {"u"}).verify());
    EXPECT_TRUE(SignFact::by_terms("-A B < 0", P("-A*B"), Sign::negative, {"A", "B"}).verify());
    EXPECT_FALSE(SignFact::by_terms("A - B", P("A - B"), Sign::positive, {"A", "B"}).verify());
    EXPECT_FALSE(SignFact::by_terms("u unconstrained", P("u + 1"), Sign::positive, {}).verify());
    EXPECT_FALSE(SignFact::by_terms("odd power of a nonzero", P("u^3 + A"), Sign::positive, {"A"}, {"u"}).verify());
    EXPECT_TRUE(SignFact::by_terms("zero", Polynomial(v), Sign::zero, {}).verify());
    EXPECT_FALSE(SignFact::by_terms("zero is not positive", Polynomial(v), Sign::positive, {}).verify());
}

TEST(SignFact, SquareWitness)
{
    const VariableSet v{"alpha", "c"};
    const VariableSet w{"c", "s"};
    const Polynomial f = parse_polynomial("alpha^2 + c^2", v);
    const SquareWitness sq{"alpha", parse_polynomial("s", w)};
    EXPECT_TRUE(SignFact::by_terms("alpha^2 + c^2 > 0", f, Sign::positive, {"s"}, {"c"}, sq).verify());
    const Polynomial odd = parse_polynomial("alpha + c^2", v);
    EXPECT_FALSE(SignFact::by_terms("odd witness power", odd, Sign::positive, {"s"}, {"c"}, sq).verify());
    EXPECT_EQ(SignFact::by_terms("x", f, Sign::positive, {"s"}, {"c"}, sq).region(), "s > 0, c != 0, alpha^2 = s");
}

TEST(SignFactProperty, VerifiedIntervalClaimsHoldOnSamples)
{
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> c(-6, 6), a(-8, 8);
    int verified = 0;
    for (int i = 0; i < 300; ++i) {
        const VariableSet v{"t"};
        std::vector<Term> ts;
        for (unsigned e = 0; e <= 3; ++e) ts.push_back({Monomial{e}, Rational(c(rng))});
        const Polynomial f = Polynomial::from_terms(v, ts);
        if (f.is_constant()) continue;
        Rational lo(a(rng), 2), hi(a(rng), 2);
        if (!(lo < hi)) std::swap(lo, hi);
        if (lo == hi) continue;
        for (Sign s : {Sign::positive, Sign::negative}) {
            const SignFact fact = SignFact::on_interval("random", f, s, Endpoint::at(lo), Endpoint::at(hi));
            if (!fact.verify()) continue;
            ++verified;
            for (int k = 0; k <= 40; ++k) {
                const Rational x = lo + (hi - lo) * Rational(k, 40);
                EXPECT_EQ(f.evaluate({{"t", x}}).sign(), static_cast<int>(s)) << to_string(f) << " at " << x.to_string();
            }
        }
    }
    EXPECT_GT(verified, 20);
}
