#include "bhv/fixtures.hpp"
#include "bhv/series.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace bhv;

namespace {

const ProfileSeries &generic()
{
    static const ProfileSeries s = solve_profile_ivp(ivp::generic(10));
    return s;
}

Polynomial G(std::string_view text) { return parse_polynomial(text, generic().r.variables()); }

TruncatedSeries random_series(std::mt19937 &rng, const VariableSet &v, unsigned order)
{
    std::uniform_int_distribution<int> c(-4, 4), e(0, 2);
    std::vector<Polynomial> coeffs;
    for (unsigned n = 0; n <= order; ++n) {
        std::vector<Term> ts;
        for (int k = 0; k < 3; ++k) ts.push_back({Monomial{unsigned(e(rng)), unsigned(e(rng))}, Rational(c(rng), 1 + k)});
        coeffs.push_back(Polynomial::from_terms(v, ts));
    }
    return TruncatedSeries(coeffs);
}

} // namespace

TEST(Series, ReproducesRecurrenceFixtures)
{
    const ProfileSeries &s = generic();
    const FixtureSet &fx = default_fixtures();
    const VariableSet &v = s.r.variables();
    for (unsigned n = 2; n <= 7; ++n)
        EXPECT_EQ(s.r[n], fx.polynomial("r" + std::to_string(n), v)) << "r" << n;
    for (unsigned n = 2; n <= 6; ++n)
        EXPECT_EQ(s.x[n], fx.polynomial("x" + std::to_string(n), v)) << "x" << n;
    for (unsigned n = 2; n <= 7; ++n)
        EXPECT_EQ(s.y[n], fx.polynomial("y" + std::to_string(n), v)) << "y" << n;
}

TEST(Series, PaperExamples)
{
    const ProfileSeries &s = generic();
    EXPECT_EQ(s.r[2], G("r0 + c0*r0^2"));
    EXPECT_EQ(s.r[7], G("r1 + 138*c0*r0*r1 + 242*c0^2*r0^2*r1 + 80*c0^3*r0^3*r1 + 69*c1*r0^2 + 184*c0*c1*r0^3 + "
                        "86*c0^2*c1*r0^4 + 66*c1*r1^2 + 152*c0*c1*r0*r1^2 + 80*c1^2*r0^2*r1 + 20*c0^2*r1^3"));
    EXPECT_EQ(s.y[7], G("32*beta*r0*r1 + 132*beta*c0*r0^2*r1 + 36*beta*c1*r0^3 + 80*beta*c0^2*r0^3*r1 + "
                        "36*beta*c0*c1*r0^4 + 20*beta*c0*r1^3 + 52*beta*c1*r0*r1^2"));
    EXPECT_EQ(s.x[0], G("0"));
    EXPECT_EQ(s.x[1], G("x1"));
    EXPECT_EQ(s.y[1], G("y1"));
}

TEST(Series, MulExamples)
{
    const ProfileSeries &s = generic();
    const TruncatedSeries one = TruncatedSeries::constant(G("1"), 10);
    EXPECT_EQ(series_mul(s.r, one), s.r);
    EXPECT_EQ(series_mul(s.r, s.r)[0], G("r0^2"));
    EXPECT_EQ((s.c * s.r * s.r)[0], G("c0*r0^2"));
    EXPECT_EQ(s.r[2], s.r[0] + (s.c * s.r * s.r)[0]);
    EXPECT_THROW(series_mul(s.r, TruncatedSeries(VariableSet{"z"}, 10)), VariableSetMismatch);
    EXPECT_EQ(series_mul(s.r, s.c.truncated(4)).order(), 4u);
}

TEST(Series, DerivativeExamples)
{
    const ProfileSeries &s = generic();
    EXPECT_TRUE(series_derivative(TruncatedSeries::constant(G("5*r0"), 6)).is_zero());
    EXPECT_EQ(series_derivative(s.c)[0], G("c1"));
    EXPECT_EQ(series_derivative(series_derivative(s.c)), s.c.truncated(8));
    EXPECT_THROW(series_derivative(TruncatedSeries::constant(G("1"), 0)), std::invalid_argument);
    EXPECT_EQ(s.c.ordinary()[2], G("1/2*c0"));
}

TEST(Series, TimesTauShift)
{
    const ProfileSeries &s = generic();
    const TruncatedSeries t = TruncatedSeries::linear(G("0"), G("1"), 10);
    EXPECT_EQ(s.r.times_tau(), t * s.r);
}

TEST(Series, BackSubstitution)
{
    for (const ProfileIVP &ivp : {ivp::generic(10), ivp::parallel(9), ivp::constant_q(12)}) {
        const ProfileSeries s = solve_profile_ivp(ivp);
        const TruncatedSeries r2 = s.r * s.r;
        EXPECT_TRUE((s.r.derivative().derivative() - s.r - s.c * r2).is_zero());
        EXPECT_TRUE((s.c.derivative().derivative() - s.c).is_zero());
        EXPECT_TRUE((s.x.derivative().derivative() - s.a * r2).is_zero());
        EXPECT_TRUE((s.y.derivative().derivative() - s.b * r2).is_zero());
        EXPECT_EQ(s.r.derivative().derivative().order(), ivp.order - 2);
    }
}

TEST(Series, SpecializationCommutesWithSolving)
{
    const ProfileSeries &s = generic();
    const VariableSet &v = s.r.variables();
    std::map<std::string, Polynomial> bind;
    for (const auto &n : v.names()) bind.emplace(n, Polynomial::variable(v, n));
    bind["beta"] = G("0");
    bind["y1"] = G("0");
    ProfileIVP p = ivp::generic(10);
    p.b0 = G("0");
    p.y1 = G("0");
    const ProfileSeries t = solve_profile_ivp(p);
    EXPECT_EQ(s.r.substitute(bind, v), t.r);
    EXPECT_EQ(s.x.substitute(bind, v), t.x);
    EXPECT_TRUE(t.y.is_zero());
}

TEST(Series, RejectsShortOrder)
{
    EXPECT_THROW(solve_profile_ivp(ivp::generic(7)), std::invalid_argument);
    EXPECT_NO_THROW(solve_profile_ivp(ivp::generic(ProfileIVP::kMinimumOrder)));
}

TEST(Series, DumpFormat)
{
    const ProfileSeries &s = generic();
    const std::string d = dump_series("r", s.r.truncated(3));
    EXPECT_EQ(d.rfind("r[0] = r0\nr[1] = r1\nr[2] = ", 0), 0u);
    std::istringstream in(d);
    std::string line;
    unsigned n = 0;
    while (std::getline(in, line)) {
        const std::string head = "r[" + std::to_string(n) + "] = ";
        ASSERT_EQ(line.rfind(head, 0), 0u) << line;
        EXPECT_EQ(G(line.substr(head.size())), s.r[n]);
        ++n;
    }
    EXPECT_EQ(n, 4u);
    EXPECT_EQ(G(d.substr(d.rfind(" = ") + 3)), G("r1 + 2*c0*r0*r1 + c1*r0^2"));
}

TEST(Series, EvaluateUsesFactorials)
{
    const VariableSet v{"z"};
    const TruncatedSeries e = TruncatedSeries(std::vector<Polynomial>(6, Polynomial::constant(v, Rational(1))));
    Rational expect(0), term(1);
    for (int n = 0; n <= 5; ++n) {
        expect += term;
        term = term * Rational(1, 2) / Rational(n + 1);
    }
    EXPECT_EQ(e.evaluate({{"z", 0}}, Rational(1, 2)), expect);
}

TEST(SeriesProperty, OrdinaryConventionAgrees)
{
    std::mt19937 rng(31);
    const VariableSet v{"a", "b"};
    for (int i = 0; i < 30; ++i) {
        const unsigned N = 3 + static_cast<unsigned>(i % 6);
        const TruncatedSeries f = random_series(rng, v, N), g = random_series(rng, v, N);
        const auto of = f.ordinary(), og = g.ordinary();
        std::vector<Polynomial> prod(N + 1, Polynomial(v));
        for (unsigned n = 0; n <= N; ++n)
            for (unsigned j = 0; j <= n; ++j) prod[n] += of[j] * og[n - j];
        EXPECT_EQ(TruncatedSeries::from_ordinary(prod), f * g);
        EXPECT_EQ(TruncatedSeries::from_ordinary(of), f);
    }
}

TEST(SeriesProperty, ProductRuleAndRingLaws)
{
    std::mt19937 rng(37);
    const VariableSet v{"a", "b"};
    for (int i = 0; i < 30; ++i) {
        const TruncatedSeries f = random_series(rng, v, 7), g = random_series(rng, v, 7), h = random_series(rng, v, 7);
        EXPECT_EQ((f * g).derivative(), f.derivative() * g + f * g.derivative());
        EXPECT_EQ((f * g) * h, f * (g * h));
        EXPECT_EQ(f * g, g * f);
        EXPECT_EQ(f * (g + h), f * g + f * h);
    }
}
