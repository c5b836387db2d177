#include "bhv/constraints.hpp"
#include "bhv/fixtures.hpp"

#include <gtest/gtest.h>

using namespace bhv;

namespace {

const ProfileSeries &generic()
{
    static const ProfileSeries s = solve_profile_ivp(ivp::generic(10));
    return s;
}

const ProfileSeries &parallel()
{
    static const ProfileSeries s = solve_profile_ivp(ivp::parallel(10));
    return s;
}

const ProfileSeries &constant_q()
{
    static const ProfileSeries s = solve_profile_ivp(ivp::constant_q(10));
    return s;
}

Polynomial in(const ProfileSeries &s, std::string_view text) { return parse_polynomial(text, s.r.variables()); }

} // namespace

TEST(Compatibility, ConstantTerms)
{
    EXPECT_EQ(compatibility_series(generic())[0], in(generic(), "beta*y1 + c0*r1"));
    EXPECT_EQ(compatibility_series(parallel())[0], in(parallel(), "c0*r1"));
    EXPECT_EQ(compatibility_series(constant_q())[0], in(constant_q(), "alpha*x1 + c0*r1"));
}

TEST(Compatibility, CaseVIShapeAtTauSquared)
{
    const ProfileSeries &s = parallel();
    const VariableSet &v = s.r.variables();
    const std::map<std::string, Rational> r1zero{{"r1", 0}};
    const Polynomial c2 = compatibility_series(s)[2].substitute(r1zero) / Rational(2);
    const Polynomial shape = default_fixtures()
                                 .polynomial("VI.comp2", VariableSet{"c0", "c1", "r2", "r3"})
                                 .substitute({{"c0", in(s, "c0")}, {"c1", in(s, "c1")},
                                              {"r2", s.r[2].substitute(r1zero)}, {"r3", s.r[3].substitute(r1zero)}},
                                             v);
    EXPECT_EQ(c2, shape);
    EXPECT_EQ(c2, default_fixtures().polynomial("VI.comp2.r1zero", v));
}

TEST(ArcDefect, ConstantTermWithConstantYDerivative)
{
    EXPECT_EQ(arc_defect_series(parallel())[0], in(parallel(), "x1^2 + k^2 + r1^2 - r0^2"));
    EXPECT_EQ(arc_defect_series(generic())[0], in(generic(), "x1^2 + y1^2 + r1^2 - r0^2"));
}

TEST(ArcDefect, VanishesOnCatenoid)
{
    const ProfileSeries &s = generic();
    const VariableSet &v = s.r.variables();
    const std::map<std::string, Polynomial> cat{{"r0", in(s, "r0")}, {"r1", in(s, "0")}, {"c0", in(s, "0")},
                                                {"c1", in(s, "0")},  {"alpha", in(s, "0")}, {"beta", in(s, "0")},
                                                {"x1", in(s, "r0")}, {"y1", in(s, "0")}};
    const TruncatedSeries d = arc_defect_series(s).substitute(cat, v);
    EXPECT_TRUE(d.is_zero());
    EXPECT_TRUE(compatibility_series(s).substitute(cat, v).is_zero());
    EXPECT_EQ(s.r.substitute(cat, v)[4], in(s, "r0"));
}

TEST(ArcDefect, DifferentiationIdentity)
{
    for (const ProfileSeries *s : {&generic(), &parallel(), &constant_q()}) {
        const TruncatedSeries d = arc_identity_defect(*s);
        EXPECT_TRUE(d.is_zero());
        EXPECT_EQ(d.order(), s->r.order() - 2);
    }
}

TEST(Normalization, StandardMap)
{
    const NormalizationMap n = NormalizationMap::standard(generic().r.variables());
    EXPECT_EQ(n.target().names(), (std::vector<std::string>{"A", "B", "u", "p", "t"}));
    const auto r = n.apply(in(generic(), "alpha^2*r0^4 + c0*r0^3 + r1*r0"));
    EXPECT_EQ(r.value, parse_polynomial("A + t + p", n.target()));
    EXPECT_EQ(r.scale_power, 2);
    EXPECT_THROW(n.apply(in(generic(), "r0 + 1")), EliminationError);
    EXPECT_THROW(n.apply(in(generic(), "alpha*r0")), EliminationError);
    EXPECT_THROW(n.apply(in(generic(), "x1")), EliminationError);
    EXPECT_EQ(NormalizationMap::standard(parallel().r.variables()).target().names(),
              (std::vector<std::string>{"A", "u", "v", "p", "t"}));
}

TEST(Extraction, CaseVIIMatchesSystem)
{
    const ConstraintSystem sys = extract_system(generic(), CaseTag::VII);
    const FixtureSet &fx = default_fixtures();
    std::vector<std::string> labels;
    for (const auto &e : sys.equations) labels.push_back(e.label);
    EXPECT_EQ(labels, (std::vector<std::string>{"E0", "E2", "E3", "E4", "E5", "E6"}));
    for (const auto &e : sys.equations) {
        EXPECT_EQ(e.equation, fx.polynomial(e.label, sys.target)) << e.label;
        EXPECT_EQ(e.equation, e.equation.primitive_normalize()) << e.label;
        for (const auto &t : e.equation.terms()) EXPECT_EQ(t.coeff.denominator(), 1) << e.label;
    }
    EXPECT_EQ(to_string(sys.at("E2").equation), to_string(fx.polynomial("E2", sys.target)));
    ASSERT_EQ(sys.eliminated.size(), 2u);
    EXPECT_EQ(sys.eliminated[0].variable, "y1");
    EXPECT_EQ(sys.eliminated[1].variable, "x1");
    EXPECT_THROW(sys.at("E1"), std::out_of_range);
}

TEST(Extraction, EliminationsSolveTheirCoefficients)
{
    const ProfileSeries &s = generic();
    const ConstraintSystem sys = extract_system(s, CaseTag::VII);
    const TruncatedSeries comp = compatibility_series(s);
    EXPECT_TRUE(detail::apply_eliminations(comp[0], sys.eliminated).is_zero());
    EXPECT_TRUE(detail::apply_eliminations(comp[1], sys.eliminated).is_zero());
    EXPECT_EQ(sys.eliminated[0].denominator, in(s, "beta"));
}

TEST(Extraction, NormalizedEquationsAreFreeOfScale)
{
    for (CaseTag tag : {CaseTag::V, CaseTag::VI, CaseTag::VII}) {
        const ProfileSeries &s = tag == CaseTag::VII ? generic() : tag == CaseTag::VI ? parallel() : constant_q();
        const ConstraintSystem sys = extract_system(s, tag);
        EXPECT_FALSE(sys.target.find("r0"));
        for (const auto &e : sys.equations) {
            EXPECT_EQ(e.equation.variables(), sys.target);
            EXPECT_FALSE(e.equation.is_zero());
            EXPECT_FALSE(e.scale.is_zero());
        }
    }
}

TEST(Extraction, CaseVISystem)
{
    const ConstraintSystem sys = extract_system(parallel(), CaseTag::VI);
    std::vector<std::string> labels;
    for (const auto &e : sys.equations) labels.push_back(e.label);
    EXPECT_EQ(labels, (std::vector<std::string>{"C0", "E0", "E2", "E3", "E4", "E5", "E6"}));
    const VariableSet &T = sys.target;
    EXPECT_EQ(sys.at("C0").equation, parse_polynomial("p*t", T));
    const std::map<std::string, Rational> pt{{"p", 0}, {"t", Rational(-2, 3)}};
    const Polynomial e3 = sys.at("E3").equation.substitute(pt);
    EXPECT_TRUE(is_scalar_multiple(e3, default_fixtures().polynomial("VI.2b.E3", T)));
    const auto ratio = scalar_ratio(e3, default_fixtures().polynomial("VI.2b.E3", T));
    ASSERT_TRUE(ratio.has_value());
    EXPECT_GT(ratio->sign(), 0);
    const std::map<std::string, Rational> pu{{"p", 0}, {"u", 0}};
    EXPECT_EQ(sys.at("E3").equation.substitute(pu), default_fixtures().polynomial("VI.2a.E3", T));
    EXPECT_EQ(sys.at("E5").equation.substitute(pu), default_fixtures().polynomial("VI.2a.E5", T));
}

TEST(Extraction, CaseVSystem)
{
    const ConstraintSystem sys = extract_system(constant_q(), CaseTag::V);
    EXPECT_EQ(sys.equations.front().label, "E0");
    EXPECT_NO_THROW(sys.at("E1"));
    EXPECT_EQ(sys.eliminated.front().variable, "x1");
}

TEST(Extraction, RefusesUnguaranteedDivisor)
{
    ProfileIVP p = ivp::generic(10);
    p.b0 = Polynomial(p.vars);
    EXPECT_THROW(extract_system(solve_profile_ivp(p), CaseTag::VII), EliminationError);
    EXPECT_THROW(extract_system(generic(), CaseTag::VII, 12), std::invalid_argument);
}

TEST(CaseTags, RoundTrip)
{
    for (CaseTag t : {CaseTag::V, CaseTag::VI, CaseTag::VII}) EXPECT_EQ(parse_case_tag(to_string(t)), t);
    EXPECT_THROW(parse_case_tag("IV"), std::invalid_argument);
}
