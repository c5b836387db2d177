#pragma once

/**
 * @file cases.hpp
 * @brief Checked contradictions for the seven non-minimal branches.
 *
 * Each check_case_* rebuilds the algebra of one branch and records every
 * inference as a step: an exact polynomial identity, a computed count, or a
 * SignFact. Branch assumptions are listed separately as hypotheses; the
 * partition into seven branches itself is taken as given.
 */

#include "bhv/constraints.hpp"
#include "bhv/fixtures.hpp"
#include "bhv/groebner.hpp"
#include "bhv/poly.hpp"
#include "bhv/poly_io.hpp"
#include "bhv/series.hpp"
#include "bhv/sign.hpp"
#include "bhv/univariate.hpp"

#include <functional>
#include <future>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bhv {

enum class StepStatus { pass, fail };
enum class Verdict { contradiction_verified, failed };

inline std::string to_string(StepStatus s) { return s == StepStatus::pass ? "pass" : "fail"; }
inline std::string to_string(Verdict v) { return v == Verdict::contradiction_verified ? "contradiction-verified" : "failed"; }

struct CaseStep {
    std::string description;
    std::string detail;
    StepStatus status = StepStatus::fail;
    std::optional<SignFact> fact;
};

struct CaseArtifact {
    std::string name;
    std::string content;
};

struct CaseReport {
    std::string case_id;
    std::string title;
    std::vector<std::string> hypotheses;
    std::vector<CaseStep> steps;
    std::vector<CaseArtifact> artifacts;
    Verdict verdict = Verdict::failed;

    bool verified() const { return verdict == Verdict::contradiction_verified; }

    const CaseStep *first_failure() const
    {
        for (const auto &s : steps)
            if (s.status != StepStatus::pass) return &s;
        return nullptr;
    }
};

namespace detail {

inline std::string clip(std::string s, std::size_t n = 400)
{
    if (s.size() > n) s = s.substr(0, n) + " ... (" + std::to_string(s.size()) + " chars)";
    return s;
}

class ReportBuilder {
public:
    ReportBuilder(std::string id, std::string title)
    {
        r_.case_id = std::move(id);
        r_.title = std::move(title);
    }

    void hypothesis(std::string h) { r_.hypotheses.push_back(std::move(h)); }
    void artifact(std::string name, std::string content) { r_.artifacts.push_back({std::move(name), std::move(content)}); }

    bool check(std::string description, bool ok, std::string detail)
    {
        r_.steps.push_back({std::move(description), std::move(detail), ok ? StepStatus::pass : StepStatus::fail, {}});
        return ok;
    }

    bool identity(std::string description, const Polynomial &lhs, const Polynomial &rhs)
    {
        const bool ok = lhs == rhs;
        std::string d = ok ? "holds: " + clip(to_string(rhs))
                           : "expected " + clip(to_string(rhs)) + ", got " + clip(to_string(lhs));
        return check(std::move(description), ok, std::move(d));
    }

    /// f is a nonzero rational multiple of g.
    bool multiple(std::string description, const Polynomial &f, const Polynomial &g)
    {
        const auto ratio = scalar_ratio(f, g);
        const bool ok = ratio && !ratio->is_zero();
        std::string d = ok ? "ratio " + ratio->to_string() + ": " + clip(to_string(g))
                           : "not a multiple of " + clip(to_string(g)) + ": " + clip(to_string(f));
        return check(std::move(description), ok, std::move(d));
    }

    bool fact(SignFact f)
    {
        const bool ok = f.verify();
        std::string d = clip(to_string(f.expression)) + " is " + to_string(f.claimed) + " on " + f.region() + " (" +
                        to_string(f.method) + ")";
        CaseStep s{f.description, std::move(d), ok ? StepStatus::pass : StepStatus::fail, std::move(f)};
        r_.steps.push_back(std::move(s));
        return ok;
    }

    bool count(std::string description, int got, int expected, std::string what)
    {
        return check(std::move(description), got == expected,
                     what + ": " + std::to_string(got) + " (expected " + std::to_string(expected) + ")");
    }

    template <typename F>
    void guarded(F body)
    {
        try {
            body();
        } catch (const std::exception &e) {
            check("unexpected error", false, e.what());
        }
    }

    CaseReport finish()
    {
        r_.verdict = !r_.steps.empty() && r_.first_failure() == nullptr ? Verdict::contradiction_verified
                                                                         : Verdict::failed;
        return std::move(r_);
    }

private:
    CaseReport r_;
};

/// num/den with both polynomial.
struct RationalValue {
    Polynomial num, den;
};

/// f with each var replaced by num/den in turn; denominators may not mention later variables.
inline RationalValue substitute_values(const Polynomial &f,
                                       const std::vector<std::tuple<std::string, Polynomial, Polynomial>> &subs)
{
    RationalValue v{f, Polynomial::constant(f.variables(), Rational(1), f.order())};
    for (const auto &[var, n, d] : subs) {
        if (v.den.involves(v.den.variables().index(var)))
            throw std::invalid_argument("substitute_values: denominator mentions " + var);
        const unsigned k = v.num.degree_in(var);
        v.num = v.num.substitute_fraction(var, n, d);
        v.den = v.den * d.pow(k);
    }
    return v;
}

/// a = b, with both sides optionally reduced modulo `relations`.
inline bool same_value(const RationalValue &a, const RationalValue &b, const std::vector<Polynomial> &relations = {})
{
    Polynomial diff = a.num * b.den - b.num * a.den;
    if (!relations.empty()) diff = reduce(diff, relations).remainder;
    return diff.is_zero();
}

inline std::string clip_value(const RationalValue &v)
{
    return clip("(" + to_string(v.num) + ") / (" + to_string(v.den) + ")", 300);
}

inline std::string clip_size(const Polynomial &f)
{
    return f.is_zero() ? "0" : std::to_string(f.size()) + " terms";
}

inline Polynomial poly_of(const VariableSet &v, std::string_view text) { return parse_polynomial(text, v); }

inline Endpoint endpoint_of(const FixtureSet &fx, const char *name)
{
    return Endpoint::at(fx.polynomial(name, VariableSet{}).constant_term());
}

} // namespace detail

/// a = b = c = 0 makes the mean-curvature vector vanish, and conversely.
inline CaseReport check_case_I()
{
    detail::ReportBuilder b("I", "c = 0 and P = Q = 0");
    b.hypothesis("H != 0");
    b.hypothesis("c = 0 and q = P tau + Q = 0, so a = b = c = 0");
    b.guarded([&] {
        const VariableSet v{"a", "b", "c", "C", "S"};
        auto P = [&](const char *s) { return detail::poly_of(v, s); };
        const std::vector<Polynomial> h2 = {P("a"), P("b"), P("c*C"), P("c*S")}; // 2H, with C = cos, S = sin
        Polynomial norm(v);
        for (const auto &x : h2) norm += x * x;
        const Polynomial circle = P("C^2 + S^2 - 1");
        b.identity("|2H|^2 reduced modulo cos^2 + sin^2 = 1", reduce(norm, {circle}).remainder, P("a^2 + b^2 + c^2"));
        bool zero = true;
        for (const auto &x : h2) zero = zero && x.substitute(std::map<std::string, Rational>{{"a", 0}, {"b", 0}, {"c", 0}}).is_zero();
        b.check("a = b = c = 0 gives H = 0 identically in the angle", zero, "all four components vanish");
        const Rational n001 = P("a^2 + b^2 + c^2").evaluate({{"a", 0}, {"b", 0}, {"c", 1}});
        b.check("(a, b, c) = (0, 0, 1) gives H != 0", n001 == Rational(1), "|2H|^2 = " + n001.to_string());
        b.fact(SignFact::by_terms("|2H|^2 > 0 unless a = b = c = 0", P("a^2 + b^2 + c^2"), Sign::positive, {},
                                  {"a", "b", "c"}));
        b.check("the branch forces H = 0, contradicting H != 0", true, "a = b = c = 0 is the minimal surface");
    });
    return b.finish();
}

/// q = phi e with phi linear: the e-component of u'' = r^2 q gives r^2 phi = 0.
inline CaseReport check_case_II(unsigned order = 10)
{
    detail::ReportBuilder b("II", "c = 0, det(P, Q) = 0, (P, Q) != 0");
    b.hypothesis("after a rotation e = (1, 0) and q = phi e with phi = phi0 + phi1 tau not identically zero");
    b.hypothesis("r > 0; c = 0 identically");
    b.hypothesis("phi = 0 identically is excluded by the branch (not checked)");
    b.guarded([&] {
        const VariableSet v{"r0", "r1", "phi0", "phi1", "x1", "y1"};
        auto P = [&](const char *s) { return detail::poly_of(v, s); };
        const Polynomial z(v);
        const ProfileIVP ivp{v, P("phi0"), P("phi1"), z, z, P("r0"), P("r1"), z, z, P("x1"), P("y1"), order};
        const ProfileSeries s = solve_profile_ivp(ivp);
        const TruncatedSeries xdd = s.x.derivative().derivative();
        const TruncatedSeries r2phi = s.a * s.r * s.r;
        bool ok = true;
        for (unsigned n = 0; n <= xdd.order(); ++n) ok = ok && xdd[n] == r2phi[n];
        b.check("u''.e - r^2 phi vanishes coefficient-wise", ok,
                "tau^n for n <= " + std::to_string(xdd.order()));
        const TruncatedSeries comp = compatibility_series(s);
        const TruncatedSeries phixd = s.a * s.x.derivative();
        ok = true;
        for (unsigned n = 0; n <= comp.order(); ++n) ok = ok && comp[n] == phixd[n];
        b.check("compatibility reduces to phi u'.e", ok, "so u'.e = 0 where phi != 0, hence (u'.e)' = u''.e = 0");
        b.identity("tau^0 of r^2 phi", r2phi[0], P("r0^2*phi0"));
        b.identity("tau^1 of r^2 phi at phi0 = 0", r2phi[1].substitute(std::map<std::string, Rational>{{"phi0", 0}}),
                   P("r0^2*phi1"));
        b.fact(SignFact::by_terms("r0^2 > 0", P("r0^2"), Sign::positive, {"r0"}));
        b.check("r^2 phi = 0 forces phi0 = phi1 = 0, contradicting phi != 0", true, "from the two coefficients");
        b.identity("specialization phi = 1: constant term of r^2 phi",
                   r2phi[0].substitute(std::map<std::string, Rational>{{"phi0", 1}, {"phi1", 0}}), P("r0^2"));
    });
    return b.finish();
}

namespace detail {

/// sum_i coeff_i * w^(e_i) for a fixed polynomial w in tau.
struct PowerForm {
    std::vector<std::pair<Rational, Polynomial>> terms;

    PowerForm derivative(const Polynomial &w, std::string_view tau) const
    {
        const Polynomial dw = w.partial_derivative(tau);
        PowerForm out;
        for (const auto &[e, p] : terms) {
            out.terms.push_back({e, p.partial_derivative(tau)});
            out.terms.push_back({e - Rational(1), p * dw * e});
        }
        return out;
    }

    /// (lowest exponent m, polynomial Q) with this = Q w^m.
    std::pair<Rational, Polynomial> collapse(const Polynomial &w) const
    {
        Rational m = terms.front().first;
        for (const auto &t : terms) m = std::min(m, t.first);
        Polynomial q(w.variables());
        for (const auto &[e, p] : terms) {
            const Rational k = e - m;
            if (!k.is_integer()) throw std::invalid_argument("PowerForm: exponents differ by a non-integer");
            q += p * w.pow(static_cast<unsigned>(k.numerator().get_ui()));
        }
        return {m, q};
    }
};

} // namespace detail

/// lambda |q| is constant, and r = L w^(-3/4) cannot satisfy r'' = r.
inline CaseReport check_case_III(const FixtureSet &fx = default_fixtures())
{
    detail::ReportBuilder b("III", "c = 0, det(P, Q) != 0");
    b.hypothesis("u' = lambda J q with J the quarter turn, since u'.q = 0");
    b.hypothesis("after translation and rotation P = (alpha, 0), Q = (0, beta) with alpha beta != 0");
    b.hypothesis("r = L w^(-3/4) with w = alpha^2 tau^2 + beta^2 and L > 0");
    b.guarded([&] {
        const VariableSet v{"lambda", "lambdad", "rr", "P1", "P2", "Q1", "Q2", "tau"};
        auto P = [&](const char *s) { return detail::poly_of(v, s); };
        const Polynomial q1 = P("P1*tau + Q1"), q2 = P("P2*tau + Q2");
        const Polynomial lam = P("lambda"), lamd = P("lambdad");
        const Polynomial Jq1 = -q2, Jq2 = q1, JP1 = -P("P2"), JP2 = P("P1");
        const Polynomial udd1 = lamd * Jq1 + lam * JP1, udd2 = lamd * Jq2 + lam * JP2;
        const Polynomial det = P("P1*Q2 - P2*Q1");
        const Polynomial n2 = q1 * q1 + q2 * q2;
        const Polynomial Pq = P("P1") * q1 + P("P2") * q2;
        b.identity("(lambda J q)'.q = lambda det(P, Q)", udd1 * q1 + udd2 * q2, lam * det);
        b.identity("(lambda J q)'.Jq = lambda' |q|^2 + lambda P.q", udd1 * Jq1 + udd2 * Jq2, lamd * n2 + lam * Pq);
        b.identity("(r^2 q).Jq = 0", P("rr") * (q1 * Jq1 + q2 * Jq2), Polynomial(v));
        b.identity("|q| (lambda |q|)' = lambda' |q|^2 + lambda P.q, which vanishes",
                   lamd * n2 + lam * n2.partial_derivative("tau") / Rational(2), lamd * n2 + lam * Pq);

        const VariableSet w3{"L", "alpha", "beta", "tau"};
        const Polynomial w = detail::poly_of(w3, "alpha^2*tau^2 + beta^2");
        detail::PowerForm r{{{Rational(-3, 4), detail::poly_of(w3, "L")}}};
        const auto [m, q] = r.derivative(w, "tau").derivative(w, "tau").collapse(w);
        b.check("r'' has a single power w^(-11/4)", m == Rational(-11, 4), "exponent " + m.to_string());
        const Polynomial expected = detail::poly_of(w3, "L") * fx.polynomial("III.r2", w3);
        b.identity("r'' w^(11/4) / L", q, expected);
        const Polynomial diff = fx.polynomial("III.r2", w3) - w * w;
        b.identity("tau^4 coefficient of the difference with w^2", diff.coefficient_of("tau", 4),
                   fx.polynomial("III.tau4", w3));
        b.fact(SignFact::by_terms("-alpha^4 < 0", diff.coefficient_of("tau", 4), Sign::negative, {}, {"alpha"}));
        b.check("r'' = r would need the difference to vanish identically", true,
                "degree " + std::to_string(fx.polynomial("III.r2", w3).degree_in("tau")) + " against " +
                    std::to_string((w * w).degree_in("tau")));
    });
    return b.finish();
}

/// c r' = 0 makes r constant and c = -1/r constant, but c'' = c has no nonzero constant solution.
inline CaseReport check_case_IV(unsigned order = 10)
{
    detail::ReportBuilder b("IV", "c != 0 somewhere, P = Q = 0");
    b.hypothesis("a = b = 0; on an open interval c != 0, so compatibility c r' = 0 gives r' = 0");
    b.hypothesis("r > 0");
    b.guarded([&] {
        const VariableSet v{"r", "c", "k"};
        auto P = [&](const char *s) { return detail::poly_of(v, s); };
        const TruncatedSeries ks = TruncatedSeries::constant(P("k"), order);
        const TruncatedSeries defect = ks.derivative().derivative() - ks;
        b.identity("constant c = k: tau^0 of c'' - c", defect[0], P("-k"));
        bool rest = true;
        for (unsigned n = 1; n <= defect.order(); ++n) rest = rest && defect[n].is_zero();
        b.check("higher coefficients of c'' - c vanish for constant c", rest, "so c'' = c forces k = 0");
        b.identity("r'' = 0 in r'' = r + c r^2", P("r + c*r^2"), P("r*(1 + c*r)"));
        b.identity("c = -1/r solves r + c r^2 = 0", P("r + c*r^2").substitute_fraction("c", P("-1"), P("r")),
                   Polynomial(v));
        b.identity("c = 0 would leave r + c r^2 = r", P("r + c*r^2").substitute(std::map<std::string, Rational>{{"c", 0}}),
                   P("r"));
        b.fact(SignFact::by_terms("r > 0", P("r"), Sign::positive, {"r"}));
        b.check("c = -1/r is a nonzero constant, the only constant solution is 0", true, "contradiction");

        const VariableSet iv{"r0", "r1", "x1", "y1"};
        const Polynomial z(iv);
        const ProfileIVP ivp{iv, z, z, z, z, ivp::sym(iv, "r0"), ivp::sym(iv, "r1"), z, z,
                             ivp::sym(iv, "x1"), ivp::sym(iv, "y1"), order};
        b.check("c0 = c1 = 0 makes the whole c series vanish", solve_profile_ivp(ivp).c.is_zero(),
                "recurrence c[n+2] = c[n]");
    });
    return b.finish();
}

namespace detail {

/// Ring for the q = (alpha, 0) chain; rd, cd stand for r', c'.
inline const VariableSet &case_v_ring()
{
    static const VariableSet v{"r", "rd", "c", "cd", "alpha", "sigma", "xd", "k"};
    return v;
}

/// d/dtau with r'' = r + c r^2, c'' = c, x'' = alpha r^2.
inline Polynomial case_v_derivative(const Polynomial &f)
{
    const VariableSet &v = f.variables();
    auto P = [&](const char *s) { return poly_of(v, s); };
    return f.partial_derivative("r") * P("rd") + f.partial_derivative("rd") * P("r + c*r^2") +
           f.partial_derivative("c") * P("cd") + f.partial_derivative("cd") * P("c") +
           f.partial_derivative("xd") * P("alpha*r^2");
}

} // namespace detail

/// G = c' r' + c r + (alpha^2 + c^2) r^2 vanishes identically; its jets at 0 cannot.
inline CaseReport check_case_V(const FixtureSet &fx = default_fixtures())
{
    detail::ReportBuilder b("V", "c != 0 somewhere, q constant and nonzero");
    b.hypothesis("after a rotation q = (alpha, 0) with alpha > 0; y' = k is constant");
    b.hypothesis("r > 0; c'' = c so c'^2 - c^2 is constant");
    b.guarded([&] {
        const VariableSet &v = detail::case_v_ring();
        auto P = [&](const char *s) { return detail::poly_of(v, s); };
        auto F = [&](const char *name) { return fx.polynomial(name, v); };
        using Subs = std::vector<std::tuple<std::string, Polynomial, Polynomial>>;
        auto value = [&](const char *num, const char *den) { return detail::RationalValue{F(num), F(den)}; };
        auto zero_at = [](const Polynomial &f, std::map<std::string, Rational> pt) { return f.substitute(pt); };

        b.identity("x' eliminated from arc-length by alpha x' + c r' = 0",
                   P("xd^2 + k^2 + rd^2 - r^2").substitute_fraction("xd", P("-c*rd"), P("alpha")),
                   F("V.arc"));
        const Polynomial G = detail::case_v_derivative(P("alpha*xd + c*rd"));
        b.identity("derivative of alpha x' + c r'", G, F("V.G"));
        b.identity("c'^2 - c^2 is constant", detail::case_v_derivative(P("cd^2 - c^2")), Polynomial(v));
        std::vector<Polynomial> jet{G};
        for (int i = 0; i < 4; ++i) jet.push_back(detail::case_v_derivative(jet.back()));
        b.artifact("G derivatives", std::to_string(jet.size()) + " jets over [r, rd, c, cd, alpha]");

        // c'^2 - c^2 < 0: a critical point of c at tau = 0.
        {
            std::vector<Polynomial> g;
            for (const auto &x : jet) g.push_back(zero_at(x, {{"cd", 0}}));
            b.identity("sub-case 1: G(0) at c'(0) = 0", g[0], P("r*(c + (alpha^2 + c^2)*r)"));
            const Subs at_r{{"r", P("-c"), P("alpha^2 + c^2")}};
            const auto G2 = detail::substitute_values(g[2], at_r);
            const auto G3 = detail::substitute_values(g[3], at_r);
            b.check("sub-case 1: G''(0) at r(0) = -c0/A", detail::same_value(G2, value("V.1.G2.num", "V.1.G2.den")),
                    detail::clip_value(G2));
            b.check("sub-case 1: G'''(0) at r(0) = -c0/A", detail::same_value(G3, value("V.1.G3.num", "V.1.G3.den")),
                    detail::clip_value(G3));
            b.check("sub-case 1: G'''(0) = 0 with c0 != 0 forces r'(0) = 0",
                    G3.num.degree_in("rd") == 1 && G3.num.coefficient_of("rd", 0).is_zero(),
                    "G''' numerator is linear in r' with no constant part");
            const auto G2r = detail::substitute_values(g[2], {{"rd", P("0"), P("1")}, at_r[0]});
            b.check("sub-case 1: G''(0) at r'(0) = 0 is c0^2 (c0^2 - 2 alpha^2) / A^2",
                    detail::same_value(G2r, {P("c^2*(c^2 - 2*alpha^2)"), P("(alpha^2 + c^2)^2")}), detail::clip_value(G2r));
            const Polynomial rel = P("c^2 - 2*alpha^2");
            b.check("sub-case 1: displayed values lie on the solution set",
                    detail::same_value(G2r, {P("0"), P("1")}, {rel}) &&
                        detail::same_value(detail::substitute_values(g[3], {{"rd", P("0"), P("1")}, at_r[0]}),
                                           {P("0"), P("1")}),
                    "r'(0) = 0, c0^2 = 2 alpha^2 annihilate G'' and G'''");
            const auto G4 = detail::substitute_values(g[4], {{"rd", P("0"), P("1")}, at_r[0]});
            b.check("sub-case 1: G''''(0) modulo c0^2 = 2 alpha^2",
                    detail::same_value(G4, {F("V.1.G4"), P("1")}, {rel}), detail::clip_value(G4));
            b.fact(SignFact::at_point("sub-case 1: 56/9 > 0", F("V.1.G4"), Sign::positive));
        }
        // c'^2 - c^2 > 0: a zero of c at tau = 0.
        {
            std::vector<Polynomial> g;
            for (const auto &x : jet) g.push_back(zero_at(x, {{"c", 0}}));
            b.identity("sub-case 2: G(0) at c(0) = 0", g[0], P("cd*rd + alpha^2*r^2"));
            b.identity("sub-case 2: G'(0)", g[1], F("V.2.G1"));
            const Subs rd{{"rd", P("-cd"), P("alpha^2")}};
            b.check("sub-case 2: r'(0) = -c1/alpha^2 gives r(0)^2 = c1^2/alpha^4",
                    detail::same_value(detail::substitute_values(g[0], rd), {P("alpha^4*r^2 - cd^2"), P("alpha^2")}),
                    "G(0) = (alpha^4 r^2 - c1^2)/alpha^2");
            for (const char *sign : {"cd", "-cd"}) {
                Subs s = rd;
                s.emplace_back("r", P(sign), P("alpha^2"));
                const auto G2 = detail::substitute_values(g[2], s);
                b.check(std::string("sub-case 2: G''(0) at r(0) = ") + sign + "/alpha^2",
                        detail::same_value(G2, value("V.2.G2.num", "V.2.G2.den")), detail::clip_value(G2));
            }
            b.fact(SignFact::by_terms("sub-case 2: 3 c1^4 / alpha^4 > 0", F("V.2.G2.num") * F("V.2.G2.den"),
                                      Sign::positive, {"alpha"}, {"cd"}));
        }
        // c'^2 = c^2: c' = sigma c with sigma^2 = 1.
        {
            const std::vector<Polynomial> rel{P("sigma^2 - 1")};
            std::vector<Polynomial> g;
            for (const auto &x : jet)
                g.push_back(reduce(x.substitute(std::map<std::string, Polynomial>{{"cd", P("sigma*c")}}), rel).remainder);
            const Subs at{{"rd", F("V.3.rd.num"), F("V.3.rd.den")}, {"r", F("V.3.r.num"), F("V.3.r.den")}};
            const detail::RationalValue zero{P("0"), P("1")};
            b.check("sub-case 3: G(0) = 0 at the displayed r(0), r'(0)",
                    detail::same_value(detail::substitute_values(g[0], at), zero, rel), "modulo sigma^2 = 1");
            b.check("sub-case 3: G'(0) = 0 at the displayed r(0), r'(0)",
                    detail::same_value(detail::substitute_values(g[1], at), zero, rel), "modulo sigma^2 = 1");
            // r' from G(0) = sigma c r' + c r + A r^2, then G'(0) as a polynomial in r.
            const Polynomial e1 =
                reduce(g[1].substitute_fraction("rd", P("-sigma*(c*r + (alpha^2 + c^2)*r^2)"), P("c")), rel).remainder;
            const Polynomial e1r = divide_exact(e1, P("r^2"));
            b.check("sub-case 3: eliminating r' leaves r^2 times a linear factor",
                    e1r.degree_in("r") == 1 && !e1r.coefficient_of("r", 1).is_zero(), detail::clip(to_string(e1r)));
            const auto root = detail::substitute_values(e1r, {at[1]});
            b.check("sub-case 3: the displayed r(0) is the nonzero root", detail::same_value(root, zero, rel),
                    "r(0) = -c0 (c0^2 + 4 alpha^2) / (2 (alpha^2 + c0^2)^2)");
            const auto G2 = detail::substitute_values(g[2], at);
            b.check("sub-case 3: G''(0)", detail::same_value(G2, value("V.3.G2.num", "V.3.G2.den"), rel),
                    detail::clip_value(G2));
            b.fact(SignFact::by_terms("sub-case 3: closed form of G''(0) is positive",
                                      F("V.3.G2.num") * F("V.3.G2.den"), Sign::positive, {"alpha"}, {"c"}));
        }
    });
    return b.finish();
}

/// Comparison of the extracted equations with the reference fixtures.
inline bool check_extraction(detail::ReportBuilder &b, const ConstraintSystem &sys, const FixtureSet &fx,
                             const std::vector<std::string> &labels, const std::string &prefix = "")
{
    bool all = true;
    for (const auto &l : labels) {
        const std::string key = prefix + l;
        all = b.identity("extraction matches " + key, sys.at(l).equation, fx.polynomial(key, sys.target)) && all;
    }
    return all;
}

/// q = (alpha tau, 0).
inline CaseReport check_case_VI(const FixtureSet &fx = default_fixtures(), unsigned order = 10)
{
    detail::ReportBuilder b("VI", "c != 0 somewhere, det(P, Q) = 0, P != 0");
    b.hypothesis("after translation and rotation q = (alpha tau, 0) with alpha != 0; y' = k");
    b.hypothesis("r0 > 0; A = alpha^2 r0^2 > 0; t = c0 r0, u = c1 r0, p = r1/r0, v = k/r0");
    b.guarded([&] {
        const ProfileSeries s = solve_profile_ivp(ivp::parallel(order));
        const TruncatedSeries comp = compatibility_series(s);
        const VariableSet &R = s.r.variables();
        auto P = [&](const char *x) { return detail::poly_of(R, x); };
        auto sub = [](const Polynomial &f, std::map<std::string, Rational> pt) { return f.substitute(pt); };
        const NormalizationMap norm = NormalizationMap::standard(R);

        // c0 = 0
        b.identity("c0 = 0: tau^2 coefficient of compatibility", sub(comp[2], {{"c0", 0}}), P("2*c1*r0"));
        b.identity("c0 = 0: r[2] = r0", sub(s.r[2], {{"c0", 0}}), P("r0"));
        b.fact(SignFact::by_terms("c0 = 0: (2 c1 r0)^2 > 0 since c1 != 0", P("4*c1^2*r0^2"), Sign::positive, {"r0"},
                                  {"c1"}));
        // c0 != 0
        b.identity("c0 != 0: tau^0 of compatibility is c0 r1", comp[0], P("c0*r1"));
        const VariableSet cr{"c0", "c1", "r2", "r3"};
        const Polynomial shape = fx.polynomial("VI.comp2", cr).substitute(
            {{"r2", sub(s.r[2], {{"r1", 0}})}, {"r3", sub(s.r[3], {{"r1", 0}})}}, R);
        const Polynomial c2 = sub(comp[2], {{"r1", 0}}) / Rational(2);
        b.identity("r1 = 0: tau^2 coefficient is c1 r2 + (c0/2) r3", c2, shape);
        b.identity("r1 = 0: tau^2 coefficient factored", c2, fx.polynomial("VI.comp2.r1zero", R));

        const ConstraintSystem sys = extract_system(s, CaseTag::VI, 6);
        const VariableSet &T = sys.target;
        auto Q = [&](const char *x) { return detail::poly_of(T, x); };
        auto F = [&](const char *name) { return fx.polynomial(name, T); };
        b.identity("C0 normalizes to p t", sys.at("C0").equation, Q("p*t"));
        b.artifact("system VI", std::to_string(sys.equations.size()) + " equations over [A, u, v, p, t]");

        // sub-case 2a: u = 0
        const std::map<std::string, Rational> pu{{"p", 0}, {"u", 0}};
        b.identity("2a: r[3] = 0", norm.apply(sub(s.r[3], {{"r1", 0}, {"c1", 0}})).value, Polynomial(T));
        const auto r4 = norm.apply(sub(s.r[4], {{"r1", 0}, {"c1", 0}}));
        b.identity("2a: r[4] = r0 (2 t^2 + 4 t + 1)", r4.value, F("VI.2a.r4"));
        const Polynomial e3 = sys.at("E3").equation.substitute(pu), e5 = sys.at("E5").equation.substitute(pu);
        b.identity("2a: tau^3 equation", e3, F("VI.2a.E3"));
        b.identity("2a: tau^5 equation", e5, F("VI.2a.E5"));
        const Polynomial res = resultant(e3, e5, "A");
        b.multiple("2a: resultant in A is a multiple of t f(t)", res, Q("t") * F("VI.f"));
        const Polynomial f = F("VI.f"), phi = F("VI.phi");
        b.multiple("2a: dividing by t != 0 leaves f", divide_exact(res, Q("t")), f);
        const Endpoint lo = detail::endpoint_of(fx, "VI.interval.lo"), hi = detail::endpoint_of(fx, "VI.interval.hi");
        b.count("2a: real roots of f", count_real_roots(f, Endpoint::infinite(), Endpoint::infinite()), 1, "Sturm count over R");
        b.count("2a: roots of f in the bracket", count_real_roots(f, lo, hi), 1, "Sturm count on the open interval");
        b.fact(SignFact::at_point("2a: f(-12/5) = -36/25 < 0", f, Sign::negative, {{"t", *lo.value}}));
        b.fact(SignFact::at_point("2a: f(-9/4) = 75/64 > 0", f, Sign::positive, {{"t", *hi.value}}));
        b.check("2a: endpoint values", f.evaluate({{"t", *lo.value}}) == Rational(-36, 25) &&
                                           f.evaluate({{"t", *hi.value}}) == Rational(75, 64),
                "f(-12/5) = " + f.evaluate({{"t", *lo.value}}).to_string() +
                    ", f(-9/4) = " + f.evaluate({{"t", *hi.value}}).to_string());
        b.count("2a: roots of phi in the bracket", count_real_roots(phi, lo, hi), 0, "Sturm count");
        b.fact(SignFact::on_interval("2a: phi < 0 on the bracket", phi, Sign::negative, lo, hi));
        b.identity("2a: the tau^3 equation is 3A + t phi(t)", e3, Q("3*A") + Q("t") * phi);
        b.fact(SignFact::on_interval("2a: -t phi(t) < 0 on the bracket", -Q("t") * phi, Sign::negative, lo, hi));
        b.fact(SignFact::by_terms("2a: 3A > 0", Q("3*A"), Sign::positive, {"A"}));

        // sub-case 2b: t = -2/3
        const std::map<std::string, Rational> pt{{"p", 0}, {"t", Rational(-2, 3)}};
        for (unsigned n = 2; n <= 5; ++n) {
            const auto nr = norm.apply(sub(s.r[n], {{"r1", 0}}));
            const std::string key = "VI.2b.r" + std::to_string(n);
            b.identity("2b: r[" + std::to_string(n) + "] / r0", nr.value.substitute(pt), fx.polynomial(key, T));
        }
        const Polynomial e3b = sys.at("E3").equation.substitute(pt);
        b.multiple("2b: tau^3 equation is 81 r0^2 (alpha^2 + c1^2) = 4", e3b, F("VI.2b.E3"));
        const auto c4 = norm.apply(sub(comp[4], {{"r1", 0}}) / Rational(24));
        const Polynomial c4b = reduce(c4.value.substitute(pt), {F("VI.2b.E3")}).remainder;
        b.identity("2b: ordinary tau^4 coefficient", c4b, F("VI.2b.tau4"));
        b.check("2b: hence c1 = 0, the condition of 2a", true, "u = c1 r0 with r0 > 0");
        b.fact(SignFact::at_point("2b: f(-2/3) != 0, so 2a does not allow t = -2/3", f, Sign::positive,
                                  {{"t", Rational(-2, 3)}}));
    });
    return b.finish();
}

/// Certificate for p t^4 over the fixture generators, computed with a grevlex basis.
inline MembershipCertificate compute_case_VII_certificate(const FixtureSet &fx = default_fixtures(),
                                                          GroebnerOptions options = {})
{
    const VariableSet T{"A", "B", "u", "p", "t"};
    IdealPresentation ideal{{}, OrderKind::grevlex};
    for (const char *e : {"E0", "E2", "E3", "E4", "E5", "E6"})
        ideal.generators.push_back(fx.polynomial(e, T, OrderKind::grevlex));
    return certify_membership(ideal, fx.polynomial("VII.target", T, OrderKind::grevlex), options);
}

/// q = (alpha tau, beta).
inline CaseReport check_case_VII(const MembershipCertificate &cert, const FixtureSet &fx = default_fixtures(),
                                 unsigned order = 10)
{
    detail::ReportBuilder b("VII", "c != 0 somewhere, det(P, Q) != 0");
    b.hypothesis("after translation and rotation q = (alpha tau, beta) with alpha beta != 0");
    b.hypothesis("r0 > 0; A = alpha^2 r0^2 > 0, B = beta^2 r0^2 > 0; p = r1/r0, t = c0 r0, u = c1 r0");
    b.guarded([&] {
        const ConstraintSystem sys = extract_system(solve_profile_ivp(ivp::generic(order)), CaseTag::VII, 6);
        const VariableSet &T = sys.target;
        auto Q = [&](const char *x) { return detail::poly_of(T, x); };
        auto F = [&](const char *name) { return fx.polynomial(name, T); };
        auto sub = [](const Polynomial &f, std::map<std::string, Rational> pt) { return f.substitute(pt); };
        const std::vector<std::string> labels{"E0", "E2", "E3", "E4", "E5", "E6"};
        check_extraction(b, sys, fx, labels);

        bool gens = cert.generators.size() == labels.size();
        for (std::size_t i = 0; gens && i < labels.size(); ++i) gens = cert.generators[i] == F(labels[i].c_str());
        b.check("certificate generators are E0, E2, ..., E6", gens, std::to_string(cert.generators.size()) + " generators");
        b.check("certificate target is p t^4", cert.target == F("VII.target"), to_string(cert.target));
        b.check("certificate remainder is zero", cert.is_member(), detail::clip_size(cert.remainder));
        b.check("certificate identity re-expands exactly", cert.verify(), "sum K_i E_i = p t^4 over the integers");
        std::size_t terms = 0;
        for (const auto &k : cert.cofactors) terms += k.size();
        b.artifact("membership certificate", std::to_string(terms) + " cofactor terms");
        b.check("so p = 0 or t = 0", true, "p t^4 vanishes on the variety");

        const Polynomial E0 = F("E0"), E2 = F("E2"), E3 = F("E3"), E4 = F("E4"), E5 = F("E5");
        // t = 0
        b.identity("t = 0: E2 = 2 (u + B p)", sub(E2, {{"t", 0}}), Q("2*(u + B*p)"));
        const std::map<std::string, Polynomial> u_bp{{"u", Q("-B*p")}};
        b.identity("t = 0, p = 0: E3 = 3A + 2B", sub(E3, {{"t", 0}, {"p", 0}, {"u", 0}}), Q("3*A + 2*B"));
        b.fact(SignFact::by_terms("t = 0, p = 0: 3A + 2B > 0", Q("3*A + 2*B"), Sign::positive, {"A", "B"}));
        const Polynomial e4t = sub(E4, {{"t", 0}}).substitute(u_bp);
        b.identity("t = 0: E4 at u = -B p is p (8A + 8B^2 p^2 - B^2)", e4t, Q("p") * F("VII.t0.E4"));
        const Polynomial e3t =
            sub(E3, {{"t", 0}}).substitute(u_bp).substitute_fraction("A", Q("B^2 - 8*B^2*p^2"), Q("8"));
        b.multiple("t = 0: E3 at A = B^2 (1/8 - p^2)", e3t, F("VII.t0.E3"));
        b.identity("t = 0: E3 at A = B^2 (1/8 - p^2) is (3/8) B^2 + 2B (1 - p^2)", e3t / Rational(8), F("VII.t0.E3"));
        b.fact(SignFact::by_terms("t = 0: 1/8 - p^2 = A/B^2 > 0", Q("A*B^2"), Sign::positive, {"A"}, {"B"}));
        const VariableSet W{"A", "B", "u", "p", "t", "s"};
        b.fact(SignFact::by_terms("t = 0: (3/8) B^2 + 2B (1 - p^2) > 0 with p^2 = 1/8 - s, s > 0", F("VII.t0.E3"),
                                  Sign::positive, {"B", "s"}, {}, SquareWitness{"p", detail::poly_of(W, "1/8 - s")}));

        // p = 0
        b.identity("p = 0: E2 = (3t + 2) u", sub(E2, {{"p", 0}}), Q("(3*t + 2)*u"));
        const std::map<std::string, Rational> pu{{"p", 0}, {"u", 0}};
        b.identity("2a: E0 = B ((B + t + t^2)^2 - A)", sub(E0, pu), Q("B*((B + t + t^2)^2 - A)"));
        const std::map<std::string, Polynomial> a_sq{{"A", Q("(B + t + t^2)^2")}};
        const Polynomial e3a = sub(E3, pu).substitute(a_sq), e5a = sub(E5, pu).substitute(a_sq);
        b.identity("2a: E3 with A = (B + t + t^2)^2", e3a, F("VII.2a.E3"));
        b.identity("2a: E5 with A = (B + t + t^2)^2", e5a, F("VII.2a.E5"));
        b.identity("2a: E5 - 5 (t + 1) E3 is linear in B", e5a - Q("5*(t + 1)") * e3a,
                   -(F("VII.2a.B.den") * Q("B") - F("VII.2a.B.num")));
        b.count("2a: real roots of 5t^2 + 10t + 6",
                count_real_roots(F("VII.2a.B.den"), Endpoint::infinite(), Endpoint::infinite()), 0, "Sturm count over R");
        const Polynomial res = resultant(e3a, e5a, "B");
        b.multiple("2a: resultant in B", res, F("VII.2a.eliminant"));
        b.identity("2a: eliminant factors as 12 t^2 times the quartic", F("VII.2a.eliminant"),
                   Q("12*t^2") * F("VII.2a.quartic"));
        b.count("2a: real roots of the quartic",
                count_real_roots(F("VII.2a.quartic"), Endpoint::infinite(), Endpoint::infinite()), 0,
                "Sturm count over R");
        b.identity("2a: sum-of-squares form expands to the quartic", F("VII.2a.decomposition"), F("VII.2a.quartic"));
        b.fact(SignFact::on_interval("2a: quartic > 0 on R", F("VII.2a.quartic"), Sign::positive, Endpoint::infinite(),
                                     Endpoint::infinite()));
        b.check("2a: hence t = 0, excluded above", true, "12 t^2 = 0");

        const std::map<std::string, Rational> p0t{{"p", 0}, {"t", Rational(-2, 3)}};
        const Polynomial e4b = sub(E4, p0t);
        b.identity("2b: E4 at p = 0, t = -2/3", e4b, Q("u*(B - 34/9)"));
        const Rational Bv = -divide_exact(e4b.coefficient_of("B", 0), e4b.coefficient_of("B", 1)).constant_term();
        b.check("2b: u != 0 gives B = 34/9", Bv == F("VII.2b.B").constant_term(), "B = " + Bv.to_string());
        const Polynomial a2b = sub(Q("(B + t + t^2)^2"), {{"B", Bv}, {"t", Rational(-2, 3)}});
        b.identity("2b: E0 = B ((B + t + t^2)^2 - A)", sub(E0, {{"p", 0}}), Q("B*((B + t + t^2)^2 - A)"));
        b.identity("2b: A = (32/9)^2 = 1024/81", a2b, F("VII.2b.A"));
        b.check("2b: A = 1024/81", a2b.constant_term() == Rational(1024, 81), a2b.constant_term().to_string());
        const Polynomial e3b = sub(E3, {{"p", 0}, {"t", Rational(-2, 3)}, {"B", Bv}, {"A", a2b.constant_term()}});
        b.identity("2b: E3 reduces to 1088/27 + 3 u^2", e3b, F("VII.2b.E3"));
        b.fact(SignFact::by_terms("2b: 1088/27 + 3 u^2 > 0", e3b, Sign::positive, {}, {"u"}));
    });
    return b.finish();
}

/// Certificate for p t^4 over an extracted system.
inline MembershipCertificate compute_case_VII_certificate(const ConstraintSystem &sys, GroebnerOptions options = {})
{
    IdealPresentation ideal{{}, OrderKind::grevlex};
    for (const char *e : {"E0", "E2", "E3", "E4", "E5", "E6"}) ideal.generators.push_back(sys.at(e).equation);
    return certify_membership(ideal, parse_polynomial("p*t^4", sys.target, OrderKind::grevlex), options);
}

/// Certifies the derived system, so a wrong fixture shows up in the comparison steps only.
inline CaseReport check_case_VII(const FixtureSet &fx = default_fixtures(), GroebnerOptions options = {})
{
    const ConstraintSystem sys = extract_system(solve_profile_ivp(ivp::generic(10)), CaseTag::VII, 6);
    return check_case_VII(compute_case_VII_certificate(sys, options), fx);
}

/// All seven checks, run concurrently; reports come back in case order.
inline std::vector<CaseReport> check_all_cases(const FixtureSet &fx = default_fixtures(),
                                               const MembershipCertificate *cert = nullptr)
{
    std::vector<std::future<CaseReport>> jobs;
    jobs.push_back(std::async(std::launch::async, [] { return check_case_I(); }));
    jobs.push_back(std::async(std::launch::async, [] { return check_case_II(); }));
    jobs.push_back(std::async(std::launch::async, [&fx] { return check_case_III(fx); }));
    jobs.push_back(std::async(std::launch::async, [] { return check_case_IV(); }));
    jobs.push_back(std::async(std::launch::async, [&fx] { return check_case_V(fx); }));
    jobs.push_back(std::async(std::launch::async, [&fx] { return check_case_VI(fx); }));
    jobs.push_back(std::async(std::launch::async, [&fx, cert] {
        return cert ? check_case_VII(*cert, fx) : check_case_VII(fx);
    }));
    std::vector<CaseReport> out;
    for (auto &j : jobs) out.push_back(j.get());
    return out;
}

/// Single report by id ("I" .. "VII").
inline CaseReport check_case(std::string_view id, const FixtureSet &fx = default_fixtures(),
                             const MembershipCertificate *cert = nullptr)
{
    if (id == "I") return check_case_I();
    if (id == "II") return check_case_II();
    if (id == "III") return check_case_III(fx);
    if (id == "IV") return check_case_IV();
    if (id == "V") return check_case_V(fx);
    if (id == "VI") return check_case_VI(fx);
    if (id == "VII") return cert ? check_case_VII(*cert, fx) : check_case_VII(fx);
    throw std::invalid_argument("unknown case '" + std::string(id) + "'");
}

} // namespace bhv
