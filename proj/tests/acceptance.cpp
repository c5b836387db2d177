#include "bhv/cases.hpp"
#include "bhv/numeric.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace bhv;

namespace {

constexpr double kCatenoidBiharmonic = 1e-6;
constexpr double kCatenoidArc = 1e-8;
constexpr double kCylinderCEquation = 1e-6;
constexpr double kRichardsonLo = 3.5, kRichardsonHi = 4.5;
constexpr double kWindow = 2.0, kStep = 1e-3;
constexpr int kRandomIdeals = 50;

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *name, const std::function<Outcome()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

/// Verdict plus named steps that must be present and passing.
Outcome case_outcome(const CaseReport &r, const std::vector<std::string> &required)
{
    for (const auto &name : required) {
        const auto it = std::find_if(r.steps.begin(), r.steps.end(),
                                     [&](const CaseStep &s) { return s.description == name; });
        if (it == r.steps.end()) return {false, "missing step '" + name + "'"};
        if (it->status != StepStatus::pass) return {false, "'" + name + "': " + it->detail};
    }
    if (const CaseStep *f = r.first_failure()) return {false, f->description + ": " + f->detail};
    return {r.verified(), std::to_string(r.steps.size()) + " steps pass, " + to_string(r.verdict)};
}

} // namespace

int main()
{
    const FixtureSet &fx = default_fixtures();
    const ProfileSeries generic = solve_profile_ivp(ivp::generic(10));
    const ConstraintSystem sys = extract_system(generic, CaseTag::VII, 6);
    const std::vector<std::string> labels{"E0", "E2", "E3", "E4", "E5", "E6"};
    MembershipCertificate cert;

    criterion(1, "series reproduction", [&] {
        int same = 0, total = 0;
        auto cmp = [&](const TruncatedSeries &s, char n, unsigned lo, unsigned hi) {
            for (unsigned k = lo; k <= hi; ++k, ++total)
                same += s[k] == fx.polynomial(std::string(1, n) + std::to_string(k), s.variables());
        };
        cmp(generic.r, 'r', 2, 7);
        cmp(generic.x, 'x', 2, 6);
        cmp(generic.y, 'y', 2, 7);
        return Outcome{same == total && total == 17, std::to_string(same) + "/" + std::to_string(total) + " exact"};
    });

    criterion(2, "E-system reproduction", [&] {
        int same = 0;
        for (const auto &l : labels) same += sys.at(l).equation == fx.polynomial(l, sys.target);
        return Outcome{same == 6 && sys.equations.size() == 6, std::to_string(same) + "/6 equal after primitive normalization"};
    });

    criterion(3, "Groebner certificate for p t^4", [&] {
        IdealPresentation lex{{}, OrderKind::lex};
        for (const auto &l : labels) lex.generators.push_back(sys.at(l).equation);
        GroebnerOptions o;
        o.track_provenance = false;
        const GroebnerBasis b = buchberger(lex, o);
        const Polynomial target = fx.polynomial("VII.target", sys.target);
        const bool nf = reduce(target, b.elements).remainder.is_zero();
        const bool reduced = is_reduced(b.elements) && is_groebner_basis(b.elements);
        cert = compute_case_VII_certificate(sys);
        const bool identity = cert.is_member() && cert.verify();
        std::size_t terms = 0;
        for (const auto &k : cert.cofactors) terms += k.size();
        return Outcome{nf && reduced && identity,
                       "lex basis " + std::to_string(b.elements.size()) + " elements, normal form " + (nf ? "0" : "nonzero") +
                           ", identity over " + std::to_string(terms) + " cofactor terms " +
                           (identity ? "re-expands" : "fails") + ", p t^4 in basis: " +
                           (b.contains_element(target) ? "yes" : "no")};
    });

    criterion(4, "Case V values", [&] {
        return case_outcome(check_case_V(fx), {"sub-case 1: 56/9 > 0", "sub-case 1: G''''(0) modulo c0^2 = 2 alpha^2",
                                               "sub-case 2: 3 c1^4 / alpha^4 > 0", "sub-case 3: G''(0)",
                                               "sub-case 3: closed form of G''(0) is positive"});
    });

    criterion(5, "Case VI elimination and Sturm counts", [&] {
        return case_outcome(check_case_VI(fx),
                            {"2a: resultant in A is a multiple of t f(t)", "2a: real roots of f",
                             "2a: roots of f in the bracket", "2a: f(-12/5) = -36/25 < 0", "2a: f(-9/4) = 75/64 > 0",
                             "2a: roots of phi in the bracket", "2a: phi < 0 on the bracket",
                             "2b: tau^3 equation is 81 r0^2 (alpha^2 + c1^2) = 4", "2b: ordinary tau^4 coefficient"});
    });

    criterion(6, "Case VII branches", [&] {
        return case_outcome(check_case_VII(cert, fx),
                            {"certificate identity re-expands exactly", "2a: resultant in B",
                             "2a: real roots of the quartic", "2a: sum-of-squares form expands to the quartic",
                             "2b: u != 0 gives B = 34/9", "2b: A = 1024/81", "2b: E3 reduces to 1088/27 + 3 u^2",
                             "t = 0: E2 = 2 (u + B p)", "t = 0, p = 0: E3 = 3A + 2B",
                             "t = 0: E4 at u = -B p is p (8A + 8B^2 p^2 - B^2)",
                             "t = 0: (3/8) B^2 + 2B (1 - p^2) > 0 with p^2 = 1/8 - s, s > 0"});
    });

    criterion(7, "numeric cross-validation", [&] {
        const ResidualReport cat = biharmonic_residual(integrate_window(catenoid_initial(), {}, kWindow, kStep));
        const ResidualReport cyl =
            biharmonic_residual(integrate_window(cylinder_initial(), cylinder_params(), kWindow, kStep));
        const double ratio =
            surface_laplacian_gap(catenoid_profile(), 40, 32) / surface_laplacian_gap(catenoid_profile(), 80, 64);
        const bool ok = cat.biharmonic < kCatenoidBiharmonic && cat.arc_defect < kCatenoidArc &&
                        std::abs(cyl.c_equation - 1) < kCylinderCEquation && ratio >= kRichardsonLo &&
                        ratio <= kRichardsonHi;
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "catenoid biharmonic %.2e arc %.2e, cylinder c-equation %.9f, Richardson ratio %.3f", cat.biharmonic,
                      cat.arc_defect, cyl.c_equation, ratio);
        return Outcome{ok, buf};
    });

    criterion(8, "structural identities", [&] {
        bool ok = true;
        std::string d;
        for (const ProfileIVP &p : {ivp::generic(10), ivp::parallel(10), ivp::constant_q(10)}) {
            const TruncatedSeries id = arc_identity_defect(solve_profile_ivp(p));
            ok = ok && id.is_zero() && id.order() == p.order - 2;
        }
        d += std::string("arc identity ") + (ok ? "zero" : "nonzero") + " to order N-2";

        GroebnerOptions o;
        o.track_provenance = false;
        auto sorted_text = [](const std::vector<Polynomial> &v) {
            std::vector<std::string> s;
            for (const auto &p : v) s.push_back(to_string(p));
            std::sort(s.begin(), s.end());
            return s;
        };
        std::vector<Polynomial> gens;
        for (const auto &l : labels) gens.push_back(sys.at(l).equation.with_order(OrderKind::grevlex));
        const GroebnerBasis ref = buchberger({gens, OrderKind::grevlex}, o);
        bool flagship = is_groebner_basis(ref.elements) && is_reduced(ref.elements);
        for (int k = 1; k <= 2; ++k) {
            std::vector<Polynomial> perm = gens;
            std::rotate(perm.begin(), perm.begin() + 2 * k, perm.end());
            if (k == 2) std::reverse(perm.begin(), perm.end());
            flagship = flagship && sorted_text(buchberger({perm, OrderKind::grevlex}, o).elements) == sorted_text(ref.elements);
        }
        ok = ok && flagship;
        d += std::string(", flagship postconditions and permutation uniqueness ") + (flagship ? "hold" : "fail");

        const oracle::RandomIdealSummary r = oracle::check_random_ideals(2024, kRandomIdeals);
        ok = ok && r.failures.empty() && r.ideals == kRandomIdeals;
        d += ", " + std::to_string(r.ideals) + " random ideals vs linear-algebra oracle: " +
             (r.failures.empty() ? std::string("agree") : r.failures.front());
        return Outcome{ok, d};
    });

    return failures == 0 ? 0 : 1;
}
