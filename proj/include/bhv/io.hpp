#pragma once

/**
 * @file io.hpp
 * @brief JSON documents for bases, certificates, constraint systems and case reports.
 *
 * Polynomials are stored as canonical text together with the ring, so a
 * document round-trips exactly.
 */

#include "bhv/cases.hpp"
#include "bhv/constraints.hpp"
#include "bhv/groebner.hpp"
#include "bhv/numeric.hpp"
#include "bhv/poly.hpp"
#include "bhv/poly_io.hpp"
#include "bhv/series.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhv {

using json = nlohmann::ordered_json;

inline constexpr int kCertificateFormatVersion = 1;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(OrderKind o) { return o == OrderKind::lex ? "lex" : "grevlex"; }

inline OrderKind parse_order(std::string_view s)
{
    if (s == "lex") return OrderKind::lex;
    if (s == "grevlex") return OrderKind::grevlex;
    throw FormatError("unknown monomial order '" + std::string(s) + "'");
}

inline json to_json(const VariableSet &v)
{
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v.name(i));
    return a;
}

inline VariableSet variables_from_json(const json &j)
{
    std::vector<std::string> names;
    for (const auto &n : j) names.push_back(n.get<std::string>());
    return VariableSet(names);
}

inline json polys_to_json(const std::vector<Polynomial> &ps)
{
    json a = json::array();
    for (const auto &p : ps) a.push_back(to_string(p));
    return a;
}

inline std::vector<Polynomial> polys_from_json(const json &j, const VariableSet &v, OrderKind o)
{
    std::vector<Polynomial> out;
    for (const auto &s : j) out.push_back(parse_polynomial(s.get<std::string>(), v, o));
    return out;
}

inline json basis_to_json(const GroebnerBasis &b)
{
    const VariableSet &v = b.elements.empty() ? b.generators.front().variables() : b.elements.front().variables();
    return json{{"format", "bhv.groebner_basis"},
                {"version", 1},
                {"variables", to_json(v)},
                {"order", to_string(b.order)},
                {"generators", polys_to_json(b.generators)},
                {"elements", polys_to_json(b.elements)},
                {"stats",
                 {{"pairs_considered", b.stats.pairs_considered},
                  {"coprime_skipped", b.stats.coprime_skipped},
                  {"chain_skipped", b.stats.chain_skipped},
                  {"reductions", b.stats.reductions},
                  {"zero_reductions", b.stats.zero_reductions}}}};
}

inline json certificate_to_json(const MembershipCertificate &c)
{
    const VariableSet &v = c.target.variables();
    return json{{"format", "bhv.membership_certificate"},
                {"version", kCertificateFormatVersion},
                {"variables", to_json(v)},
                {"order", to_string(c.target.order())},
                {"target", to_string(c.target)},
                {"generators", polys_to_json(c.generators)},
                {"cofactors", polys_to_json(c.cofactors)},
                {"remainder", to_string(c.remainder)}};
}

inline MembershipCertificate certificate_from_json(const json &j)
{
    if (j.value("format", "") != "bhv.membership_certificate") throw FormatError("not a membership certificate");
    if (j.value("version", 0) != kCertificateFormatVersion)
        throw FormatError("unsupported certificate version " + std::to_string(j.value("version", 0)));
    const VariableSet v = variables_from_json(j.at("variables"));
    const OrderKind o = parse_order(j.at("order").get<std::string>());
    MembershipCertificate c;
    c.target = parse_polynomial(j.at("target").get<std::string>(), v, o);
    c.generators = polys_from_json(j.at("generators"), v, o);
    c.cofactors = polys_from_json(j.at("cofactors"), v, o);
    c.remainder = parse_polynomial(j.at("remainder").get<std::string>(), v, o);
    return c;
}

inline json series_to_json(const std::string &name, const TruncatedSeries &s)
{
    json a = json::array();
    for (unsigned n = 0; n <= s.order(); ++n) a.push_back(to_string(s[n]));
    return json{{"name", name}, {"convention", "exponential"}, {"coefficients", a}};
}

inline json profile_series_to_json(const ProfileSeries &s)
{
    return json{{"variables", to_json(s.r.variables())},
                {"order", s.r.order()},
                {"series", json::array({series_to_json("x", s.x), series_to_json("y", s.y), series_to_json("r", s.r),
                                        series_to_json("c", s.c)})}};
}

inline json system_to_json(const ConstraintSystem &sys)
{
    json el = json::array();
    for (const auto &e : sys.eliminated)
        el.push_back({{"variable", e.variable},
                      {"numerator", to_string(e.numerator)},
                      {"denominator", to_string(e.denominator)},
                      {"origin", e.origin}});
    json eq = json::array();
    for (const auto &e : sys.equations)
        eq.push_back({{"label", e.label},
                      {"origin", e.origin},
                      {"equation", to_string(e.equation)},
                      {"scale", e.scale.to_string()},
                      {"scale_power", e.scale_power}});
    return json{{"case", to_string(sys.tag)},
                {"source_variables", to_json(sys.source)},
                {"target_variables", to_json(sys.target)},
                {"eliminated", el},
                {"equations", eq}};
}

inline json sign_fact_to_json(const SignFact &f)
{
    json j{{"description", f.description},
           {"expression", to_string(f.expression)},
           {"variables", to_json(f.expression.variables())},
           {"claimed", to_string(f.claimed)},
           {"method", to_string(f.method)},
           {"region", f.region()}};
    if (f.witness) j["witness"] = {{"variable", f.witness->variable}, {"image", to_string(f.witness->image)}};
    return j;
}

inline json report_to_json(const CaseReport &r)
{
    json steps = json::array();
    for (const auto &s : r.steps) {
        json j{{"description", s.description}, {"detail", s.detail}, {"status", to_string(s.status)}};
        if (s.fact) j["sign_fact"] = sign_fact_to_json(*s.fact);
        steps.push_back(std::move(j));
    }
    json art = json::array();
    for (const auto &a : r.artifacts) art.push_back({{"name", a.name}, {"content", a.content}});
    return json{{"case", r.case_id},   {"title", r.title}, {"hypotheses", r.hypotheses},
                {"steps", steps},      {"artifacts", art}, {"verdict", to_string(r.verdict)}};
}

/// Human-readable summary: one line per step, failures marked.
inline std::string report_summary(const CaseReport &r)
{
    std::ostringstream os;
    os << "Case " << r.case_id << " (" << r.title << "): " << to_string(r.verdict) << "\n";
    for (const auto &h : r.hypotheses) os << "  assume: " << h << "\n";
    for (const auto &s : r.steps) os << "  [" << to_string(s.status) << "] " << s.description << "\n";
    if (const CaseStep *f = r.first_failure()) os << "  first failure: " << f->description << ": " << f->detail << "\n";
    return os.str();
}

inline json residuals_to_json(const ResidualReport &r)
{
    return json{{"arc_defect", r.arc_defect},         {"compatibility", r.compatibility},
                {"biharmonic", r.biharmonic},         {"a_equation", r.a_equation},
                {"b_equation", r.b_equation},         {"c_equation", r.c_equation},
                {"surface_laplacian_gap", r.surface_laplacian_gap}, {"samples", r.samples}};
}

inline json sweep_to_json(const std::vector<SweepRow> &rows)
{
    json a = json::array();
    for (const auto &r : rows) {
        const auto &p = r.point;
        a.push_back({{"r0", p.r0},
                     {"r1", p.r1},
                     {"c0", p.c0},
                     {"c1", p.c1},
                     {"alpha", p.alpha},
                     {"beta", p.beta},
                     {"x1", r.x1},
                     {"y1", r.y1},
                     {"x1_from", r.x1_from},
                     {"arc0", r.arc0},
                     {"comp0", r.comp0},
                     {"violated", r.violated},
                     {"tau_violation", r.violated ? json(r.tau_violation) : json(nullptr)},
                     {"max_arc", r.max_arc},
                     {"max_comp", r.max_comp},
                     {"truncated", r.truncated},
                     {"note", r.note}});
    }
    return a;
}

} // namespace bhv
