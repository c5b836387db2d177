#pragma once

/**
 * @file constraints.hpp
 * @brief Compatibility and arc-length constraints as algebraic systems.
 *
 * The tau-coefficients of  a x' + b y' + c r'  and  x'^2 + y'^2 + r'^2 - r^2
 * must vanish. The low coefficients are solved for x1, y1; the rest are
 * rewritten in scale-free variables and made primitive.
 */

#include "bhv/poly.hpp"
#include "bhv/poly_io.hpp"
#include "bhv/series.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhv {

enum class CaseTag { V, VI, VII };

inline std::string to_string(CaseTag c)
{
    switch (c) {
    case CaseTag::V: return "V";
    case CaseTag::VI: return "VI";
    case CaseTag::VII: return "VII";
    }
    return "?";
}

inline CaseTag parse_case_tag(std::string_view s)
{
    if (s == "V") return CaseTag::V;
    if (s == "VI") return CaseTag::VI;
    if (s == "VII") return CaseTag::VII;
    throw std::invalid_argument("unknown case tag '" + std::string(s) + "'");
}

class EliminationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// a x' + b y' + c r'.
inline TruncatedSeries compatibility_series(const ProfileSeries &s)
{
    const TruncatedSeries xd = s.x.derivative(), yd = s.y.derivative(), rd = s.r.derivative();
    return s.a * xd + s.b * yd + s.c * rd;
}

/// x'^2 + y'^2 + r'^2 - r^2.
inline TruncatedSeries arc_defect_series(const ProfileSeries &s)
{
    const TruncatedSeries xd = s.x.derivative(), yd = s.y.derivative(), rd = s.r.derivative();
    return xd * xd + yd * yd + rd * rd - s.r * s.r;
}

/// d/dtau(arc defect) - 2 r^2 (a x' + b y' + c r'); identically zero for solved profiles.
inline TruncatedSeries arc_identity_defect(const ProfileSeries &s)
{
    const TruncatedSeries lhs = arc_defect_series(s).derivative();
    const TruncatedSeries rhs = s.r * s.r * compatibility_series(s) * Rational(2);
    return lhs - rhs;
}

/**
 * Scale-free rewrite: each source symbol maps to a target symbol raised to
 * 1/divisor, times r0^weight; r0 itself is dropped after checking that every
 * monomial carries the same total power of it.
 */
class NormalizationMap {
public:
    struct Rule {
        std::string target;
        unsigned divisor = 1;
        int weight = 0;
    };

    NormalizationMap(VariableSet source, VariableSet target, std::string scale, std::map<std::string, Rule> rules)
        : source_(std::move(source)), target_(std::move(target)), scale_(std::move(scale)), rules_(std::move(rules))
    {
    }

    /// r1 -> p r0, c0 -> t/r0, c1 -> u/r0, alpha^2 -> A/r0^2, beta^2 -> B/r0^2, k -> v r0.
    static NormalizationMap standard(const VariableSet &source)
    {
        std::map<std::string, Rule> rules{{"r1", {"p", 1, 1}},   {"c0", {"t", 1, -1}},   {"c1", {"u", 1, -1}},
                                          {"alpha", {"A", 2, -1}}, {"beta", {"B", 2, -1}}, {"k", {"v", 1, 1}}};
        std::vector<std::string> names;
        for (const char *n : {"A", "B", "u", "v", "p", "t"}) {
            for (const auto &[src, rule] : rules)
                if (rule.target == n && source.find(src)) names.push_back(n);
        }
        std::erase_if(rules, [&](const auto &kv) { return !source.find(kv.first); });
        return NormalizationMap(source, VariableSet(names), "r0", rules);
    }

    const VariableSet &target() const { return target_; }

    struct Result {
        Polynomial value;
        int scale_power = 0; // power of r0 divided out
    };

    Result apply(const Polynomial &f) const
    {
        if (!(f.variables() == source_)) throw VariableSetMismatch("NormalizationMap: polynomial over another ring");
        const std::size_t s = source_.index(scale_);
        std::vector<Term> out;
        std::optional<int> power;
        for (const auto &t : f.terms()) {
            Monomial m(target_.size());
            int w = static_cast<int>(t.monomial[s]);
            for (std::size_t i = 0; i < source_.size(); ++i) {
                const unsigned e = t.monomial[i];
                if (i == s || e == 0) continue;
                auto it = rules_.find(source_.name(i));
                if (it == rules_.end())
                    throw EliminationError("NormalizationMap: symbol '" + source_.name(i) + "' has no rule");
                const Rule &r = it->second;
                if (e % r.divisor != 0)
                    throw EliminationError("NormalizationMap: odd power of '" + source_.name(i) + "'");
                m.set(target_.index(r.target), e / r.divisor);
                w += r.weight * static_cast<int>(e);
            }
            if (power && *power != w)
                throw EliminationError("NormalizationMap: result is not free of " + scale_ + " in '" + to_string(f) + "'");
            power = w;
            out.push_back({m, t.coeff});
        }
        return {Polynomial::from_terms(target_, std::move(out)), power.value_or(0)};
    }

private:
    VariableSet source_, target_;
    std::string scale_;
    std::map<std::string, Rule> rules_;
};

struct Elimination {
    std::string variable;
    Polynomial numerator;   ///< variable = numerator / denominator
    Polynomial denominator;
    std::string origin;
};

struct ConstraintEquation {
    std::string label;
    std::string origin;      ///< e.g. "compatibility tau^3"
    Polynomial raw;          ///< the tau-coefficient before elimination
    Polynomial cleared;      ///< after substituting eliminated symbols and clearing denominators
    Polynomial equation;     ///< normalized and primitive
    Rational scale;          ///< equation = scale * normalize(cleared)
    int scale_power = 0;     ///< power of r0 removed by normalization
};

struct ConstraintSystem {
    CaseTag tag = CaseTag::VII;
    VariableSet source, target;
    std::vector<Elimination> eliminated;
    std::vector<ConstraintEquation> equations;

    const ConstraintEquation &at(std::string_view label) const
    {
        for (const auto &e : equations)
            if (e.label == label) return e;
        throw std::out_of_range("ConstraintSystem: no equation '" + std::string(label) + "'");
    }
};

namespace detail {

inline Elimination solve_linear(const Polynomial &f, const std::string &var, const std::vector<std::string> &nonzero,
                                const std::string &origin)
{
    const VariableSet &v = f.variables();
    if (f.degree_in(var) != 1)
        throw EliminationError("cannot solve " + origin + " for " + var + ": not linear in it");
    const Polynomial lead = f.coefficient_of(var, 1);
    const Polynomial rest = f.coefficient_of(var, 0);
    if (lead.size() != 1) throw EliminationError("cannot solve " + origin + " for " + var + ": divisor is not a monomial");
    const Monomial &m = lead.leading_monomial();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (m[i] == 0) continue;
        if (std::find(nonzero.begin(), nonzero.end(), v.name(i)) == nonzero.end())
            throw EliminationError("cannot solve " + origin + " for " + var + ": divides by " + v.name(i) +
                                   ", which the case does not guarantee nonzero");
    }
    return {var, -rest, lead, origin};
}

inline Polynomial apply_eliminations(Polynomial f, const std::vector<Elimination> &el)
{
    for (const auto &e : el)
        if (f.involves(f.variables().index(e.variable))) f = f.substitute_fraction(e.variable, e.numerator, e.denominator);
    return f;
}

} // namespace detail

/**
 * Case V (q = (alpha, 0)): tau^0 gives x1; E0 from arc-length, E1..E6 from compatibility.
 * Case VI (q = (alpha tau, 0)): tau^1 gives x1; C0 is compatibility tau^0, E0 arc-length, E2..E6.
 * Case VII (q = (alpha tau, beta)): tau^0 gives y1, tau^1 gives x1; E0, E2..E6.
 */
inline ConstraintSystem extract_system(const ProfileSeries &s, CaseTag tag, unsigned max_tau = 6)
{
    const TruncatedSeries comp = compatibility_series(s);
    const TruncatedSeries arc = arc_defect_series(s);
    if (comp.order() < max_tau) throw std::invalid_argument("extract_system: series too short");
    const VariableSet &src = s.r.variables();
    const NormalizationMap norm = NormalizationMap::standard(src);

    ConstraintSystem sys;
    sys.tag = tag;
    sys.source = src;
    sys.target = norm.target();

    auto origin = [](const char *what, unsigned k) { return std::string(what) + " tau^" + std::to_string(k); };
    std::vector<std::string> nonzero;
    std::vector<std::pair<unsigned, std::string>> solve_for;
    unsigned first = 0;
    switch (tag) {
    case CaseTag::VII:
        nonzero = {"alpha", "beta"};
        solve_for = {{0, "y1"}, {1, "x1"}};
        first = 2;
        break;
    case CaseTag::VI:
        nonzero = {"alpha"};
        solve_for = {{1, "x1"}};
        first = 2;
        break;
    case CaseTag::V:
        nonzero = {"alpha"};
        solve_for = {{0, "x1"}};
        first = 1;
        break;
    }
    for (const auto &[k, var] : solve_for) {
        const Polynomial f = detail::apply_eliminations(comp[k], sys.eliminated);
        sys.eliminated.push_back(detail::solve_linear(f, var, nonzero, origin("compatibility", k)));
    }

    auto emit = [&](std::string label, std::string from, const Polynomial &raw) {
        ConstraintEquation e;
        e.label = std::move(label);
        e.origin = std::move(from);
        e.raw = raw;
        e.cleared = detail::apply_eliminations(raw, sys.eliminated);
        if (e.cleared.is_zero()) throw EliminationError(e.origin + " vanishes identically");
        auto n = norm.apply(e.cleared);
        e.scale = n.value.primitive_scale();
        e.equation = n.value * e.scale;
        e.scale_power = n.scale_power;
        sys.equations.push_back(std::move(e));
    };
    if (tag == CaseTag::VI) emit("C0", origin("compatibility", 0), comp[0]);
    emit("E0", origin("arc-length", 0), arc[0]);
    for (unsigned k = first; k <= max_tau; ++k) emit("E" + std::to_string(k), origin("compatibility", k), comp[k]);
    return sys;
}

} // namespace bhv
