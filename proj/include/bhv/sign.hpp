#pragma once

/**
 * @file sign.hpp
 * @brief Checked sign claims about polynomials on simple regions.
 *
 * A SignFact stores the expression, the region and the method, and
 * verify() re-derives the claim from scratch.
 */

#include "bhv/poly.hpp"
#include "bhv/poly_io.hpp"
#include "bhv/univariate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bhv {

enum class Sign { negative = -1, zero = 0, positive = 1 };
enum class SignMethod { exact_evaluation, sturm_count, positive_combination };

inline std::string to_string(Sign s)
{
    switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
    }
    return "?";
}

inline std::string to_string(SignMethod m)
{
    switch (m) {
    case SignMethod::exact_evaluation: return "exact evaluation";
    case SignMethod::sturm_count: return "Sturm count";
    case SignMethod::positive_combination: return "positive combination";
    }
    return "?";
}

/// var^2 is replaced by `image`, a polynomial over a ring holding the other symbols by name.
struct SquareWitness {
    std::string variable;
    Polynomial image;
};

struct SignFact {
    std::string description;
    Polynomial expression;
    Sign claimed = Sign::positive;
    SignMethod method = SignMethod::exact_evaluation;

    std::map<std::string, Rational> point;           ///< exact_evaluation
    Endpoint lo, hi;                                  ///< sturm_count, closed interval
    std::vector<std::string> positive, nonzero;       ///< positive_combination
    std::optional<SquareWitness> witness;

    static SignFact at_point(std::string description, Polynomial f, Sign claimed,
                             std::map<std::string, Rational> point = {})
    {
        SignFact s;
        s.description = std::move(description);
        s.expression = std::move(f);
        s.claimed = claimed;
        s.method = SignMethod::exact_evaluation;
        s.point = std::move(point);
        return s;
    }

    static SignFact on_interval(std::string description, Polynomial f, Sign claimed, Endpoint lo, Endpoint hi)
    {
        SignFact s;
        s.description = std::move(description);
        s.expression = std::move(f);
        s.claimed = claimed;
        s.method = SignMethod::sturm_count;
        s.lo = std::move(lo);
        s.hi = std::move(hi);
        return s;
    }

    static SignFact by_terms(std::string description, Polynomial f, Sign claimed, std::vector<std::string> positive,
                             std::vector<std::string> nonzero = {}, std::optional<SquareWitness> witness = {})
    {
        SignFact s;
        s.description = std::move(description);
        s.expression = std::move(f);
        s.claimed = claimed;
        s.method = SignMethod::positive_combination;
        s.positive = std::move(positive);
        s.nonzero = std::move(nonzero);
        s.witness = std::move(witness);
        return s;
    }

    std::string region() const
    {
        auto join = [](const std::vector<std::string> &v, const char *rel) {
            std::string out;
            for (const auto &n : v) out += (out.empty() ? "" : ", ") + n + rel;
            return out;
        };
        switch (method) {
        case SignMethod::exact_evaluation: {
            std::string out;
            for (const auto &[k, v] : point) out += (out.empty() ? "" : ", ") + k + " = " + v.to_string();
            return out.empty() ? "constant" : out;
        }
        case SignMethod::sturm_count: {
            const std::string l = lo.value ? "[" + lo.value->to_string() : "(-inf";
            const std::string h = hi.value ? hi.value->to_string() + "]" : "+inf)";
            return l + ", " + h;
        }
        case SignMethod::positive_combination: {
            std::string out = join(positive, " > 0");
            const std::string nz = join(nonzero, " != 0");
            if (!nz.empty()) out += (out.empty() ? "" : ", ") + nz;
            if (witness) out += (out.empty() ? "" : ", ") + witness->variable + "^2 = " + to_string(witness->image);
            return out;
        }
        }
        return {};
    }

    bool verify() const
    {
        try {
            switch (method) {
            case SignMethod::exact_evaluation: return expression.evaluate(point).sign() == static_cast<int>(claimed);
            case SignMethod::sturm_count: return verify_sturm();
            case SignMethod::positive_combination: return verify_terms();
            }
        } catch (const std::exception &) {
            return false;
        }
        return false;
    }

private:
    bool verify_sturm() const
    {
        if (claimed == Sign::zero || expression.is_zero()) return false;
        if (count_real_roots(expression, lo, hi) != 0) return false;
        const UnivariatePoly u = UnivariatePoly::from_polynomial(expression);
        Rational sample(0);
        if (lo.value) sample = *lo.value;
        else if (hi.value) sample = *hi.value;
        return u(sample).sign() == static_cast<int>(claimed);
    }

    std::optional<Polynomial> rewritten(const Polynomial &e) const
    {
        if (!witness) return e;
        const VariableSet &src = e.variables();
        const VariableSet &dst = witness->image.variables();
        const std::size_t v = src.index(witness->variable);
        Polynomial sum(dst, e.order());
        for (const auto &t : e.terms()) {
            if (t.monomial[v] % 2) return std::nullopt;
            Monomial m(dst.size());
            for (std::size_t i = 0; i < src.size(); ++i) {
                if (i == v || t.monomial[i] == 0) continue;
                m.set(dst.index(src.name(i)), t.monomial[i]);
            }
            sum += Polynomial::monomial(dst, m, t.coeff, e.order()) * witness->image.pow(t.monomial[v] / 2);
        }
        return sum;
    }

    bool verify_terms() const
    {
        if (claimed == Sign::zero) return expression.is_zero();
        const auto e = rewritten(claimed == Sign::negative ? -expression : expression);
        if (!e || e->is_zero()) return false;
        auto has = [](const std::vector<std::string> &v, const std::string &n) {
            return std::find(v.begin(), v.end(), n) != v.end();
        };
        const VariableSet &vars = e->variables();
        for (const auto &t : e->terms()) {
            if (t.coeff.sign() <= 0) return false;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                const unsigned k = t.monomial[i];
                if (k == 0 || has(positive, vars.name(i))) continue;
                if (k % 2 == 0 && has(nonzero, vars.name(i))) continue;
                return false;
            }
        }
        return true;
    }
};

} // namespace bhv
