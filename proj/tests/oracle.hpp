#pragma once

#include "bhv/groebner.hpp"
#include "bhv/poly_io.hpp"

#include <string>

#include <random>
#include <vector>

namespace bhv::oracle {

inline const VariableSet &XY()
{
    static const VariableSet v{"x", "y"};
    return v;
}

/// Exact Gaussian elimination: is b in the column span of M (rows = equations)?
inline bool solvable(std::vector<std::vector<Rational>> M, std::vector<Rational> b)
{
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && M[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        std::swap(b[piv], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            const Rational f = M[i][c] / M[r][c];
            for (std::size_t k = c; k < cols; ++k) M[i][k] -= f * M[r][k];
            b[i] -= f * b[r];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return false;
    return true;
}

/// Brute-force membership: f = sum h_i g_i with deg(h_i g_i) <= D, as a linear system over Q.
inline bool member_by_linear_algebra(const Polynomial &f, const std::vector<Polynomial> &gens, unsigned D)
{
    std::vector<Monomial> monos;
    for (unsigned d = 0; d <= D; ++d)
        for (unsigned a = 0; a <= d; ++a) monos.push_back(Monomial{a, d - a});
    auto row_of = [&](const Monomial &m) {
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (monos[i] == m) return i;
        return monos.size();
    };
    if (f.total_degree() > D) return false;
    std::vector<std::vector<Rational>> M(monos.size());
    for (const auto &g : gens) {
        const unsigned dg = g.total_degree();
        if (dg > D) continue;
        for (const auto &h : monos) {
            if (h.degree() + dg > D) continue;
            std::vector<Rational> col(monos.size(), Rational(0));
            for (const auto &t : g.terms()) col[row_of(t.monomial * h)] += t.coeff;
            for (std::size_t i = 0; i < monos.size(); ++i) M[i].push_back(col[i]);
        }
    }
    std::vector<Rational> b(monos.size(), Rational(0));
    for (const auto &t : f.terms()) b[row_of(t.monomial)] = t.coeff;
    if (M.empty() || M[0].empty()) return f.is_zero();
    return solvable(M, b);
}

inline Polynomial random_xy(std::mt19937 &rng, unsigned max_deg, unsigned terms)
{
    std::uniform_int_distribution<int> c(-3, 3), e(0, static_cast<int>(max_deg));
    std::vector<Term> ts;
    for (unsigned i = 0; i < terms; ++i) {
        unsigned a = static_cast<unsigned>(e(rng)), b = static_cast<unsigned>(e(rng));
        if (a + b > max_deg) b = max_deg - a;
        ts.push_back({Monomial{a, b}, Rational(c(rng))});
    }
    return Polynomial::from_terms(XY(), ts);
}

struct RandomIdealSummary {
    int ideals = 0, members = 0, non_members = 0;
    std::vector<std::string> failures;
};

/// Buchberger on random ideals in [x, y], checked against the linear-algebra oracle at degree bound 8.
inline RandomIdealSummary check_random_ideals(unsigned seed, int count)
{
    std::mt19937 rng(seed);
    RandomIdealSummary out;
    while (out.ideals < count) {
        std::vector<Polynomial> gens;
        const int n = 2 + out.ideals % 2;
        for (int i = 0; i < n; ++i) gens.push_back(random_xy(rng, 2, 3));
        std::erase_if(gens, [](const Polynomial &g) { return g.is_zero(); });
        if (gens.size() < 2) continue;
        const OrderKind o = out.ideals % 2 ? OrderKind::grevlex : OrderKind::lex;
        for (auto &g : gens) g = g.with_order(o);
        const GroebnerBasis b = buchberger({gens, o});
        const std::string id = "ideal " + std::to_string(out.ideals);
        if (!is_groebner_basis(b.elements)) out.failures.push_back(id + ": S-pairs do not all reduce to 0");
        if (!is_reduced(b.elements)) out.failures.push_back(id + ": basis not reduced");
        for (const auto &g : gens)
            if (!reduce(g, b.elements).remainder.is_zero()) out.failures.push_back(id + ": generator not in span");

        std::vector<Polynomial> targets{Polynomial::constant(XY(), Rational(1), o)};
        for (int k = 0; k < 3; ++k) {
            Polynomial m(XY(), o);
            for (const auto &g : gens) m += random_xy(rng, 1, 2).with_order(o) * g;
            targets.push_back(m);
            targets.push_back(m + random_xy(rng, 2, 2).with_order(o));
        }
        for (const auto &f : targets) {
            const bool gb = reduce(f, b.elements).remainder.is_zero();
            if (gb != member_by_linear_algebra(f, gens, 8))
                out.failures.push_back(id + ": membership disagrees for " + to_string(f));
            const MembershipCertificate c = certify_membership(b, f);
            if (!c.verify() || c.is_member() != gb) out.failures.push_back(id + ": certificate wrong for " + to_string(f));
            (gb ? out.members : out.non_members)++;
        }
        ++out.ideals;
    }
    return out;
}

} // namespace bhv::oracle
