#pragma once

/**
 * @file groebner.hpp
 * @brief Buchberger completion with cofactor provenance and membership certificates.
 *
 * Every basis element optionally carries cofactors expressing it in terms of
 * the original generators, so a zero normal form can be turned into an
 * explicit identity  target = sum_i K_i * generator_i  that is checked by
 * plain polynomial arithmetic.
 */

#include "bhv/poly.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bhv {

class ResourceLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IdealPresentation {
    std::vector<Polynomial> generators;
    OrderKind order = OrderKind::lex;
};

struct ReductionResult {
    Polynomial remainder;
    std::vector<Polynomial> quotients;
};

namespace detail {

struct MonomialGreater {
    OrderKind order;
    bool operator()(const Monomial &a, const Monomial &b) const { return compare_monomials(a, b, order) > 0; }
};

} // namespace detail

/**
 * Multivariate division. The highest remaining term is reduced against the
 * first basis element (in basis order) whose leading monomial divides it;
 * irreducible terms move to the remainder. f = sum q_i * basis_i + remainder.
 *
 * The arithmetic is fraction-free: the working polynomial is kept with integer
 * coefficients and a single rational scale, so no gcd is taken per term.
 */
inline ReductionResult reduce(const Polynomial &f, std::span<const Polynomial> basis, bool want_quotients = true)
{
    const VariableSet &vars = f.variables();
    const OrderKind order = f.order();
    struct IntTerm {
        Monomial m;
        mpz_class c;
    };
    std::vector<std::vector<IntTerm>> ib(basis.size());
    std::vector<Rational> sigma(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        f.check_same_ring(basis[k]);
        if (basis[k].is_zero()) throw std::invalid_argument("reduce: zero basis element");
        sigma[k] = basis[k].primitive_scale();
        for (const auto &t : basis[k].terms()) ib[k].push_back({t.monomial, (t.coeff * sigma[k]).numerator()});
    }

    ReductionResult out{Polynomial(vars, order), {}};
    if (f.is_zero()) {
        if (want_quotients) out.quotients.assign(basis.size(), Polynomial(vars, order));
        return out;
    }
    // f = work / scale + (quotient and remainder parts already emitted).
    const Rational fscale = f.primitive_scale();
    Rational scale = fscale;
    std::map<Monomial, mpz_class, detail::MonomialGreater> work(detail::MonomialGreater{order});
    for (const auto &t : f.terms()) work.emplace(t.monomial, (t.coeff * fscale).numerator());

    std::vector<std::vector<Term>> qterms(want_quotients ? basis.size() : 0);
    std::vector<Term> rem;
    mpz_class g, a, b;
    std::size_t steps = 0;
    while (!work.empty()) {
        auto it = work.begin();
        const Monomial m = it->first;
        std::size_t k = 0;
        for (; k < basis.size(); ++k)
            if (ib[k].front().m.divides(m)) break;
        if (k == basis.size()) {
            rem.push_back({m, Rational(it->second) / scale});
            work.erase(it);
            continue;
        }
        const mpz_class &lc = ib[k].front().c; // positive
        mpz_gcd(g.get_mpz_t(), it->second.get_mpz_t(), lc.get_mpz_t());
        mpz_divexact(a.get_mpz_t(), lc.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), it->second.get_mpz_t(), g.get_mpz_t());
        work.erase(it);
        if (a != 1) {
            for (auto &[mono, c] : work) c *= a;
            scale *= Rational(a);
        }
        const Monomial shift = m / ib[k].front().m;
        if (want_quotients) qterms[k].push_back({shift, Rational(b) / scale});
        for (std::size_t i = 1; i < ib[k].size(); ++i) {
            auto [pos, inserted] = work.try_emplace(ib[k][i].m * shift);
            mpz_submul(pos->second.get_mpz_t(), b.get_mpz_t(), ib[k][i].c.get_mpz_t());
            if (sgn(pos->second) == 0) work.erase(pos);
        }
        // Periodically divide out the content to bound coefficient growth.
        if (++steps % 16 == 0 && !work.empty()) {
            mpz_class content = 0;
            for (const auto &[mono, c] : work) {
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
                if (content == 1) break;
            }
            if (content > 1) {
                for (auto &[mono, c] : work) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
                scale /= Rational(content);
            }
        }
    }
    out.remainder = Polynomial::from_terms(vars, std::move(rem), order);
    if (want_quotients)
        for (std::size_t k = 0; k < basis.size(); ++k)
            out.quotients.push_back(Polynomial::from_terms(vars, std::move(qterms[k]), order) * sigma[k]);
    return out;
}

inline ReductionResult reduce(const Polynomial &f, const std::vector<Polynomial> &basis)
{
    return reduce(f, std::span<const Polynomial>(basis.data(), basis.size()));
}

/// lcm-scaled difference cancelling the leading terms of f and g.
inline Polynomial s_polynomial(const Polynomial &f, const Polynomial &g)
{
    f.check_same_ring(g);
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("s_polynomial: zero input");
    const Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    const Polynomial zero(f.variables(), f.order());
    Polynomial s = zero.add_scaled(f, f.leading_coefficient().inverse(), l / f.leading_monomial());
    return s.add_scaled(g, -g.leading_coefficient().inverse(), l / g.leading_monomial());
}

enum class SelectionStrategy {
    graded_lcm, ///< smallest lcm by total degree, ties by the ring order
    order_lcm,  ///< smallest lcm by the ring order alone
};

struct GroebnerOptions {
    bool track_provenance = true;
    SelectionStrategy strategy = SelectionStrategy::order_lcm;
    std::size_t max_reductions = 100000; ///< cap on S-polynomial reductions
};

struct GroebnerStats {
    std::size_t pairs_considered = 0;
    std::size_t coprime_skipped = 0;
    std::size_t chain_skipped = 0;
    std::size_t reductions = 0;
    std::size_t zero_reductions = 0;
    double seconds = 0.0;
};

namespace detail {

/**
 * How a basis entry arose: scale * (sum of scaled parents - sum q_k * entry_k).
 * Generators have no parents and seed their own unit cofactor.
 */
struct Derivation {
    struct Part {
        std::size_t index;
        Polynomial multiplier;
    };
    std::size_t generator = SIZE_MAX;
    std::vector<Part> parents;
    std::vector<Part> quotients;
    Rational scale{1};
};

/**
 * Turns derivation records into cofactors with respect to the generators.
 * A combination sum_n w_n * entry_n is pushed back through the records from
 * the newest entry to the oldest, so only one multiplier per entry is ever
 * held and the work is proportional to the target, not to the whole history.
 */
class ProvenanceExpander {
public:
    ProvenanceExpander(std::vector<Derivation> log, std::size_t ngen, const Polynomial &zero)
        : log_(std::move(log)), ngen_(ngen), zero_(zero), memo_(log_.size())
    {
    }

    std::size_t size() const { return log_.size(); }

    /// Cofactors K with sum_i K_i * generator_i = sum_n w_n * entry_n.
    std::vector<Polynomial> express(const std::vector<std::pair<std::size_t, Polynomial>> &weights) const
    {
        // Each multiplier is kept as an integer polynomial over one denominator.
        std::vector<std::optional<Scaled>> w(log_.size());
        std::vector<Scaled> cof(ngen_, Scaled{zero_, mpz_class(1)});
        std::size_t top = 0;
        for (const auto &[n, p] : weights) {
            if (n >= log_.size()) throw std::out_of_range("ProvenanceExpander: bad entry");
            if (p.is_zero()) continue;
            accumulate(w[n], split(p), mpz_class(1), mpz_class(1));
            top = std::max(top, n + 1);
        }
        for (std::size_t n = top; n-- > 0;) {
            if (!w[n] || w[n]->num.is_zero()) continue;
            const Derivation &d = log_[n];
            Scaled wn = std::move(*w[n]);
            w[n].reset();
            const mpz_class sn = d.scale.numerator();
            const mpz_class sd = d.scale.denominator() * wn.den;
            if (d.generator != SIZE_MAX) {
                std::optional<Scaled> slot = std::move(cof[d.generator]);
                accumulate(slot, Scaled{wn.num, mpz_class(1)}, sn, sd);
                cof[d.generator] = std::move(*slot);
            }
            for (const auto &part : d.parents) {
                const Scaled m = split(part.multiplier);
                accumulate(w[part.index], Scaled{wn.num * m.num, mpz_class(1)}, sn, sd * m.den);
            }
            for (const auto &part : d.quotients) {
                const Scaled m = split(part.multiplier);
                accumulate(w[part.index], Scaled{wn.num * m.num, mpz_class(1)}, mpz_class(-sn), sd * m.den);
            }
        }
        std::vector<Polynomial> out;
        out.reserve(ngen_);
        for (auto &c : cof) out.push_back(c.num * Rational(mpz_class(1), c.den));
        return out;
    }

    const std::vector<Polynomial> &cofactors(std::size_t n)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!memo_.at(n))
            memo_[n] = express({{n, Polynomial::constant(zero_.variables(), Rational(1), zero_.order())}});
        return *memo_[n];
    }

private:
    struct Scaled {
        Polynomial num; // integer coefficients
        mpz_class den;
    };

    static Scaled split(const Polynomial &p)
    {
        mpz_class l = 1;
        for (const auto &t : p.terms()) l = lcm(l, t.coeff.denominator());
        return {p * Rational(l), l};
    }

    /// slot += (num * mult) / (num.den * div), keeping integer numerators.
    static void accumulate(std::optional<Scaled> &slot, Scaled add, const mpz_class &mult, const mpz_class &div)
    {
        mpz_class den = add.den * div;
        mpz_class factor = mult;
        if (den < 0) {
            den = -den;
            factor = -factor;
        }
        if (!slot) {
            slot = Scaled{add.num * Rational(factor), den};
            return;
        }
        const mpz_class l = lcm(slot->den, den);
        if (l != slot->den) slot->num = slot->num * Rational(mpz_class(l / slot->den));
        slot->num += add.num * Rational(mpz_class(factor * (l / den)));
        slot->den = l;
        mpz_class g = slot->den;
        for (const auto &t : slot->num.terms()) {
            if (g == 1) break;
            g = gcd(g, abs(t.coeff.numerator()));
        }
        if (g > 1) {
            slot->num = slot->num * Rational(mpz_class(1), g);
            slot->den /= g;
        }
    }

    std::vector<Derivation> log_;
    std::size_t ngen_;
    Polynomial zero_;
    std::vector<std::optional<std::vector<Polynomial>>> memo_;
    std::mutex mutex_;
};

} // namespace detail

/**
 * Reduced Groebner basis. With provenance, cofactors(k)[i] is the multiplier
 * of generators[i] in the expression of elements[k]; it is expanded on first
 * request from the recorded derivations.
 */
struct GroebnerBasis {
    std::vector<Polynomial> generators;
    OrderKind order = OrderKind::lex;
    std::vector<Polynomial> elements;
    GroebnerStats stats;
    std::shared_ptr<detail::ProvenanceExpander> provenance;
    std::vector<std::size_t> entry; ///< derivation index of each element

    bool has_provenance() const { return provenance != nullptr; }

    const std::vector<Polynomial> &cofactors(std::size_t k) const
    {
        if (!provenance) throw std::logic_error("GroebnerBasis: provenance was not tracked");
        return provenance->cofactors(entry.at(k));
    }

    bool contains_element(const Polynomial &p) const
    {
        const Polynomial n = p.primitive_normalize(order);
        for (const auto &e : elements)
            if (e == n) return true;
        return false;
    }
};


/**
 * Buchberger's algorithm with a normal selection strategy and the
 * Gebauer-Moeller installation of both Buchberger criteria. When provenance
 * is on, each new entry records its derivation and cofactors are expanded for
 * the final elements only. Returns the reduced basis sorted by decreasing
 * leading monomial, each element primitive.
 */
inline GroebnerBasis buchberger(const IdealPresentation &presentation, const GroebnerOptions &options = {})
{
    if (presentation.generators.empty()) throw std::invalid_argument("buchberger: no generators");
    const auto start = std::chrono::steady_clock::now();
    const OrderKind order = presentation.order;
    const VariableSet vars = presentation.generators.front().variables();
    const bool track = options.track_provenance;
    const std::size_t ngen = presentation.generators.size();

    GroebnerBasis out;
    out.order = order;
    for (const auto &g : presentation.generators) {
        if (g.is_zero()) throw std::invalid_argument("buchberger: zero generator");
        if (!(g.variables() == vars)) throw VariableSetMismatch("buchberger: generators over different rings");
        out.generators.push_back(g.with_order(order));
    }

    const Polynomial zero(vars, order);
    std::vector<Polynomial> basis;         // append-only; entries are primitive
    std::vector<detail::Derivation> log;   // parallel to basis when tracking
    std::vector<std::size_t> active;       // current G

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pairs;

    // Reduces f modulo the active set; returns the primitive remainder and,
    // when tracking, records how it was obtained.
    auto reduce_active = [&](const Polynomial &f, detail::Derivation &d) {
        std::vector<Polynomial> polys;
        polys.reserve(active.size());
        for (std::size_t k : active) polys.push_back(basis[k]);
        ReductionResult r = reduce(f, std::span<const Polynomial>(polys.data(), polys.size()), track);
        if (r.remainder.is_zero()) return r.remainder;
        d.scale = r.remainder.primitive_scale();
        if (track)
            for (std::size_t j = 0; j < active.size(); ++j)
                if (!r.quotients[j].is_zero()) d.quotients.push_back({active[j], std::move(r.quotients[j])});
        return r.remainder * d.scale;
    };

    auto lm = [&](std::size_t k) -> const Monomial & { return basis[k].leading_monomial(); };

    // Gebauer-Moeller update for the new entry h = basis.back().
    auto update = [&]() {
        const std::size_t h = basis.size() - 1;
        const Monomial &lh = lm(h);
        std::vector<Pair> fresh;
        for (std::size_t g : active) fresh.push_back({g, h, Monomial::lcm(lm(g), lh)});
        // Keep a new pair only if no other new pair has an lcm dividing its lcm;
        // coprime pairs take part in the comparison but are then dropped.
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            bool coprime = Monomial::coprime(lm(fresh[a].i), lh);
            bool dominated = false;
            if (!coprime) {
                for (std::size_t b = 0; b < fresh.size() && !dominated; ++b) {
                    if (a == b || !fresh[b].lcm.divides(fresh[a].lcm)) continue;
                    // Equal lcms: keep the first, and prefer a coprime representative.
                    if (fresh[b].lcm == fresh[a].lcm)
                        dominated = Monomial::coprime(lm(fresh[b].i), lh) || b < a;
                    else
                        dominated = true;
                }
            }
            if (coprime) ++out.stats.coprime_skipped;
            else if (dominated) ++out.stats.chain_skipped;
            else kept.push_back(fresh[a]);
        }
        std::erase_if(pairs, [&](const Pair &p) {
            bool drop = lh.divides(p.lcm) && Monomial::lcm(lm(p.i), lh) != p.lcm &&
                        Monomial::lcm(lm(p.j), lh) != p.lcm;
            if (drop) ++out.stats.chain_skipped;
            return drop;
        });
        pairs.insert(pairs.end(), kept.begin(), kept.end());
        std::erase_if(active, [&](std::size_t k) { return lh.divides(lm(k)); });
        active.push_back(h);
    };

    for (std::size_t i = 0; i < ngen; ++i) {
        detail::Derivation d;
        d.generator = i;
        Polynomial h = reduce_active(out.generators[i], d);
        if (h.is_zero()) continue;
        basis.push_back(std::move(h));
        if (track) log.push_back(std::move(d));
        update();
    }

    auto pair_less = [&](const Pair &a, const Pair &b) {
        if (options.strategy == SelectionStrategy::graded_lcm && a.lcm.degree() != b.lcm.degree())
            return a.lcm.degree() < b.lcm.degree();
        int c = compare_monomials(a.lcm, b.lcm, order);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };

    while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), pair_less);
        const Pair p = *best;
        pairs.erase(best);
        ++out.stats.pairs_considered;

        if (out.stats.reductions >= options.max_reductions)
            throw ResourceLimitExceeded("buchberger: reduction cap of " + std::to_string(options.max_reductions) +
                                        " reached");
        ++out.stats.reductions;

        const Rational ci = basis[p.i].leading_coefficient().inverse();
        const Rational cj = -basis[p.j].leading_coefficient().inverse();
        const Monomial mi = p.lcm / lm(p.i);
        const Monomial mj = p.lcm / lm(p.j);
        const Polynomial s = zero.add_scaled(basis[p.i], ci, mi).add_scaled(basis[p.j], cj, mj);
        detail::Derivation d;
        Polynomial h = reduce_active(s, d);
        if (h.is_zero()) {
            ++out.stats.zero_reductions;
            continue;
        }
        if (track) {
            d.parents.push_back({p.i, Polynomial::monomial(vars, mi, ci, order)});
            d.parents.push_back({p.j, Polynomial::monomial(vars, mj, cj, order)});
        }
        basis.push_back(std::move(h));
        if (track) log.push_back(std::move(d));
        update();
    }

    // Inter-reduce the minimal basis; every element's tail is reduced by the others.
    std::vector<std::size_t> minimal = active;
    for (std::size_t &idx : minimal) {
        const std::size_t self = idx;
        active.clear();
        for (std::size_t k : minimal)
            if (k != self) active.push_back(k);
        detail::Derivation d;
        Polynomial h = reduce_active(basis[self], d);
        if (track) d.parents.push_back({self, Polynomial::constant(vars, Rational(1), order)});
        if (h == basis[self] && d.quotients.empty()) continue;
        basis.push_back(std::move(h));
        if (track) log.push_back(std::move(d));
        idx = basis.size() - 1;
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](std::size_t a, std::size_t b) { return compare_monomials(lm(a), lm(b), order) > 0; });
    for (std::size_t k : minimal) out.elements.push_back(basis[k]);
    if (track) {
        out.entry = minimal;
        out.provenance = std::make_shared<detail::ProvenanceExpander>(std::move(log), ngen, zero);
    }
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// True when every S-polynomial of the basis reduces to zero.
inline bool is_groebner_basis(const std::vector<Polynomial> &basis)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!reduce(s_polynomial(basis[i], basis[j]), basis).remainder.is_zero()) return false;
    return true;
}

/// True when no term of any element is divisible by another element's leading monomial.
inline bool is_reduced(const std::vector<Polynomial> &basis)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            for (const auto &t : basis[i].terms())
                if (basis[j].leading_monomial().divides(t.monomial)) return false;
        }
    return true;
}

struct MembershipCertificate {
    Polynomial target;
    std::vector<Polynomial> generators;
    std::vector<Polynomial> cofactors;
    Polynomial remainder;

    bool is_member() const { return remainder.is_zero(); }

    /// Re-expands sum K_i * g_i + remainder and compares with the target,
    /// after clearing denominators so the products run over the integers.
    bool verify() const
    {
        if (cofactors.size() != generators.size()) return false;
        auto den_lcm = [](const Polynomial &p) {
            mpz_class l = 1;
            for (const auto &t : p.terms()) l = lcm(l, t.coeff.denominator());
            return l;
        };
        std::vector<mpz_class> gden(generators.size());
        mpz_class L = lcm(den_lcm(remainder), den_lcm(target));
        for (std::size_t i = 0; i < generators.size(); ++i) {
            gden[i] = den_lcm(generators[i]);
            L = lcm(L, den_lcm(cofactors[i]) * gden[i]);
        }
        Polynomial sum = remainder * Rational(L);
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (cofactors[i].is_zero()) continue;
            sum += (cofactors[i] * Rational(mpz_class(L / gden[i]))) * (generators[i] * Rational(gden[i]));
        }
        return sum == target * Rational(L);
    }
};

/// Certificate built from a basis that carries provenance.
inline MembershipCertificate certify_membership(const GroebnerBasis &basis, const Polynomial &target)
{
    if (!basis.has_provenance()) throw std::invalid_argument("certify_membership: basis has no provenance");
    const Polynomial f = target.with_order(basis.order);
    ReductionResult r = reduce(f, basis.elements);
    std::vector<std::pair<std::size_t, Polynomial>> weights;
    for (std::size_t k = 0; k < basis.elements.size(); ++k)
        if (!r.quotients[k].is_zero()) weights.emplace_back(basis.entry[k], std::move(r.quotients[k]));
    return MembershipCertificate{f, basis.generators, basis.provenance->express(weights), r.remainder};
}

inline MembershipCertificate certify_membership(const IdealPresentation &presentation, const Polynomial &target,
                                                GroebnerOptions options = {})
{
    options.track_provenance = true;
    return certify_membership(buchberger(presentation, options), target);
}

} // namespace bhv
