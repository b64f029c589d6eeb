#include "rforge/groebner.hpp"

#include "rforge/errors.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace rforge {

Division divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors) {
    Division out;
    out.quotients.assign(divisors.size(), MultiPoly(p.vars()));
    out.remainder = MultiPoly(p.vars());
    MultiPoly rest = p;
    while (!rest.is_zero()) {
        const Monomial top = rest.leading_monomial();
        const Rational c = rest.leading_coefficient();
        bool reduced = false;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            const auto& g = divisors[k];
            if (g.is_zero() || !g.leading_monomial().divides(top)) continue;
            const Monomial q = g.leading_monomial().quotient_of(top);
            const Rational coeff = c / g.leading_coefficient();
            rest.add_scaled(g, q, -coeff);
            out.quotients[k].add_term(q, coeff);
            reduced = true;
            break;
        }
        if (!reduced) {
            out.remainder.add_term(top, c);
            rest.add_term(top, -c);
        }
    }
    return out;
}

namespace {

struct Element {
    MultiPoly poly;
    std::vector<MultiPoly> cof;
};

void scale(Element& e, const Rational& c) {
    e.poly *= c;
    for (auto& q : e.cof) q *= c;
}

void make_monic(Element& e) {
    if (!e.poly.is_zero()) scale(e, 1 / e.poly.leading_coefficient());
}

/// Fully reduces e by the current basis and updates its cofactor row.
void reduce(Element& e, const std::vector<Element>& basis) {
    std::vector<MultiPoly> polys;
    polys.reserve(basis.size());
    for (const auto& b : basis) polys.push_back(b.poly);
    Division d = divide(e.poly, polys);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (d.quotients[k].is_zero()) continue;
        for (std::size_t j = 0; j < e.cof.size(); ++j) e.cof[j] -= d.quotients[k] * basis[k].cof[j];
    }
    e.poly = std::move(d.remainder);
}

} // namespace

GroebnerBasis groebner_with_cofactors(const std::vector<MultiPoly>& gens, MonomialOrder) {
    if (gens.empty()) throw UsageError("groebner_with_cofactors: no generators");
    VarSetPtr vars;
    for (const auto& g : gens)
        if (g.vars()) vars = g.vars();
    if (!vars) throw UsageError("groebner_with_cofactors: generators carry no VarSet");
    for (const auto& g : gens) {
        if (g.vars() && !same_vars(g.vars(), vars)) throw UsageError("generators over different VarSets");
        if (g.has_parameters()) throw UsageError("groebner_with_cofactors: parameter variables are not allowed");
    }
    const std::size_t s = gens.size();
    std::vector<Element> basis;
    for (std::size_t j = 0; j < s; ++j) {
        if (gens[j].is_zero()) continue;
        Element e{gens[j], std::vector<MultiPoly>(s, MultiPoly(vars))};
        e.cof[j] = MultiPoly::constant(vars, 1);
        make_monic(e);
        basis.push_back(std::move(e));
    }

    // Pairs keyed by (lcm degree, j, i) for a deterministic normal selection.
    std::set<std::tuple<int, std::size_t, std::size_t>> pairs;
    auto add_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            const auto& a = basis[i].poly.leading_monomial();
            const auto& b = basis[j].poly.leading_monomial();
            pairs.emplace(a.lcm(b).degree(), j, i);
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

    while (!pairs.empty()) {
        auto [deg, j, i] = *pairs.begin();
        pairs.erase(pairs.begin());
        const auto& a = basis[i];
        const auto& b = basis[j];
        const Monomial& la = a.poly.leading_monomial();
        const Monomial& lb = b.poly.leading_monomial();
        const Monomial l = la.lcm(lb);
        // Coprime leading monomials: the S-polynomial reduces to zero.
        if (l.degree() == la.degree() + lb.degree()) continue;
        const Monomial ma = la.quotient_of(l);
        const Monomial mb = lb.quotient_of(l);
        Element sp{a.poly.times_term(ma, 1), std::vector<MultiPoly>(s, MultiPoly(vars))};
        sp.poly.add_scaled(b.poly, mb, -1);
        for (std::size_t k = 0; k < s; ++k) {
            sp.cof[k] = a.cof[k].times_term(ma, 1);
            sp.cof[k].add_scaled(b.cof[k], mb, -1);
        }
        reduce(sp, basis);
        if (sp.poly.is_zero()) continue;
        make_monic(sp);
        basis.push_back(std::move(sp));
        add_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop elements whose leading monomial is divisible by another's.
    std::vector<Element> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& li = basis[i].poly.leading_monomial();
        bool redundant = false;
        for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
            if (k == i) continue;
            const auto& lk = basis[k].poly.leading_monomial();
            if (lk.divides(li) && (!(lk == li) || k < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Inter-reduce tails.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Element> others;
        for (std::size_t k = 0; k < minimal.size(); ++k)
            if (k != i) others.push_back(minimal[k]);
        Element head{MultiPoly::term(vars, minimal[i].poly.leading_monomial(), 1),
                     std::vector<MultiPoly>(s, MultiPoly(vars))};
        Element tail = minimal[i];
        tail.poly.add_term(minimal[i].poly.leading_monomial(), -1);
        reduce(tail, others);
        tail.poly += head.poly;
        minimal[i] = std::move(tail);
    }
    std::sort(minimal.begin(), minimal.end(), [](const Element& x, const Element& y) {
        return DegRevLex{}(x.poly.leading_monomial(), y.poly.leading_monomial());
    });

    GroebnerBasis gb;
    gb.vars_ = vars;
    gb.generators_ = gens;
    for (auto& g : gb.generators_)
        if (!g.vars()) g = MultiPoly(vars);
    for (auto& e : minimal) {
        gb.basis_.push_back(std::move(e.poly));
        gb.cofactors_.push_back(std::move(e.cof));
    }
    return gb;
}

bool GroebnerBasis::is_unit_ideal() const {
    return std::any_of(basis_.begin(), basis_.end(),
                       [](const MultiPoly& p) { return !p.is_zero() && p.leading_monomial().is_one(); });
}

std::optional<std::vector<Monomial>> GroebnerBasis::standard_monomials() const {
    const std::size_t n = vars_->num_active();
    const std::size_t total = vars_->size();
    std::vector<int> bound(n, -1);
    for (const auto& g : basis_) {
        const auto& lm = g.leading_monomial();
        std::size_t support = 0, which = 0;
        for (std::size_t i = 0; i < total; ++i)
            if (lm[i] != 0) {
                ++support;
                which = i;
            }
        if (support == 0) return std::vector<Monomial>{};
        if (support == 1 && which < n && (bound[which] < 0 || lm[which] < bound[which])) bound[which] = lm[which];
    }
    for (int b : bound)
        if (b < 0) return std::nullopt;

    std::vector<Monomial> out;
    std::vector<int> e(total, 0);
    for (;;) {
        Monomial m(e);
        bool standard = true;
        for (const auto& g : basis_)
            if (g.leading_monomial().divides(m)) {
                standard = false;
                break;
            }
        if (standard) out.push_back(std::move(m));
        std::size_t i = 0;
        while (i < n) {
            if (++e[i] < bound[i]) break;
            e[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return DegRevLex{}(b, a);
    });
    return out;
}

NormalForm normal_form(const MultiPoly& p, const GroebnerBasis& gb) {
    Division d = divide(p, gb.basis());
    const std::size_t s = gb.generators().size();
    NormalForm nf{std::move(d.remainder), std::vector<MultiPoly>(s, MultiPoly(gb.vars()))};
    for (std::size_t k = 0; k < gb.basis().size(); ++k) {
        if (d.quotients[k].is_zero()) continue;
        for (std::size_t j = 0; j < s; ++j) nf.combination[j] += d.quotients[k] * gb.cofactors()[k][j];
    }
    if (!nf.remainder.vars()) nf.remainder = MultiPoly(gb.vars());
    return nf;
}

} // namespace rforge
