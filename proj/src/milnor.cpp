#include "rforge/milnor.hpp"

#include "rforge/errors.hpp"

namespace rforge {

MilnorAlgebra milnor_data(const MultiPoly& f) {
    if (!f.vars()) throw UsageError("milnor_data: polynomial carries no VarSet");
    if (f.has_parameters()) throw UsageError("milnor_data: f must be in the active variables");
    const auto& vars = f.vars();
    const std::size_t n = vars->num_active();

    MilnorAlgebra alg;
    alg.f = f;
    for (std::size_t i = 0; i < n; ++i) {
        alg.jacobian.push_back(f.derivative(i));
        if (alg.jacobian.back().constant_term() != 0)
            throw ValidationError("df(0) != 0: the origin is not a critical point of " + f.str());
    }
    bool all_zero = true;
    for (const auto& p : alg.jacobian) all_zero = all_zero && p.is_zero();
    if (all_zero) throw ValidationError("f is constant; no isolated critical point");

    alg.gb = groebner_with_cofactors(alg.jacobian);
    auto standard = alg.gb.standard_monomials();
    if (!standard)
        throw ValidationError("the critical locus of " + f.str() + " is not isolated (infinite Milnor algebra)");
    alg.mu = standard->size();
    if (alg.mu == 0) throw ValidationError("the Jacobian ideal is the unit ideal");
    for (const auto& m : *standard) alg.basis.push_back(MultiPoly::term(vars, m, 1));

    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly power = MultiPoly::variable(vars, i).pow(static_cast<unsigned>(alg.mu));
        if (!alg.reduce(power).is_zero())
            throw ValidationError("f = " + f.str() + " has critical points away from the origin (" +
                                  vars->name(i) + "^mu is not in the Jacobian ideal)");
    }
    return alg;
}

PowerCertificate power_containment(const std::vector<MultiPoly>& gens) {
    GroebnerBasis gb = groebner_with_cofactors(gens);
    const auto& vars = gb.vars();
    const std::size_t n = vars->num_active();
    auto standard = gb.standard_monomials();
    if (!standard) throw ValidationError("power_containment: the ideal is not zero-dimensional");
    // In a quotient of dimension d every nilpotent element satisfies x^d = 0.
    const int bound = static_cast<int>(standard->size()) + 1;

    PowerCertificate cert;
    for (std::size_t i = 0; i < n; ++i) {
        const MultiPoly xi = MultiPoly::variable(vars, i);
        std::vector<MultiPoly> combination(gens.size(), MultiPoly(vars));
        MultiPoly rest = xi;
        int d = 1;
        for (;; ++d) {
            if (d > bound)
                throw ValidationError("power_containment: " + vars->name(i) +
                                      " is not nilpotent modulo the ideal (not m-primary)");
            NormalForm nf = normal_form(rest, gb);
            for (std::size_t j = 0; j < gens.size(); ++j) combination[j] += nf.combination[j];
            if (nf.remainder.is_zero()) break;
            // x^{d+1} = x * remainder + x * (combination . g)
            rest = nf.remainder * xi;
            for (auto& c : combination) c *= xi;
        }
        cert.exponents.push_back(d);
        cert.cofactors.push_back(std::move(combination));
    }
    return cert;
}

bool certificate_holds(const PowerCertificate& cert, const std::vector<MultiPoly>& gens) {
    if (gens.empty()) return false;
    const auto& vars = gens.front().vars();
    for (std::size_t i = 0; i < cert.exponents.size(); ++i) {
        MultiPoly lhs = MultiPoly::variable(vars, i).pow(static_cast<unsigned>(cert.exponents[i]));
        MultiPoly rhs(vars);
        for (std::size_t j = 0; j < gens.size(); ++j) rhs += cert.cofactors[i][j] * gens[j];
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace rforge
