#pragma once

#include "rforge/groebner.hpp"
#include "rforge/multipoly.hpp"

#include <vector>

namespace rforge {

/// Jacobian quotient Q/(f_1, ..., f_n) of an isolated singularity at the origin.
struct MilnorAlgebra {
    MultiPoly f;
    std::vector<MultiPoly> jacobian;
    GroebnerBasis gb;
    std::vector<MultiPoly> basis;  ///< standard monomials eta_1 = 1, eta_2, ...
    std::size_t mu = 0;

    std::size_t n() const { return jacobian.size(); }
    MultiPoly reduce(const MultiPoly& p) const { return normal_form(p, gb).remainder; }
};

/// Builds and validates the Milnor algebra: f must be in the active
/// variables, critical at the origin, and the Jacobian ideal must be
/// m-primary in the polynomial ring (finite quotient, every x_i^mu reducing
/// to zero). Violations throw ValidationError.
MilnorAlgebra milnor_data(const MultiPoly& f);

/// Rows c with x_i^{D_i} = sum_j c[i][j] * g_j.
struct PowerCertificate {
    std::vector<int> exponents;
    std::vector<std::vector<MultiPoly>> cofactors;
};

/// Finds, for each active x_i, the first power lying in the ideal (g_1, ..., g_s)
/// together with its cofactors. Throws ValidationError if the ideal is not
/// m-primary.
PowerCertificate power_containment(const std::vector<MultiPoly>& gens);

/// Checks x_i^{D_i} == sum_j c_ij g_j for every row.
bool certificate_holds(const PowerCertificate& cert, const std::vector<MultiPoly>& gens);

} // namespace rforge
