#pragma once

#include "rforge/multipoly.hpp"

#include <optional>
#include <vector>

namespace rforge {

enum class MonomialOrder { DegRevLex };

/// Result of dividing p by an ordered list of polynomials:
/// p = sum_k quotients[k] * divisors[k] + remainder, with no term of the
/// remainder divisible by any divisor's leading monomial.
struct Division {
    std::vector<MultiPoly> quotients;
    MultiPoly remainder;
};

Division divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors);

/// Reduced Groebner basis with, for every basis element, the row of
/// cofactors expressing it over the original generators.
class GroebnerBasis {
public:
    GroebnerBasis() = default;

    const VarSetPtr& vars() const noexcept { return vars_; }
    const std::vector<MultiPoly>& generators() const noexcept { return generators_; }
    const std::vector<MultiPoly>& basis() const noexcept { return basis_; }
    const std::vector<std::vector<MultiPoly>>& cofactors() const noexcept { return cofactors_; }
    MonomialOrder order() const noexcept { return MonomialOrder::DegRevLex; }

    bool is_unit_ideal() const;

    /// Standard monomials in the active variables, ascending degree and
    /// x_1 > x_2 > ... within a degree; nullopt when the quotient is infinite.
    std::optional<std::vector<Monomial>> standard_monomials() const;

    friend GroebnerBasis groebner_with_cofactors(const std::vector<MultiPoly>&, MonomialOrder);

private:
    VarSetPtr vars_;
    std::vector<MultiPoly> generators_;
    std::vector<MultiPoly> basis_;
    std::vector<std::vector<MultiPoly>> cofactors_;
};

/// Buchberger's algorithm (normal selection, product criterion) carrying
/// cofactors. Generators must not involve parameter variables.
GroebnerBasis groebner_with_cofactors(const std::vector<MultiPoly>& gens,
                                      MonomialOrder order = MonomialOrder::DegRevLex);

struct NormalForm {
    MultiPoly remainder;
    /// Coefficients over the original generators: p = remainder + sum_j combination[j] * g_j.
    std::vector<MultiPoly> combination;
};

NormalForm normal_form(const MultiPoly& p, const GroebnerBasis& gb);

} // namespace rforge
