#include "rforge/polyops.hpp"

#include "rforge/errors.hpp"

#include <utility>

namespace rforge {

std::optional<MultiPoly> try_divide(const MultiPoly& dividend, const MultiPoly& divisor) {
    if (divisor.is_zero()) throw UsageError("division by the zero polynomial");
    MultiPoly quotient(dividend.vars());
    MultiPoly rest = dividend;
    const Monomial& lm = divisor.leading_monomial();
    const Rational& lc = divisor.leading_coefficient();
    // Reducing the leading term strictly lowers it; the divisor divides iff
    // every leading term is reducible.
    while (!rest.is_zero()) {
        const Monomial& top = rest.leading_monomial();
        if (!lm.divides(top)) return std::nullopt;
        Monomial q = lm.quotient_of(top);
        Rational c = rest.leading_coefficient() / lc;
        rest.add_scaled(divisor, q, -c);
        quotient.add_term(q, c);
    }
    return quotient;
}

MultiPoly divide_exact(const MultiPoly& dividend, const MultiPoly& divisor) {
    auto q = try_divide(dividend, divisor);
    if (!q) throw InvariantViolation("inexact division of " + dividend.str() + " by " + divisor.str());
    return std::move(*q);
}

VarSetPtr with_copies(const VarSet& vars, const std::string& suffix) {
    std::vector<std::string> params;
    for (std::size_t i = 0; i < vars.num_active(); ++i) params.push_back(vars.name(i) + suffix);
    return VarSet::make(vars.active_names(), std::move(params));
}

std::vector<std::size_t> copy_indices(const VarSet& vars, const std::string& suffix) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars.num_active(); ++i) out.push_back(vars.index_of(vars.name(i) + suffix));
    return out;
}

MultiPoly divided_difference(const MultiPoly& p, std::size_t j, const std::vector<std::size_t>& copies) {
    const auto& vars = p.vars();
    const std::size_t n = vars->num_active();
    if (j >= n || copies.size() != n) throw UsageError("divided_difference: bad index or copy table");
    if (p.has_parameters()) throw UsageError("divided_difference: input must be in the active variables");
    std::map<std::size_t, MultiPoly> upper, lower;
    for (std::size_t i = j; i < n; ++i) {
        upper.emplace(i, MultiPoly::variable(vars, copies[i]));
        if (i > j) lower.emplace(i, MultiPoly::variable(vars, copies[i]));
    }
    MultiPoly numerator = p.substitute(upper) - p.substitute(lower);
    MultiPoly denom = MultiPoly::variable(vars, copies[j]) - MultiPoly::variable(vars, j);
    return divide_exact(numerator, denom);
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) throw UsageError("determinant of an empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw UsageError("determinant of a non-square matrix");
    VarSetPtr vars = m[0][0].vars();
    for (const auto& row : m)
        for (const auto& e : row)
            if (e.vars()) vars = e.vars();
    if (!vars) throw UsageError("determinant: matrix entries carry no VarSet");
    for (auto& row : m)
        for (auto& e : row)
            if (!e.vars()) e = MultiPoly(vars);
    bool negate = false;
    MultiPoly prev = MultiPoly::constant(vars, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && m[swap_with][k].is_zero()) ++swap_with;
            if (swap_with == n) return MultiPoly(vars);
            std::swap(m[k], m[swap_with]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = divide_exact(t, prev);
            }
            m[i][k] = MultiPoly(vars);
        }
        prev = m[k][k];
    }
    MultiPoly d = m[n - 1][n - 1];
    if (d.vars() == nullptr) d = MultiPoly(vars);
    return negate ? -d : d;
}

} // namespace rforge
