#pragma once

#include "rforge/multipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rforge {

/// Quotient of an exact division, or nullopt when `divisor` does not divide
/// `dividend`.
std::optional<MultiPoly> try_divide(const MultiPoly& dividend, const MultiPoly& divisor);

/// Exact quotient; a nonzero remainder throws InvariantViolation.
MultiPoly divide_exact(const MultiPoly& dividend, const MultiPoly& divisor);

/// VarSet with the active variables of `vars` followed by one copy of each,
/// named name + suffix, as parameters.
VarSetPtr with_copies(const VarSet& vars, const std::string& suffix = "'");

/// Indices of the copies created by with_copies, one per active variable.
std::vector<std::size_t> copy_indices(const VarSet& vars, const std::string& suffix = "'");

/// Divided difference Delta_j p = (p(x_<j, y_>=j) - p(x_<=j, y_>j)) / (y_j - x_j)
/// with j 0-based. `copies[i]` is the index of y_i in p's VarSet.
MultiPoly divided_difference(const MultiPoly& p, std::size_t j, const std::vector<std::size_t>& copies);

/// Determinant of a square polynomial matrix via fraction-free (Bareiss)
/// elimination with exact polynomial division.
MultiPoly determinant(std::vector<std::vector<MultiPoly>> m);

} // namespace rforge
