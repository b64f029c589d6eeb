#pragma once

#include "rforge/multipoly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rforge {

/// Parses a polynomial over `vars`.
///
///   expr     := term (('+' | '-') term)*
///   term     := ['-'] factor ('*' factor)*
///   factor   := base ('^' NAT)?
///   base     := RATIONAL | IDENT | '(' expr ')'
///   RATIONAL := INT ('/' POSINT)?
///
/// No implicit multiplication; exponents are bare non-negative integer
/// literals. Errors throw ParseError carrying the byte offset.
MultiPoly parse_poly(std::string_view text, const VarSetPtr& vars);

/// Splits a comma-separated variable list ("x,y,z"), trimming blanks.
std::vector<std::string> split_list(std::string_view text);

} // namespace rforge
