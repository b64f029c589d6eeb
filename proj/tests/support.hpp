#pragma once

#include "rforge/multipoly.hpp"
#include "rforge/parse.hpp"
#include "rforge/random.hpp"

#include <string>
#include <vector>

namespace rforge::test {

inline VarSetPtr vars(std::vector<std::string> active, std::vector<std::string> params = {}) {
    return VarSet::make(std::move(active), std::move(params));
}

inline MultiPoly P(const std::string& text, const VarSetPtr& v) { return parse_poly(text, v); }

inline Rational Q(const std::string& text) { return parse_rational(text); }

using rforge::RandomPolys;

} // namespace rforge::test
