#pragma once

#include "rforge/rational.hpp"
#include "rforge/varset.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rforge {

/// Exponent vector over the full VarSet, with its total degree cached. Up to
/// kInline exponents are stored without heap allocation.
class Monomial {
public:
    static constexpr std::size_t kInline = 8;

    Monomial() = default;
    explicit Monomial(std::size_t nvars);
    explicit Monomial(const std::vector<int>& exps);

    std::size_t size() const noexcept { return size_; }
    int operator[](std::size_t i) const { return data()[i]; }
    int degree() const noexcept { return degree_; }
    std::vector<int> exponents() const { return std::vector<int>(data(), data() + size_); }

    void set(std::size_t i, int e);

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    /// other / *this; requires divides(other).
    Monomial quotient_of(const Monomial& other) const;
    Monomial lcm(const Monomial& other) const;
    bool is_one() const noexcept { return degree_ == 0; }

    bool operator==(const Monomial& o) const {
        return size_ == o.size_ && degree_ == o.degree_ && std::equal(data(), data() + size_, o.data());
    }

private:
    const int* data() const noexcept { return size_ <= kInline ? small_.data() : big_.data(); }
    int* data() noexcept { return size_ <= kInline ? small_.data() : big_.data(); }

    std::size_t size_ = 0;
    int degree_ = 0;
    std::array<int, kInline> small_{};
    std::vector<int> big_;
};

/// Graded reverse lexicographic order with the declared variable order
/// (x_1 > x_2 > ... > x_n).
struct DegRevLex {
    bool operator()(const Monomial& a, const Monomial& b) const;  // a < b
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in degrevlex order, no zero coefficient is ever stored, so structural
/// equality is equality of polynomials.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, DegRevLex>;

    MultiPoly() = default;
    explicit MultiPoly(VarSetPtr vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(VarSetPtr vars, const Rational& c);
    static MultiPoly variable(VarSetPtr vars, std::size_t index);
    static MultiPoly variable(VarSetPtr vars, const std::string& name);
    static MultiPoly term(VarSetPtr vars, const Monomial& m, const Rational& c);

    const VarSetPtr& vars() const noexcept { return vars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;
    int total_degree() const;
    /// Degree in the active variables only.
    int active_degree() const;
    bool has_parameters() const;

    /// Leading monomial / coefficient under degrevlex; requires !is_zero().
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    void add_term(const Monomial& m, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;

    /// a * c * m, fused for reduction loops.
    MultiPoly times_term(const Monomial& m, const Rational& c) const;
    void add_scaled(const MultiPoly& p, const Monomial& m, const Rational& c);

    MultiPoly pow(unsigned e) const;
    MultiPoly derivative(std::size_t var) const;
    MultiPoly derivative(const std::string& name) const;

    /// Simultaneous substitution var -> poly; unassigned variables stay.
    MultiPoly substitute(const std::map<std::size_t, MultiPoly>& assignment) const;

    /// Re-express over another VarSet, mapping variables by name or by the
    /// explicit rename table (source name -> target name).
    MultiPoly embed(const VarSetPtr& target,
                    const std::map<std::string, std::string>& rename = {}) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Canonical text, re-parsable by parse_poly ("3/2*x^2*y - 1").
    std::string str() const;

private:
    void require_same_vars(const MultiPoly& o) const;

    VarSetPtr vars_;
    TermMap terms_;
};

std::string monomial_str(const VarSet& vars, const Monomial& m);

} // namespace rforge
