#pragma once

#include "rforge/multipoly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace rforge {

/// Fixed denominator family F_1, ..., F_n (usually the partials of f or of a
/// deformation F). Powers are memoized; the cache is safe to share.
class DenominatorFamily {
public:
    explicit DenominatorFamily(std::vector<MultiPoly> members);

    std::size_t size() const noexcept { return members_.size(); }
    const MultiPoly& member(std::size_t j) const { return members_.at(j); }
    const std::vector<MultiPoly>& members() const noexcept { return members_; }
    const VarSetPtr& vars() const noexcept { return vars_; }
    /// Text key identifying the family (used by the residue certificate cache).
    const std::string& key() const noexcept { return key_; }
    bool has_parameters() const;

    MultiPoly power(std::size_t j, int k) const;
    /// prod_j F_j^{e_j}
    MultiPoly product(const std::vector<int>& e) const;

private:
    std::vector<MultiPoly> members_;
    VarSetPtr vars_;
    std::string key_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::size_t, int>, MultiPoly> powers_;
};

using FamilyPtr = std::shared_ptr<const DenominatorFamily>;

/// Family of partial derivatives (df/dx_1, ..., df/dx_n) over f's active variables.
FamilyPtr jacobian_family(const MultiPoly& f);

/// numerator / prod_j F_j^{m_j}. A representation, never reduced: two values
/// are equal when their cross-multiplied numerators agree.
class LocalizedRational {
public:
    LocalizedRational() = default;
    explicit LocalizedRational(FamilyPtr family);
    LocalizedRational(FamilyPtr family, MultiPoly numerator, std::vector<int> exponents);

    static LocalizedRational from_poly(FamilyPtr family, MultiPoly p);

    const FamilyPtr& family() const noexcept { return family_; }
    const MultiPoly& numerator() const noexcept { return numerator_; }
    const std::vector<int>& exponents() const noexcept { return exps_; }
    bool is_zero() const noexcept { return numerator_.is_zero(); }

    LocalizedRational& operator+=(const LocalizedRational& o);
    LocalizedRational& operator-=(const LocalizedRational& o);
    friend LocalizedRational operator+(LocalizedRational a, const LocalizedRational& b) { return a += b; }
    friend LocalizedRational operator-(LocalizedRational a, const LocalizedRational& b) { return a -= b; }
    friend LocalizedRational operator*(const LocalizedRational& a, const LocalizedRational& b);
    friend LocalizedRational operator*(const LocalizedRational& a, const MultiPoly& p);
    friend LocalizedRational operator*(const MultiPoly& p, const LocalizedRational& a) { return a * p; }
    friend LocalizedRational operator*(LocalizedRational a, const Rational& c);
    friend LocalizedRational operator*(const Rational& c, LocalizedRational a) { return std::move(a) * c; }
    LocalizedRational operator-() const;

    /// this / F_j
    LocalizedRational divided_by_member(std::size_t j) const;
    /// d/dv by the quotient rule; v may be an active or a parameter variable.
    LocalizedRational derivative(std::size_t var) const;

    /// Same value with denominator exponents raised to `target` (>= current).
    LocalizedRational with_exponents(const std::vector<int>& target) const;

    /// Value equality by cross-multiplication.
    bool equals(const LocalizedRational& o) const;

    std::string str() const;

private:
    void require_same_family(const LocalizedRational& o) const;

    FamilyPtr family_;
    MultiPoly numerator_;
    std::vector<int> exps_;
};

} // namespace rforge
