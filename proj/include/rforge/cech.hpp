#pragma once

#include "rforge/twisted.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace rforge {

/// Subset of {0..n-1} as a bitmask.
using IndexSet = std::uint32_t;

/// Finite sum of c * alpha_S * dx_T with c a u-series of LocalizedRational.
/// All alpha_i and dx_i are odd; alpha's are written to the left of dx's, both
/// in increasing index order.
class CechElement {
public:
    CechElement(FamilyPtr family, int order);

    const FamilyPtr& family() const noexcept { return family_; }
    std::size_t n() const noexcept { return n_; }
    int order() const noexcept { return order_; }
    const std::map<std::pair<IndexSet, IndexSet>, LocSeries>& components() const noexcept { return comps_; }

    bool is_zero() const noexcept { return comps_.empty(); }
    LocSeries component(IndexSet alphas, IndexSet dxs) const;
    void add(IndexSet alphas, IndexSet dxs, const LocSeries& c);

    CechElement& operator+=(const CechElement& o);
    CechElement& operator-=(const CechElement& o);
    friend CechElement operator+(CechElement a, const CechElement& b) { return a += b; }
    friend CechElement operator-(CechElement a, const CechElement& b) { return a -= b; }
    friend CechElement operator*(const CechElement& a, const Rational& c);
    CechElement operator-() const { return *this * Rational(-1); }

    /// Graded product in the exterior algebra on alpha's and dx's.
    friend CechElement operator*(const CechElement& a, const CechElement& b);

    bool equals(const CechElement& o) const;
    IndexSet full() const noexcept { return static_cast<IndexSet>((1u << n_) - 1u); }

private:
    FamilyPtr family_;
    std::size_t n_;
    int order_;
    std::map<std::pair<IndexSet, IndexSet>, LocSeries> comps_;
};

/// The representative of h dx_1...dx_n: the sum over I = {i_1 < ... < i_k} of
/// (-1)^{i_1+...+i_k + k(k+1)/2} Phi_{i_1} o ... o Phi_{i_k}(h) alpha_I dx_{I^c}
/// (1-based indices in the sign).
CechElement omega_rep(const FamilyPtr& family, const MultiPoly& h, int order, Twist twist = Twist::Plus);
CechElement omega_rep(const MultiPoly& f, const MultiPoly& h, int order, Twist twist = Twist::Plus);

/// sum_i alpha_i - (+-df)^ + u d. With no twist the df term is dropped, which is
/// the differential on products of f- and (-f)-twisted elements.
CechElement cech_differential(const CechElement& e, std::optional<Twist> twist);

/// (1/2^n) omega_a * omega_b; the product lives in the top component only.
CechElement kunneth_wedge(const CechElement& a, const CechElement& b);

/// Coefficient of alpha_1...alpha_n dx_1...dx_n.
LocSeries top_component(const CechElement& e);

struct WedgeReduction {
    /// (1/2)[b_f(h) g + (-1)^n h b_{-f}(g)]
    LocSeries reduced;
    /// top coefficient of kunneth_wedge(omega_f(h), omega_{-f}(g))
    LocSeries kunneth_top;
    /// correctors with kunneth_top = b_f(h) g + D(up) = (-1)^n h b_{-f}(g) + D(down)
    CechElement up;
    CechElement down;
};

/// Reduces the Kunneth wedge of omega_f(h) and omega_{-f}(g) to its top form,
/// building the explicit boundary correctors and asserting both identities
/// coefficientwise; a failure throws InvariantViolation.
WedgeReduction wedge_top_reduction(const MultiPoly& f, const MultiPoly& h, const MultiPoly& g, int order);

} // namespace rforge
