#pragma once

#include "rforge/localized.hpp"
#include "rforge/milnor.hpp"
#include "rforge/useries.hpp"

#include <vector>

namespace rforge {

using LocSeries = USeries<LocalizedRational>;
using PolySeries = USeries<MultiPoly>;
using RatSeries = USeries<Rational>;

/// Which twist a computation uses: +1 for f, -1 for -f. The denominators stay
/// those of f's family; 1/(-f_j) is carried as -1/f_j.
enum class Twist : int { Plus = 1, Minus = -1 };

inline int sign_of(Twist t) { return static_cast<int>(t); }
inline Twist opposite(Twist t) { return t == Twist::Plus ? Twist::Minus : Twist::Plus; }

LocSeries loc_series(const FamilyPtr& family, const MultiPoly& h, int order);

/// Phi_{j,+-f}(v) = sum_k ((1/(+-f_j)) d/dx_j)^k (-v/(+-f_j)) u^k, extended
/// C[[u]]-linearly and truncated at `order`. j is 0-based.
LocSeries phi(const FamilyPtr& family, std::size_t j, const LocSeries& v, int order, Twist twist = Twist::Plus);

/// Phi_{i_1} o ... o Phi_{i_k}(v) for an increasing index list, applied right to left.
LocSeries phi_composite(const FamilyPtr& family, const std::vector<std::size_t>& indices, const LocSeries& v,
                        int order, Twist twist = Twist::Plus);

/// b_0, ..., b_N with Phi_1 o ... o Phi_n(h) = sum_i b_i u^i.
std::vector<LocalizedRational> b_coeffs(const FamilyPtr& family, const MultiPoly& h, int order,
                                        Twist twist = Twist::Plus);
std::vector<LocalizedRational> b_coeffs(const MultiPoly& f, const MultiPoly& h, int order, Twist twist = Twist::Plus);

/// b_k from the composition sum
///   (-1)^n sum_{a_1+...+a_n=k} D_1^{a_1} (1/f_1) D_2^{a_2} (1/f_2) ... D_n^{a_n} (h/f_n),
/// with D_i = (1/f_i) d/dx_i; an independent route to b_coeffs.
LocalizedRational b_closed_form(const FamilyPtr& family, const MultiPoly& h, int k, Twist twist = Twist::Plus);

/// A class sum_k h_k u^k dx in H_f^(0), truncated at coeffs.order().
struct TwistedClass {
    MultiPoly f;
    PolySeries coeffs;

    static TwistedClass of(const MultiPoly& f, const MultiPoly& h, int order);
    int order() const { return coeffs.order(); }
};

/// Representative with every h_k supported on standard monomials. Uses
/// sum_j a_j f_j dx ~ u sum_j (d a_j / dx_j) dx, i.e. (-df^ + u d) xi ~ 0 for
/// xi = sum_j (-1)^{j-1} a_j dx_1 ... ^dx_j ... dx_n.
TwistedClass twisted_normal_form(const MilnorAlgebra& milnor, const TwistedClass& omega);

} // namespace rforge
