#include "rforge/twisted.hpp"

#include "rforge/errors.hpp"

#include <functional>

namespace rforge {
namespace {

void require_family_vars(const FamilyPtr& family, std::size_t j) {
    if (!family) throw UsageError("missing denominator family");
    if (j >= family->size() || j >= family->vars()->num_active())
        throw UsageError("Phi index out of range");
}

/// x / (+-F_j)
LocalizedRational over_member(const LocalizedRational& x, std::size_t j, Twist twist) {
    LocalizedRational r = x.divided_by_member(j);
    return twist == Twist::Plus ? r : -r;
}

} // namespace

LocSeries loc_series(const FamilyPtr& family, const MultiPoly& h, int order) {
    return LocSeries::constant(LocalizedRational::from_poly(family, h), LocalizedRational(family), order);
}

LocSeries phi(const FamilyPtr& family, std::size_t j, const LocSeries& v, int order, Twist twist) {
    require_family_vars(family, j);
    if (v.zero().family() && v.zero().family()->key() != family->key())
        throw UsageError("phi: series over a different denominator family");
    LocSeries out(LocalizedRational(family), order);
    for (int l = 0; l <= std::min(order, v.order()); ++l) {
        if (v[l].is_zero()) continue;
        LocalizedRational a = -over_member(v[l], j, twist);
        for (int k = 0; k + l <= order; ++k) {
            out.add_to(k + l, a);
            if (k + l < order) a = over_member(a.derivative(j), j, twist);
        }
    }
    return out;
}

LocSeries phi_composite(const FamilyPtr& family, const std::vector<std::size_t>& indices, const LocSeries& v,
                        int order, Twist twist) {
    LocSeries acc = v.truncated(order);
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) acc = phi(family, *it, acc, order, twist);
    return acc;
}

std::vector<LocalizedRational> b_coeffs(const FamilyPtr& family, const MultiPoly& h, int order, Twist twist) {
    std::vector<std::size_t> all(family->size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    LocSeries s = phi_composite(family, all, loc_series(family, h, order), order, twist);
    std::vector<LocalizedRational> out;
    for (int k = 0; k <= order; ++k) out.push_back(s[k]);
    return out;
}

std::vector<LocalizedRational> b_coeffs(const MultiPoly& f, const MultiPoly& h, int order, Twist twist) {
    return b_coeffs(jacobian_family(f), h, order, twist);
}

LocalizedRational b_closed_form(const FamilyPtr& family, const MultiPoly& h, int k, Twist twist) {
    const std::size_t n = family->size();
    // value(i, rest) = D_i^{a_i} (1/F_i) [ ... ] summed over a_i..a_n with a_i+...+a_n = rest,
    // built inside out from the last factor h/F_n.
    std::function<LocalizedRational(std::size_t, int, const LocalizedRational&)> apply =
        [&](std::size_t i, int remaining, const LocalizedRational& inner) -> LocalizedRational {
        // inner already carries the factors for indices > i
        LocalizedRational base = over_member(inner, i, twist);
        if (i == 0) {
            LocalizedRational t = base;
            for (int a = 0; a < remaining; ++a) t = over_member(t.derivative(i), i, twist);
            return t;
        }
        LocalizedRational sum(family);
        LocalizedRational t = base;
        for (int a = 0; a <= remaining; ++a) {
            sum += apply(i - 1, remaining - a, t);
            if (a < remaining) t = over_member(t.derivative(i), i, twist);
        }
        return sum;
    };
    LocalizedRational v = apply(n - 1, k, LocalizedRational::from_poly(family, h));
    // each Phi contributes one minus sign that over_member leaves out
    return n % 2 == 0 ? v : -v;
}

TwistedClass TwistedClass::of(const MultiPoly& f, const MultiPoly& h, int order) {
    return TwistedClass{f, PolySeries::constant(h, MultiPoly(f.vars()), order)};
}

TwistedClass twisted_normal_form(const MilnorAlgebra& milnor, const TwistedClass& omega) {
    const int order = omega.order();
    const std::size_t n = milnor.n();
    PolySeries out(MultiPoly(milnor.f.vars()), order);
    MultiPoly carry(milnor.f.vars());
    for (int k = 0; k <= order; ++k) {
        MultiPoly h = omega.coeffs[k] + carry;
        NormalForm nf = normal_form(h, milnor.gb);
        out.set(k, nf.remainder);
        carry = MultiPoly(milnor.f.vars());
        for (std::size_t j = 0; j < n; ++j) carry += nf.combination[j].derivative(j);
    }
    return TwistedClass{omega.f, std::move(out)};
}

} // namespace rforge
