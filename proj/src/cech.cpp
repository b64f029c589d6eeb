#include "rforge/cech.hpp"

#include "rforge/errors.hpp"

#include <bit>

namespace rforge {
namespace {

int parity_below(IndexSet s, std::size_t i) {
    return std::popcount(s & ((IndexSet{1} << i) - 1u)) & 1;
}

IndexSet bit(std::size_t i) { return IndexSet{1} << i; }

LocSeries zero_series(const FamilyPtr& family, int order) { return LocSeries(LocalizedRational(family), order); }

/// Sign of moving odd generators of `b` past those of `a` when merging two
/// increasing index sets into one.
int merge_sign(IndexSet a, IndexSet b) {
    int swaps = 0;
    for (IndexSet x = b; x; x &= x - 1) swaps += std::popcount(a & ~((IndexSet{1} << std::countr_zero(x)) - 1u) &
                                                              ~(IndexSet{1} << std::countr_zero(x)));
    return swaps % 2 == 0 ? 1 : -1;
}

LocSeries scaled(const LocSeries& s, int sign) { return sign > 0 ? s : -s; }

} // namespace

CechElement::CechElement(FamilyPtr family, int order)
    : family_(std::move(family)), n_(family_ ? family_->size() : 0), order_(order) {
    if (!family_) throw UsageError("missing denominator family");
    if (n_ == 0 || n_ > 16) throw UsageError("unsupported number of variables for the Cech model");
}

LocSeries CechElement::component(IndexSet alphas, IndexSet dxs) const {
    auto it = comps_.find({alphas, dxs});
    return it == comps_.end() ? zero_series(family_, order_) : it->second;
}

void CechElement::add(IndexSet alphas, IndexSet dxs, const LocSeries& c) {
    if (c.zero().family() && c.zero().family()->key() != family_->key())
        throw UsageError("Cech component over a different denominator family");
    LocSeries sum = component(alphas, dxs) + c.truncated(order_);
    if (sum.is_zero())
        comps_.erase({alphas, dxs});
    else
        comps_.insert_or_assign({alphas, dxs}, std::move(sum));
}

CechElement& CechElement::operator+=(const CechElement& o) {
    if (o.family_->key() != family_->key()) throw UsageError("Cech elements over different families");
    order_ = std::min(order_, o.order_);
    for (auto& [key, c] : comps_) c = c.truncated(order_);
    for (const auto& [key, c] : o.comps_) add(key.first, key.second, c);
    return *this;
}

CechElement& CechElement::operator-=(const CechElement& o) { return *this += -o; }

CechElement operator*(const CechElement& a, const Rational& c) {
    CechElement r(a.family_, a.order_);
    if (c == 0) return r;
    for (const auto& [key, s] : a.comps_) r.comps_.emplace(key, s * c);
    return r;
}

CechElement operator*(const CechElement& a, const CechElement& b) {
    if (a.family_->key() != b.family_->key()) throw UsageError("Cech elements over different families");
    CechElement r(a.family_, std::min(a.order_, b.order_));
    for (const auto& [ka, ca] : a.comps_) {
        for (const auto& [kb, cb] : b.comps_) {
            const auto [sa, ta] = ka;
            const auto [sb, tb] = kb;
            if ((sa & sb) || (ta & tb)) continue;
            // alpha_sa dx_ta alpha_sb dx_tb = (-1)^{|ta||sb|} alpha_sa alpha_sb dx_ta dx_tb
            int sign = (std::popcount(ta) * std::popcount(sb)) % 2 == 0 ? 1 : -1;
            sign *= merge_sign(sa, sb) * merge_sign(ta, tb);
            r.add(sa | sb, ta | tb, scaled(ca * cb, sign));
        }
    }
    return r;
}

bool CechElement::equals(const CechElement& o) const {
    if (o.family_->key() != family_->key()) return false;
    const int top = std::min(order_, o.order_);
    auto zero_through = [&](const LocSeries& s) {
        for (int k = 0; k <= top; ++k)
            if (!s[k].is_zero()) return false;
        return true;
    };
    for (const auto& [key, c] : comps_)
        if (!series_equal(c.truncated(top), o.component(key.first, key.second).truncated(top))) return false;
    for (const auto& [key, c] : o.comps_)
        if (!comps_.count(key) && !zero_through(c)) return false;
    return true;
}

CechElement omega_rep(const FamilyPtr& family, const MultiPoly& h, int order, Twist twist) {
    CechElement e(family, order);
    const std::size_t n = family->size();
    const IndexSet full = e.full();
    for (IndexSet s = 0; s <= full; ++s) {
        std::vector<std::size_t> idx;
        int sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (s & bit(i)) {
                idx.push_back(i);
                sum += static_cast<int>(i) + 1;
            }
        const int k = static_cast<int>(idx.size());
        const int sign = (sum + k * (k + 1) / 2) % 2 == 0 ? 1 : -1;
        LocSeries c = phi_composite(family, idx, loc_series(family, h, order), order, twist);
        e.add(s, full & ~s, scaled(c, sign));
    }
    return e;
}

CechElement omega_rep(const MultiPoly& f, const MultiPoly& h, int order, Twist twist) {
    return omega_rep(jacobian_family(f), h, order, twist);
}

CechElement cech_differential(const CechElement& e, std::optional<Twist> twist) {
    const FamilyPtr& family = e.family();
    const std::size_t n = e.n();
    const int order = e.order();
    CechElement r(family, order);
    for (const auto& [key, c] : e.components()) {
        const auto [s, t] = key;
        for (std::size_t i = 0; i < n; ++i) {
            // alpha_i
            if (!(s & bit(i))) r.add(s | bit(i), t, scaled(c, parity_below(s, i) ? -1 : 1));
            if (t & bit(i)) continue;
            // dx_i passes alpha_S, then sorts into dx_T
            const int sign = ((std::popcount(s) + parity_below(t, i)) % 2 == 0) ? 1 : -1;
            if (twist) {
                // -(+-f_i) dx_i
                const MultiPoly fi = family->member(i) * Rational(-sign_of(*twist) * sign);
                r.add(s, t | bit(i), c.map([&](const LocalizedRational& x) { return x * fi; }));
            }
            LocSeries d = c.map([&](const LocalizedRational& x) { return x.derivative(i); });
            r.add(s, t | bit(i), scaled(d.shifted(1), sign));
        }
    }
    return r;
}

LocSeries top_component(const CechElement& e) { return e.component(e.full(), e.full()); }

CechElement kunneth_wedge(const CechElement& a, const CechElement& b) {
    if (a.n() != b.n()) throw UsageError("Kunneth wedge of elements in different dimensions");
    CechElement w = a * b * Rational(1, 1 << a.n());
    for (const auto& [key, c] : w.components())
        if (key.first != w.full() || key.second != w.full())
            throw InvariantViolation("Kunneth wedge left the top component");
    return w;
}

WedgeReduction wedge_top_reduction(const MultiPoly& f, const MultiPoly& h, const MultiPoly& g, int order) {
    const FamilyPtr family = jacobian_family(f);
    const std::size_t n = family->size();
    const IndexSet full = static_cast<IndexSet>((1u << n) - 1u);
    const int top_sign = n % 2 == 0 ? 1 : -1;

    auto indices = [&](IndexSet s) {
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < n; ++i)
            if (s & bit(i)) v.push_back(i);
        return v;
    };
    std::map<IndexSet, LocSeries> phi_h, phi_g;
    auto ph = [&](IndexSet s) -> const LocSeries& {
        auto it = phi_h.find(s);
        if (it == phi_h.end())
            it = phi_h.emplace(s, phi_composite(family, indices(s), loc_series(family, h, order), order, Twist::Plus))
                     .first;
        return it->second;
    };
    auto pg = [&](IndexSet s) -> const LocSeries& {
        auto it = phi_g.find(s);
        if (it == phi_g.end())
            it = phi_g.emplace(s, phi_composite(family, indices(s), loc_series(family, g, order), order, Twist::Minus))
                     .first;
        return it->second;
    };
    // T(I) = Phi_I^f(h) Phi_{I^c}^{-f}(g)
    auto term = [&](IndexSet s) { return ph(s) * pg(full & ~s); };
    // D(step(I, j)) = u d_j (Phi_{I+j}^f(h) Phi_{I^c}^{-f}(g)) top = (T(I) + T(I+j)) top for j not in I
    auto step = [&](IndexSet s, std::size_t j) {
        CechElement e(family, order);
        const int sign = (static_cast<int>(n) + static_cast<int>(j)) % 2 == 0 ? 1 : -1;
        e.add(full, full & ~bit(j), scaled(ph(s | bit(j)) * pg(full & ~s), sign));
        return e;
    };
    auto top_element = [&](const LocSeries& c) {
        CechElement e(family, order);
        e.add(full, full, c);
        return e;
    };

    std::map<IndexSet, CechElement> up, down;
    up.emplace(full, CechElement(family, order));
    down.emplace(IndexSet{0}, CechElement(family, order));
    for (IndexSet s = full; s-- > 0;) {
        const std::size_t j = static_cast<std::size_t>(std::countr_zero(full & ~s));
        CechElement st = step(s, j);
        if (!cech_differential(st, std::nullopt).equals(top_element(term(s) + term(s | bit(j)))))
            throw InvariantViolation("boundary identity failed in the wedge reduction");
        up.emplace(s, st - up.at(s | bit(j)));
    }
    for (IndexSet s = 1; s <= full; ++s) {
        const std::size_t j = static_cast<std::size_t>(31 - std::countl_zero(s));
        down.emplace(s, step(s & ~bit(j), j) - down.at(s & ~bit(j)));
    }

    CechElement kun = kunneth_wedge(omega_rep(family, h, order, Twist::Plus), omega_rep(family, g, order, Twist::Minus));
    const Rational scale(1, 1 << n);
    CechElement up_total(family, order), down_total(family, order);
    for (IndexSet s = 0; s <= full; ++s) {
        const int sign = (static_cast<int>(n) - std::popcount(s)) % 2 == 0 ? 1 : -1;
        up_total += up.at(s) * Rational(sign) * scale;
        down_total += down.at(s) * Rational(sign) * scale;
    }
    const LocSeries bf_g = term(full);
    const LocSeries h_bg = scaled(term(0), top_sign);
    if (!(kun - cech_differential(up_total, std::nullopt)).equals(top_element(bf_g)))
        throw InvariantViolation("Kunneth wedge does not reduce to b_f(h) g");
    if (!(kun - cech_differential(down_total, std::nullopt)).equals(top_element(h_bg)))
        throw InvariantViolation("Kunneth wedge does not reduce to (-1)^n h b_{-f}(g)");
    return WedgeReduction{(bf_g + h_bg) * Rational(1, 2), top_component(kun), std::move(up_total),
                          std::move(down_total)};
}

} // namespace rforge
