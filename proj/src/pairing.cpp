#include "rforge/pairing.hpp"

#include "rforge/errors.hpp"
#include "rforge/parallel.hpp"
#include "rforge/polyops.hpp"
#include "rforge/residue.hpp"


namespace rforge {
namespace {

struct BData {
    std::vector<LocalizedRational> plus;   // b_{k,f}(h)
    std::vector<LocalizedRational> minus;  // b_{k,-f}(h)
};

BData b_data(const FamilyPtr& family, const MultiPoly& h, int order) {
    return BData{b_coeffs(family, h, order, Twist::Plus), b_coeffs(family, h, order, Twist::Minus)};
}

RatSeries hres_from(const MilnorAlgebra& milnor, const BData& bh, const MultiPoly& h, const BData& bg,
                    const MultiPoly& g, int order) {
    const int sign = milnor.n() % 2 == 0 ? 1 : -1;
    RatSeries out(Rational(0), order);
    auto& engine = residue_engine();
    auto& counters = pairing_counters();
    for (int k = 0; k <= order; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const Rational left = engine.residue_value(bh.plus[ku] * g) * sign;
        const Rational right = engine.residue_value(bg.minus[ku] * h);
        counters.evaluations.fetch_add(1, std::memory_order_relaxed);
        if (left != right) {
            counters.mismatches.fetch_add(1, std::memory_order_relaxed);
            throw InvariantViolation("one-sided and symmetrized higher residue pairing disagree at order " +
                                     std::to_string(k) + ": " + to_string(left) + " vs " + to_string(right));
        }
        out.set(k, (left + right) / 2);
    }
    return out;
}

ShiftedSeries apply_convention(RatSeries s, std::size_t n, Convention c) {
    switch (c) {
    case Convention::Hres:
        return ShiftedSeries{0, std::move(s)};
    case Convention::Saito:
        return ShiftedSeries{static_cast<int>(n), std::move(s)};
    case Convention::Canonical:
        return ShiftedSeries{0, s * Rational(canonical_sign(n))};
    }
    throw UsageError("unknown convention");
}

void require_same_f(const MilnorAlgebra& milnor, const TwistedClass& w) {
    if (!(w.f == milnor.f)) throw UsageError("twisted class over a different polynomial");
}

} // namespace

Convention parse_convention(const std::string& name) {
    if (name == "hres") return Convention::Hres;
    if (name == "saito") return Convention::Saito;
    if (name == "canonical") return Convention::Canonical;
    throw UsageError("unknown convention '" + name + "' (expected hres, saito or canonical)");
}

std::string convention_name(Convention c) {
    switch (c) {
    case Convention::Hres:
        return "hres";
    case Convention::Saito:
        return "saito";
    case Convention::Canonical:
        return "canonical";
    }
    return "?";
}

PairingCounters& pairing_counters() {
    static PairingCounters counters;
    return counters;
}

int canonical_sign(std::size_t n) { return (n * (n + 1) / 2) % 2 == 0 ? 1 : -1; }

RatSeries hres_series(const MilnorAlgebra& milnor, const MultiPoly& h, const MultiPoly& g, int order) {
    if (h.has_parameters() || g.has_parameters()) throw UsageError("pairing arguments must be free of parameters");
    const FamilyPtr family = jacobian_family(milnor.f);
    return hres_from(milnor, b_data(family, h, order), h, b_data(family, g, order), g, order);
}

Rational hres_order(const MilnorAlgebra& milnor, const MultiPoly& h, const MultiPoly& g, int i) {
    return hres_series(milnor, h, g, i)[i];
}

ShiftedSeries pairing_series(const MilnorAlgebra& milnor, const TwistedClass& w1, const TwistedClass& w2, int order,
                             Convention convention) {
    require_same_f(milnor, w1);
    require_same_f(milnor, w2);
    const FamilyPtr family = jacobian_family(milnor.f);
    std::vector<BData> b1, b2;
    for (int i = 0; i <= order; ++i) b1.push_back(b_data(family, w1.coeffs[i], order - i));
    for (int j = 0; j <= order; ++j) b2.push_back(b_data(family, w2.coeffs[j], order - j));
    RatSeries total(Rational(0), order);
    for (int i = 0; i <= order; ++i) {
        if (w1.coeffs[i].is_zero()) continue;
        for (int j = 0; i + j <= order; ++j) {
            if (w2.coeffs[j].is_zero()) continue;
            RatSeries s = hres_from(milnor, b1[static_cast<std::size_t>(i)], w1.coeffs[i],
                                    b2[static_cast<std::size_t>(j)], w2.coeffs[j], order - i - j);
            for (int k = 0; i + j + k <= order; ++k) total.add_to(i + j + k, j % 2 == 0 ? s[k] : -s[k]);
        }
    }
    return apply_convention(std::move(total), milnor.n(), convention);
}

PairingMatrix pairing_matrix(const MilnorAlgebra& milnor, int order, Convention convention, unsigned jobs) {
    const std::size_t mu = milnor.basis.size();
    const FamilyPtr family = jacobian_family(milnor.f);
    PairingMatrix m;
    m.convention = convention;
    m.order = order;
    for (const auto& e : milnor.basis) m.labels.push_back(e.str());
    m.entries.assign(mu, std::vector<ShiftedSeries>(mu));

    std::vector<BData> b(mu);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t a = 0; a < mu; ++a)
        for (std::size_t c = 0; c < mu; ++c) cells.emplace_back(a, c);

    parallel_for(mu, jobs, [&](std::size_t a) { b[a] = b_data(family, milnor.basis[a], order); });
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        const auto [a, c] = cells[i];
        m.entries[a][c] = apply_convention(
            hres_from(milnor, b[a], milnor.basis[a], b[c], milnor.basis[c], order), milnor.n(), convention);
    });
    return m;
}

DiagonalKernel chern_delta(const MultiPoly& f) {
    if (f.has_parameters()) throw UsageError("chern_delta expects a polynomial in the active variables");
    const VarSet& base = *f.vars();
    VarSetPtr ext = with_copies(base);
    std::vector<std::size_t> copies = copy_indices(*ext);
    MultiPoly F = f.embed(ext, {});
    const std::size_t n = base.num_active();
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(ext)));
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly fi = F.derivative(i);
        for (std::size_t j = 0; j < n; ++j) m[i][j] = divided_difference(fi, j, copies);
    }
    return DiagonalKernel{determinant(std::move(m)), std::move(copies)};
}

} // namespace rforge
