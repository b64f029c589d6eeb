#include "rforge/residue.hpp"

#include "rforge/errors.hpp"
#include "rforge/polyops.hpp"

#include <functional>

namespace rforge {
namespace {

/// Coefficient of x^{D-1} in num * det without forming the product.
MultiPoly extract(const MultiPoly& num, const MultiPoly& det, const std::vector<int>& D) {
    const auto& vars = num.vars();
    const std::size_t n = vars->num_active();
    MultiPoly out(vars);
    if (det.is_zero()) return out;
    std::vector<int> want(vars->size(), 0);
    for (const auto& [m, c] : num.terms()) {
        bool fits = true;
        for (std::size_t i = 0; i < n && fits; ++i) {
            want[i] = D[i] - 1 - m[i];
            fits = want[i] >= 0;
        }
        if (!fits) continue;
        const Rational d = det.coefficient(Monomial(want));
        if (d == 0) continue;
        Monomial params(m);
        for (std::size_t i = 0; i < n; ++i) params.set(i, 0);
        out.add_term(params, c * d);
    }
    return out;
}

/// From x_i^{D_i} = sum_j c_ij F_j, rows for the generators F_j^{m_j}: with
/// K = sum_j (m_j - 1) + 1 every term of (sum_j c_ij F_j)^K has some a_j >= m_j.
PowerCertificate lift_certificate(const PowerCertificate& base, const DenominatorFamily& family,
                                  const std::vector<int>& m) {
    const std::size_t n = family.size();
    int K = 1;
    for (int e : m) K += e - 1;
    PowerCertificate out;
    out.cofactors.assign(n, std::vector<MultiPoly>(n, MultiPoly(family.vars())));
    std::vector<int> a(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        out.exponents.push_back(base.exponents[i] * K);
        std::vector<std::vector<MultiPoly>> cpow(n);
        for (std::size_t j = 0; j < n; ++j) {
            cpow[j].push_back(MultiPoly::constant(family.vars(), 1));
            for (int e = 1; e <= K; ++e) cpow[j].push_back(cpow[j].back() * base.cofactors[i][j]);
        }
        // enumerate compositions a of K into n parts
        std::function<void(std::size_t, int, Integer)> walk = [&](std::size_t j, int left, Integer multinomial) {
            if (j + 1 == n) {
                a[j] = left;
                std::size_t pick = 0;
                while (a[pick] < m[pick]) ++pick;
                MultiPoly term = MultiPoly::constant(family.vars(), Rational(multinomial));
                for (std::size_t l = 0; l < n; ++l) {
                    if (cpow[l][static_cast<std::size_t>(a[l])].is_zero()) return;
                    term *= cpow[l][static_cast<std::size_t>(a[l])];
                    const int fe = l == pick ? a[l] - m[l] : a[l];
                    if (fe > 0) term *= family.power(l, fe);
                }
                out.cofactors[i][pick] += term;
                return;
            }
            Integer coef = multinomial;
            for (int e = 0; e <= left; ++e) {
                a[j] = e;
                walk(j + 1, left - e, coef);
                // multinomial * C(left, e+1) / C(left, e)
                coef = coef * (left - e) / (e + 1);
            }
        };
        walk(0, K, Integer(1));
    }
    return out;
}

} // namespace

MultiPoly res_monomial(const MultiPoly& num, const std::vector<int>& D) {
    const auto& vars = num.vars();
    if (!vars) return num;
    if (D.size() != vars->num_active()) throw UsageError("res_monomial: exponent vector length mismatch");
    for (int d : D)
        if (d < 1) throw UsageError("res_monomial: exponents must be >= 1");
    return extract(num, MultiPoly::constant(vars, 1), D);
}

std::shared_ptr<const ResidueCertificate> ResidueEngine::certificate(const DenominatorFamily& family,
                                                                     const std::vector<int>& m) {
    if (family.has_parameters()) throw UsageError("residue: the denominator family must not involve parameters");
    std::string key = family.key() + '|';
    for (int e : m) key += std::to_string(e) + ',';
    const bool want_raised = check_raised_;
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end() && (!want_raised || !it->second->raised_exponents.empty())) return it->second;
    }
    const auto& vars = family.vars();
    const std::size_t n = family.size();
    std::vector<MultiPoly> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(family.power(j, m[j]));
    bool simple = true;
    for (int e : m) simple = simple && e == 1;
    PowerCertificate pc = simple ? power_containment(gens) : lift_certificate(base_certificate(family), family, m);
    if (!certificate_holds(pc, gens)) throw InvariantViolation("power certificate does not reconstruct");

    auto cert = std::make_shared<ResidueCertificate>();
    cert->exponents = pc.exponents;
    cert->det = determinant(pc.cofactors);
    if (want_raised) {
        auto rows = pc.cofactors;
        for (std::size_t i = 0; i < n; ++i) {
            const MultiPoly xi = MultiPoly::variable(vars, i);
            for (auto& c : rows[i]) c *= xi;
            cert->raised_exponents.push_back(pc.exponents[i] + 1);
        }
        PowerCertificate raised{cert->raised_exponents, rows};
        if (!certificate_holds(raised, gens)) throw InvariantViolation("raised certificate does not reconstruct");
        cert->raised_det = determinant(rows);
    }
    ++certificates_;
    std::lock_guard lock(mutex_);
    cache_[key] = cert;
    return cert;
}

const PowerCertificate& ResidueEngine::base_certificate(const DenominatorFamily& family) {
    {
        std::lock_guard lock(mutex_);
        auto it = base_.find(family.key());
        if (it != base_.end()) return *it->second;
    }
    auto pc = std::make_shared<const PowerCertificate>(power_containment(family.members()));
    std::lock_guard lock(mutex_);
    return *base_.emplace(family.key(), std::move(pc)).first->second;
}

MultiPoly ResidueEngine::residue(const LocalizedRational& v) {
    const auto& family = *v.family();
    std::vector<int> m = v.exponents();
    MultiPoly num = v.numerator();
    // A missing factor contributes F_j / F_j; the class is unchanged.
    for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] == 0) {
            num *= family.member(j);
            m[j] = 1;
        }
    if (num.is_zero()) return MultiPoly(family.vars());
    ++evaluations_;
    auto cert = certificate(family, m);
    MultiPoly value = extract(num, cert->det, cert->exponents);
    if (check_raised_) {
        ++raised_checks_;
        MultiPoly again = extract(num, cert->raised_det, cert->raised_exponents);
        if (again != value)
            throw InvariantViolation("residue depends on the power certificate: " + value.str() + " vs " + again.str());
    }
    return value;
}

Rational ResidueEngine::residue_value(const LocalizedRational& v) {
    MultiPoly r = residue(v);
    if (!r.is_constant()) throw UsageError("residue_value: result depends on parameters");
    return r.constant_term();
}

ResidueEngine::Stats ResidueEngine::stats() const {
    return Stats{evaluations_.load(), certificates_.load(), raised_checks_.load()};
}

void ResidueEngine::clear_cache() {
    std::lock_guard lock(mutex_);
    cache_.clear();
    base_.clear();
}

ResidueEngine& residue_engine() {
    static ResidueEngine engine;
    return engine;
}

MultiPoly res_grothendieck(const LocalizedRational& v) { return residue_engine().residue(v); }

Rational res_pairing(const MultiPoly& f, const MultiPoly& h, const MultiPoly& g) {
    auto family = jacobian_family(f);
    LocalizedRational v(family, h * g, std::vector<int>(family->size(), 1));
    return residue_engine().residue_value(v);
}

} // namespace rforge
