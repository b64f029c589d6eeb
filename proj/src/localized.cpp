#include "rforge/localized.hpp"

#include "rforge/errors.hpp"

#include <algorithm>

namespace rforge {

DenominatorFamily::DenominatorFamily(std::vector<MultiPoly> members) : members_(std::move(members)) {
    if (members_.empty()) throw UsageError("empty denominator family");
    for (const auto& m : members_) {
        if (m.is_zero()) throw UsageError("denominator family member is zero");
        if (vars_ && !same_vars(vars_, m.vars())) throw UsageError("denominator family over mixed VarSets");
        vars_ = m.vars();
        key_ += m.str();
        key_ += ';';
    }
    std::string names;
    for (const auto& name : vars_->names()) names += name + ',';
    key_ = names + '|' + key_;
}

bool DenominatorFamily::has_parameters() const {
    return std::any_of(members_.begin(), members_.end(), [](const MultiPoly& m) { return m.has_parameters(); });
}

MultiPoly DenominatorFamily::power(std::size_t j, int k) const {
    if (k == 0) return MultiPoly::constant(vars_, 1);
    if (k == 1) return members_.at(j);
    std::lock_guard lock(mutex_);
    auto it = powers_.find({j, k});
    if (it != powers_.end()) return it->second;
    MultiPoly p = members_.at(j).pow(static_cast<unsigned>(k));
    powers_.emplace(std::make_pair(j, k), p);
    return p;
}

MultiPoly DenominatorFamily::product(const std::vector<int>& e) const {
    MultiPoly r = MultiPoly::constant(vars_, 1);
    for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] > 0) r *= power(j, e[j]);
    return r;
}

FamilyPtr jacobian_family(const MultiPoly& f) {
    std::vector<MultiPoly> partials;
    for (std::size_t i = 0; i < f.vars()->num_active(); ++i) partials.push_back(f.derivative(i));
    return std::make_shared<const DenominatorFamily>(std::move(partials));
}

LocalizedRational::LocalizedRational(FamilyPtr family)
    : family_(std::move(family)), numerator_(family_->vars()), exps_(family_->size(), 0) {}

LocalizedRational::LocalizedRational(FamilyPtr family, MultiPoly numerator, std::vector<int> exponents)
    : family_(std::move(family)), numerator_(std::move(numerator)), exps_(std::move(exponents)) {
    if (exps_.size() != family_->size()) throw UsageError("exponent vector does not match the family");
    if (!numerator_.vars()) numerator_ = MultiPoly(family_->vars());
    if (!same_vars(numerator_.vars(), family_->vars())) throw UsageError("numerator and family over different VarSets");
    for (int e : exps_)
        if (e < 0) throw UsageError("negative denominator exponent");
}

LocalizedRational LocalizedRational::from_poly(FamilyPtr family, MultiPoly p) {
    const std::size_t n = family->size();
    return LocalizedRational(std::move(family), std::move(p), std::vector<int>(n, 0));
}

void LocalizedRational::require_same_family(const LocalizedRational& o) const {
    if (family_ != o.family_ && (!family_ || !o.family_ || family_->key() != o.family_->key() ||
                                 !same_vars(family_->vars(), o.family_->vars())))
        throw UsageError("localized rationals over different denominator families");
}

LocalizedRational LocalizedRational::with_exponents(const std::vector<int>& target) const {
    std::vector<int> extra(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        if (target[j] < exps_[j]) throw UsageError("with_exponents: target below current exponent");
        extra[j] = target[j] - exps_[j];
    }
    return LocalizedRational(family_, numerator_ * family_->product(extra), target);
}

LocalizedRational& LocalizedRational::operator+=(const LocalizedRational& o) {
    require_same_family(o);
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    std::vector<int> common(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j) common[j] = std::max(exps_[j], o.exps_[j]);
    *this = with_exponents(common);
    numerator_ += o.with_exponents(common).numerator_;
    return *this;
}

LocalizedRational& LocalizedRational::operator-=(const LocalizedRational& o) { return *this += -o; }

LocalizedRational operator*(const LocalizedRational& a, const LocalizedRational& b) {
    a.require_same_family(b);
    std::vector<int> e(a.exps_.size());
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = a.exps_[j] + b.exps_[j];
    return LocalizedRational(a.family_, a.numerator_ * b.numerator_, std::move(e));
}

LocalizedRational operator*(const LocalizedRational& a, const MultiPoly& p) {
    return LocalizedRational(a.family_, a.numerator_ * p, a.exps_);
}

LocalizedRational operator*(LocalizedRational a, const Rational& c) {
    a.numerator_ *= c;
    return a;
}

LocalizedRational LocalizedRational::operator-() const {
    return LocalizedRational(family_, -numerator_, exps_);
}

LocalizedRational LocalizedRational::divided_by_member(std::size_t j) const {
    if (j >= exps_.size()) throw UsageError("divided_by_member: index out of range");
    LocalizedRational r(*this);
    r.exps_[j] += 1;
    return r;
}

LocalizedRational LocalizedRational::derivative(std::size_t var) const {
    // d(N / prod F^m) = (dN * prod_S F - N * sum_{i in S} m_i dF_i prod_{S\i} F) / prod F^{m + e_S}
    // with S the members that occur and depend on var.
    const std::size_t n = exps_.size();
    std::vector<MultiPoly> dF(n);
    std::vector<bool> in_s(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (exps_[i] == 0) continue;
        dF[i] = family_->member(i).derivative(var);
        in_s[i] = !dF[i].is_zero();
    }
    MultiPoly s_product = MultiPoly::constant(family_->vars(), 1);
    for (std::size_t i = 0; i < n; ++i)
        if (in_s[i]) s_product *= family_->member(i);
    MultiPoly cofactor(family_->vars());
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_s[i]) continue;
        MultiPoly others = dF[i] * Rational(exps_[i]);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i && in_s[k]) others *= family_->member(k);
        cofactor += others;
    }
    MultiPoly num = numerator_.derivative(var) * s_product - numerator_ * cofactor;
    std::vector<int> e = exps_;
    for (std::size_t i = 0; i < n; ++i)
        if (in_s[i]) e[i] += 1;
    return LocalizedRational(family_, std::move(num), std::move(e));
}

bool LocalizedRational::equals(const LocalizedRational& o) const {
    require_same_family(o);
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    std::vector<int> common(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j) common[j] = std::max(exps_[j], o.exps_[j]);
    return with_exponents(common).numerator_ == o.with_exponents(common).numerator_;
}

std::string LocalizedRational::str() const {
    std::string out = "(" + numerator_.str() + ")";
    bool any = false;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        if (exps_[j] == 0) continue;
        out += any ? "*" : "/(";
        any = true;
        out += "F" + std::to_string(j + 1);
        if (exps_[j] > 1) out += "^" + std::to_string(exps_[j]);
    }
    if (any) out += ")";
    return out;
}

} // namespace rforge
