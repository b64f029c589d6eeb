#include "rforge/multipoly.hpp"

#include "rforge/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rforge {

Monomial::Monomial(std::size_t nvars) : size_(nvars) {
    if (nvars > kInline) big_.assign(nvars, 0);
}

Monomial::Monomial(const std::vector<int>& exps) : Monomial(exps.size()) {
    std::copy(exps.begin(), exps.end(), data());
    degree_ = std::accumulate(exps.begin(), exps.end(), 0);
}

void Monomial::set(std::size_t i, int e) {
    degree_ += e - data()[i];
    data()[i] = e;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r(*this);
    int* d = r.data();
    const int* o = other.data();
    for (std::size_t i = 0; i < size_; ++i) d[i] += o[i];
    r.degree_ += other.degree_;
    return r;
}

bool Monomial::divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    const int* a = data();
    const int* b = other.data();
    for (std::size_t i = 0; i < size_; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    Monomial r(other);
    int* d = r.data();
    const int* a = data();
    for (std::size_t i = 0; i < size_; ++i) d[i] -= a[i];
    r.degree_ -= degree_;
    return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
    Monomial r(size_);
    int* d = r.data();
    const int* a = data();
    const int* b = other.data();
    for (std::size_t i = 0; i < size_; ++i) {
        d[i] = std::max(a[i], b[i]);
        r.degree_ += d[i];
    }
    return r;
}

bool DegRevLex::operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

MultiPoly MultiPoly::constant(VarSetPtr vars, const Rational& c) {
    MultiPoly p(vars);
    if (c != 0) p.terms_.emplace(Monomial(vars->size()), c);
    return p;
}

MultiPoly MultiPoly::variable(VarSetPtr vars, std::size_t index) {
    if (index >= vars->size()) throw UsageError("variable index out of range");
    Monomial m(vars->size());
    m.set(index, 1);
    MultiPoly p(vars);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

MultiPoly MultiPoly::variable(VarSetPtr vars, const std::string& name) {
    const auto idx = vars->index_of(name);
    return variable(std::move(vars), idx);
}

MultiPoly MultiPoly::term(VarSetPtr vars, const Monomial& m, const Rational& c) {
    if (m.size() != vars->size()) throw UsageError("monomial length does not match VarSet");
    MultiPoly p(std::move(vars));
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MultiPoly::constant_term() const {
    if (terms_.empty() || !terms_.begin()->first.is_one()) return 0;
    return terms_.begin()->second;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int MultiPoly::active_degree() const {
    int best = -1;
    const std::size_t n = vars_ ? vars_->num_active() : 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < n; ++i) d += m[i];
        best = std::max(best, d);
    }
    return best;
}

bool MultiPoly::has_parameters() const {
    const std::size_t n = vars_ ? vars_->num_active() : 0;
    for (const auto& [m, c] : terms_)
        for (std::size_t i = n; i < m.size(); ++i)
            if (m[i] != 0) return true;
    return false;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::require_same_vars(const MultiPoly& o) const {
    if (!same_vars(vars_, o.vars_)) throw UsageError("polynomials over different variable sets");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (!vars_) vars_ = o.vars_;
    if (o.terms_.empty()) return *this;
    require_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (!vars_) vars_ = o.vars_;
    if (o.terms_.empty()) return *this;
    require_same_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.vars_ ? a.vars_ : b.vars_);
    a.require_same_vars(b);
    // Each row ma * b is already sorted; merge rows pairwise.
    using Row = std::vector<std::pair<Monomial, Rational>>;
    const MultiPoly& outer = a.terms_.size() <= b.terms_.size() ? a : b;
    const MultiPoly& inner = &outer == &a ? b : a;
    std::vector<Row> rows;
    rows.reserve(outer.terms_.size());
    for (const auto& [mo, co] : outer.terms_) {
        Row row;
        row.reserve(inner.terms_.size());
        for (const auto& [mi, ci] : inner.terms_) row.emplace_back(mo * mi, co * ci);
        rows.push_back(std::move(row));
    }
    const DegRevLex less;
    while (rows.size() > 1) {
        std::vector<Row> next;
        next.reserve((rows.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
            Row& x = rows[i];
            Row& y = rows[i + 1];
            Row out;
            out.reserve(x.size() + y.size());
            std::size_t p = 0, q = 0;
            while (p < x.size() && q < y.size()) {
                if (less(x[p].first, y[q].first)) out.push_back(std::move(x[p++]));
                else if (less(y[q].first, x[p].first)) out.push_back(std::move(y[q++]));
                else {
                    x[p].second += y[q].second;
                    if (x[p].second != 0) out.push_back(std::move(x[p]));
                    ++p;
                    ++q;
                }
            }
            for (; p < x.size(); ++p) out.push_back(std::move(x[p]));
            for (; q < y.size(); ++q) out.push_back(std::move(y[q]));
            next.push_back(std::move(out));
        }
        if (rows.size() % 2) next.push_back(std::move(rows.back()));
        rows = std::move(next);
    }
    MultiPoly r(a.vars_);
    for (auto& [m, c] : rows.front()) r.terms_.emplace_hint(r.terms_.end(), std::move(m), std::move(c));
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

MultiPoly MultiPoly::times_term(const Monomial& m, const Rational& c) const {
    MultiPoly r(vars_);
    if (c == 0) return r;
    // Multiplying by a monomial preserves the order, so hinted insertion stays linear.
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
}

void MultiPoly::add_scaled(const MultiPoly& p, const Monomial& m, const Rational& c) {
    if (!vars_) vars_ = p.vars_;
    if (p.terms_.empty() || c == 0) return;
    require_same_vars(p);
    for (const auto& [mm, cc] : p.terms_) add_term(mm * m, cc * c);
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(vars_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    if (!vars_ || var >= vars_->size()) throw UsageError("derivative: variable index out of range");
    MultiPoly r(vars_);
    for (const auto& [m, c] : terms_) {
        const int e = m[var];
        if (e == 0) continue;
        Monomial mm(m);
        mm.set(var, e - 1);
        r.add_term(mm, c * e);
    }
    return r;
}

MultiPoly MultiPoly::derivative(const std::string& name) const {
    if (!vars_) throw UsageError("derivative of an untyped polynomial");
    return derivative(vars_->index_of(name));
}

MultiPoly MultiPoly::substitute(const std::map<std::size_t, MultiPoly>& assignment) const {
    for (const auto& [idx, p] : assignment) {
        if (!vars_ || idx >= vars_->size()) throw UsageError("substitute: unknown variable");
        if (!p.vars_ || !same_vars(vars_, p.vars_)) throw UsageError("substitute: mismatched VarSet");
    }
    MultiPoly result(vars_);
    // Cache powers of the substituted polynomials.
    std::map<std::pair<std::size_t, int>, MultiPoly> powers;
    auto power_of = [&](std::size_t idx, int e) -> const MultiPoly& {
        auto key = std::make_pair(idx, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, assignment.at(idx).pow(static_cast<unsigned>(e))).first;
        return it->second;
    };
    for (const auto& [m, c] : terms_) {
        Monomial kept(m);
        for (const auto& [idx, p] : assignment) kept.set(idx, 0);
        MultiPoly t = term(vars_, kept, c);
        for (const auto& [idx, p] : assignment)
            if (m[idx] > 0) t *= power_of(idx, m[idx]);
        result += t;
    }
    return result;
}

MultiPoly MultiPoly::embed(const VarSetPtr& target, const std::map<std::string, std::string>& rename) const {
    std::vector<std::size_t> map_to(vars_ ? vars_->size() : 0);
    for (std::size_t i = 0; i < map_to.size(); ++i) {
        const auto& src = vars_->name(i);
        auto it = rename.find(src);
        map_to[i] = target->index_of(it == rename.end() ? src : it->second);
    }
    MultiPoly r(target);
    for (const auto& [m, c] : terms_) {
        std::vector<int> e(target->size(), 0);
        for (std::size_t i = 0; i < map_to.size(); ++i) e[map_to[i]] += m[i];
        r.add_term(Monomial(std::move(e)), c);
    }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    if (!same_vars(vars_, o.vars_)) return false;
    return terms_ == o.terms_;
}

std::string monomial_str(const VarSet& vars, const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars.name(i);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << monomial_str(*vars_, m);
        }
    }
    return os.str();
}

} // namespace rforge
