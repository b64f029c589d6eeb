#pragma once

#include "rforge/errors.hpp"
#include "rforge/localized.hpp"
#include "rforge/multipoly.hpp"
#include "rforge/rational.hpp"

#include <algorithm>
#include <vector>

namespace rforge {

inline bool is_zero_value(const Rational& q) { return q == 0; }
inline bool is_zero_value(const MultiPoly& p) { return p.is_zero(); }
inline bool is_zero_value(const LocalizedRational& v) { return v.is_zero(); }

/// Truncated power series sum_{k<=N} c_k u^k in the degree-2 variable u.
/// Coefficients beyond the stored ones are zero; the zero of the ring is kept
/// as a prototype so that families and variable sets travel with the series.
template <class R>
class USeries {
public:
    USeries(R zero, int order) : zero_(std::move(zero)), order_(order) {
        if (order < 0) throw UsageError("truncation order must be non-negative");
    }

    static USeries constant(R value, R zero, int order) {
        USeries s(std::move(zero), order);
        s.set(0, std::move(value));
        return s;
    }

    int order() const noexcept { return order_; }
    const R& zero() const noexcept { return zero_; }
    /// Number of stored coefficients (trailing zeros trimmed).
    std::size_t length() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    const R& operator[](int k) const {
        return k >= 0 && static_cast<std::size_t>(k) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(k)] : zero_;
    }

    /// Sets c_k; powers above the truncation order are dropped.
    void set(int k, R value) {
        if (k < 0) throw UsageError("negative power of u");
        if (k > order_) return;
        if (static_cast<std::size_t>(k) >= coeffs_.size()) {
            if (is_zero_value(value)) return;
            coeffs_.resize(static_cast<std::size_t>(k) + 1, zero_);
        }
        coeffs_[static_cast<std::size_t>(k)] = std::move(value);
        trim();
    }

    void add_to(int k, const R& value) {
        if (k > order_ || is_zero_value(value)) return;
        R sum = (*this)[k];
        sum += value;
        set(k, std::move(sum));
    }

    USeries& operator+=(const USeries& o) {
        const int top = std::min(order_, o.order_);
        order_ = top;
        if (coeffs_.size() > static_cast<std::size_t>(top) + 1) coeffs_.resize(static_cast<std::size_t>(top) + 1);
        for (int k = 0; k <= top && static_cast<std::size_t>(k) < o.coeffs_.size(); ++k) add_to(k, o[k]);
        trim();
        return *this;
    }
    USeries& operator-=(const USeries& o) { return *this += -o; }
    friend USeries operator+(USeries a, const USeries& b) { return a += b; }
    friend USeries operator-(USeries a, const USeries& b) { return a -= b; }

    USeries operator-() const {
        USeries r(zero_, order_);
        r.coeffs_.reserve(coeffs_.size());
        for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
        return r;
    }

    friend USeries operator*(const USeries& a, const Rational& c) {
        USeries r(a.zero_, a.order_);
        if (c == 0) return r;
        for (const auto& x : a.coeffs_) r.coeffs_.push_back(x * c);
        return r;
    }

    /// Cauchy product truncated at min(N_a, N_b).
    friend USeries operator*(const USeries& a, const USeries& b) {
        USeries r(a.zero_, std::min(a.order_, b.order_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<int>(i + j) <= r.order_; ++j)
                r.add_to(static_cast<int>(i + j), a.coeffs_[i] * b.coeffs_[j]);
        return r;
    }

    /// u -> -u
    USeries star() const {
        USeries r(*this);
        for (std::size_t k = 1; k < r.coeffs_.size(); k += 2) r.coeffs_[k] = -r.coeffs_[k];
        return r;
    }

    /// u^m * this, keeping the truncation order.
    USeries shifted(int m) const {
        if (m < 0) throw UsageError("negative u-shift");
        USeries r(zero_, order_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) r.set(static_cast<int>(k) + m, coeffs_[k]);
        return r;
    }

    USeries truncated(int order) const {
        USeries r(zero_, std::min(order, order_));
        for (int k = 0; k <= r.order_; ++k) r.set(k, (*this)[k]);
        return r;
    }

    template <class F>
    USeries map(F&& fn) const {
        USeries r(fn(zero_), order_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) r.set(static_cast<int>(k), fn(coeffs_[k]));
        return r;
    }

private:
    void trim() {
        while (!coeffs_.empty() && is_zero_value(coeffs_.back())) coeffs_.pop_back();
    }

    R zero_;
    int order_;
    std::vector<R> coeffs_;
};

/// Structural equality through the common truncation order.
template <class R>
bool series_equal(const USeries<R>& a, const USeries<R>& b) {
    const int top = std::min(a.order(), b.order());
    for (int k = 0; k <= top; ++k)
        if (!(a[k] == b[k])) return false;
    return true;
}

inline bool series_equal(const USeries<LocalizedRational>& a, const USeries<LocalizedRational>& b) {
    const int top = std::min(a.order(), b.order());
    for (int k = 0; k <= top; ++k)
        if (!a[k].equals(b[k])) return false;
    return true;
}

} // namespace rforge
