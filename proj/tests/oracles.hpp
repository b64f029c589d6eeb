#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the residue or Groebner code paths.

#include "rforge/multipoly.hpp"
#include "rforge/rational.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rforge::oracle {

using Dense = std::vector<Rational>;  // coefficient of x^k at index k

inline Dense mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) return {};
    Dense r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Dense power(const Dense& a, int k) {
    Dense r{Rational(1)};
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

inline Dense derivative(const Dense& a) {
    Dense r;
    for (std::size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * static_cast<long>(k));
    return r;
}

/// Residue at 0 of num(x)/den(x) dx by Laurent expansion: write den = x^d u(x)
/// with u(0) != 0, expand 1/u as a power series and read the x^{-1} coefficient.
inline Rational laurent_residue(const Dense& num, const Dense& den) {
    std::size_t d = 0;
    while (d < den.size() && den[d] == 0) ++d;
    if (d == den.size()) throw std::invalid_argument("zero denominator");
    Dense unit(den.begin() + static_cast<std::ptrdiff_t>(d), den.end());
    if (d == 0) return 0;
    // inverse series of unit up to x^{d-1}
    Dense inv(d);
    inv[0] = 1 / unit[0];
    for (std::size_t k = 1; k < d; ++k) {
        Rational s = 0;
        for (std::size_t j = 1; j <= k && j < unit.size(); ++j) s += unit[j] * inv[k - j];
        inv[k] = -s / unit[0];
    }
    Rational r = 0;
    for (std::size_t k = 0; k < d && k < num.size(); ++k) r += num[k] * inv[d - 1 - k];
    return r;
}

inline Dense monomial(int k, Rational c = 1) {
    Dense r(static_cast<std::size_t>(k) + 1);
    r[static_cast<std::size_t>(k)] = c;
    return r;
}

/// Res[x^e dx / (p_1(x_1), ..., p_n(x_n))] for univariate p_i: the product of
/// univariate Laurent residues.
inline Rational separable_residue(const std::vector<Dense>& partials, const std::vector<int>& e) {
    Rational r = 1;
    for (std::size_t i = 0; i < partials.size(); ++i) r *= laurent_residue(monomial(e[i]), partials[i]);
    return r;
}

/// Solves A z = b exactly; returns one solution (free variables zero) or nullopt.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational k = a[i][c] / a[r][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[i][cc] -= k * a[r][cc];
            b[i] -= k * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> z(cols);
    for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return z;
}

/// Brute-force reduction in the truncated twisted complex: finds r_k in the
/// span of `basis` and polynomials a_{k,j} of degree <= xi_degree with
///   omega_k - r_k = -sum_j f_j a_{k,j} + sum_j d_j a_{k-1,j},  k = 0..N,
/// i.e. omega - r = (-df^ + u d) xi. Returns r_0..r_N.
inline std::optional<std::vector<MultiPoly>> twisted_reduce_brute(const MultiPoly& f,
                                                                  const std::vector<MultiPoly>& omega,
                                                                  const std::vector<MultiPoly>& basis,
                                                                  int xi_degree) {
    const auto& v = f.vars();
    const std::size_t n = v->num_active();
    const int order = static_cast<int>(omega.size()) - 1;
    std::vector<Monomial> xi_monos;
    {
        std::vector<int> e(v->size(), 0);
        for (;;) {
            int d = 0;
            for (std::size_t i = 0; i < n; ++i) d += e[i];
            if (d <= xi_degree) xi_monos.emplace_back(e);
            std::size_t i = 0;
            while (i < n) {
                if (++e[i] <= xi_degree) break;
                e[i] = 0;
                ++i;
            }
            if (i == n) break;
        }
    }
    // columns: a_{k,j,m} then r_{k,b}
    const std::size_t na = static_cast<std::size_t>(order + 1) * n * xi_monos.size();
    const std::size_t nr = static_cast<std::size_t>(order + 1) * basis.size();
    auto a_col = [&](int k, std::size_t j, std::size_t m) {
        return (static_cast<std::size_t>(k) * n + j) * xi_monos.size() + m;
    };
    auto r_col = [&](int k, std::size_t b) { return na + static_cast<std::size_t>(k) * basis.size() + b; };
    // equation: sum_j f_j a_{k,j} - sum_j d_j a_{k-1,j} - r_k = -omega_k  ... rearranged as
    //           r_k - sum_j f_j a_{k,j} + sum_j d_j a_{k-1,j} = omega_k
    std::map<std::pair<int, Monomial>, std::size_t, std::function<bool(const std::pair<int, Monomial>&,
                                                                      const std::pair<int, Monomial>&)>>
        row_of([](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return DegRevLex{}(x.second, y.second);
        });
    std::vector<std::map<std::size_t, Rational>> rows;
    auto row = [&](int k, const Monomial& m) -> std::map<std::size_t, Rational>& {
        auto key = std::make_pair(k, m);
        auto it = row_of.find(key);
        if (it == row_of.end()) {
            it = row_of.emplace(key, rows.size()).first;
            rows.emplace_back();
        }
        return rows[it->second];
    };
    for (int k = 0; k <= order; ++k) {
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (const auto& [m, c] : basis[b].terms()) row(k, m)[r_col(k, b)] += c;
        for (std::size_t j = 0; j < n; ++j) {
            const MultiPoly fj = f.derivative(j);
            for (std::size_t mi = 0; mi < xi_monos.size(); ++mi) {
                const MultiPoly prod = fj.times_term(xi_monos[mi], 1);
                for (const auto& [m, c] : prod.terms()) row(k, m)[a_col(k, j, mi)] -= c;
                if (k >= 1) {
                    const MultiPoly d = MultiPoly::term(v, xi_monos[mi], 1).derivative(j);
                    for (const auto& [m, c] : d.terms()) row(k, m)[a_col(k - 1, j, mi)] += c;
                }
            }
        }
        for (const auto& [m, c] : omega[static_cast<std::size_t>(k)].terms()) row(k, m);
    }
    std::vector<std::vector<Rational>> dense(rows.size(), std::vector<Rational>(na + nr));
    std::vector<Rational> rhs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, val] : rows[i]) dense[i][c] = val;
    for (int k = 0; k <= order; ++k)
        for (const auto& [m, c] : omega[static_cast<std::size_t>(k)].terms()) rhs[row_of.at({k, m})] = c;
    auto z = solve(std::move(dense), std::move(rhs));
    if (!z) return std::nullopt;
    std::vector<MultiPoly> r;
    for (int k = 0; k <= order; ++k) {
        MultiPoly rk(v);
        for (std::size_t b = 0; b < basis.size(); ++b) rk += basis[b] * (*z)[r_col(k, b)];
        r.push_back(rk);
    }
    return r;
}

} // namespace rforge::oracle
