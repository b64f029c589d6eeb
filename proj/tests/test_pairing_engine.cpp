#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "rforge/errors.hpp"
#include "rforge/pairing.hpp"
#include "rforge/residue.hpp"

using namespace rforge;
using namespace rforge::test;

namespace {

struct Separable {
    std::vector<std::string> vars;
    std::string f;
    std::vector<oracle::Dense> partials;  // f_i as a polynomial in x_i alone
};

const std::vector<Separable>& quasi_homogeneous() {
    using oracle::monomial;
    static const std::vector<Separable> ex = [] {
        std::vector<Separable> v;
        for (int k = 1; k <= 5; ++k)
            v.push_back({{"x"}, "x^" + std::to_string(k + 1), {monomial(k, k + 1)}});
        v.push_back({{"x", "y"}, "x^2+y^3", {monomial(1, 2), monomial(2, 3)}});
        v.push_back({{"x", "y"}, "x^3+y^3", {monomial(2, 3), monomial(2, 3)}});
        v.push_back({{"x1", "x2"}, "x1^2+x2^2", {monomial(1, 2), monomial(1, 2)}});
        return v;
    }();
    return ex;
}

std::vector<int> exponents_of(const MultiPoly& mono, std::size_t n) {
    const Monomial& m = mono.terms().begin()->first;
    std::vector<int> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(m[i]);
    return e;
}

TwistedClass random_class(RandomPolys& rnd, const MultiPoly& f, int order) {
    const auto& v = f.vars();
    PolySeries s(MultiPoly(v), order);
    for (int k = 0; k <= order; ++k)
        if (rnd.uniform(0, 2) > 0) s.set(k, rnd.poly(v, v->num_active(), 3, 3));
    return TwistedClass{f, s};
}

TwistedClass times_u(const TwistedClass& w) { return TwistedClass{w.f, w.coeffs.shifted(1)}; }

/// (-1)^p on the coefficient of u^p
ShiftedSeries star(const ShiftedSeries& s) {
    ShiftedSeries r = s;
    if (s.shift % 2 != 0) r.coeffs = -r.coeffs;
    r.coeffs = r.coeffs.star();
    return r;
}

bool same(const ShiftedSeries& a, const ShiftedSeries& b, int through) {
    for (int p = 0; p <= through; ++p)
        if (a.at(p) != b.at(p)) return false;
    return true;
}

} // namespace

TEST_CASE("orders of the pairing for f = x^2") {
    auto v = vars({"x"});
    auto alg = milnor_data(P("x^2", v));
    RatSeries s = hres_series(alg, P("1", v), P("1", v), 2);
    CHECK(s[0] == Q("1/2"));
    CHECK(s[1] == 0);
    CHECK(s[2] == 0);
    CHECK(hres_order(alg, P("1", v), P("1", v), 0) == Q("1/2"));
}

TEST_CASE("order zero is the residue pairing") {
    RandomPolys rnd(12);
    for (const auto& ex : quasi_homogeneous()) {
        auto v = vars(ex.vars);
        MultiPoly f = P(ex.f, v);
        auto alg = milnor_data(f);
        for (int t = 0; t < 3; ++t) {
            MultiPoly h = rnd.poly(v, v->num_active(), 3, 3);
            MultiPoly g = rnd.poly(v, v->num_active(), 3, 3);
            CHECK(hres_order(alg, h, g, 0) == res_pairing(f, h, g));
        }
    }
}

TEST_CASE("order-zero Gram slab against the separable Laurent oracle") {
    for (const auto& ex : quasi_homogeneous()) {
        auto v = vars(ex.vars);
        auto alg = milnor_data(P(ex.f, v));
        const std::size_t n = v->num_active();
        PairingMatrix m = pairing_matrix(alg, 0);
        for (std::size_t a = 0; a < alg.mu; ++a)
            for (std::size_t b = 0; b < alg.mu; ++b) {
                auto ea = exponents_of(alg.basis[a], n);
                auto eb = exponents_of(alg.basis[b], n);
                for (std::size_t i = 0; i < n; ++i) ea[i] += eb[i];
                CHECK(m.entries[a][b].at(0) == oracle::separable_residue(ex.partials, ea));
            }
    }
    auto v = vars({"x"});
    PairingMatrix m = pairing_matrix(milnor_data(P("x^3", v)), 0);
    REQUIRE(m.labels == std::vector<std::string>{"1", "x"});
    CHECK(m.entries[0][0].at(0) == 0);
    CHECK(m.entries[0][1].at(0) == Q("1/3"));
    CHECK(m.entries[1][0].at(0) == Q("1/3"));
    CHECK(m.entries[1][1].at(0) == 0);
}

TEST_CASE("saito pairing of dx with itself for f = x^2") {
    auto v = vars({"x"});
    auto alg = milnor_data(P("x^2", v));
    TwistedClass dx = TwistedClass::of(alg.f, P("1", v), 6);
    ShiftedSeries k = pairing_series(alg, dx, dx, 6, Convention::Saito);
    CHECK(k.shift == 1);
    CHECK(k.at(0) == 0);
    CHECK(k.at(1) == Q("1/2"));
    for (int p = 2; p <= 7; ++p) CHECK(k.at(p) == 0);
    PairingMatrix m = pairing_matrix(alg, 6, Convention::Saito);
    CHECK(m.entries[0][0].shift == 1);
    CHECK(m.entries[0][0].coeffs[0] == Q("1/2"));
    CHECK(m.entries[0][0].coeffs.length() == 1);
}

TEST_CASE("canonical convention sign") {
    CHECK(canonical_sign(1) == -1);
    CHECK(canonical_sign(2) == -1);
    CHECK(canonical_sign(3) == 1);
    CHECK(canonical_sign(4) == 1);
    auto v = vars({"x"});
    auto alg = milnor_data(P("x^3", v));
    PairingMatrix h = pairing_matrix(alg, 2, Convention::Hres);
    PairingMatrix c = pairing_matrix(alg, 2, Convention::Canonical);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (int p = 0; p <= 2; ++p) CHECK(c.entries[a][b].at(p) == -h.entries[a][b].at(p));
    CHECK(parse_convention("saito") == Convention::Saito);
    CHECK_THROWS_AS(parse_convention("other"), UsageError);
}

TEST_CASE("(-1)^i symmetry of the order pieces") {
    RandomPolys rnd(21);
    const std::vector<std::pair<std::vector<std::string>, std::string>> fs = {
        {{"x"}, "x^4"}, {{"x", "y"}, "x^3+(y+x^2)^2"}, {{"x", "y"}, "y^2+x*y+x^2*y^2"}};
    for (const auto& [names, text] : fs) {
        auto v = vars(names);
        auto alg = milnor_data(P(text, v));
        for (int t = 0; t < 3; ++t) {
            MultiPoly h = rnd.poly(v, v->num_active(), 3, 3);
            MultiPoly g = rnd.poly(v, v->num_active(), 3, 3);
            RatSeries hg = hres_series(alg, h, g, 4);
            RatSeries gh = hres_series(alg, g, h, 4);
            for (int i = 0; i <= 4; ++i) CHECK(hg[i] == (i % 2 == 0 ? gh[i] : -gh[i]));
            CHECK(hres_order(alg, h, h, 1) == 0);
        }
    }
}

TEST_CASE("non quasi-homogeneous f has nonzero higher orders") {
    auto v = vars({"x", "y"});
    auto alg = milnor_data(P("y^2+x*y+x^2*y^2", v));
    PairingMatrix m = pairing_matrix(alg, 3);
    bool any = false;
    for (const auto& row : m.entries)
        for (const auto& e : row)
            for (int p = 1; p <= 3; ++p) any = any || e.at(p) != 0;
    CHECK(any);
}

TEST_CASE("higher orders vanish for quasi-homogeneous f") {
    for (const auto& ex : quasi_homogeneous()) {
        auto v = vars(ex.vars);
        auto alg = milnor_data(P(ex.f, v));
        PairingMatrix m = pairing_matrix(alg, 6);
        for (const auto& row : m.entries)
            for (const auto& e : row)
                for (int p = 1; p <= 6; ++p) CHECK(e.at(p) == 0);
    }
}

TEST_CASE("Saito axioms on random classes") {
    RandomPolys rnd(1234);
    const std::vector<std::pair<std::vector<std::string>, std::string>> fs = {
        {{"x"}, "x^3"}, {{"x", "y"}, "x^2+y^3"}, {{"x", "y"}, "y^2+x*y+x^2*y^2"}};
    const int N = 3;
    for (const auto& [names, text] : fs) {
        auto v = vars(names);
        MultiPoly f = P(text, v);
        auto alg = milnor_data(f);
        const int n = static_cast<int>(v->num_active());
        for (int t = 0; t < 3; ++t) {
            TwistedClass w1 = random_class(rnd, f, N);
            TwistedClass w2 = random_class(rnd, f, N);
            ShiftedSeries k12 = pairing_series(alg, w1, w2, N, Convention::Saito);
            ShiftedSeries k21 = pairing_series(alg, w2, w1, N, Convention::Saito);
            // sesquilinearity
            ShiftedSeries ku1 = pairing_series(alg, times_u(w1), w2, N, Convention::Saito);
            ShiftedSeries ku2 = pairing_series(alg, w1, times_u(w2), N, Convention::Saito);
            for (int p = 0; p <= N + n; ++p) {
                CHECK(ku1.at(p) == k12.at(p - 1));
                CHECK(ku2.at(p) == -k12.at(p - 1));
            }
            // K(w1, w2) = (-1)^n K(w2, w1)^*
            ShiftedSeries s21 = star(k21);
            for (int p = 0; p <= N + n; ++p) CHECK(k12.at(p) == (n % 2 == 0 ? s21.at(p) : -s21.at(p)));
            // values in C[[u]] u^n
            CHECK(k12.shift == n);
            // leading coefficient is the residue pairing
            CHECK(k12.at(n) == res_pairing(f, w1.coeffs[0], w2.coeffs[0]));
        }
    }
}

TEST_CASE("pairing depends only on classes") {
    RandomPolys rnd(4321);
    const std::vector<std::pair<std::vector<std::string>, std::string>> fs = {
        {{"x"}, "x^3"}, {{"x", "y"}, "x^2+y^3"}, {{"x", "y"}, "y^2+x*y+x^2*y^2"}};
    const int N = 3;
    for (const auto& [names, text] : fs) {
        auto v = vars(names);
        MultiPoly f = P(text, v);
        auto alg = milnor_data(f);
        for (int t = 0; t < 3; ++t) {
            TwistedClass w1 = random_class(rnd, f, N);
            TwistedClass w2 = random_class(rnd, f, N);
            ShiftedSeries k = pairing_series(alg, w1, w2, N);
            CHECK(same(pairing_series(alg, twisted_normal_form(alg, w1), w2, N), k, N));
            CHECK(same(pairing_series(alg, w1, twisted_normal_form(alg, w2), N), k, N));
        }
    }
}

TEST_CASE("pairing matrix is independent of the worker count") {
    auto v = vars({"x", "y"});
    auto alg = milnor_data(P("x^3+(y+x^2)^2", v));
    PairingMatrix a = pairing_matrix(alg, 3, Convention::Hres, 1);
    PairingMatrix b = pairing_matrix(alg, 3, Convention::Hres, 4);
    for (std::size_t i = 0; i < alg.mu; ++i)
        for (std::size_t j = 0; j < alg.mu; ++j) CHECK(same(a.entries[i][j], b.entries[i][j], 3));
}

TEST_CASE("one-sided and symmetrized forms never disagreed") {
    CHECK(pairing_counters().evaluations.load() > 0);
    CHECK(pairing_counters().mismatches.load() == 0);
}

TEST_CASE("diagonal kernel") {
    auto v = vars({"x"});
    auto d2 = chern_delta(P("x^2", v));
    CHECK(d2.delta == MultiPoly::constant(d2.delta.vars(), 2));
    auto d3 = chern_delta(P("x^3", v));
    const auto& dv = d3.delta.vars();
    CHECK(d3.delta == MultiPoly::variable(dv, "x") * Rational(3) + MultiPoly::variable(dv, "x'") * Rational(3));
    auto v2 = vars({"x1", "x2"});
    auto d4 = chern_delta(P("x1^2+x2^2", v2));
    CHECK(d4.delta == MultiPoly::constant(d4.delta.vars(), 4));

    RandomPolys rnd(66);
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        auto vv = vars(names);
        for (int t = 0; t < 4; ++t) {
            MultiPoly f = rnd.poly(vv, n, 4, 5);
            DiagonalKernel k = chern_delta(f);
            std::map<std::size_t, MultiPoly> diag;
            for (std::size_t i = 0; i < n; ++i) diag.emplace(k.copies[i], MultiPoly::variable(k.delta.vars(), i));
            std::vector<std::vector<MultiPoly>> hess(n, std::vector<MultiPoly>(n, MultiPoly(vv)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) hess[i][j] = f.derivative(i).derivative(j);
            // Leibniz expansion of the Hessian determinant
            std::vector<std::size_t> perm(n);
            for (std::size_t i = 0; i < n; ++i) perm[i] = i;
            MultiPoly det(vv);
            do {
                int sign = 1;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (perm[i] > perm[j]) sign = -sign;
                MultiPoly term = MultiPoly::constant(vv, sign);
                for (std::size_t i = 0; i < n; ++i) term *= hess[i][perm[i]];
                det += term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            CHECK(k.delta.substitute(diag) == det.embed(k.delta.vars(), {}));
        }
    }
}
