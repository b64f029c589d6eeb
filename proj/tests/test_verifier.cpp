#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "rforge/errors.hpp"
#include "rforge/milnor.hpp"
#include "rforge/pairing.hpp"
#include "rforge/twisted.hpp"
#include "rforge/verify.hpp"

using namespace rforge;
using namespace rforge::test;

namespace {

LocalizedRational L(const FamilyPtr& fam, const std::string& num, std::vector<int> e) {
    return LocalizedRational(fam, P(num, fam->vars()), std::move(e));
}

VerifyOptions opts(int order, int trials, std::uint64_t seed = 7) {
    VerifyOptions o;
    o.order = order;
    o.trials = trials;
    o.seed = seed;
    return o;
}

void require_pass(const VerifyReport& r) {
    INFO(r.suite << " on " << r.f);
    if (const VerifyFailure* w = r.smallest()) INFO(w->check << " | " << w->input);
    CHECK(r.passed());
    CHECK(r.instances > 0);
}

bool same_report(const VerifyReport& a, const VerifyReport& b) {
    if (a.instances != b.instances || a.failures.size() != b.failures.size() || a.notes != b.notes) return false;
    for (std::size_t i = 0; i < a.failures.size(); ++i)
        if (a.failures[i].fingerprint != b.failures[i].fingerprint || a.failures[i].got != b.failures[i].got)
            return false;
    return true;
}

} // namespace

TEST_CASE("u-flatness worked example for x^2") {
    auto v = vars({"x"});
    auto fam = jacobian_family(P("x^2", v));
    auto b1 = b_coeffs(fam, P("1", v), 1);
    auto bf = b_coeffs(fam, P("x^2", v), 1);
    // F = 2x
    CHECK(bf[1].equals(L(fam, "-1/2", {1})));           // -1/(4x)
    CHECK(b1[1].equals(L(fam, "2", {3})));              // 1/(4x^3)
    CHECK(b1[0].equals(L(fam, "-1", {1})));             // -1/(2x)
    CHECK((bf[1] - b1[1] * P("x^2", v)).equals(b1[0]));
}

TEST_CASE("z-flatness worked example for x^2 + z x") {
    auto v = vars({"x"}, {"z"});
    auto fam = jacobian_family(P("x^2+z*x", v));
    auto b = b_coeffs(fam, P("1", v), 1);
    auto bx = b_coeffs(fam, P("x", v), 1);
    // F = 2x + z
    CHECK(b[0].derivative(1).equals(L(fam, "1", {2})));
    CHECK(bx[1].equals(L(fam, "-z", {3})));
    CHECK(b[1].equals(L(fam, "2", {3})));
    CHECK(b[0].derivative(1).equals(b[1] * P("x", v) - bx[1]));
}

TEST_CASE("suites pass on validated examples") {
    const std::vector<std::pair<std::vector<std::string>, std::string>> fs = {
        {{"x"}, "x^2"}, {{"x"}, "x^3"}, {{"x", "y"}, "x^2+y^3"}, {{"x", "y"}, "y^2+x*y+x^2*y^2"}};
    for (const auto& [names, text] : fs) {
        auto alg = milnor_data(P(text, vars(names)));
        for (const auto& r : run_suite("all", alg, {}, opts(3, 4))) require_pass(r);
    }
}

TEST_CASE("closedness examples") {
    auto alg = milnor_data(P("x^2", vars({"x"})));
    require_pass(check_closedness(alg, opts(5, 3)));
    auto alg2 = milnor_data(P("x^3+y^3", vars({"x", "y"})));
    require_pass(check_closedness(alg2, opts(3, 2)));
}

TEST_CASE("z-flatness with explicit directions") {
    auto v = vars({"x"});
    auto alg = milnor_data(P("x^2", v));
    require_pass(check_flatness_z(alg, {P("1", v), P("x", v), P("0", v)}, opts(3, 5)));
    auto v2 = vars({"x", "y"});
    auto alg2 = milnor_data(P("x^3+y^3", v2));
    require_pass(check_flatness_z(alg2, {P("x*y", v2)}, opts(2, 2)));
    CHECK_THROWS_AS(check_flatness_z(alg, {P("z", vars({"x"}, {"z"}))}, opts(1, 1)), UsageError);
}

TEST_CASE("characteristic equation for x^3 against the Laurent oracle") {
    // delta(x, y) = 3(x + y); P_k(y) = Res_x[-b_k(eta) delta dx] with
    // b_0 = -eta/(3x^2), b_{k+1} = (1/(3x^2)) d/dx b_k.
    using namespace oracle;
    auto v = vars({"x"});
    MultiPoly f = P("x^3", v);
    auto alg = milnor_data(f);
    const int N = 4;
    const Dense fp = monomial(2, 3);
    for (int e = 0; e < 2; ++e) {
        Dense num = monomial(e, -1), den = fp;
        std::vector<MultiPoly> omega;
        for (int k = 0; k <= N; ++k) {
            const Rational c0 = -3 * laurent_residue(mul(num, monomial(1)), den);
            const Rational c1 = -3 * laurent_residue(num, den);
            omega.push_back(MultiPoly::constant(v, c0) + MultiPoly::constant(v, c1) * P("x", v));
            Dense next = derivative(num);
            next = mul(next, den);
            Dense rhs = mul(num, derivative(den));
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                if (next.size() <= i) next.resize(i + 1, 0);
                next[i] -= rhs[i];
            }
            num = next;
            den = mul(mul(den, den), fp);
        }
        auto reduced = twisted_reduce_brute(f, omega, alg.basis, 6);
        REQUIRE(reduced.has_value());
        const MultiPoly eta = e == 0 ? P("1", v) : P("x", v);
        CHECK((*reduced)[0] == eta);
        for (int k = 1; k <= N; ++k) CHECK((*reduced)[static_cast<std::size_t>(k)].is_zero());
    }
    require_pass(check_characteristic_equation(alg, opts(N, 0)));
}

TEST_CASE("characteristic equation notes slabs outside the Jacobian ideal") {
    auto alg = milnor_data(P("y^2+x*y+x^2*y^2", vars({"x", "y"})));
    VerifyReport r = check_characteristic_equation(alg, opts(3, 0));
    require_pass(r);
    CHECK(!r.notes.empty());
}

TEST_CASE("reports are deterministic and independent of the worker count") {
    auto alg = milnor_data(P("x^2+y^3", vars({"x", "y"})));
    VerifyOptions a = opts(3, 6, 11), b = a;
    b.jobs = 3;
    for (const auto& name : suite_names()) {
        auto ra = run_suite(name, alg, {}, a);
        auto rb = run_suite(name, alg, {}, b);
        REQUIRE(ra.size() == 1);
        CHECK(same_report(ra[0], rb[0]));
        CHECK(ra[0].seed == 11);
        CHECK(ra[0].order == 3);
    }
}

TEST_CASE("a broken algebra produces sorted, pinpointed failures") {
    auto v = vars({"x"});
    MilnorAlgebra alg = milnor_data(P("x^3", v));
    // claims one more variable than the family has, so every (k + n) factor is off
    alg.jacobian.push_back(alg.jacobian.front());
    VerifyReport r = check_flatness_u(alg, opts(2, 3));
    CHECK(!r.passed());
    CHECK(std::is_sorted(r.failures.begin(), r.failures.end(),
                         [](const VerifyFailure& x, const VerifyFailure& y) { return x.fingerprint < y.fingerprint; }));
    const VerifyFailure* w = r.smallest();
    REQUIRE(w != nullptr);
    CHECK(!w->input.empty());
    for (const auto& f : r.failures) CHECK(w->input.size() <= f.input.size());
}

TEST_CASE("quasi-homogeneous weights") {
    auto v = vars({"x", "y"});
    auto w = quasi_homogeneous_weights(P("x^2+y^3", v));
    REQUIRE(w.has_value());
    CHECK((*w)[0] == Q("1/2"));
    CHECK((*w)[1] == Q("1/3"));
    CHECK(quasi_homogeneous_weights(P("x^2*y+y^4", v)).has_value());
    CHECK(!quasi_homogeneous_weights(P("y^2+x*y+x^2*y^2", v)).has_value());
    CHECK(!quasi_homogeneous_weights(P("x^3+(y+x^2)^2", v)).has_value());
    auto one = quasi_homogeneous_weights(P("x*y", v));
    REQUIRE(one.has_value());
    CHECK((*one)[0] + (*one)[1] == 1);
    CHECK((*one)[0] > 0);
}
