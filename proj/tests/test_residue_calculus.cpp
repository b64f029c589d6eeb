#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "rforge/errors.hpp"
#include "rforge/polyops.hpp"
#include "rforge/residue.hpp"

using namespace rforge;
using namespace rforge::test;

TEST_CASE("localized arithmetic") {
    auto v = vars({"x"});
    auto fam = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P("2*x", v)});
    // d/dx (-1/(2x)) = 1/(2x^2)
    LocalizedRational a(fam, P("-1", v), {1});
    auto da = a.derivative(0);
    CHECK(da.numerator() == P("2", v));
    CHECK(da.exponents() == std::vector<int>{2});
    // 1/(2x^2) = 2/(2x)^2
    CHECK(da.equals(LocalizedRational(fam, P("2", v), {2})));
    CHECK_FALSE(da.equals(LocalizedRational(fam, P("1", v), {2})));

    auto v2 = vars({"x", "y"});
    auto fam2 = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P("2*x", v2), P("3*y^2", v2)});
    auto prod = LocalizedRational(fam2, P("1", v2), {1, 0}) * LocalizedRational(fam2, P("1", v2), {0, 1});
    CHECK(prod.numerator() == P("1", v2));
    CHECK(prod.exponents() == std::vector<int>{1, 1});
}

TEST_CASE("one step of the Phi recursion for f = x^2") {
    auto v = vars({"x"});
    auto fam = jacobian_family(P("x^2", v));
    LocalizedRational a0 = LocalizedRational::from_poly(fam, P("-1", v)).divided_by_member(0);
    LocalizedRational a1 = a0.derivative(0).divided_by_member(0);
    // (1/(2x)) d/dx (-1/(2x)) = 1/(4x^3) = 2/(2x)^3
    CHECK(a1.equals(LocalizedRational(fam, P("2", v), {3})));
}

TEST_CASE("localized values over different families do not mix") {
    auto v = vars({"x"});
    auto f1 = jacobian_family(P("x^2", v));
    auto f2 = jacobian_family(P("x^3", v));
    CHECK_THROWS_AS(LocalizedRational::from_poly(f1, P("1", v)) + LocalizedRational::from_poly(f2, P("1", v)),
                    UsageError);
}

TEST_CASE("quotient rule against cross-multiplication on random values") {
    auto v = vars({"x", "y"}, {"z"});
    auto fam = std::make_shared<const DenominatorFamily>(
        std::vector<MultiPoly>{P("3*x^2 + z*y", v), P("2*y + x*z", v)});
    RandomPolys gen(31);
    for (int trial = 0; trial < 15; ++trial) {
        LocalizedRational a(fam, gen.poly(v, 3, 3, 4), {gen.uniform(0, 2), gen.uniform(0, 2)});
        LocalizedRational b(fam, gen.poly(v, 3, 3, 4), {gen.uniform(0, 2), gen.uniform(0, 2)});
        for (std::size_t var = 0; var < 3; ++var) {
            // Leibniz and additivity of the derivative
            CHECK((a * b).derivative(var).equals(a.derivative(var) * b + a * b.derivative(var)));
            CHECK((a + b).derivative(var).equals(a.derivative(var) + b.derivative(var)));
        }
        // F_1 * (a / F_1) == a
        CHECK((a.divided_by_member(0) * fam->member(0)).equals(a));
    }
}

TEST_CASE("res_monomial base cases") {
    auto v = vars({"x1", "x2"});
    CHECK(res_monomial(P("1", v), {1, 1}) == P("1", v));
    CHECK(res_monomial(P("1", v), {2, 1}).is_zero());
    CHECK(res_monomial(P("x1*x2", v), {2, 2}) == P("1", v));
    CHECK(res_monomial(P("3*x1*x2 + x2", v), {2, 2}) == P("3", v));
    auto w = vars({"x"}, {"y"});
    CHECK(res_monomial(P("x*y^2 + 5*x + y", w), {2}) == P("y^2 + 5", w));
}

TEST_CASE("res_grothendieck against the Laurent oracle") {
    auto v = vars({"x"});
    {
        auto fam = jacobian_family(P("x^2", v));
        CHECK(res_grothendieck(LocalizedRational(fam, P("1", v), {1})) == P("1/2", v));
    }
    {
        auto fam = jacobian_family(P("x^3", v));
        CHECK(res_grothendieck(LocalizedRational(fam, P("x", v), {1})) == P("1/3", v));
    }
    auto v2 = vars({"x", "y"});
    {
        auto fam = jacobian_family(P("x^2 + y^2", v2));
        CHECK(res_grothendieck(LocalizedRational(fam, P("1", v2), {1, 1})) == P("1/4", v2));
    }
    // Univariate sweep: x^a / (f')^m for several f, several powers of f'.
    const std::vector<std::pair<std::string, oracle::Dense>> cases{
        {"x^3", {0, 0, 3}},
        {"x^4", {0, 0, 0, 4}},
        {"x^2", {0, 2}},
    };
    for (const auto& [ftext, fprime] : cases) {
        auto fam = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P(ftext, v).derivative(0)});
        for (int m = 1; m <= 3; ++m)
            for (int a = 0; a <= 9; ++a) {
                Rational expected = oracle::laurent_residue(oracle::monomial(a), oracle::power(fprime, m));
                CHECK(residue_engine().residue_value(LocalizedRational(fam, P("x^" + std::to_string(a), v), {m})) ==
                      expected);
            }
    }
}

TEST_CASE("res_pairing") {
    auto v = vars({"x"});
    CHECK(res_pairing(P("x^2", v), P("1", v), P("1", v)) == Q("1/2"));
    CHECK(res_pairing(P("x^3", v), P("x", v), P("1", v)) == Q("1/3"));
    CHECK(res_pairing(P("x^3", v), P("1", v), P("1", v)) == 0);
}

TEST_CASE("residues agree with res_monomial for the coordinate family") {
    auto v = vars({"x", "y"});
    auto fam = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P("x", v), P("y", v)});
    RandomPolys gen(41);
    for (int trial = 0; trial < 20; ++trial) {
        auto num = gen.poly(v, 2, 6, 6);
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b)
                CHECK(res_grothendieck(LocalizedRational(fam, num, {a, b})) == res_monomial(num, {a, b}));
    }
}

TEST_CASE("residues are linear and independent of the raised certificate") {
    auto v = vars({"x", "y"});
    auto f = P("x^3 + (y + x^2)^2", v);
    auto fam = jacobian_family(f);
    ResidueEngine engine;
    engine.set_check_raised_certificates(true);
    RandomPolys gen(43);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> m{gen.uniform(1, 3), gen.uniform(1, 2)};
        auto p = gen.poly(v, 2), q = gen.poly(v, 2);
        Rational a(gen.uniform(-3, 3)), b(gen.uniform(-3, 3));
        auto lhs = engine.residue(LocalizedRational(fam, a * p + b * q, m));
        auto rhs = a * engine.residue(LocalizedRational(fam, p, m)) + b * engine.residue(LocalizedRational(fam, q, m));
        CHECK(lhs == rhs);
    }
    CHECK(engine.stats().raised_checks == 60);
}

TEST_CASE("certificates for powers agree with direct containment of the powers") {
    const std::vector<std::pair<std::vector<std::string>, std::string>> fs = {
        {{"x", "y"}, "x^3 + (y + x^2)^2"}, {{"x", "y"}, "y^2 + x*y + x^2*y^2"}, {{"x", "y"}, "x^2 + y^3"}};
    RandomPolys gen(808);
    for (const auto& [names, text] : fs) {
        auto v = vars(names);
        auto fam = jacobian_family(P(text, v));
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<int> m{gen.uniform(1, 3), gen.uniform(1, 3)};
            std::vector<MultiPoly> gens{fam->power(0, m[0]), fam->power(1, m[1])};
            PowerCertificate direct = power_containment(gens);
            REQUIRE(certificate_holds(direct, gens));
            MultiPoly det = determinant(direct.cofactors);
            MultiPoly num = gen.poly(v, 2, 4, 4);
            CHECK(residue_engine().residue(LocalizedRational(fam, num, m)) == res_monomial(num * det, direct.exponents));
        }
    }
}

TEST_CASE("separable two-variable residues factor into univariate ones") {
    auto v = vars({"x", "y"});
    auto fam = jacobian_family(P("x^3 + y^4", v));
    oracle::Dense fx{0, 0, 3}, fy{0, 0, 0, 4};
    for (int m1 = 1; m1 <= 2; ++m1)
        for (int m2 = 1; m2 <= 2; ++m2)
            for (int a = 0; a <= 6; ++a)
                for (int b = 0; b <= 8; ++b) {
                    Rational expected = oracle::laurent_residue(oracle::monomial(a), oracle::power(fx, m1)) *
                                        oracle::laurent_residue(oracle::monomial(b), oracle::power(fy, m2));
                    auto num = P("x^" + std::to_string(a) + "*y^" + std::to_string(b), v);
                    CHECK(residue_engine().residue_value(LocalizedRational(fam, num, {m1, m2})) == expected);
                }
}

TEST_CASE("parameters flow through numerators") {
    auto v = vars({"x"}, {"y"});
    auto fam = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P("3*x^2", v)});
    // coefficient of x^1 after dividing out 3
    CHECK(res_grothendieck(LocalizedRational(fam, P("x*(x + y)", v), {1})) == P("1/3*y", v));
    CHECK(res_grothendieck(LocalizedRational(fam, P("x + y", v), {1})) == P("1/3", v));
    CHECK(res_grothendieck(LocalizedRational(fam, P("x*y + x^2*y^3", v), {1})) == P("1/3*y", v));
    auto bad = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P("3*x^2 + y", v)});
    CHECK_THROWS_AS(res_grothendieck(LocalizedRational(bad, P("1", v), {1})), UsageError);
}

TEST_CASE("non m-primary families are rejected") {
    auto v = vars({"x", "y"});
    auto fam = std::make_shared<const DenominatorFamily>(std::vector<MultiPoly>{P("x*y", v), P("x^2", v)});
    CHECK_THROWS_AS(res_grothendieck(LocalizedRational(fam, P("1", v), {1, 1})), ValidationError);
}

TEST_CASE("order-zero residue pairing is nondegenerate on the Milnor basis") {
    auto v1 = vars({"x"});
    auto v2 = vars({"x", "y"});
    for (const auto& f : {P("x^4", v1), P("x^2 + y^3", v2), P("x^3 + y^3", v2), P("x^3 + (y + x^2)^2", v2)}) {
        auto alg = milnor_data(f);
        const std::size_t mu = alg.mu;
        std::vector<std::vector<Rational>> gram(mu, std::vector<Rational>(mu));
        for (std::size_t a = 0; a < mu; ++a)
            for (std::size_t b = 0; b < mu; ++b) gram[a][b] = res_pairing(f, alg.basis[a], alg.basis[b]);
        // exact rank by elimination
        std::size_t rank = 0;
        for (std::size_t c = 0; c < mu; ++c) {
            std::size_t piv = rank;
            while (piv < mu && gram[piv][c] == 0) ++piv;
            if (piv == mu) continue;
            std::swap(gram[piv], gram[rank]);
            for (std::size_t r = rank + 1; r < mu; ++r) {
                Rational k = gram[r][c] / gram[rank][c];
                for (std::size_t cc = c; cc < mu; ++cc) gram[r][cc] -= k * gram[rank][cc];
            }
            ++rank;
        }
        CHECK(rank == mu);
    }
}
