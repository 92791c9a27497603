#include "doctest.h"

#include <random>

#include "hmf/corpus.hpp"
#include "hmf/twist.hpp"

using namespace hmf;

namespace {
const FieldConfig cfg53(5, 3, 2);
const FieldConfig cfg534(5, 3, 4);

QuadElem sqrt5_gen(const FieldConfig& cfg) {  // (5+sqrt(5))/2, the prime over 5
    return prime_over(cfg, 5).primes[0].gen;
}
}  // namespace

TEST_CASE("unit group structure against the local order formula") {
    // |(O_F/v^e)^x| = Nm(v)^(e-1) (Nm(v)-1), multiplicative over primes
    for (long long n : {1, 2, 4, 7, 8, 11, 14, 22, 49}) {
        QuadElem gen = QuadElem::integer(n, cfg53);
        if ((gen / QuadElem::integer(3, cfg53)).is_integral()) continue;
        UnitGroupModM G(gen, cfg53);
        long long expect = 1;
        if (n > 1)
            for (auto& v : prime_divisors(gen, cfg53)) {
                int e = valuation(gen, v);
                long long loc = v.norm - 1;
                for (int i = 1; i < e; ++i) loc *= v.norm;
                expect *= loc;
            }
        CHECK(G.order() == expect);
        // generator orders multiply to the group order (direct sum)
        long long prod = 1;
        for (auto& g : G.generators()) prod *= g.order;
        CHECK(prod == G.order());
    }
    // a non-rational modulus: the split prime over 11
    auto v11 = prime_over(cfg53, 11).primes[0];
    UnitGroupModM G11(v11.gen, cfg53);
    CHECK(G11.order() == 10);

    // ramified: (5+sqrt(5))/2 has residue field F_5
    UnitGroupModM G5(sqrt5_gen(cfg53), cfg53);
    CHECK(G5.order() == 4);
    REQUIRE(G5.generators().size() == 1);
    CHECK(G5.generators()[0].order == 4);

    CHECK_THROWS_AS(UnitGroupModM(QuadElem::integer(3, cfg53), cfg53), contract_error);
}

TEST_CASE("characters of a given weight") {
    // trivial modulus: only the trivial character, needs power_l(eps, l') = 1
    auto one = QuadElem::integer(1, cfg53);
    auto trivial = characters_of_weight(one, {0, 0}, cfg53);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].is_trivial());
    CHECK(characters_of_weight(one, {1, 0}, cfg53).empty());

    // modulus over 5: cyclic of order 4; eps = (3+sqrt(5))/2 reduces to 4 mod 5,
    // so the quadratic character has weight (0,0)
    auto ctx = FFContext::get(cfg53);
    auto w00 = characters_of_weight(sqrt5_gen(cfg53), {0, 0}, cfg53);
    REQUIRE(w00.size() == 2);
    bool saw_quadratic = false;
    for (auto& chi : w00) {
        if (chi.is_trivial()) continue;
        saw_quadratic = true;
        CHECK(chi.values[0].multiplicative_order() == 2);
        CHECK(chi.value(fundamental_tp_unit(cfg53)) == ctx->one());
    }
    CHECK(saw_quadratic);

    // weight (0,2): the two order-4 characters
    auto w02 = characters_of_weight(sqrt5_gen(cfg53), {0, 2}, cfg53);
    REQUIRE(w02.size() == 2);
    for (auto& chi : w02) CHECK(chi.values[0].multiplicative_order() == 4);

    // (O_F/2)^x has order 3 = p: only the trivial character survives
    auto m2 = characters_of_weight(QuadElem::integer(2, cfg53), {0, 0}, cfg53);
    REQUIRE(m2.size() == 1);
    CHECK(m2[0].is_trivial());
}

TEST_CASE("too-small coefficient field is reported with the fix") {
    // characters mod (7) need 16th roots of unity: k = 4 suffices, k = 2 not
    QuadElem seven = QuadElem::integer(7, cfg53);
    CHECK_THROWS_WITH_AS(characters_of_weight(seven, {0, 0}, cfg53),
                         doctest::Contains("need k = 12"), contract_error);
    CHECK(minimal_sufficient_k(seven, cfg53) == 12);  // also covers zeta_7
    CHECK(minimal_sufficient_k(sqrt5_gen(cfg53), cfg53) == 4);
}

TEST_CASE("gauss sums over the prime above 5") {
    auto ctx = FFContext::get(cfg534);
    QuadElem g5 = sqrt5_gen(cfg534);
    long long N = additive_level(g5, cfg534);
    CHECK(N == 5);
    FFElem zeta = ctx->root_of_unity(N);

    auto chars = characters_of_weight(g5, {0, 2}, cfg534);
    REQUIRE(chars.size() == 2);
    QuadElem m = QuadElem::integer(1, cfg534) / g5;  // generates the inverse modulus

    for (auto& xi : chars) {
        REQUIRE(xi.full_conductor());
        FFElem lhs = gauss_sum(xi, m, zeta) * gauss_sum(xi.inverse(), -m, zeta);
        CHECK(lhs == ctx->from_int(5));  // = 2 in characteristic 3

        // G(xi, am) = xi(a) G(xi, m)
        for (long long a = 1; a <= 6; ++a) {
            QuadElem am = QuadElem::integer(a, cfg534) * m;
            FFElem expect = xi.value_or_zero(QuadElem::integer(a, cfg534)) * gauss_sum(xi, m, zeta);
            CHECK(gauss_sum(xi, am, zeta) == expect);
        }
        // non-generators (here: integral m') give 0
        CHECK(gauss_sum(xi, QuadElem::integer(1, cfg534), zeta).is_zero());
    }

    // conductor-1 sums are rejected
    auto triv = characters_of_weight(QuadElem::integer(1, cfg534), {0, 0}, cfg534);
    CHECK_THROWS_AS(gauss_sum(triv[0], m, zeta), contract_error);
    // zeta of mismatched order
    CHECK_THROWS_AS(gauss_sum(chars[0], m, ctx->root_of_unity(16)), contract_error);
}

TEST_CASE("twisting q-expansions") {
    auto ctx = FFContext::get(cfg534);
    std::mt19937_64 rng(31);
    QuadElem one = QuadElem::integer(1, cfg534);
    QExpansion f = random_qexp(cfg534, {{2, 2}, {0, 0}}, one, 60, rng);

    // identity twist
    auto triv = characters_of_weight(one, {0, 0}, cfg534);
    CHECK(qexp_equal(twist(f, triv[0]), f));

    QuadElem g5 = sqrt5_gen(cfg534);
    auto chars = characters_of_weight(g5, {0, 2}, cfg534);
    auto& xi = chars[0];

    QExpansion fx = twist(f, xi);
    CHECK(fx.weight.l == LVec{0, 2});
    CHECK(fx.level == orbit_rep(g5 * g5, cfg534).first);
    CHECK(fx.r0.is_zero());

    // coefficient rule
    for (auto& m : enumerate_tp_reps(cfg534, 60)) {
        if (UnitGroupModM(g5, cfg534).is_unit(m))
            CHECK(coeff(fx, m) == xi.value(m).inverse() * coeff(f, m));
        else
            CHECK(coeff(fx, m).is_zero());
    }

    // untwisting restores coefficients prime to the conductor, zeroes the rest
    QExpansion back = twist(fx, xi.inverse());
    CHECK(back.weight.l == LVec{0, 0});
    for (auto& m : enumerate_tp_reps(cfg534, 60)) {
        if (UnitGroupModM(g5, cfg534).is_unit(m)) CHECK(coeff(back, m) == coeff(f, m));
        else CHECK(coeff(back, m).is_zero());
    }

    // unit-relation invariant carries to the twisted weight
    QuadElem eps = fundamental_tp_unit(cfg534);
    FFElem ufac = power_l(eps, {-fx.weight.l.first, -fx.weight.l.second}, ctx);
    for (auto& m : enumerate_tp_reps(cfg534, 10))
        CHECK(coeff(fx, eps * m) == ufac * coeff(fx, m));
}
