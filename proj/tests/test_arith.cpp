#include "doctest.h"

#include <algorithm>
#include <set>

#include "hmf/ff.hpp"
#include "hmf/quad.hpp"

using namespace hmf;

namespace {

// Pell oracle: smallest totally positive unit > 1 by brute-force search over
// |a|, |b| <= 100 (half-integer coordinates allowed).
QuadElem pell_oracle(const FieldConfig& cfg) {
    long long den = cfg.half_coords() ? 2 : 1;
    QuadElem best(Rat(0), Rat(0), cfg.d);
    for (long long a = -100 * den; a <= 100 * den; ++a)
        for (long long b = -100 * den; b <= 100 * den; ++b) {
            if (den == 2 && ((a ^ b) & 1)) continue;
            QuadElem u(Rat(a, den), Rat(b, den), cfg.d);
            if (u.norm() != Rat(1)) continue;
            if (!u.totally_positive()) continue;
            // tau0(u) > 1 <=> u - 1 positive at tau0
            QuadElem um1 = u - QuadElem::integer(1, cfg);
            if (um1.is_zero() || um1.embedding_sign(0) <= 0) continue;
            if (best.is_zero() || (u - best).embedding_sign(0) < 0) best = u;
        }
    REQUIRE(!best.is_zero());
    return best;
}

// brute-force scan of totally positive integral elements with Nm <= B
std::vector<QuadElem> tp_scan(const FieldConfig& cfg, long long B, long long box) {
    long long den = cfg.half_coords() ? 2 : 1;
    std::vector<QuadElem> out;
    for (long long a = 1; a <= box * den; ++a)
        for (long long b = -box * den; b <= box * den; ++b) {
            if (den == 2 && ((a ^ b) & 1)) continue;
            QuadElem m(Rat(a, den), Rat(b, den), cfg.d);
            if (!m.totally_positive()) continue;
            Rat n = m.norm();
            if (n.sign() <= 0 || Rat(B) < n) continue;
            out.push_back(m);
        }
    return out;
}

}  // namespace

TEST_CASE("fundamental totally positive unit") {
    FieldConfig c5(5, 3, 2);
    QuadElem eps5 = fundamental_tp_unit(c5);
    CHECK(eps5 == QuadElem(Rat(3, 2), Rat(1, 2), 5));  // (3+sqrt(5))/2
    CHECK(eps5 == pell_oracle(c5));

    FieldConfig c2(2, 3, 2);
    QuadElem eps2 = fundamental_tp_unit(c2);
    CHECK(eps2 == QuadElem(Rat(3), Rat(2), 2));  // 3+2*sqrt(2)
    CHECK(eps2 == pell_oracle(c2));

    for (auto cfg : {FieldConfig(5, 3, 2), FieldConfig(2, 3, 2), FieldConfig(13, 5, 2)}) {
        QuadElem eps = fundamental_tp_unit(cfg);
        CHECK(eps.norm() == Rat(1));
        CHECK(eps.totally_positive());
    }
}

TEST_CASE("field config validation") {
    CHECK_THROWS_AS(FieldConfig(12, 5, 2), contract_error);  // not squarefree
    CHECK_THROWS_AS(FieldConfig(5, 11, 2), contract_error);  // 11 splits (4^2=5 mod 11)
    CHECK_THROWS_AS(FieldConfig(5, 5, 2), contract_error);   // ramified
    CHECK_THROWS_AS(FieldConfig(5, 3, 3), contract_error);   // odd k
    CHECK_THROWS_AS(FieldConfig(3, 5, 2), contract_error);   // h+ = 2 for Q(sqrt(3))
    CHECK_NOTHROW(FieldConfig(5, 3, 4));
    CHECK_NOTHROW(FieldConfig(2, 5, 2));
    CHECK_NOTHROW(FieldConfig(5, 2, 2));  // 2 inert in Q(sqrt(5))
}

TEST_CASE("orbit representatives") {
    FieldConfig cfg(5, 3, 2);
    QuadElem one = QuadElem::integer(1, cfg);
    QuadElem eps = fundamental_tp_unit(cfg);

    auto [r1, e1] = orbit_rep(one, cfg);
    CHECK(r1 == one);
    CHECK(e1 == 0);

    auto [r2, e2] = orbit_rep(eps * eps, cfg);
    CHECK(r2 == one);
    CHECK(e2 == 2);

    auto [r3, e3] = orbit_rep(QuadElem::integer(2, cfg), cfg);
    CHECK(r3 == QuadElem::integer(2, cfg));
    CHECK(e3 == 0);

    CHECK_THROWS_AS(orbit_rep(QuadElem(Rat(0), Rat(0), 5), cfg), contract_error);
    CHECK_THROWS_AS(orbit_rep(QuadElem(Rat(-1), Rat(0), 5), cfg), contract_error);

    // representative is orbit-invariant
    for (long long e = -3; e <= 3; ++e) {
        QuadElem m = QuadElem(Rat(7, 2), Rat(1, 2), 5) * eps.pow(e);
        CHECK(orbit_rep(m, cfg).first == orbit_rep(QuadElem(Rat(7, 2), Rat(1, 2), 5), cfg).first);
    }
}

TEST_CASE("enumerate_tp_reps against scan oracle") {
    for (auto cfg : {FieldConfig(5, 3, 2), FieldConfig(2, 3, 2)}) {
        for (long long B : {0LL, 1LL, 4LL, 30LL}) {
            auto reps = enumerate_tp_reps(cfg, B);
            // all canonical, within bound, sorted, distinct
            std::set<std::string> seen;
            for (auto& m : reps) {
                CHECK(m.is_integral());
                CHECK(m.totally_positive());
                CHECK_FALSE(Rat(B) < m.norm());
                CHECK(is_orbit_rep(m, cfg));
                CHECK(seen.insert(m.str()).second);
            }
            // exhaustive: reducing every scanned element lands in the set
            for (auto& m : tp_scan(cfg, B, 40)) {
                auto r = orbit_rep(m, cfg).first;
                CHECK(seen.count(r.str()) == 1);
            }
        }
    }

    FieldConfig cfg(5, 3, 2);
    auto r1 = enumerate_tp_reps(cfg, 1);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == QuadElem::integer(1, cfg));
    auto r4 = enumerate_tp_reps(cfg, 4);
    REQUIRE(r4.size() == 2);
    CHECK(r4[0] == QuadElem::integer(1, cfg));
    CHECK(r4[1] == QuadElem::integer(2, cfg));
    CHECK(enumerate_tp_reps(cfg, 0).empty());
}

TEST_CASE("prime_over") {
    FieldConfig cfg(5, 3, 2);

    auto p2 = prime_over(cfg, 2);
    CHECK(p2.type == Splitting::inert);
    REQUIRE(p2.primes.size() == 1);
    CHECK(p2.primes[0].gen == QuadElem::integer(2, cfg));
    CHECK(p2.primes[0].norm == 4);

    auto p11 = prime_over(cfg, 11);
    CHECK(p11.type == Splitting::split);
    REQUIRE(p11.primes.size() == 2);
    for (auto& v : p11.primes) {
        CHECK(v.norm == 11);
        CHECK(v.gen.norm() == Rat(11));
        CHECK(v.gen.totally_positive());
        CHECK(is_orbit_rep(v.gen, cfg));
    }
    // (7+sqrt(5))/2 generates one of the two primes over 11
    QuadElem g(Rat(7, 2), Rat(1, 2), 5);
    bool found = false;
    for (auto& v : p11.primes)
        if (v.gen == orbit_rep(g, cfg).first) found = true;
    CHECK(found);

    auto p5 = prime_over(cfg, 5);
    CHECK(p5.type == Splitting::ramified);
    REQUIRE(p5.primes.size() == 1);
    CHECK(p5.primes[0].norm == 5);
    CHECK(p5.primes[0].gen == orbit_rep(QuadElem(Rat(5, 2), Rat(1, 2), 5), cfg).first);
}

TEST_CASE("valuations and prime divisors") {
    FieldConfig cfg(5, 3, 2);
    auto v2 = prime_over(cfg, 2).primes[0];
    CHECK(valuation(QuadElem::integer(8, cfg), v2) == 3);
    CHECK(valuation(QuadElem::integer(3, cfg), v2) == 0);

    QuadElem m = QuadElem::integer(4, cfg) * QuadElem(Rat(7, 2), Rat(1, 2), 5);
    auto divs = prime_divisors(m, cfg);
    REQUIRE(divs.size() == 2);
    CHECK(divs[0].norm == 4);
    CHECK(divs[1].norm == 11);
}

TEST_CASE("residue embeddings") {
    FieldConfig cfg(5, 3, 2);
    auto ctx = FFContext::get(cfg);

    // F_9 = F_3[g]/(g^2+1); tau_0(sqrt(5)) = g (least root of x^2 - 2)
    CHECK(ctx->modulus() == std::vector<long long>{1, 0});

    QuadElem half_golden(Rat(1, 2), Rat(1, 2), 5);  // (1+sqrt(5))/2
    FFElem e0 = embed(half_golden, 0, ctx);
    // 2(1+s): coefficients (2, 2)
    CHECK(e0 == ctx->from_coeffs({2, 2}));
    CHECK(embed(half_golden, 1, ctx) == e0.frobenius());

    // tau_1 = Frob compose tau_0 on all of O_F
    for (long long u = 0; u < 5; ++u)
        for (long long v = 0; v < 5; ++v) {
            QuadElem m(Rat(2 * u + v, 2), Rat(v, 2), 5);
            REQUIRE(m.is_integral());
            CHECK(embed(m, 1, ctx) == embed(m, 0, ctx).frobenius());
        }

    // Nm(m) mod p = tau_0(m) tau_1(m)
    for (auto& m : enumerate_tp_reps(cfg, 50)) {
        FFElem lhs = ctx->from_int(m.norm().num);
        CHECK(lhs == embed(m, 0, ctx) * embed(m, 1, ctx));
    }
}

TEST_CASE("power_l") {
    FieldConfig cfg(5, 3, 2);
    auto ctx = FFContext::get(cfg);
    QuadElem one = QuadElem::integer(1, cfg);

    CHECK(power_l(one, {7, -3}, ctx) == ctx->one());
    QuadElem m(Rat(7, 2), Rat(1, 2), 5);
    CHECK(power_l(m, {0, 0}, ctx) == ctx->one());

    // multiplicativity
    QuadElem m2 = QuadElem::integer(2, cfg);
    std::pair<long long, long long> l{2, -1};
    CHECK(power_l(m * m2, l, ctx) == power_l(m, l, ctx) * power_l(m2, l, ctx));

    // negative exponent at residue zero rejected
    CHECK_THROWS_AS(power_l(QuadElem::integer(3, cfg), {-1, 0}, ctx), contract_error);
}

TEST_CASE("finite field basics") {
    FieldConfig cfg(5, 3, 4);
    auto ctx = FFContext::get(cfg);
    CHECK(ctx->order() == 81);

    FFElem g = ctx->generator();
    CHECK(g.multiplicative_order() == 80);
    FFElem z = ctx->root_of_unity(16);
    CHECK(z.multiplicative_order() == 16);
    CHECK_THROWS_AS(ctx->root_of_unity(7), contract_error);

    // Frobenius is an automorphism of order dividing k
    FFElem x = g.pow(13) + ctx->from_int(2);
    FFElem y = g.pow(31);
    CHECK((x * y).frobenius() == x.frobenius() * y.frobenius());
    CHECK((x + y).frobenius() == x.frobenius() + y.frobenius());
    CHECK(x.frobenius().frobenius().frobenius().frobenius() == x);

    // hex round trip
    CHECK(FFElem::from_hex(x.hex(), ctx) == x);
    CHECK(x.hex().size() == 8);

    // x^(p^2) = x detects the F_9 subfield
    FFElem s9 = g.pow(10);  // order 8 element lies in F_9
    CHECK(s9.in_fp2());
    CHECK(!g.in_fp2());
}

TEST_CASE("embedding at p = 2") {
    FieldConfig cfg(5, 2, 2);  // 2 inert since 5 = 5 mod 8
    auto ctx = FFContext::get(cfg);
    CHECK(ctx->order() == 4);
    QuadElem w(Rat(1, 2), Rat(1, 2), 5);
    FFElem e0 = embed(w, 0, ctx);
    FFElem e1 = embed(w, 1, ctx);
    CHECK(e0 != e1);
    CHECK(e1 == e0.frobenius());
    // omega satisfies x^2 = x + 1 mod 2
    CHECK(e0 * e0 == e0 + ctx->one());
}
