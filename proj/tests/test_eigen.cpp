#include "doctest.h"

#include <random>

#include "hmf/corpus.hpp"
#include "hmf/eigen.hpp"

using namespace hmf;

namespace {
const FieldConfig cfg(5, 3, 4);

// level (7): inert, keeps small primes out of the level
QuadElem lev7() { return QuadElem::integer(7, cfg); }
}  // namespace

TEST_CASE("reconstruction basics") {
    auto ctx = FFContext::get(cfg);
    std::mt19937_64 rng(1);

    // all a_v = 0: every squarefree-support coefficient collapses; the
    // square-divisible ones keep the -Nm(v) d_v term (r_4 = -4 d_2 here)
    std::map<QuadElem, EigenEntry> table;
    for (long long q : {2, 5, 11, 19})
        for (auto& v : prime_over(cfg, q).primes)
            table.emplace(v.gen, EigenEntry{ctx->zero(), ctx->one()});
    EigenSystem zero_es = make_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), table, std::nullopt);
    QExpansion z = reconstruct(zero_es, 20);
    CHECK(coeff(z, QuadElem::integer(1, cfg)) == ctx->one());
    for (auto& m : enumerate_tp_reps(cfg, 15))
        if (m != QuadElem::integer(1, cfg)) CHECK(coeff(z, m).is_zero());
    CHECK(coeff(z, QuadElem::integer(4, cfg)) == -ctx->from_int(4));

    // two steps of the recursion at v = (2): r_2 = a_2, r_4 = a_2^2 - 4 d_2
    EigenSystem es = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 30, rng, false);
    auto v2 = prime_over(cfg, 2).primes[0];
    FFElem a2 = es.table.at(v2.gen).a, d2 = *es.table.at(v2.gen).d;
    QExpansion f = reconstruct(es, 30);
    CHECK(coeff(f, QuadElem::integer(2, cfg)) == a2);
    CHECK(coeff(f, QuadElem::integer(4, cfg)) == a2 * a2 - ctx->from_int(4) * d2);

    // a single step at a split prime
    auto v11 = prime_over(cfg, 11).primes[0];
    CHECK(coeff(f, v11.gen) == es.table.at(v11.gen).a);

    // missing eigenvalue reported
    EigenSystem sparse = es;
    sparse.table.erase(v11.gen);
    CHECK_THROWS_AS(reconstruct(sparse, 30), contract_error);
}

TEST_CASE("reconstructed expansions are eigenforms") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 3; ++it) {
        EigenSystem es = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 200, rng, true);
        QExpansion f = reconstruct(es, 200);
        for (long long q : {2, 5, 11}) {
            for (auto& v : prime_over(cfg, q).primes) {
                if (v.norm * v.norm > 200) continue;
                CHECK(is_eigenform_for(f, es, v));
            }
        }
        // T_p as well, in the a_p regime
        auto vp = prime_over(cfg, 3).primes[0];
        QExpansion tp = hecke_Tv(f, vp);
        CHECK(qexp_agree_on_common_bound(tp, scale(*es.ap, f)));
    }
}

TEST_CASE("order independence of the recursion") {
    std::mt19937_64 rng(3);
    EigenSystem es = random_eigensystem(cfg, {{3, 2}, {0, 0}}, lev7(), 200, rng, true);
    auto rep = unique_strong_check(es, 200);
    CHECK(rep.ok);
    CHECK(rep.witness.empty());
}

TEST_CASE("stabilisation") {
    auto ctx = FFContext::get(cfg);
    std::mt19937_64 rng(4);
    EigenSystem es = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 128, rng, false);
    QExpansion f = reconstruct(es, 128);
    auto v2 = prime_over(cfg, 2).primes[0];
    FFElem a = es.table.at(v2.gen).a, d = *es.table.at(v2.gen).d;

    // both roots over F_81 by exhaustion
    std::vector<FFElem> roots;
    for (long long i = 0; i < 81; ++i) {
        FFElem x = ctx->from_coeffs({i % 3, (i / 3) % 3, (i / 9) % 3, (i / 27) % 3});
        if ((x * x - a * x + ctx->from_int(v2.norm) * d).is_zero()) roots.push_back(x);
    }
    REQUIRE(!roots.empty());

    std::vector<QExpansion> stabilised_forms;
    for (auto& alpha : roots) {
        auto [fs, es2] = stabilise(f, es, v2, alpha);
        stabilised_forms.push_back(fs);
        CHECK(es2.stabilised.count(v2.gen) == 1);
        CHECK(es2.table.at(v2.gen).a == a - alpha);
        // T_v f' = (a_v - alpha) f'
        QExpansion tf = hecke_Tv(fs, v2);
        CHECK(qexp_agree_on_common_bound(tf, scale(a - alpha, fs)));
        // the stabilised eigensystem reconstructs the stabilised form
        CHECK(qexp_agree_on_common_bound(reconstruct(es2, 128), fs));
    }

    // inverse stabilisation when the roots are distinct
    if (roots.size() == 2) {
        FFElem al = roots[0], be = roots[1];
        QExpansion lhs = add(scale(al, stabilised_forms[1]), scale(-be, stabilised_forms[0]));
        QExpansion rec = scale((al - be).inverse(), lhs);
        CHECK(qexp_agree_on_common_bound(rec, f));
    }

    // alpha must be a root; v = (p) rejected
    FFElem bad = a + ctx->one();
    if (!(bad * bad - a * bad + ctx->from_int(v2.norm) * d).is_zero())
        CHECK_THROWS_AS(stabilise(f, es, v2, bad), contract_error);
    CHECK_THROWS_AS(stabilise(f, es, prime_over(cfg, 3).primes[0], a), contract_error);
}

TEST_CASE("strong stabilisation predicate") {
    std::mt19937_64 rng(5);
    // no a_p: reconstruct never populates p-divisible support
    EigenSystem es = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 100, rng, false);
    QExpansion f = reconstruct(es, 100);
    CHECK(is_strongly_stabilised(f));

    // with a_p != 0 the support at (3) is generally nonzero
    EigenSystem es2 = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 100, rng, true);
    while (es2.ap->is_zero()) es2 = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 100, rng, true);
    QExpansion g = reconstruct(es2, 100);
    CHECK(!is_strongly_stabilised(g));

    // phi images with zero constant term are strongly stabilised only if zero
    QExpansion h = phi_v(make_qexp(cfg, {{2, 2}, {0, 0}}, lev7(), 9, {}, FFContext::get(cfg)->zero()));
    CHECK(is_strongly_stabilised(h));  // the zero expansion, vacuously
}

TEST_CASE("ordinarity report") {
    auto ctx = FFContext::get(cfg);
    std::mt19937_64 rng(6);
    EigenSystem es = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 30, rng, true);

    es.ap = ctx->zero();
    auto rep0 = ordinarity_report(es);
    CHECK(!rep0.concluded);

    es.ap = ctx->one();
    auto rep1 = ordinarity_report(es);
    CHECK(rep1.concluded);
    CHECK(rep1.e1 == 0);
    CHECK(rep1.e2 == 4);  // (1-2) + (1-2)*3 = -4 = 4 mod 8

    EigenSystem es31 = random_eigensystem(cfg, {{3, 1}, {0, 0}}, lev7(), 30, rng, true);
    es31.ap = ctx->one();
    auto rep2 = ordinarity_report(es31);
    CHECK(rep2.e2 == 6);  // (1-3) + 0*3 = -2 = 6 mod 8

    EigenSystem no_ap = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 30, rng, false);
    CHECK_THROWS_AS(ordinarity_report(no_ap), contract_error);
}

TEST_CASE("twist transports eigensystems") {
    std::mt19937_64 rng(7);
    QuadElem g5 = prime_over(cfg, 5).primes[0].gen;
    EigenSystem es = random_eigensystem(cfg, {{2, 2}, {0, 0}}, lev7(), 150, rng, false);
    QExpansion f = reconstruct(es, 150);

    for (auto& xi : characters_of_weight(g5, {0, 2}, cfg)) {
        QExpansion fx = twist(f, xi);
        EigenSystem esx = twist_eigensystem(es, xi);
        CHECK(nebentypus_consistent(esx));
        QExpansion fr = reconstruct(esx, 150);
        CHECK(qexp_equal(fx, fr));
        // the twisted form is an eigenform with the transported eigenvalues
        for (long long q : {2, 11})
            for (auto& v : prime_over(cfg, q).primes)
                if (v.norm * v.norm <= 150) CHECK(is_eigenform_for(fx, esx, v));
    }
}
