#include "doctest.h"

#include "hmf/shifter.hpp"

using namespace hmf;

TEST_CASE("propagate") {
    // single Hasse move
    WeightSet ws{3, {{Weight{{3, 1}, {0, -1}}, WeightTag::initial}}};
    WeightSet out = propagate(ws, {Move::Ha0}, {}, 1);
    CHECK(out.contains(Weight{{2, 4}, {0, -1}}));
    CHECK(out.weights.size() == 2);

    // depth 0 leaves the set unchanged
    CHECK(propagate(ws, {Move::Ha0, Move::Theta0}, {}, 0).weights == ws.weights);

    // two Hasse moves reach ((p+1, p), (0,0)) from ((2,1),(0,0))
    WeightSet ws2{3, {{Weight{{2, 1}, {0, 0}}, WeightTag::initial}}};
    WeightSet out2 = propagate(ws2, {Move::Ha0, Move::Ha1}, {}, 2);
    CHECK(out2.contains(Weight{{4, 3}, {0, 0}}));

    // theta move applies the sharp (divided) shift when p | k_tau
    WeightSet ws3{3, {{Weight{{3, 1}, {0, 0}}, WeightTag::initial}}};
    WeightSet out3 = propagate(ws3, {Move::Theta0}, {}, 1);
    CHECK(out3.contains(Weight{{5, 1}, {-1, 0}}));  // (4,4) - kHa(tau0)
    CHECK(out3.weights.at(Weight{{5, 1}, {-1, 0}}) == WeightTag::via_Theta_divided);

    // twist move shifts l only
    WeightSet out4 = propagate(ws, {}, {{0, 2}}, 1);
    CHECK(out4.contains(Weight{{3, 1}, {0, 1}}));

    // closure is independent of the order the moves are listed in
    WeightSet a = propagate(ws2, {Move::Ha0, Move::Ha1, Move::Theta0, Move::Theta1}, {{1, 0}}, 3);
    WeightSet b = propagate(ws2, {Move::Theta1, Move::Ha1, Move::Theta0, Move::Ha0}, {{1, 0}}, 3);
    CHECK(a.weights == b.weights);

    // where no division triggers, theta and Hasse moves commute as labels
    Weight w{{2, 2}, {0, 0}};
    Weight th = theta_weight(w, 0, 3);
    th.k = th.k + hasse_weight(1, 3);
    Weight ht = w;
    ht.k = ht.k + hasse_weight(1, 3);
    ht = theta_weight(ht, 0, 3);
    CHECK(th == ht);

    // every Hasse-propagated weight from a strictly positive minimal-cone
    // seed stays above the seed
    WeightSet seed{3, {{Weight{{3, 2}, {0, 0}}, WeightTag::initial}}};
    for (auto& [w2, t] : propagate(seed, {Move::Ha0, Move::Ha1}, {}, 3).weights)
        CHECK(leq_hasse(KVec{3, 2}, w2.k, 3));
}

TEST_CASE("kmin bound") {
    WeightSet ws{3,
                 {{Weight{{3, 1}, {0, -1}}, WeightTag::initial},
                  {Weight{{2, 4}, {0, -1}}, WeightTag::via_Ha},
                  {Weight{{5, 5}, {7, 7}}, WeightTag::initial}}};
    auto r = kmin_bound(ws, {0, -1});
    CHECK(r.has_least);
    CHECK(r.least == KVec{3, 1});

    auto single = kmin_bound(ws, {7, 7});
    CHECK(single.has_least);
    CHECK(single.least == KVec{5, 5});

    // incomparable pair: difference (2,-2) is outside the cone at p = 3
    WeightSet anti{3,
                   {{Weight{{3, 1}, {0, 0}}, WeightTag::initial},
                    {Weight{{1, 3}, {0, 0}}, WeightTag::initial}}};
    auto r2 = kmin_bound(anti, {0, 0});
    CHECK(!r2.has_least);
    CHECK(r2.antichain == std::vector<KVec>{{1, 3}, {3, 1}});

    CHECK(!kmin_bound(ws, {9, 9}).has_least);
    CHECK(kmin_bound(ws, {9, 9}).antichain.empty());
}

TEST_CASE("partial weight one transfer lint") {
    auto sigma = InertialType::make_reducible(0, 6, ExtClass::in_V, 3);

    // declared pw1 weight: closure reaches both families, no flags
    WeightSet declared{3, {{Weight{{3, 1}, {0, 0}}, WeightTag::initial}}};
    auto rep = pwt1_transfer(declared, sigma, 3, 3);
    CHECK(rep.declared_pw1);
    CHECK(rep.family_a == Weight{{2, 4}, {0, 0}});
    CHECK(rep.family_b == Weight{{4, 4}, {-1, 0}});
    CHECK(rep.closure_has_a);
    CHECK(rep.closure_has_b);
    CHECK(rep.oracle.lhs);
    CHECK(rep.flags.empty());

    // oracle-true sigma with a declared set that closes without family B
    WeightSet partial{3, {{Weight{{9, 9}, {4, 4}}, WeightTag::initial}}};
    auto rep2 = pwt1_transfer(partial, sigma, 3, 3);
    CHECK(!rep2.flags.empty());

    // empty declared set: vacuous
    auto rep3 = pwt1_transfer(WeightSet{3, {}}, sigma, 3, 3);
    CHECK(rep3.flags.empty());

    // k0 = 2 family bookkeeping
    auto rep4 = pwt1_transfer(WeightSet{3, {}}, InertialType::make_reducible(0, 7, ExtClass::in_V, 3), 2, 3);
    CHECK(rep4.family_a == Weight{{4, 3}, {0, 0}});
    CHECK(rep4.closure_has_a);
    CHECK(rep4.closure_has_b);
}
