#include "doctest.h"

#include <random>

#include "hmf/weightlat.hpp"

using namespace hmf;

TEST_CASE("hasse weights") {
    CHECK(hasse_weight(0, 3) == KVec{-1, 3});
    CHECK(hasse_weight(1, 2) == KVec{2, -1});
    for (long long p : {2, 3, 5})
        CHECK(hasse_weight(0, p) + hasse_weight(1, p) == KVec{p - 1, p - 1});
}

TEST_CASE("hasse coordinates") {
    CHECK(hasse_coords({-1, 3}, 3) == HasseCoords{1, 0});
    CHECK(hasse_coords({0, 0}, 3) == HasseCoords{0, 0});
    CHECK(!hasse_coords({2, -1}, 3).has_value());
    CHECK(hasse_coords({2, -1}, 2) == HasseCoords{0, 1});

    // exact reconstruction
    std::mt19937_64 rng(7);
    for (int it = 0; it < 500; ++it) {
        long long p = std::vector<long long>{2, 3, 5}[rng() % 3];
        KVec delta{(long long)(rng() % 41) - 20, (long long)(rng() % 41) - 20};
        auto c = hasse_coords(delta, p);
        if (!c) continue;
        KVec back{-c->n0 + p * c->n1, p * c->n0 - c->n1};
        CHECK(back == delta);
    }
}

TEST_CASE("leq_hasse is a partial order") {
    CHECK(leq_hasse({2, 2}, {4, 1}, 2));
    CHECK(leq_hasse({3, 1}, {2, 4}, 3));
    std::mt19937_64 rng(11);
    auto rnd = [&]() { return KVec{(long long)(rng() % 31) - 15, (long long)(rng() % 31) - 15}; };
    for (int it = 0; it < 2000; ++it) {
        long long p = std::vector<long long>{2, 3, 5}[rng() % 3];
        KVec a = rnd(), b = rnd(), c = rnd();
        CHECK(leq_hasse(a, a, p));                                      // reflexive
        if (leq_hasse(a, b, p) && leq_hasse(b, a, p)) CHECK(a == b);    // antisymmetric
        if (leq_hasse(a, b, p) && leq_hasse(b, c, p)) CHECK(leq_hasse(a, c, p));
    }
}

TEST_CASE("minimal cone") {
    CHECK(in_min_cone({3, 1}, 3, true));
    CHECK(!in_min_cone({1, 4}, 3, false));
    CHECK(in_min_cone({0, 0}, 3, false));
    CHECK(!in_min_cone({0, 0}, 3, true));
}

TEST_CASE("nearly parallel decomposition") {
    auto r = nearly_parallel_decompose({2, 4}, 3, 0);
    CHECK(r.m == 4);
    CHECK(r.kappa == KVec{2, 0});
    CHECK(r.kprime == KVec{4, 6});
    CHECK(r.coords == HasseCoords{1, 1});

    // parallel k stays parallel with zero digits
    auto r2 = nearly_parallel_decompose({6, 6}, 3, 0);
    CHECK(r2.kappa == KVec{0, 0});
    CHECK(r2.kprime.first == r2.kprime.second);
    CHECK(r2.kprime == KVec{r2.m + 2, r2.m + 2});

    auto r3 = nearly_parallel_decompose({2, 1}, 2, 0);
    CHECK(leq_hasse({2, 1}, r3.kprime, 2));

    std::mt19937_64 rng(5);
    for (int it = 0; it < 3000; ++it) {
        long long p = std::vector<long long>{2, 3, 5}[rng() % 3];
        KVec k{(long long)(rng() % 41) - 20, (long long)(rng() % 41) - 20};
        long long M = (long long)(rng() % 10);
        auto d = nearly_parallel_decompose(k, p, M);
        CHECK(d.m >= M);
        CHECK(leq_hasse(k, d.kprime, p));
        CHECK(in_min_cone(d.kprime, p, false));
        CHECK(d.kappa.first >= 0);
        CHECK(d.kappa.first <= p - 1);
        CHECK(d.kappa.second >= 0);
        CHECK(d.kappa.second <= p - 1);
        CHECK((d.kappa.first < p - 1 || d.kappa.second < p - 1));
        // base-embedding independence: swapping the roles of the two
        // embeddings swaps the digit vector
        auto swapped = nearly_parallel_decompose({k.second, k.first}, p, M);
        CHECK(swapped.kappa == KVec{d.kappa.second, d.kappa.first});
    }
}

TEST_CASE("theta weights") {
    CHECK(theta_weight({{2, 1}, {1, 0}}, 0, 2) == Weight{{3, 3}, {0, 0}});
    CHECK(theta_min_weight({{2, 1}, {1, 0}}, 0, 2) == Weight{{4, 1}, {0, 0}});
    CHECK(theta_weight({{2, 1}, {1, 0}}, 0, 3) == Weight{{3, 4}, {0, 0}});

    // k + 2l bookkeeping: total shifts by p - 1
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        long long p = std::vector<long long>{2, 3, 5}[rng() % 3];
        Weight w{{(long long)(rng() % 9) - 4, (long long)(rng() % 9) - 4},
                 {(long long)(rng() % 9) - 4, (long long)(rng() % 9) - 4}};
        int i = rng() % 2;
        Weight t = theta_weight(w, i, p);
        long long before = w.k.first + 2 * w.l.first + w.k.second + 2 * w.l.second;
        long long after = t.k.first + 2 * t.l.first + t.k.second + 2 * t.l.second;
        CHECK(after == before + p - 1);
    }
}

TEST_CASE("phi weight") {
    CHECK(phi_weight({1, 1}, 3) == KVec{3, 3});
    CHECK(phi_weight({2, 0}, 3) == KVec{0, 6});
    for (long long p : {2, 3, 5}) {
        KVec k{4, -7};
        CHECK(phi_weight(phi_weight(k, p), p) == KVec{p * p * k.first, p * p * k.second});
    }
}

TEST_CASE("l class equality") {
    CHECK(l_class_equal({0, -3}, {-1, 0}, 3));   // differs by -(-1,3)
    CHECK(!l_class_equal({0, -3}, {0, 0}, 3));
    CHECK(l_class_equal({8, 0}, {0, 0}, 3));     // 8 = p^2 - 1
}
