#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "hmf/quad.hpp"

namespace hmf {

using KVec = std::pair<long long, long long>;  // (k_0, k_1)
using LVec = std::pair<long long, long long>;

inline KVec operator+(const KVec& a, const KVec& b) {
    return {a.first + b.first, a.second + b.second};
}
inline KVec operator-(const KVec& a, const KVec& b) {
    return {a.first - b.first, a.second - b.second};
}

// Weight (k, l) of a form; all of Z^2 x Z^2 is legal.
struct Weight {
    KVec k{0, 0};
    LVec l{0, 0};

    bool paritious() const { return k.first + 2 * l.first == k.second + 2 * l.second; }

    friend bool operator==(const Weight& a, const Weight& b) { return a.k == b.k && a.l == b.l; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) {
        return std::tie(a.k, a.l) < std::tie(b.k, b.l);
    }
    std::string str() const;
};

// Coordinates in the basis of the two partial Hasse weights; both >= 0.
struct HasseCoords {
    long long n0 = 0, n1 = 0;
    friend bool operator==(const HasseCoords& a, const HasseCoords& b) {
        return a.n0 == b.n0 && a.n1 == b.n1;
    }
};

// k-weight of the partial Hasse invariant at embedding i: (-1, p) or (p, -1).
KVec hasse_weight(int i, long long p);

// Decompose delta over the Hasse weights with non-negative integer
// coefficients; nullopt when delta is outside the cone.
std::optional<HasseCoords> hasse_coords(const KVec& delta, long long p);

// k <=_Ha k'  iff  k' - k lies in the Hasse cone
bool leq_hasse(const KVec& k, const KVec& kp, long long p);

// p*k_0 >= k_1 and p*k_1 >= k_0; strict_positive additionally wants k_i >= 1
bool in_min_cone(const KVec& k, long long p, bool strict_positive);

struct NearlyParallel {
    long long m = 0;
    KVec kappa{0, 0};   // digits, 0 <= kappa_i <= p-1, some digit < p-1
    KVec kprime{0, 0};  // m + 2 - kappa
    HasseCoords coords; // of kprime - k
};

// Least m >= max(M, k_i + p - 3, p - 2) with the digit vector determined by
// the base-p expansion of (m+2-k_0) + (m+2-k_1) p mod p^2 - 1.
NearlyParallel nearly_parallel_decompose(const KVec& k, long long p, long long M);

// weight shift of the partial theta operator at embedding i
Weight theta_weight(const Weight& w, int i, long long p);
// same, dividing by the Hasse weight at i when p | k_i
Weight theta_min_weight(const Weight& w, int i, long long p);

// k-weight map of partial Frobenius: (k_0, k_1) -> (p k_1, p k_0)
KVec phi_weight(const KVec& k, long long p);

// l-vectors act through products of fundamental characters; two are
// equivalent iff l_0 + p l_1 agree mod p^2 - 1
bool l_class_equal(const LVec& a, const LVec& b, long long p);

}  // namespace hmf
