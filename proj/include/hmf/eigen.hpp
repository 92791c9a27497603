#pragma once

#include <set>

#include "hmf/qexp.hpp"
#include "hmf/twist.hpp"

namespace hmf {

struct EigenEntry {
    FFElem a;
    std::optional<FFElem> d;  // absent at level primes and stabilised primes
};

// Hecke eigensystem: eigenvalue table keyed by canonical totally positive
// prime generators, optional eigenvalue at p, and the set of primes where
// the system has been stabilised (a_v replaced by a root, d_v retired).
struct EigenSystem {
    FieldConfig cfg;
    Weight weight;
    QuadElem level;
    std::map<QuadElem, EigenEntry> table;
    std::optional<FFElem> ap;
    std::set<QuadElem> stabilised;
};

// Validates: d_v present and nonzero away from level and p; the nebentypus
// constraint d_v = power_l(v, k + 2l - 2) at primes with generator = 1 mod n.
EigenSystem make_eigensystem(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                             std::map<QuadElem, EigenEntry> table, std::optional<FFElem> ap,
                             std::set<QuadElem> stabilised = {});

bool nebentypus_consistent(const EigenSystem& es);

enum class PrimePick { smallest, largest, seeded };

// Normalised eigenform coefficients by norm induction: r_0 = 0, r_1 = 1, and
// each r_m pulled down along a chosen prime divisor of (m).  With l != 0 or
// k < 2 or no a_p, p-divisible support stays zero.  Cross-checks that every
// choice of prime divisor yields the same value.
QExpansion reconstruct(const EigenSystem& es, long long bound,
                       PrimePick pick = PrimePick::smallest, unsigned long long seed = 0);

// apply the stabilisation at v with root alpha of X^2 - a_v X + Nm(v) d_v
std::pair<QExpansion, EigenSystem> stabilise(const QExpansion& f, const EigenSystem& es,
                                             const PrimeIdeal& v, const FFElem& alpha);

// support prime to p (and zero constant term)
bool is_strongly_stabilised(const QExpansion& f);

struct StrongCheckReport {
    bool ok = true;
    std::string witness;
};

// executable uniqueness: reconstructions along different prime-pick
// strategies and seeds must agree coefficientwise
StrongCheckReport unique_strong_check(const EigenSystem& es, long long bound);

struct LocalShapeReport {
    bool concluded = false;
    long long e1 = 0, e2 = 0;     // inertial exponents mod p^2 - 1
    std::optional<FFElem> frob;   // Frobenius value of the unramified part
    std::string message;
};

// with a_p != 0: upper-triangular local shape with chi_1 sending Frob to a_p,
// exponents e1 = -(l0 + p l1), e2 = (1-k0-l0) + p (1-k1-l1) mod p^2 - 1
LocalShapeReport ordinarity_report(const EigenSystem& es);

// eigensystem of the twist f_xi: a_v scaled by xi(v)^{-1} power_l(v, l'),
// d_v by its square; conductor primes join the level with a_v = 0
EigenSystem twist_eigensystem(const EigenSystem& es, const TwistChar& xi);

// T_v-eigenvalue check against the reconstruction, on the stored range
bool is_eigenform_for(const QExpansion& f, const EigenSystem& es, const PrimeIdeal& v);

}  // namespace hmf
