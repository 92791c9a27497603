#pragma once

#include <map>
#include <optional>

#include "hmf/ff.hpp"
#include "hmf/weightlat.hpp"

namespace hmf {

// Truncated q-expansion at the cusp at infinity, level U_1(n) with a totally
// positive level generator, strict class number 1.  Coefficients are stored
// on canonical orbit representatives m with Nm(m) <= bound; the unit relation
// r_{vm} = power_l(v, -l) r_m extends them to every totally positive index.
// Missing in-bound keys mean zero; out-of-bound lookups are contract errors.
struct QExpansion {
    FieldConfig cfg;
    std::shared_ptr<const FFContext> ctx;
    Weight weight;
    QuadElem level;   // totally positive generator, prime to p
    long long bound = 0;
    std::map<QuadElem, FFElem> coeffs;
    FFElem r0;

    std::pair<long long, long long> lvec() const { return weight.l; }
};

// Validating constructor; drops explicit zeros, checks canonical keys, the
// bound, level integrality/positivity/coprimality to p, and the constant-term
// unit constraint (power_l(eps, l) != 1 forces r0 = 0).
QExpansion make_qexp(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                     long long bound, std::map<QuadElem, FFElem> coeffs, FFElem r0);

// storage cap for expanding operators; env HMF_MAX_BOUND, default 10000
long long storage_cap();

// r_m for m totally positive with Nm(m) <= bound, or m = 0 (constant term)
FFElem coeff(const QExpansion& f, const QuadElem& m);

QExpansion add(const QExpansion& f, const QExpansion& g);
QExpansion scale(const FFElem& c, const QExpansion& f);

// convolution product; weights add, bound = min of bounds
QExpansion mul(const QExpansion& f, const QExpansion& g);

// Hecke operator at v.  Regimes:
//   v coprime to level and p: two-term rule, needs the S_v scalar dv;
//   v dividing the level: one-term rule;
//   v over p: one-term rule pulling r_{pm}, requires l = 0 and k_i >= 2.
// Output bound is floor(bound / Nm(v)); bound underflow is an error.
QExpansion hecke_Tv(const QExpansion& f, const PrimeIdeal& v,
                    const std::optional<FFElem>& dv = std::nullopt);

// partial theta at embedding i: r_m -> tau_i(m) r_m, constant term killed
QExpansion theta(const QExpansion& f, int i);

// partial Frobenius: r_m -> r_{m/p} (zero off p-divisible support); l = 0 only
QExpansion phi_v(const QExpansion& f);

// total Frobenius on coefficients; weight components swap
QExpansion frob(const QExpansion& f);

// multiplication by the partial Hasse invariant at embedding i
QExpansion mul_hasse(const QExpansion& f, int i);

// support lies on p-divisible indices and the constant term vanishes
bool ker_theta_test(const QExpansion& f);
// additionally the k-weight is in the image of phi_weight
bool im_phi_test(const QExpansion& f);

// explicit reindexing witness for im(phi) = ker(theta): a g with phi_v(g)
// agreeing with f on the stored range; requires im_phi_test(f)
QExpansion phi_v_preimage(const QExpansion& f);

// exact equality of all data (weights as integer vectors)
bool qexp_equal(const QExpansion& f, const QExpansion& g);
// equality with l-labels compared as fundamental-character classes
bool qexp_equal_lclass(const QExpansion& f, const QExpansion& g);
// coefficientwise agreement on indices of norm <= min(bounds) incl. r0
bool qexp_agree_on_common_bound(const QExpansion& f, const QExpansion& g);

}  // namespace hmf
