#pragma once

#include <map>
#include <vector>

#include "hmf/qexp.hpp"

namespace hmf {

// Multiplicative group of O_F mod a totally positive generator, with a cyclic
// decomposition and a full discrete-log table.  Intended for Nm <= 10^4.
class UnitGroupModM {
  public:
    UnitGroupModM(const QuadElem& modulus, const FieldConfig& cfg);

    const QuadElem& modulus() const { return modulus_; }
    const FieldConfig& cfg() const { return cfg_; }
    long long order() const { return order_; }

    struct Gen {
        std::pair<long long, long long> residue;  // omega coordinates
        long long order;
    };
    const std::vector<Gen>& generators() const { return gens_; }

    // canonical residue of an integral element (omega coordinates reduced
    // into the fundamental box of the ideal lattice)
    std::pair<long long, long long> reduce(const QuadElem& x) const;
    bool is_unit(const QuadElem& x) const;

    // exponents of x over the generators; contract error if x is not a unit
    std::vector<long long> dlog(const QuadElem& x) const;

    // every unit residue, in deterministic order
    std::vector<std::pair<long long, long long>> unit_residues() const;
    QuadElem lift(const std::pair<long long, long long>& res) const;

  private:
    QuadElem modulus_;
    FieldConfig cfg_;
    IdealLattice lat_;
    long long order_ = 0;
    std::vector<Gen> gens_;
    std::map<std::pair<long long, long long>, std::vector<long long>> dlog_;
};

// Character of (O_F/m)^x valued in F_{p^k} together with a weight vector l';
// the weight condition ties the value at the fundamental unit to power_l.
struct TwistChar {
    std::shared_ptr<UnitGroupModM> group;
    std::vector<FFElem> values;  // on group->generators()
    LVec lprime{0, 0};

    std::shared_ptr<const FFContext> ctx() const { return FFContext::get(group->cfg()); }

    bool is_trivial() const;
    // chi(x) for x prime to the modulus; contract error otherwise
    FFElem value(const QuadElem& x) const;
    // chi(x), 0 when x is not prime to the modulus
    FFElem value_or_zero(const QuadElem& x) const;
    TwistChar inverse() const;
    // trivial on every unit congruent to 1 mod (modulus/v) for no prime v,
    // i.e. does not factor through any proper quotient
    bool full_conductor() const;
};

// All characters of weight l' on (O_F/m)^x valued in F_{p^k}; necessarily
// trivial on the p-part of the group.  Throws with the minimal sufficient k
// when F_{p^k} cannot see the prime-to-p characters.
std::vector<TwistChar> characters_of_weight(const QuadElem& modulus, const LVec& lprime,
                                            const FieldConfig& cfg);

// Every character valued in F_{p^k}, without the weight filter (the lprime
// field is set to zero and is not meaningful for these).
std::vector<TwistChar> all_characters(const QuadElem& modulus, const FieldConfig& cfg);

// Minimal even k such that F_{p^k} carries all prime-to-p characters of the
// group and a root of unity of the exact additive order used by gauss_sum.
int minimal_sufficient_k(const QuadElem& modulus, const FieldConfig& cfg);

// Smallest positive rational integer divisible by the modulus ideal.
long long additive_level(const QuadElem& modulus, const FieldConfig& cfg);

// G(xi, m) = sum over b of xi(b)^{-1} zeta(-b m), for m in the inverse of the
// modulus ideal; zeta is the fixed trace pairing with the canonical totally
// positive generator of the inverse different, normalised by zeta_N.
FFElem gauss_sum(const TwistChar& xi, const QuadElem& m, const FFElem& zeta_N);

// Tabulated evaluator for many Gauss sums of one character.
class GaussEvaluator {
  public:
    GaussEvaluator(const TwistChar& xi, const FFElem& zeta_N);
    FFElem eval(const QuadElem& m) const;

  private:
    const TwistChar xi_;
    long long N_;
    QuadElem delta_;
    std::vector<FFElem> zpow_;
    std::vector<std::pair<QuadElem, FFElem>> terms_;  // (lift b, xi(b)^{-1})
};

// f_xi: coefficients at indices prime to the conductor are scaled by
// chi(m)^{-1}, the rest vanish; weight l grows by l', level by conductor^2.
QExpansion twist(const QExpansion& f, const TwistChar& xi);

}  // namespace hmf
