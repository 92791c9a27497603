#pragma once

#include <map>
#include <set>
#include <vector>

#include "hmf/serre.hpp"
#include "hmf/weightlat.hpp"

namespace hmf {

enum class WeightTag { initial, via_Ha, via_Theta, via_Theta_divided, via_twist };

// Finite set of weights declared modular, with the move that first produced
// each element.
struct WeightSet {
    long long p = 3;
    std::map<Weight, WeightTag> weights;

    bool contains(const Weight& w) const { return weights.count(w) > 0; }
};

enum class Move { Ha0, Ha1, Theta0, Theta1 };

// Closure of ws under the requested moves to the given depth: the Hasse moves
// shift k, the theta moves apply the sharp shift (dividing by the Hasse
// weight when p | k_tau), and each twist weight shifts l.
WeightSet propagate(const WeightSet& ws, const std::set<Move>& moves,
                    const std::vector<LVec>& twist_lprimes, long long depth);

struct KminResult {
    bool has_least = false;
    KVec least{0, 0};
    std::vector<KVec> antichain;  // minimal elements when no least exists
};

// least declared k-weight at the given l under the Hasse order, or the
// antichain of minimal elements
KminResult kmin_bound(const WeightSet& ws, const LVec& l);

struct TransferReport {
    bool declared_pw1 = false;         // ((k0,1),(0,0)) declared
    Weight family_a{{0, 0}, {0, 0}};   // companion weights for this k0
    Weight family_b{{0, 0}, {0, 0}};
    bool closure_has_a = false;
    bool closure_has_b = false;
    PwShiftCheck oracle;
    std::vector<std::string> flags;    // lint messages, empty when consistent
};

// Consistency lint between declared weights and the local-lift oracle: the
// forward moves from partial weight one must reach both companion families,
// and declared data must not contradict the oracle verdicts.
TransferReport pwt1_transfer(const WeightSet& declared, const InertialType& sigma, long long k0,
                             long long p);

}  // namespace hmf
