#pragma once

#include <random>

#include "hmf/eigen.hpp"
#include "hmf/qexp.hpp"

namespace hmf {

// Pseudorandom expansion with coefficients drawn from the F_{p^2} subfield.
// force_r0_zero additionally clears the constant term (it is cleared anyway
// whenever the unit acts nontrivially for the chosen l).
QExpansion random_qexp(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                       long long bound, std::mt19937_64& rng, bool force_r0_zero = false);

// Random element of the F_{p^2} subfield of F_{p^k}.
FFElem random_fp2(const std::shared_ptr<const FFContext>& ctx, std::mt19937_64& rng);

// Random eigensystem covering every prime of norm <= bound, with F_{p^2}
// eigenvalues; d_v forced where the nebentypus constraint pins it.
EigenSystem random_eigensystem(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                               long long bound, std::mt19937_64& rng, bool with_ap);

}  // namespace hmf
