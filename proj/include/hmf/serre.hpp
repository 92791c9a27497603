#pragma once

#include <string>
#include <vector>

#include "hmf/quad.hpp"

namespace hmf {

enum class ExtClass { split, in_V, generic };

// Whether the zero extension class of a split representation counts as lying
// on the crystalline line V.  V is a linear subspace, so the default is yes;
// the alternative convention is kept selectable.
enum class SplitVConvention { counts_as_in_V, excluded };

// Combinatorial local datum at the unramified quadratic place: either an
// upper-triangular shape given by the two inertial exponents (sub first) and
// an extension-class flag, or an irreducible induction given by a single
// exponent mod p^4 - 1, identified with its Frobenius conjugate.
struct InertialType {
    bool reducible = true;
    long long e1 = 0, e2 = 0;
    ExtClass ext = ExtClass::generic;
    long long c = 0;

    static InertialType make_reducible(long long e1, long long e2, ExtClass ext, long long p);
    static InertialType make_irreducible(long long c, long long p);

    std::string str() const;
    friend bool operator==(const InertialType& a, const InertialType& b) {
        return a.reducible == b.reducible && a.e1 == b.e1 && a.e2 == b.e2 && a.ext == b.ext &&
               a.c == b.c;
    }
};

// exponent of the restriction to the quadratic subextension: multiply by 1+p^2
long long restrict_to_Kprime(long long e, long long p);
// conjugate exponent: multiply by p^2 (mod p^4 - 1)
long long frobenius_conjugate(long long c, long long p);

// crystalline lift of weight ((k0,1),(0,0)): unramified sub over exponent
// 1-k0 with class on the V-line, or the induction of exponent 1-k0
bool has_lift_pw1(const InertialType& s, long long k0, long long p,
                  SplitVConvention conv = SplitVConvention::counts_as_in_V);

// the three companion weights: A = ((k0-1,p+1),(0,0)) for k0 > 2,
// A2 = ((p+1,p),(0,0)) for k0 = 2, B = ((k0+1,p+1),(-1,0))
enum class LiftFamily { A, A2, B };

bool has_lift_family(const InertialType& s, LiftFamily fam, long long k0, long long p,
                     SplitVConvention conv = SplitVConvention::counts_as_in_V);

struct PwShiftCheck {
    bool lhs = false;            // direct partial-weight-one lift
    bool rhs = false;            // families A/A2 and B plus the sub-exponent exclusion
    bool rhs_without_cond3 = false;
    std::string witness;         // set when lhs != rhs
};

PwShiftCheck pwt1shift_check(const InertialType& s, long long k0, long long p,
                             SplitVConvention conv = SplitVConvention::counts_as_in_V);

// weight-(1,1) criterion: true iff the type is an unramified direct sum
bool unramified_iff_k1(const InertialType& s);

// every type over the exponent ranges, split types and irreducible conjugate
// pairs listed once
std::vector<InertialType> all_inertial_types(long long p);

struct SweepResult {
    long long types_checked = 0;
    long long discrepancies = 0;
    long long cond3_changes = 0;         // verdicts rhs vs rhs_without_cond3
    long long irreducible_classes = 0;   // exponent classes mod p^4 - 1 covered
    std::vector<std::string> witnesses;
};

SweepResult pwt1shift_sweep(long long p, long long k0,
                            SplitVConvention conv = SplitVConvention::counts_as_in_V);

}  // namespace hmf
