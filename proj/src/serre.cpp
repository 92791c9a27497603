#include "hmf/serre.hpp"

#include <algorithm>
#include <sstream>

namespace hmf {

namespace {

long long red(long long x, long long mod) {
    x %= mod;
    return x < 0 ? x + mod : x;
}

struct RedBranch {
    long long sub, quot;  // inertial exponents mod p^2 - 1
    bool needs_V;
};

// matching of a reducible type against a branch; split types may exchange the
// two characters, and carry the zero class (on V by the default convention)
bool match_reducible(const InertialType& s, const RedBranch& br, long long p,
                     SplitVConvention conv) {
    long long mod = p * p - 1;
    long long x = red(br.sub, mod), y = red(br.quot, mod);
    auto fits = [&](long long a, long long b) { return s.e1 == a && s.e2 == b; };
    if (s.ext == ExtClass::split) {
        if (!fits(x, y) && !fits(y, x)) return false;
        return !br.needs_V || conv == SplitVConvention::counts_as_in_V;
    }
    if (!fits(x, y)) return false;
    return !br.needs_V || s.ext == ExtClass::in_V;
}

bool match_irreducible(const InertialType& s, const std::vector<long long>& exps, long long p) {
    long long mod = p * p * p * p - 1;
    for (long long e : exps) {
        long long c = red(e, mod);
        long long cc = red(c * p * p, mod);
        if (s.c == std::min(c, cc)) return true;
    }
    return false;
}

bool cond3_excluded(const InertialType& s) {
    // sub-character with inertial exponent 1 (either slot for split types)
    if (!s.reducible) return false;
    if (s.ext == ExtClass::split) return s.e1 == 1 || s.e2 == 1;
    return s.e1 == 1;
}

}  // namespace

InertialType InertialType::make_reducible(long long e1, long long e2, ExtClass ext, long long p) {
    long long mod = p * p - 1;
    InertialType t;
    t.reducible = true;
    t.e1 = red(e1, mod);
    t.e2 = red(e2, mod);
    t.ext = ext;
    if (ext == ExtClass::in_V && t.e1 == t.e2)
        throw contract_error("InertialType: the V-line needs distinct inertial exponents");
    return t;
}

InertialType InertialType::make_irreducible(long long c, long long p) {
    long long mod = p * p * p * p - 1;
    InertialType t;
    t.reducible = false;
    long long cr = red(c, mod);
    t.c = std::min(cr, red(cr * p * p, mod));
    return t;
}

std::string InertialType::str() const {
    std::ostringstream os;
    if (reducible) {
        os << "red(" << e1 << "," << e2 << ","
           << (ext == ExtClass::split ? "split" : ext == ExtClass::in_V ? "inV" : "generic")
           << ")";
    } else {
        os << "irr(" << c << ")";
    }
    return os.str();
}

long long restrict_to_Kprime(long long e, long long p) {
    return red(e * (1 + p * p), p * p * p * p - 1);
}

long long frobenius_conjugate(long long c, long long p) {
    return red(c * p * p, p * p * p * p - 1);
}

bool has_lift_pw1(const InertialType& s, long long k0, long long p, SplitVConvention conv) {
    if (k0 < 2 || k0 > p) throw contract_error("has_lift_pw1: need 2 <= k0 <= p");
    if (s.reducible) return match_reducible(s, {0, 1 - k0, true}, p, conv);
    return match_irreducible(s, {1 - k0}, p);
}

bool has_lift_family(const InertialType& s, LiftFamily fam, long long k0, long long p,
                     SplitVConvention conv) {
    if (fam == LiftFamily::A && k0 <= 2) throw contract_error("family A needs k0 > 2");
    if (fam == LiftFamily::A2 && k0 != 2) throw contract_error("family A2 needs k0 = 2");
    std::vector<RedBranch> branches;
    std::vector<long long> irr;
    switch (fam) {
        case LiftFamily::A:
            branches = {{0, 1 - k0, false}, {-1, 2 - k0, false}, {2 - k0, -1, false}};
            irr = {1 - k0, 2 - k0 - p * p};
            break;
        case LiftFamily::A2:
            branches = {{0, -1, false}, {p - 1, -p, false}, {-p, p - 1, false}};
            irr = {1 - k0, p - p * p - p * p * p};
            break;
        case LiftFamily::B:
            branches = {{1, -k0, false}, {0, 1 - k0, true}, {1 - k0, 0, false}};
            irr = {1 - k0, p * p - k0};
            break;
    }
    if (s.reducible) {
        for (auto& br : branches)
            if (match_reducible(s, br, p, conv)) return true;
        return false;
    }
    return match_irreducible(s, irr, p);
}

PwShiftCheck pwt1shift_check(const InertialType& s, long long k0, long long p,
                             SplitVConvention conv) {
    PwShiftCheck out;
    out.lhs = has_lift_pw1(s, k0, p, conv);
    LiftFamily fa = (k0 == 2) ? LiftFamily::A2 : LiftFamily::A;
    bool a = has_lift_family(s, fa, k0, p, conv);
    bool b = has_lift_family(s, LiftFamily::B, k0, p, conv);
    out.rhs_without_cond3 = a && b;
    out.rhs = a && b && !cond3_excluded(s);
    if (out.lhs != out.rhs)
        out.witness = s.str() + " at k0=" + std::to_string(k0) + ", p=" + std::to_string(p);
    return out;
}

bool unramified_iff_k1(const InertialType& s) {
    return s.reducible && s.e1 == 0 && s.e2 == 0 && s.ext == ExtClass::split;
}

std::vector<InertialType> all_inertial_types(long long p) {
    std::vector<InertialType> out;
    long long mod2 = p * p - 1, mod4 = p * p * p * p - 1;
    for (long long e1 = 0; e1 < mod2; ++e1)
        for (long long e2 = 0; e2 < mod2; ++e2) {
            out.push_back(InertialType::make_reducible(e1, e2, ExtClass::generic, p));
            if (e1 != e2) out.push_back(InertialType::make_reducible(e1, e2, ExtClass::in_V, p));
            if (e1 <= e2) out.push_back(InertialType::make_reducible(e1, e2, ExtClass::split, p));
        }
    for (long long c = 0; c < mod4; ++c)
        if (c <= red(c * p * p, mod4)) out.push_back(InertialType::make_irreducible(c, p));
    return out;
}

SweepResult pwt1shift_sweep(long long p, long long k0, SplitVConvention conv) {
    SweepResult res;
    long long mod4 = p * p * p * p - 1;
    std::vector<bool> covered(mod4, false);
    for (auto& s : all_inertial_types(p)) {
        ++res.types_checked;
        if (!s.reducible) {
            covered[s.c] = true;
            covered[frobenius_conjugate(s.c, p)] = true;
        }
        auto chk = pwt1shift_check(s, k0, p, conv);
        if (chk.lhs != chk.rhs) {
            ++res.discrepancies;
            if (res.witnesses.size() < 8) res.witnesses.push_back(chk.witness);
        }
        if (chk.rhs != chk.rhs_without_cond3) ++res.cond3_changes;
    }
    for (bool b : covered)
        if (b) ++res.irreducible_classes;
    return res;
}

}  // namespace hmf
