#include "hmf/weightlat.hpp"

#include <sstream>

namespace hmf {

std::string Weight::str() const {
    std::ostringstream os;
    os << "((" << k.first << "," << k.second << "),(" << l.first << "," << l.second << "))";
    return os.str();
}

KVec hasse_weight(int i, long long p) {
    if (i != 0 && i != 1) throw contract_error("hasse_weight: embedding index");
    return i == 0 ? KVec{-1, p} : KVec{p, -1};
}

std::optional<HasseCoords> hasse_coords(const KVec& delta, long long p) {
    long long den = p * p - 1;
    long long a = delta.first + p * delta.second;
    long long b = delta.second + p * delta.first;
    if (a % den || b % den) return std::nullopt;
    long long n0 = a / den, n1 = b / den;
    if (n0 < 0 || n1 < 0) return std::nullopt;
    return HasseCoords{n0, n1};
}

bool leq_hasse(const KVec& k, const KVec& kp, long long p) {
    return hasse_coords(kp - k, p).has_value();
}

bool in_min_cone(const KVec& k, long long p, bool strict_positive) {
    if (p * k.first < k.second || p * k.second < k.first) return false;
    if (strict_positive && (k.first < 1 || k.second < 1)) return false;
    return true;
}

NearlyParallel nearly_parallel_decompose(const KVec& k, long long p, long long M) {
    NearlyParallel out;
    long long m = std::max({M, k.first + p - 3, k.second + p - 3, p - 2});
    long long mod = p * p - 1;
    long long r = ((m + 2 - k.first) + (m + 2 - k.second) * p) % mod;
    if (r < 0) r += mod;
    out.m = m;
    out.kappa = {r % p, r / p};
    out.kprime = {m + 2 - out.kappa.first, m + 2 - out.kappa.second};
    auto c = hasse_coords(out.kprime - k, p);
    if (!c) throw std::logic_error("nearly_parallel_decompose: not in cone");
    out.coords = *c;
    return out;
}

Weight theta_weight(const Weight& w, int i, long long p) {
    Weight o = w;
    if (i == 0) {
        o.k.first += 1;
        o.k.second += p;
        o.l.first -= 1;
    } else if (i == 1) {
        o.k.first += p;
        o.k.second += 1;
        o.l.second -= 1;
    } else {
        throw contract_error("theta_weight: embedding index");
    }
    return o;
}

Weight theta_min_weight(const Weight& w, int i, long long p) {
    Weight o = theta_weight(w, i, p);
    long long ki = (i == 0) ? w.k.first : w.k.second;
    if (ki % p == 0) o.k = o.k - hasse_weight(i, p);
    return o;
}

KVec phi_weight(const KVec& k, long long p) { return {p * k.second, p * k.first}; }

bool l_class_equal(const LVec& a, const LVec& b, long long p) {
    long long mod = p * p - 1;
    long long diff = (a.first - b.first) + p * (a.second - b.second);
    diff %= mod;
    return diff == 0;
}

}  // namespace hmf
