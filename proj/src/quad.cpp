#include "hmf/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hmf {

namespace {

bool squarefree(long long d) {
    for (long long f = 2; f * f <= d; ++f)
        if (d % (f * f) == 0) return false;
    return true;
}

long long mod_pow(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
    }
    return r;
}

bool is_residue(long long a, long long p) {  // p odd prime
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return true;
    return mod_pow(a, (p - 1) / 2, p) == 1;
}

// Smallest unit > 1 (Pell), returned with tau_0 > 1; norm may be -1.
QuadElem fundamental_unit_uncached(const FieldConfig& cfg) {
    long long d = cfg.d;
    // search x = (a + b*sqrt(d))/den, den = 2 if d = 1 mod 4, over growing b
    long long den = cfg.half_coords() ? 2 : 1;
    for (long long b = 1; b <= 2000000; ++b) {
        // a^2 - d b^2 = +-den^2
        __int128 db2 = (__int128)d * b * b;
        for (int s : {-1, +1}) {
            __int128 a2 = db2 + s * den * den;
            if (a2 < 0) continue;
            long long a = (long long)std::llround(std::sqrt((double)a2));
            for (long long aa = std::max(0LL, a - 2); aa <= a + 2; ++aa) {
                if ((__int128)aa * aa != a2) continue;
                if (den == 2 && ((aa ^ b) & 1)) continue;
                QuadElem u(Rat(aa, den), Rat(b, den), d);
                return u;  // b minimal and a > 0 => smallest unit > 1
            }
        }
    }
    throw std::logic_error("fundamental_unit: search exhausted");
}

QuadElem fundamental_unit(const FieldConfig& cfg) {
    static std::map<long long, QuadElem> cache;
    auto it = cache.find(cfg.d);
    if (it != cache.end()) return it->second;
    QuadElem u = fundamental_unit_uncached(cfg);
    cache[cfg.d] = u;
    return u;
}

// exact sign of x + y*sqrt(d) for rationals x, y
int sign_x_plus_y_sqrtd(const Rat& x, const Rat& y, long long d) {
    int sx = x.sign(), sy = y.sign();
    if (sx == 0 && sy == 0) return 0;
    if (sx >= 0 && sy >= 0) return 1;
    if (sx <= 0 && sy <= 0) return -1;
    // opposite signs: compare x^2 against d y^2
    __int128 lhs = (__int128)x.num * x.num * y.den * y.den;
    __int128 rhs = (__int128)d * y.num * y.num * x.den * x.den;
    if (lhs == rhs) return 0;
    bool x_bigger = lhs > rhs;
    return (sx > 0) == x_bigger ? 1 : -1;
}

// m is assumed nonzero; true iff tau0(m)/tau1(m) >= tau0(n)/tau1(n), all
// four embeddings positive.  Cross-multiplied into one exact sign test.
int cmp_ratio(const QuadElem& m, const QuadElem& n) {
    // tau0(m) tau1(n) - tau0(n) tau1(m) = 2 (b_m a_n - a_m b_n) sqrt(d) ... expand exactly:
    // (a_m + b_m s)(a_n - b_n s) - (a_n + b_n s)(a_m - b_m s) = 2 s (b_m a_n - b_n a_m)
    Rat t = m.b * n.a - n.b * m.a;
    return t.sign();  // sign of the sqrt(d) coefficient, sqrt(d) > 0
}

// Hermite normal form of the Z-lattice spanned by the given omega-coordinate
// pairs (u_i, v_i).
IdealLattice hnf_of(std::vector<std::pair<long long, long long>> rows) {
    // reduce on second coordinate first
    long long c = 0;
    std::pair<long long, long long> carrier{0, 0};
    for (auto& r : rows) {
        while (r.second != 0) {
            if (carrier.second == 0) { std::swap(carrier, r); continue; }
            long long q = r.second / carrier.second;
            r.first -= q * carrier.first;
            r.second -= q * carrier.second;
            if (r.second != 0) std::swap(carrier, r);
        }
    }
    c = carrier.second < 0 ? -carrier.second : carrier.second;
    if (carrier.second < 0) carrier.first = -carrier.first;
    long long a = 0;
    for (auto& r : rows) a = std::gcd(a, r.first < 0 ? -r.first : r.first);
    if (a == 0) throw std::logic_error("hnf_of: rank < 2");
    long long b = carrier.first;
    if (c == 0) throw std::logic_error("hnf_of: rank < 2");
    b %= a;
    if (b < 0) b += a;
    return {a, b, c};
}

}  // namespace

void omega_mult_rule(const FieldConfig& cfg, long long& t, long long& n) {
    if (cfg.half_coords()) { t = 1; n = (cfg.d - 1) / 4; }
    else { t = 0; n = cfg.d; }
}

IdealLattice ideal_hnf(const QuadElem& g, const FieldConfig& cfg) {
    auto [u, v] = g.omega_coords();
    long long t, n;
    omega_mult_rule(cfg, t, n);
    // g*1 = (u, v); g*omega = (v*n, u + v*t)
    return hnf_of({{u, v}, {v * n, u + v * t}});
}

FieldConfig::FieldConfig(long long d_, long long p_, int k_) : d(d_), p(p_), k(k_) {
    if (d <= 1 || !squarefree(d)) throw contract_error("FieldConfig: d must be squarefree > 1");
    if (p < 2) throw contract_error("FieldConfig: p must be prime");
    for (long long f = 2; f * f <= p; ++f)
        if (p % f == 0) throw contract_error("FieldConfig: p must be prime");
    if (k <= 0 || k % 2 != 0) throw contract_error("FieldConfig: k must be even and positive");
    if (d % p == 0 || disc() % p == 0) throw contract_error("FieldConfig: p ramifies");
    bool inert = (p == 2) ? (d % 8 == 5) : !is_residue(d % p, p);
    if (!inert) throw contract_error("FieldConfig: p is not inert in Q(sqrt(d))");
    // narrow class number 1: need a unit of norm -1 and trivial class group
    QuadElem eps = fundamental_unit(*this);
    if (eps.norm() != Rat(-1))
        throw contract_error("FieldConfig: narrow class number > 1 (fundamental unit has norm +1)");
    long long mink = (long long)(std::sqrt((double)disc()) / 2.0) + 1;
    for (long long q = 2; q <= mink; ++q) {
        bool prime = q >= 2;
        for (long long f = 2; f * f <= q; ++f)
            if (q % f == 0) { prime = false; break; }
        if (!prime) continue;
        bool splits = (disc() % q == 0) ||
                      (q == 2 ? (d % 8 == 1) : is_residue(d % q, q));
        if (!splits) continue;
        // need an element of norm +-q
        long long den = half_coords() ? 2 : 1;
        bool found = false;
        for (long long b = 0; b <= 4 * q && !found; ++b)
            for (long long a = 0; a <= 4 * q + (long long)(std::sqrt((double)(d)) * b) && !found; ++a) {
                if (den == 2 && ((a ^ b) & 1)) continue;
                __int128 nm = (__int128)a * a - (__int128)d * b * b;
                if (nm == (__int128)q * den * den || nm == -(__int128)q * den * den) found = true;
            }
        if (!found) throw contract_error("FieldConfig: class number > 1");
    }
}

bool QuadElem::is_integral() const {
    if (d % 4 == 1) {
        // x = u + v*omega with u = (a-b), v = 2b ... a = u + v/2, b = v/2:
        // integral iff 2a, 2b integers with 2a = 2b mod 2
        Rat ta = a + a, tb = b + b;
        if (!ta.is_integer() || !tb.is_integer()) return false;
        return ((ta.num - tb.num) % 2) == 0;
    }
    return a.is_integer() && b.is_integer();
}

std::pair<long long, long long> QuadElem::omega_coords() const {
    if (!is_integral()) throw contract_error("QuadElem: not integral");
    if (d % 4 == 1) {
        Rat ta = a + a, tb = b + b;
        return {(ta.num - tb.num) / 2, tb.num};
    }
    return {a.num, b.num};
}

int QuadElem::embedding_sign(int i) const {
    if (i != 0 && i != 1) throw std::logic_error("embedding index");
    return sign_x_plus_y_sqrtd(a, i == 0 ? b : -b, d);
}

QuadElem QuadElem::pow(long long e) const {
    if (e < 0) return QuadElem(Rat(1), Rat(0), d) / pow(-e);
    QuadElem r(Rat(1), Rat(0), d), base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        base = base * base;
    }
    return r;
}

bool operator<(const QuadElem& x, const QuadElem& y) {
    Rat nx = x.norm(), ny = y.norm();
    if (nx != ny) return nx < ny;
    Rat tx = x.trace(), ty = y.trace();
    if (tx != ty) return tx < ty;
    if (x.b != y.b) return x.b < y.b;
    return x.a < y.a;
}

std::string QuadElem::str() const {
    if (b.is_zero()) return a.str();
    std::ostringstream os;
    Rat babs = b.sign() < 0 ? -b : b;
    if (!a.is_zero()) os << a.str();
    os << (b.sign() < 0 ? "-" : (a.is_zero() ? "" : "+"));
    if (babs != Rat(1)) os << babs.str() << "*";
    os << "sqrt(" << d << ")";
    return os.str();
}

namespace {
Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}
}  // namespace

QuadElem parse_quad(const std::string& s, const FieldConfig& cfg) {
    // grammar: A | [A +|- ] [B*]sqrt(d), rational A, B
    std::string t;
    for (char c : s)
        if (!isspace((unsigned char)c)) t += c;
    auto sq = t.find("sqrt(");
    if (sq == std::string::npos) return QuadElem(parse_rat(t), Rat(0), cfg.d);
    auto close = t.find(')', sq);
    if (close == std::string::npos) throw contract_error("parse_quad: bad sqrt()");
    long long dd = std::stoll(t.substr(sq + 5, close - sq - 5));
    if (dd != cfg.d) throw contract_error("parse_quad: sqrt argument mismatch");
    // split off the b-part: find the +/- separating a and b (not leading, not in a fraction)
    size_t split = std::string::npos;
    for (size_t i = 1; i < sq; ++i)
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '+' && t[i - 1] != '-')
            split = i;
    Rat a(0), b(1);
    std::string bpart;
    if (split == std::string::npos) {
        bpart = t.substr(0, sq);
    } else {
        a = parse_rat(t.substr(0, split));
        bpart = t.substr(split, sq - split);
    }
    // bpart like "", "-", "+", "3/2*", "-2*"
    if (!bpart.empty() && bpart.back() == '*') bpart.pop_back();
    if (bpart.empty() || bpart == "+") b = Rat(1);
    else if (bpart == "-") b = Rat(-1);
    else b = parse_rat(bpart);
    return QuadElem(a, b, cfg.d);
}

QuadElem fundamental_tp_unit(const FieldConfig& cfg) {
    QuadElem eps = fundamental_unit(cfg);
    QuadElem u = (eps.norm() == Rat(-1)) ? eps * eps : eps;
    if (!u.totally_positive()) u = -u;
    // ensure tau_0(u) > 1, i.e. u, not its inverse
    if (sign_x_plus_y_sqrtd(u.a - Rat(1), u.b, cfg.d) < 0) u = QuadElem(Rat(1), Rat(0), cfg.d) / u;
    return u;
}

std::pair<QuadElem, long long> orbit_rep(const QuadElem& m, const FieldConfig& cfg) {
    if (m.is_zero()) throw contract_error("orbit_rep: zero input");
    if (!m.totally_positive()) throw contract_error("orbit_rep: not totally positive");
    QuadElem eps = fundamental_tp_unit(cfg);
    QuadElem cur = m;
    long long e = 0;
    // want 1 <= ratio(cur) < ratio(eps); ratio(x) = tau0(x)/tau1(x)
    while (cmp_ratio(cur, QuadElem(Rat(1), Rat(0), cfg.d)) < 0) {  // ratio < 1
        cur = cur * eps;
        --e;
    }
    while (cmp_ratio(cur, eps) >= 0) {  // ratio >= ratio(eps) = tau0(eps)^2
        cur = cur / eps;
        ++e;
    }
    return {cur, e};
}

bool is_orbit_rep(const QuadElem& m, const FieldConfig& cfg) {
    auto [r, e] = orbit_rep(m, cfg);
    return e == 0;
}

std::vector<QuadElem> enumerate_tp_reps(const FieldConfig& cfg, long long B) {
    std::vector<QuadElem> out;
    if (B < 1) return out;
    QuadElem eps = fundamental_tp_unit(cfg);
    double eps0 = (double)eps.a.num / eps.a.den + std::sqrt((double)cfg.d) * eps.b.num / eps.b.den;
    double rho = eps0 * eps0;                       // ratio of the fundamental domain
    double t0max = std::sqrt((double)B * rho) + 1;  // tau0 < sqrt(B*rho)
    double t1max = std::sqrt((double)B) + 1;
    long long den = cfg.half_coords() ? 2 : 1;
    long long amax = (long long)((t0max + t1max) * den) + 2;
    long long bmax = (long long)(t0max * den / std::sqrt((double)cfg.d)) + 2;
    for (long long bb = -bmax; bb <= bmax; ++bb) {
        for (long long aa = 1; aa <= amax; ++aa) {
            if (den == 2 && ((aa ^ bb) & 1)) continue;
            QuadElem m(Rat(aa, den), Rat(bb, den), cfg.d);
            Rat nm = m.norm();
            if (nm.sign() <= 0 || Rat(B) < nm) continue;
            if (!m.totally_positive()) continue;
            if (cmp_ratio(m, QuadElem(Rat(1), Rat(0), cfg.d)) < 0) continue;
            if (cmp_ratio(m, eps) >= 0) continue;
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PrimeInfo prime_over(const FieldConfig& cfg, long long q) {
    static std::map<std::pair<long long, long long>, PrimeInfo> cache;
    auto key = std::make_pair(cfg.d, q);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;
    PrimeInfo info;
    info.q = q;
    if (cfg.disc() % q == 0)
        info.type = Splitting::ramified;
    else if (q == 2)
        info.type = (cfg.d % 8 == 1) ? Splitting::split : Splitting::inert;
    else
        info.type = is_residue(cfg.d % q, q) ? Splitting::split : Splitting::inert;

    if (info.type == Splitting::inert) {
        info.primes.push_back({QuadElem::integer(q, cfg), q * q, q});
        cache[key] = info;
        return info;
    }
    // find an element of norm +-q (exists: h+ = 1)
    long long den = cfg.half_coords() ? 2 : 1;
    std::vector<QuadElem> gens;
    for (long long bb = 0; bb <= 8 * q + 8 && gens.empty(); ++bb) {
        for (long long aa = 0; aa <= (long long)(std::sqrt((double)(cfg.d * bb * bb + 4 * q)) + 2); ++aa) {
            if (den == 2 && ((aa ^ bb) & 1)) continue;
            __int128 nm = (__int128)aa * aa - (__int128)cfg.d * bb * bb;
            if (nm != (__int128)q * den * den && nm != -(__int128)q * den * den) continue;
            QuadElem g(Rat(aa, den), Rat(bb, den), cfg.d);
            gens.push_back(canonical_tp_generator(g, cfg));
            break;
        }
    }
    if (gens.empty()) throw std::logic_error("prime_over: generator search exhausted");
    if (info.type == Splitting::ramified) {
        info.primes.push_back({gens[0], q, q});
        cache[key] = info;
        return info;
    }
    QuadElem other = canonical_tp_generator(gens[0].conj(), cfg);
    std::vector<QuadElem> both{gens[0], other};
    std::sort(both.begin(), both.end());
    for (auto& g : both) info.primes.push_back({g, q, q});
    cache[key] = info;
    return info;
}

int valuation(const QuadElem& x, const PrimeIdeal& v) {
    if (x.is_zero()) throw contract_error("valuation: zero element");
    QuadElem cur = x;
    int n = 0;
    while (true) {
        QuadElem next = cur / v.gen;
        if (!next.is_integral()) return n;
        cur = next;
        ++n;
    }
}

std::vector<PrimeIdeal> prime_divisors(const QuadElem& x, const FieldConfig& cfg) {
    if (!x.is_integral() || x.is_zero()) throw contract_error("prime_divisors: need nonzero integral");
    Rat nm = x.norm();
    long long n = nm.num < 0 ? -nm.num : nm.num;
    std::vector<PrimeIdeal> out;
    for (long long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        while (n % q == 0) n /= q;
        for (auto& v : prime_over(cfg, q).primes)
            if (valuation(x, v) > 0) out.push_back(v);
    }
    if (n > 1)
        for (auto& v : prime_over(cfg, n).primes)
            if (valuation(x, v) > 0) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.gen < b.gen;
    });
    return out;
}

QuadElem canonical_tp_generator(const QuadElem& x, const FieldConfig& cfg) {
    if (x.is_zero()) throw contract_error("canonical_tp_generator: zero ideal");
    QuadElem g = x;
    if (!g.totally_positive()) {
        if (g.embedding_sign(0) < 0 && g.embedding_sign(1) < 0) {
            g = -g;
        } else {
            // mixed signs: multiply by a unit of norm -1 (exists, h+ = 1)
            QuadElem eps = fundamental_unit(cfg);
            if (eps.norm() != Rat(-1)) throw std::logic_error("no norm -1 unit");
            g = g * eps;
            if (!g.totally_positive()) g = -g;
        }
    }
    return orbit_rep(g, cfg).first;
}

QuadElem inverse_different_gen(const FieldConfig& cfg) {
    // different = (sqrt(d)) if d = 1 mod 4, else (2 sqrt(d))
    QuadElem sq(Rat(0), Rat(1), cfg.d);
    QuadElem diff = cfg.half_coords() ? sq : sq + sq;
    return canonical_tp_generator(QuadElem(Rat(1), Rat(0), cfg.d) / diff, cfg);
}

}  // namespace hmf
