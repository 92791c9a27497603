#include "hmf/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hmf {

namespace {

using Poly = std::vector<long long>;  // dense, c[0] constant term

long long norm_mod(long long x, long long p) {
    x %= p;
    return x < 0 ? x + p : x;
}

long long inv_mod(long long a, long long p) {
    long long r = 1, b = norm_mod(a, p);
    for (long long e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_trim(r);
}

// remainder of a by monic divisor m
Poly poly_rem(Poly a, const Poly& m, long long p) {
    a = poly_trim(std::move(a));
    while (a.size() >= m.size()) {
        long long c = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[shift + i] = norm_mod(a[shift + i] - c * m[i], p);
        a = poly_trim(a);
    }
    return a;
}

Poly poly_powmod(Poly b, long long e, const Poly& m, long long p) {
    Poly r{1};
    b = poly_rem(std::move(b), m, p);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = poly_rem(poly_mul(r, b, p), m, p);
        b = poly_rem(poly_mul(b, b, p), m, p);
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, long long p) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        long long lead = b.back();
        if (lead != 1) {
            long long inv = inv_mod(lead, p);
            for (auto& c : b) c = c * inv % p;
        }
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool poly_irreducible(const Poly& f, long long p) {
    int k = (int)f.size() - 1;
    Poly xp{0, 1};
    std::vector<Poly> towers;  // x^{p^i} mod f
    for (int i = 0; i < k; ++i) {
        xp = poly_powmod(xp, p, f, p);
        towers.push_back(xp);
    }
    Poly diff = xp;  // x^{p^k}
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = norm_mod(diff[1] - 1, p);
    if (!poly_trim(diff).empty()) return false;
    for (int q = 2; q <= k; ++q) {
        if (k % q) continue;
        bool prime = true;
        for (int t = 2; t * t <= q; ++t)
            if (q % t == 0) prime = false;
        if (!prime) continue;
        Poly g = towers[k / q - 1];
        if (g.size() < 2) g.resize(2, 0);
        g[1] = norm_mod(g[1] - 1, p);
        if (poly_gcd(f, poly_trim(g), p).size() != 1) return false;
    }
    return true;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        int e = 0;
        while (n % q == 0) { n /= q; ++e; }
        f.push_back({q, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::map<std::pair<long long, std::pair<long long, int>>, std::shared_ptr<const FFContext>> cache;
std::mutex cache_mu;

constexpr unsigned long long LIMB = 1ull << 32;

}  // namespace

BigUint::BigUint(unsigned long long v) {
    while (v) {
        limbs.push_back(v & (LIMB - 1));
        v >>= 32;
    }
}

bool BigUint::is_zero() const { return limbs.empty(); }
bool BigUint::odd() const { return !limbs.empty() && (limbs[0] & 1); }

void BigUint::shr1() {
    unsigned long long carry = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
        unsigned long long cur = limbs[i] | (carry << 32);
        carry = cur & 1;
        limbs[i] = cur >> 1;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

void BigUint::mul_small(unsigned long long m) {
    unsigned long long carry = 0;
    for (auto& l : limbs) {
        unsigned long long cur = l * m + carry;
        l = cur & (LIMB - 1);
        carry = cur >> 32;
    }
    while (carry) {
        limbs.push_back(carry & (LIMB - 1));
        carry >>= 32;
    }
}

unsigned long long BigUint::div_small(unsigned long long m) {
    unsigned long long rem = 0;
    for (size_t i = limbs.size(); i-- > 0;) {
        unsigned long long cur = (rem << 32) | limbs[i];
        limbs[i] = cur / m;
        rem = cur % m;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    return rem;
}

void BigUint::sub_small(unsigned long long m) {
    size_t i = 0;
    while (m) {
        if (i >= limbs.size()) throw std::logic_error("BigUint: negative subtraction");
        unsigned long long take = m & (LIMB - 1);
        if (limbs[i] >= take) {
            limbs[i] -= take;
        } else {
            limbs[i] += LIMB - take;
            m += LIMB;  // borrow
        }
        m >>= 32;
        ++i;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

bool BigUint::fits_u64(unsigned long long& out) const {
    if (limbs.size() > 2) return false;
    out = limbs.empty() ? 0 : limbs[0];
    if (limbs.size() == 2) out |= limbs[1] << 32;
    return true;
}

FFContext::FFContext(const FieldConfig& cfg) : cfg_(cfg), p_(cfg.p), k_(cfg.k) {
    BigUint q(1);
    for (int i = 0; i < k_; ++i) q.mul_small((unsigned long long)p_);
    unsigned long long q64 = 0;
    small_ = q.fits_u64(q64) && q64 <= (unsigned long long)INT64_MAX;
    if (small_) order_ = (long long)q64;
    q.sub_small(1);
    qm1_ = q;
}

long long FFContext::order() const {
    if (!small_) throw contract_error("FFContext: field order exceeds int64");
    return order_;
}

void FFContext::build() {
    // lex-least monic irreducible of degree k, coefficient vectors scanned in
    // dictionary order on (c_0, ..., c_{k-1}); candidates with c_0 = 0 are
    // divisible by x, so the scan starts at c_0 = 1
    std::vector<long long> c(k_, 0);
    c[0] = 1;
    while (true) {
        Poly f(c.begin(), c.end());
        f.push_back(1);
        if (poly_irreducible(f, p_)) { mod_ = c; break; }
        int i = k_ - 1;
        while (i >= 1 && c[i] == p_ - 1) c[i--] = 0;
        if (i >= 1) { ++c[i]; continue; }
        if (c[0] == p_ - 1) throw std::logic_error("FFContext: no irreducible found");
        ++c[0];
    }
    // reduction rows for x^{k+i}
    Poly f(mod_.begin(), mod_.end());
    f.push_back(1);
    Poly cur(k_ + 1, 0);
    cur[k_] = 1;
    cur = poly_rem(cur, f, p_);
    redrows_.clear();
    for (int i = 0; i <= k_ - 2; ++i) {
        Poly row = cur;
        row.resize(k_, 0);
        redrows_.push_back(std::vector<long long>(row.begin(), row.begin() + k_));
        cur.insert(cur.begin(), 0);
        cur = poly_rem(cur, f, p_);
    }
    if (small_) fact_ = factorize(order_ - 1);

    // generator for small fields: lex-least element of full order
    if (small_) {
        std::vector<long long> v(k_, 0);
        while (true) {
            int i = 0;
            while (i < k_ && v[i] == p_ - 1) v[i++] = 0;
            if (i == k_) throw std::logic_error("FFContext: no generator");
            ++v[i];
            FFElem x = from_coeffs(v);
            bool full = !x.is_zero();
            for (auto& [q, e] : fact_)
                if (full && x.pow((order_ - 1) / q) == one()) full = false;
            if (full) { gen_ = v; break; }
        }
    }

    // residue embedding: w0 = tau_0(omega)
    // convention: for odd p, tau_0(sqrt(d)) is the lex-least root of x^2 - d
    // and w0 is derived from it; at p = 2 (d = 5 mod 8) x^2 - d is inseparable
    // so w0 is the lex-least root of omega's minimal polynomial directly.
    if (p_ == 2) {
        long long t, n;
        omega_mult_rule(cfg_, t, n);
        std::vector<long long> v(k_, 0);
        long long cnt = 0;
        while (cnt < order_) {
            FFElem x = from_coeffs(v);
            if ((x * x - from_int(t) * x - from_int(n)).is_zero()) break;
            ++cnt;
            int i = 0;
            while (i < k_ && v[i] == p_ - 1) v[i++] = 0;
            if (i < k_) ++v[i];
        }
        if (cnt >= order_) throw std::logic_error("FFContext: no omega root");
        w0_ = v;
    } else {
        FFElem r = sqrt_of(from_int(cfg_.d));
        if (cfg_.half_coords()) {
            FFElem half = from_int(2).inverse();
            w0_ = ((one() + r) * half).coeffs();
        } else {
            w0_ = r.coeffs();
        }
    }
    w1_ = from_coeffs(w0_).frobenius().coeffs();
    if (w0_ == w1_) throw std::logic_error("FFContext: residue embeddings coincide");
}

std::shared_ptr<const FFContext> FFContext::get(const FieldConfig& cfg) {
    std::lock_guard<std::mutex> lk(cache_mu);
    auto key = std::make_pair(cfg.d, std::make_pair(cfg.p, cfg.k));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ctx = std::shared_ptr<FFContext>(new FFContext(cfg));
    ctx->build();
    cache[key] = ctx;
    return ctx;
}

FFElem FFContext::zero() const {
    return FFElem(std::vector<long long>(k_, 0), shared_from_this());
}
FFElem FFContext::one() const { return from_int(1); }

FFElem FFContext::from_int(long long n) const {
    std::vector<long long> c(k_, 0);
    c[0] = norm_mod(n, p_);
    return FFElem(std::move(c), shared_from_this());
}

FFElem FFContext::from_coeffs(std::vector<long long> c) const {
    c.resize(k_, 0);
    for (auto& x : c) x = norm_mod(x, p_);
    return FFElem(std::move(c), shared_from_this());
}

FFElem FFContext::generator() const {
    if (!small_) throw contract_error("FFContext: generator unsupported beyond int64 fields");
    return FFElem(gen_, shared_from_this());
}

FFElem FFContext::root_of_unity(long long n) const {
    if (n <= 0) throw contract_error("root_of_unity: order must be positive");
    if (n == 1) return one();
    BigUint e = qm1_;
    if (e.div_small((unsigned long long)n) != 0)
        throw contract_error("root_of_unity: order does not divide p^k - 1");
    auto nfact = factorize(n);
    // lex-least base whose (q-1)/n power has exact order n
    std::vector<long long> v(k_, 0);
    for (long long tries = 0; tries < (1 << 22); ++tries) {
        int i = 0;
        while (i < k_ && v[i] == p_ - 1) v[i++] = 0;
        if (i == k_) break;
        ++v[i];
        FFElem x = from_coeffs(v);
        FFElem y = x.pow_big(e.copy());
        if (y.is_zero() || y == one()) continue;
        bool exact = y.pow(n) == one();
        for (auto& [q, _] : nfact)
            if (exact && y.pow(n / q) == one()) exact = false;
        if (exact) return y;
    }
    throw std::logic_error("root_of_unity: search exhausted");
}

FFElem FFContext::sqrt_of(const FFElem& a) const {
    if (p_ == 2) throw contract_error("sqrt_of: odd characteristic only");
    if (a.is_zero()) return zero();
    // Tonelli-Shanks with q - 1 = 2^s t
    BigUint t = qm1_;
    long long s = 0;
    while (!t.odd()) {
        t.shr1();
        ++s;
    }
    // non-residue by lex scan
    FFElem z = zero();
    {
        std::vector<long long> v(k_, 0);
        while (true) {
            int i = 0;
            while (i < k_ && v[i] == p_ - 1) v[i++] = 0;
            if (i == k_) throw std::logic_error("sqrt_of: no non-residue");
            ++v[i];
            FFElem x = from_coeffs(v);
            BigUint half = qm1_;
            half.shr1();
            if (!x.is_zero() && x.pow_big(half) != one()) { z = x; break; }
        }
    }
    {
        BigUint half = qm1_;
        half.shr1();
        if (a.pow_big(half) != one()) throw contract_error("sqrt_of: not a square");
    }
    FFElem m_c = z.pow_big(t.copy());
    FFElem u = a.pow_big(t.copy());
    FFElem r;
    {
        // r = a^{(t+1)/2} = a^{(t >> 1)} * a, t odd
        BigUint e = t;
        e.shr1();
        r = a.pow_big(e) * a;
    }
    long long mexp = s;
    while (!(u == one())) {
        // least i with u^{2^i} = 1
        long long i = 0;
        FFElem probe = u;
        while (!(probe == one())) {
            probe = probe * probe;
            ++i;
            if (i > mexp) throw std::logic_error("sqrt_of: broken invariant");
        }
        FFElem b = m_c;
        for (long long j = 0; j < mexp - i - 1; ++j) b = b * b;
        mexp = i;
        m_c = b * b;
        u = u * m_c;
        r = r * b;
    }
    FFElem other = -r;
    return (r < other) ? r : other;
}

FFElem FFContext::res_w0() const { return FFElem(w0_, shared_from_this()); }
FFElem FFContext::res_w1() const { return FFElem(w1_, shared_from_this()); }

bool FFElem::is_zero() const {
    for (long long x : c_)
        if (x) return false;
    return true;
}

long long FFElem::p() const { return ctx_->p_; }

FFElem FFElem::add(const FFElem& o) const {
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = norm_mod(c_[i] + o.c_[i], ctx_->p_);
    return FFElem(std::move(c), ctx_);
}

FFElem FFElem::sub(const FFElem& o) const {
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = norm_mod(c_[i] - o.c_[i], ctx_->p_);
    return FFElem(std::move(c), ctx_);
}

FFElem FFElem::operator-() const {
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = norm_mod(-c_[i], ctx_->p_);
    return FFElem(std::move(c), ctx_);
}

FFElem FFElem::mul(const FFElem& o) const {
    const auto& ctx = *ctx_;
    int k = ctx.k_;
    long long p = ctx.p_;
    std::vector<long long> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        if (!c_[i]) continue;
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) % p;
    }
    std::vector<long long> c(prod.begin(), prod.begin() + k);
    for (int i = k; i < 2 * k - 1; ++i) {
        if (!prod[i]) continue;
        const auto& row = ctx.redrows_[i - k];
        for (int j = 0; j < k; ++j) c[j] = (c[j] + prod[i] * row[j]) % p;
    }
    for (auto& x : c) x = norm_mod(x, p);
    return FFElem(std::move(c), ctx_);
}

FFElem FFElem::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    FFElem r = ctx_->one(), b = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * b;
        b = b * b;
    }
    return r;
}

FFElem FFElem::pow_big(BigUint e) const {
    FFElem r = ctx_->one(), b = *this;
    while (!e.is_zero()) {
        if (e.odd()) r = r * b;
        b = b * b;
        e.shr1();
    }
    return r;
}

FFElem FFElem::inverse() const {
    if (is_zero()) throw contract_error("FFElem: inverse of zero");
    // extended Euclid in F_p[x] against the modulus
    long long p = ctx_->p_;
    Poly f(ctx_->mod_.begin(), ctx_->mod_.end());
    f.push_back(1);
    Poly a = poly_trim(Poly(c_.begin(), c_.end()));
    Poly r0 = f, r1 = a;
    Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        long long lead_inv = inv_mod(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            long long coef = rem.back() * lead_inv % p;
            size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = coef;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = norm_mod(rem[shift + i] - coef * r1[i], p);
            rem = poly_trim(rem);
        }
        Poly qs1 = poly_mul(q, s1, p);
        Poly snew = s0;
        if (snew.size() < qs1.size()) snew.resize(qs1.size(), 0);
        for (size_t i = 0; i < qs1.size(); ++i) snew[i] = norm_mod(snew[i] - qs1[i], p);
        snew = poly_trim(snew);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
    }
    // r0 = gcd (a nonzero constant since the modulus is irreducible)
    if (r0.size() != 1) throw std::logic_error("FFElem: inverse against reducible modulus");
    long long scale = inv_mod(r0[0], p);
    std::vector<long long> out(ctx_->k_, 0);
    for (size_t i = 0; i < s0.size(); ++i) out[i] = s0[i] * scale % p;
    return FFElem(std::move(out), ctx_);
}

long long FFElem::multiplicative_order() const {
    if (is_zero()) throw contract_error("FFElem: order of zero");
    if (ctx_->small_) {
        long long ord = ctx_->order_ - 1;
        for (auto& [q, e] : ctx_->fact_)
            for (int i = 0; i < e; ++i)
                if (pow(ord / q) == ctx_->one()) ord /= q;
                else break;
        return ord;
    }
    FFElem x = *this;
    for (long long ord = 1; ord <= (1 << 20); ++ord) {
        if (x == ctx_->one()) return ord;
        x = x * *this;
    }
    throw contract_error("FFElem: order beyond the search budget");
}

bool FFElem::eq(const FFElem& o) const {
    return ctx_->p_ == o.ctx_->p_ && ctx_->k_ == o.ctx_->k_ && c_ == o.c_;
}

bool operator<(const FFElem& a, const FFElem& b) {
    return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(),
                                        b.coeffs().rbegin(), b.coeffs().rend());
}

std::string FFElem::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (long long x : c_) {
        s += digits[(x >> 4) & 0xf];
        s += digits[x & 0xf];
    }
    return s;
}

FFElem FFElem::from_hex(const std::string& s, std::shared_ptr<const FFContext> ctx) {
    if ((int)s.size() != 2 * ctx->k())
        throw contract_error("FFElem::from_hex: wrong length");
    std::vector<long long> c(ctx->k());
    auto val = [](char ch) -> long long {
        if (ch >= '0' && ch <= '9') return ch - '0';
        if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
        if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
        throw contract_error("FFElem::from_hex: bad digit");
    };
    for (int i = 0; i < ctx->k(); ++i) {
        long long x = val(s[2 * i]) * 16 + val(s[2 * i + 1]);
        if (x >= ctx->p()) throw contract_error("FFElem::from_hex: coefficient out of range");
        c[i] = x;
    }
    return ctx->from_coeffs(std::move(c));
}

bool FFElem::in_fp2() const {
    long long p2 = ctx_->p_ * ctx_->p_;
    return pow(p2) == *this;
}

FFElem embed(const QuadElem& m, int i, const std::shared_ptr<const FFContext>& ctx) {
    auto [u, v] = m.omega_coords();
    FFElem w = (i == 0) ? ctx->res_w0() : ctx->res_w1();
    return ctx->from_int(u) + ctx->from_int(v) * w;
}

FFElem power_l(const QuadElem& m, const std::pair<long long, long long>& l,
               const std::shared_ptr<const FFContext>& ctx) {
    FFElem r = ctx->one();
    for (int i = 0; i < 2; ++i) {
        long long li = (i == 0) ? l.first : l.second;
        if (li == 0) continue;
        FFElem e = embed(m, i, ctx);
        if (e.is_zero() && li < 0)
            throw contract_error("power_l: negative exponent at residue zero");
        r = r * e.pow(li);
    }
    return r;
}

}  // namespace hmf
