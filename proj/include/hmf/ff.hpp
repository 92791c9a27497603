#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hmf/quad.hpp"

namespace hmf {

class FFElem;

// Arithmetic context for F_{p^k}: the lexicographically least monic
// irreducible modulus of degree k over F_p, plus the residue embeddings
// tau_0, tau_1 : O_F -> F_{p^2} <= F_{p^k} fixed by the lex-least-root
// convention (see res_w0 below).
// Unsigned big integer, just large enough to carry exponents up to p^k - 1.
struct BigUint {
    std::vector<unsigned long long> limbs;  // base 2^32, little-endian

    BigUint() = default;
    explicit BigUint(unsigned long long v);
    bool is_zero() const;
    bool odd() const;
    void shr1();
    void mul_small(unsigned long long m);
    // divide in place, returning the remainder
    unsigned long long div_small(unsigned long long m);
    void sub_small(unsigned long long m);
    bool fits_u64(unsigned long long& out) const;
    BigUint copy() const { return *this; }
};

class FFContext : public std::enable_shared_from_this<FFContext> {
  public:
    static std::shared_ptr<const FFContext> get(const FieldConfig& cfg);

    long long p() const { return p_; }
    int k() const { return k_; }
    long long order() const;                                 // p^k; throws when beyond int64
    const BigUint& order_minus_1() const { return qm1_; }
    const std::vector<long long>& modulus() const { return mod_; }
    const FieldConfig& cfg() const { return cfg_; }

    FFElem zero() const;
    FFElem one() const;
    FFElem from_int(long long n) const;                     // image of Z
    FFElem from_coeffs(std::vector<long long> c) const;

    // multiplicative generator (lex-least primitive element); small fields only
    FFElem generator() const;
    // root of unity of exact order n; throws if n does not divide p^k - 1
    FFElem root_of_unity(long long n) const;
    // lex-least square root, for odd p; throws on non-squares
    FFElem sqrt_of(const FFElem& a) const;

    // image of omega under tau_0 (tau_1 = Frobenius of it)
    FFElem res_w0() const;
    FFElem res_w1() const;

  private:
    explicit FFContext(const FieldConfig& cfg);
    void build();

    FieldConfig cfg_;
    long long p_;
    int k_;
    bool small_ = true;   // p^k fits int64
    long long order_ = 0;
    BigUint qm1_;
    std::vector<long long> mod_;                  // monic: mod_[0..k-1], x^k implicit
    std::vector<std::vector<long long>> redrows_; // x^{k+i} reduced, i = 0..k-2
    std::vector<std::pair<long long, int>> fact_; // of p^k - 1, small fields only
    std::vector<long long> w0_, w1_, gen_;
    friend class FFElem;
};

// Element of F_{p^k} as a coefficient vector in the fixed modulus basis.
class FFElem {
  public:
    FFElem() = default;

    bool is_zero() const;
    long long p() const;

    FFElem add(const FFElem& o) const;
    FFElem sub(const FFElem& o) const;
    FFElem mul(const FFElem& o) const;
    friend FFElem operator+(const FFElem& a, const FFElem& b) { return a.add(b); }
    friend FFElem operator-(const FFElem& a, const FFElem& b) { return a.sub(b); }
    friend FFElem operator*(const FFElem& a, const FFElem& b) { return a.mul(b); }
    FFElem operator-() const;
    FFElem inverse() const;
    FFElem pow(long long e) const;  // negative e inverts
    FFElem pow_big(BigUint e) const;
    FFElem frobenius() const { return pow(ctx_->p_); }

    // order of the element; throws when it exceeds the search budget in a
    // field too large for the factored computation
    long long multiplicative_order() const;

    bool eq(const FFElem& o) const;
    friend bool operator==(const FFElem& a, const FFElem& b) { return a.eq(b); }
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }
    friend bool operator<(const FFElem& a, const FFElem& b);  // lex on coefficients

    // two hex digits per F_p coefficient, constant term first
    std::string hex() const;
    static FFElem from_hex(const std::string& s, std::shared_ptr<const FFContext> ctx);

    const std::vector<long long>& coeffs() const { return c_; }
    std::shared_ptr<const FFContext> context() const { return ctx_; }

    // true iff the element lies in the subfield F_{p^2}
    bool in_fp2() const;

  private:
    friend class FFContext;
    FFElem(std::vector<long long> c, std::shared_ptr<const FFContext> ctx)
        : c_(std::move(c)), ctx_(std::move(ctx)) {}
    std::vector<long long> c_;
    std::shared_ptr<const FFContext> ctx_;
};

// Residue embedding tau_i applied to an integral element (i in {0, 1}).
FFElem embed(const QuadElem& m, int i, const std::shared_ptr<const FFContext>& ctx);

// prod_i tau_i(m)^{l_i}; m must be prime to p when some l_i < 0.
FFElem power_l(const QuadElem& m, const std::pair<long long, long long>& l,
               const std::shared_ptr<const FFContext>& ctx);

}  // namespace hmf
