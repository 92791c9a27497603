#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmf/rational.hpp"

namespace hmf {

struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadElem;

// Real quadratic field Q(sqrt(d)) with p inert and narrow class number 1;
// coefficients of forms live in F_{p^k}.  Validation at construction checks
// squarefreeness, inertness of p, h+ = 1 and that k is even.
struct FieldConfig {
    long long d = 5;
    long long p = 3;
    int k = 2;

    FieldConfig() = default;
    FieldConfig(long long d_, long long p_, int k_);

    bool half_coords() const { return d % 4 == 1; }
    // field discriminant: d if d = 1 mod 4, else 4d
    long long disc() const { return half_coords() ? d : 4 * d; }

    friend bool operator==(const FieldConfig& a, const FieldConfig& b) {
        return a.d == b.d && a.p == b.p && a.k == b.k;
    }
    friend bool operator!=(const FieldConfig& a, const FieldConfig& b) { return !(a == b); }
};

// Element a + b*sqrt(d) of Q(sqrt(d)), exact rational coordinates.
// Integrality (membership in O_F) allows half-integer a, b when d = 1 mod 4.
struct QuadElem {
    Rat a, b;
    long long d = 0;

    QuadElem() = default;
    QuadElem(Rat a_, Rat b_, long long d_) : a(a_), b(b_), d(d_) {}
    static QuadElem integer(long long n, const FieldConfig& cfg) {
        return QuadElem(Rat(n), Rat(0), cfg.d);
    }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    QuadElem conj() const { return QuadElem(a, -b, d); }
    Rat norm() const { return a * a - Rat(d) * b * b; }
    Rat trace() const { return a + a; }

    // membership in O_F = Z[omega], omega = (1+sqrt(d))/2 or sqrt(d)
    bool is_integral() const;
    // coordinates (u, v) with x = u + v*omega; requires is_integral()
    std::pair<long long, long long> omega_coords() const;

    // sign of the real embedding tau_i (tau_0: sqrt(d) > 0), exact
    int embedding_sign(int i) const;
    bool totally_positive() const { return embedding_sign(0) > 0 && embedding_sign(1) > 0; }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        check_same(x, y);
        return QuadElem(x.a + y.a, x.b + y.b, x.d);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
        check_same(x, y);
        return QuadElem(x.a - y.a, x.b - y.b, x.d);
    }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        check_same(x, y);
        return QuadElem(x.a * y.a + Rat(x.d) * x.b * y.b, x.a * y.b + x.b * y.a, x.d);
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) {
        check_same(x, y);
        Rat n = y.norm();
        if (n.is_zero()) throw std::domain_error("QuadElem: division by zero");
        QuadElem z = x * y.conj();
        return QuadElem(z.a / n, z.b / n, x.d);
    }
    QuadElem operator-() const { return QuadElem(-a, -b, d); }

    QuadElem pow(long long e) const;

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.d == y.d && x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }
    // (norm, trace, b) ordering; a total order on totally positive elements
    // adequate for deterministic containers
    friend bool operator<(const QuadElem& x, const QuadElem& y);

    std::string str() const;  // "a+b*sqrt(d)" grammar, lowest terms

  private:
    static void check_same(const QuadElem& x, const QuadElem& y) {
        if (x.d != y.d) throw std::logic_error("QuadElem: mixed fields");
    }
};

QuadElem parse_quad(const std::string& s, const FieldConfig& cfg);

// Generator of the totally positive unit group, tau_0 > 1.
QuadElem fundamental_tp_unit(const FieldConfig& cfg);

// Canonical representative of the unit orbit of a totally positive element:
// (m*, e) with m* = eps^-e * m and 1 <= tau0(m*)/tau1(m*) < tau0(eps)^2.
std::pair<QuadElem, long long> orbit_rep(const QuadElem& m, const FieldConfig& cfg);

// True if m is its own orbit representative.
bool is_orbit_rep(const QuadElem& m, const FieldConfig& cfg);

// One canonical representative per unit orbit of totally positive integral m
// with Nm(m) <= B, sorted by (norm, trace).
std::vector<QuadElem> enumerate_tp_reps(const FieldConfig& cfg, long long B);

enum class Splitting { split, inert, ramified };

struct PrimeIdeal {
    QuadElem gen;         // canonical totally positive generator
    long long norm = 0;   // residue norm Nm(v)
    long long q = 0;      // rational prime below
};

struct PrimeInfo {
    long long q = 0;
    Splitting type = Splitting::inert;
    std::vector<PrimeIdeal> primes;  // one entry (inert/ramified) or two (split)
};

PrimeInfo prime_over(const FieldConfig& cfg, long long q);

// v-adic valuation of a nonzero integral element.
int valuation(const QuadElem& x, const PrimeIdeal& v);

// All prime ideals dividing the integral element x (by rational prime).
std::vector<PrimeIdeal> prime_divisors(const QuadElem& x, const FieldConfig& cfg);

// Canonical totally positive generator of the fractional ideal (x):
// the orbit representative of a totally positive associate.  Requires h+ = 1
// sign adjustment, i.e. a unit of norm -1 (guaranteed by FieldConfig).
QuadElem canonical_tp_generator(const QuadElem& x, const FieldConfig& cfg);

// Canonical totally positive generator of the inverse different.
QuadElem inverse_different_gen(const FieldConfig& cfg);

// Hermite form [[a, b], [0, c]] of the ideal (g) as a Z-lattice in the
// integral basis {1, omega}; residues mod (g) are the pairs (u, v) with
// 0 <= u < a, 0 <= v < c.
struct IdealLattice {
    long long a = 1, b = 0, c = 1;
    long long index() const { return a * c; }  // = |Nm(g)|
};
IdealLattice ideal_hnf(const QuadElem& g, const FieldConfig& cfg);

// omega^2 = t*omega + n in O_F = Z[omega]
void omega_mult_rule(const FieldConfig& cfg, long long& t, long long& n);

}  // namespace hmf
