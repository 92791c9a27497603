#include "hmf/twist.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hmf {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// determinant of the HNF of the lattice spanned by omega-coordinate rows;
// 0 marks rank < 2
long long lattice_index(std::vector<std::pair<long long, long long>> rows) {
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
    long long c = carrier.second < 0 ? -carrier.second : carrier.second;
    long long a = 0;
    for (auto& r : rows) a = std::gcd(a, r.first);
    if (a < 0) a = -a;
    return a * c;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> out;
    for (long long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

long long mult_order_mod(long long a, long long n) {  // order of a in (Z/n)^x
    if (n == 1) return 1;
    if (std::gcd(a % n, n) != 1) throw contract_error("mult_order_mod: not a unit");
    long long x = a % n, ord = 1;
    while (x != 1) {
        x = x * a % n;
        ++ord;
        if (ord > n) throw std::logic_error("mult_order_mod");
    }
    return ord;
}

using Res = std::pair<long long, long long>;

// cyclic decomposition of a finite abelian group given by element list and a
// multiplication map; all element orders must be powers of a single prime q
struct SylowGroup {
    std::vector<Res> elems;
    std::map<std::pair<Res, Res>, Res> mul;
    Res id;

    Res times(const Res& x, const Res& y) const { return mul.at({x, y}); }
    Res power(Res x, long long e) const {
        Res r = id;
        for (; e > 0; --e) r = times(r, x);
        return r;
    }
    long long order_of(const Res& x) const {
        long long o = 1;
        Res c = x;
        while (c != id) { c = times(c, x); ++o; }
        return o;
    }
};

void decompose_sylow(const SylowGroup& G, std::vector<std::pair<Res, long long>>& out) {
    if (G.elems.size() == 1) return;
    // generator of maximal order, ties broken by residue order
    Res best = G.id;
    long long bestord = 1;
    for (auto& x : G.elems) {
        long long o = G.order_of(x);
        if (o > bestord || (o == bestord && x < best)) { best = x; bestord = o; }
    }
    out.push_back({best, bestord});
    if (bestord == (long long)G.elems.size()) return;

    // subgroup generated by best, and canonical coset representatives
    std::set<Res> H;
    {
        Res c = G.id;
        do { H.insert(c); c = G.times(c, best); } while (c != G.id);
    }
    std::map<Res, Res> rep;  // element -> least member of its H-coset
    for (auto& x : G.elems) {
        if (rep.count(x)) continue;
        std::vector<Res> coset;
        for (auto& h : H) coset.push_back(G.times(x, h));
        Res r = *std::min_element(coset.begin(), coset.end());
        for (auto& y : coset) rep[y] = r;
    }
    SylowGroup Q;
    Q.id = rep[G.id];
    std::set<Res> qset;
    for (auto& x : G.elems) qset.insert(rep[x]);
    Q.elems.assign(qset.begin(), qset.end());
    for (auto& x : Q.elems)
        for (auto& y : Q.elems) Q.mul[{x, y}] = rep[G.times(x, y)];

    std::vector<std::pair<Res, long long>> sub;
    decompose_sylow(Q, sub);
    for (auto& [ybar, qb] : sub) {
        // lift: ybar^qb lies in <best>; divide out to get an exact-order lift
        Res pw = G.power(ybar, qb);
        long long c = 0;
        Res cur = G.id;
        while (cur != pw) { cur = G.times(cur, best); ++c; }
        // qb divides c; adjust by best^{-c/qb}
        long long adj = (bestord - (c / qb) % bestord) % bestord;
        Res lifted = G.times(ybar, G.power(best, adj));
        out.push_back({lifted, qb});
    }
}

}  // namespace

UnitGroupModM::UnitGroupModM(const QuadElem& modulus, const FieldConfig& cfg)
    : modulus_(modulus), cfg_(cfg) {
    if (!modulus.is_integral() || !modulus.totally_positive())
        throw contract_error("UnitGroupModM: modulus must be a totally positive integral generator");
    if ((modulus / QuadElem::integer(cfg.p, cfg)).is_integral())
        throw contract_error("UnitGroupModM: modulus must be prime to p");
    lat_ = ideal_hnf(modulus, cfg);

    // unit residues
    std::vector<Res> units;
    for (long long u = 0; u < lat_.a; ++u)
        for (long long v = 0; v < lat_.c; ++v)
            if (is_unit(lift({u, v}))) units.push_back({u, v});
    order_ = (long long)units.size();

    if (order_ > 1) {
        // multiplication on residues
        auto mulres = [&](const Res& x, const Res& y) {
            return reduce(lift(x) * lift(y));
        };
        Res id = reduce(QuadElem::integer(1, cfg));
        auto powres = [&](Res x, long long e) {
            Res r = id;
            for (; e > 0; e >>= 1) {
                if (e & 1) r = mulres(r, x);
                x = mulres(x, x);
            }
            return r;
        };
        // Sylow subgroups, one per prime divisor of the order
        for (long long q : prime_factors(order_)) {
            long long qpow = 1;
            while (order_ % (qpow * q) == 0) qpow *= q;
            SylowGroup S;
            S.id = id;
            std::set<Res> selems;
            for (auto& x : units) selems.insert(powres(x, order_ / qpow));
            S.elems.assign(selems.begin(), selems.end());
            for (auto& x : S.elems)
                for (auto& y : S.elems) S.mul[{x, y}] = mulres(x, y);
            std::vector<std::pair<Res, long long>> part;
            decompose_sylow(S, part);
            for (auto& [g, o] : part) gens_.push_back({g, o});
        }
    }

    // discrete logs by enumeration of the generator span; the count check
    // certifies the decomposition is a direct sum
    std::vector<long long> exps(gens_.size(), 0);
    auto span = [&](auto&& self, size_t i, Res acc) -> void {
        if (i == gens_.size()) {
            dlog_[acc] = exps;
            return;
        }
        Res cur = acc;
        for (long long e = 0; e < gens_[i].order; ++e) {
            exps[i] = e;
            self(self, i + 1, cur);
            cur = reduce(lift(cur) * lift(gens_[i].residue));
        }
        exps[i] = 0;
    };
    span(span, 0, reduce(QuadElem::integer(1, cfg_)));
    if ((long long)dlog_.size() != order_)
        throw std::logic_error("UnitGroupModM: generator span misses units");
}

Res UnitGroupModM::reduce(const QuadElem& x) const {
    auto [u, v] = x.omega_coords();
    long long j = floor_div(v, lat_.c);
    u -= j * lat_.b;
    v -= j * lat_.c;
    u -= floor_div(u, lat_.a) * lat_.a;
    return {u, v};
}

bool UnitGroupModM::is_unit(const QuadElem& x) const {
    auto [u, v] = x.omega_coords();
    long long t, n;
    omega_mult_rule(cfg_, t, n);
    auto [gu, gv] = modulus_.omega_coords();
    // lattice spanned by x, x*omega, g, g*omega must be all of O_F
    return lattice_index({{u, v},
                          {v * n, u + v * t},
                          {gu, gv},
                          {gv * n, gu + gv * t}}) == 1;
}

std::vector<long long> UnitGroupModM::dlog(const QuadElem& x) const {
    auto it = dlog_.find(reduce(x));
    if (it == dlog_.end()) throw contract_error("dlog: not a unit residue");
    return it->second;
}

std::vector<Res> UnitGroupModM::unit_residues() const {
    std::vector<Res> out;
    for (auto& [r, e] : dlog_) out.push_back(r);
    return out;
}

QuadElem UnitGroupModM::lift(const Res& res) const {
    long long den = cfg_.half_coords() ? 2 : 1;
    // x = u + v*omega; omega = (1 + sqrt(d))/2 or sqrt(d)
    if (cfg_.half_coords())
        return QuadElem(Rat(2 * res.first + res.second, 2), Rat(res.second, 2), cfg_.d);
    (void)den;
    return QuadElem(Rat(res.first), Rat(res.second), cfg_.d);
}

bool TwistChar::is_trivial() const {
    auto one = ctx()->one();
    for (auto& v : values)
        if (v != one) return false;
    return true;
}

FFElem TwistChar::value(const QuadElem& x) const {
    auto exps = group->dlog(x);
    FFElem r = ctx()->one();
    for (size_t i = 0; i < exps.size(); ++i) r = r * values[i].pow(exps[i]);
    return r;
}

FFElem TwistChar::value_or_zero(const QuadElem& x) const {
    if (!group->is_unit(x)) return ctx()->zero();
    return value(x);
}

TwistChar TwistChar::inverse() const {
    TwistChar r = *this;
    for (auto& v : r.values) v = v.inverse();
    r.lprime = {-lprime.first, -lprime.second};
    return r;
}

bool TwistChar::full_conductor() const {
    const auto& cfg = group->cfg();
    auto one = ctx()->one();
    for (auto& v : prime_divisors(group->modulus(), cfg)) {
        QuadElem sub = group->modulus() / v.gen;
        bool ramified_here = false;
        for (auto& r : group->unit_residues()) {
            QuadElem x = group->lift(r);
            QuadElem diff = x - QuadElem::integer(1, cfg);
            bool cong1 = diff.is_zero() || (diff / sub).is_integral();
            if (cong1 && value(x) != one) { ramified_here = true; break; }
        }
        if (!ramified_here) return false;
    }
    return true;
}

long long additive_level(const QuadElem& modulus, const FieldConfig& cfg) {
    long long nm = modulus.norm().num;
    if (nm < 0) nm = -nm;
    for (long long n = 1; n <= nm; ++n) {
        if (nm % n) continue;
        if ((QuadElem::integer(n, cfg) / modulus).is_integral()) return n;
    }
    throw std::logic_error("additive_level: norm not divisible");
}

int minimal_sufficient_k(const QuadElem& modulus, const FieldConfig& cfg) {
    UnitGroupModM group(modulus, cfg);
    long long need = 1;
    for (auto& g : group.generators()) {
        long long n = g.order;
        while (n % cfg.p == 0) n /= cfg.p;
        need = std::lcm(need, n);
    }
    need = std::lcm(need, additive_level(modulus, cfg));
    long long k = mult_order_mod(cfg.p % need, need);
    if (k % 2) k *= 2;
    return (int)k;
}

std::vector<TwistChar> characters_of_weight(const QuadElem& modulus, const LVec& lprime,
                                            const FieldConfig& cfg) {
    auto ctx = FFContext::get(cfg);
    auto group = std::make_shared<UnitGroupModM>(modulus, cfg);

    std::vector<long long> nprime;   // prime-to-p parts of the generator orders
    std::vector<FFElem> roots;       // a fixed primitive n'_i-th root each
    for (auto& g : group->generators()) {
        long long n = g.order;
        while (n % cfg.p == 0) n /= cfg.p;
        BigUint q1 = ctx->order_minus_1();
        if (q1.div_small((unsigned long long)n) != 0) {
            throw contract_error("characters_of_weight: F_{p^k} too small, need k = " +
                                 std::to_string(minimal_sufficient_k(modulus, cfg)));
        }
        nprime.push_back(n);
        roots.push_back(ctx->root_of_unity(n));
    }

    FFElem target = power_l(fundamental_tp_unit(cfg), lprime, ctx);
    std::vector<long long> eps_exps = group->dlog(fundamental_tp_unit(cfg));

    std::vector<TwistChar> out;
    std::vector<long long> js(nprime.size(), 0);
    while (true) {
        TwistChar chi;
        chi.group = group;
        chi.lprime = lprime;
        FFElem at_eps = ctx->one();
        for (size_t i = 0; i < nprime.size(); ++i) {
            FFElem zi = roots[i].pow(js[i]);
            chi.values.push_back(zi);
            at_eps = at_eps * zi.pow(eps_exps[i]);
        }
        if (at_eps == target) out.push_back(chi);
        size_t i = 0;
        while (i < js.size() && js[i] + 1 == nprime[i]) js[i++] = 0;
        if (i == js.size()) break;
        ++js[i];
    }
    return out;
}

GaussEvaluator::GaussEvaluator(const TwistChar& xi, const FFElem& zeta_N)
    : xi_(xi), delta_(inverse_different_gen(xi.group->cfg())) {
    const auto& cfg = xi.group->cfg();
    auto ctx = xi.ctx();
    const QuadElem& g = xi.group->modulus();
    if (g.norm() == Rat(1)) throw contract_error("gauss_sum: conductor-1 sums are excluded");
    N_ = zeta_N.multiplicative_order();
    if (!(QuadElem::integer(N_, cfg) / g).is_integral())
        throw contract_error("gauss_sum: zeta order not divisible by the modulus");
    zpow_.push_back(ctx->one());
    for (long long i = 1; i < N_; ++i) zpow_.push_back(zpow_.back() * zeta_N);
    TwistChar xinv = xi.inverse();
    for (auto& r : xi.group->unit_residues()) {
        QuadElem b = xi.group->lift(r);
        terms_.push_back({b, xinv.value(b)});
    }
}

FFElem GaussEvaluator::eval(const QuadElem& m) const {
    const auto& cfg = xi_.group->cfg();
    auto ctx = xi_.ctx();
    if (!(m * xi_.group->modulus()).is_integral())
        throw contract_error("gauss_sum: m outside the inverse modulus");
    FFElem acc = ctx->zero();
    for (auto& [b, chi_inv] : terms_) {
        // zeta(-b m) = zeta_N ^ (N * Tr(-b m delta))
        Rat e = (QuadElem(Rat(-N_), Rat(0), cfg.d) * b * m * delta_).trace();
        if (!e.is_integer()) throw std::logic_error("gauss_sum: nonintegral pairing");
        long long exp = e.num % N_;
        if (exp < 0) exp += N_;
        acc = acc + chi_inv * zpow_[exp];
    }
    return acc;
}

FFElem gauss_sum(const TwistChar& xi, const QuadElem& m, const FFElem& zeta_N) {
    return GaussEvaluator(xi, zeta_N).eval(m);
}

std::vector<TwistChar> all_characters(const QuadElem& modulus, const FieldConfig& cfg) {
    auto ctx = FFContext::get(cfg);
    auto group = std::make_shared<UnitGroupModM>(modulus, cfg);
    std::vector<long long> nprime;
    std::vector<FFElem> roots;
    for (auto& g : group->generators()) {
        long long n = g.order;
        while (n % cfg.p == 0) n /= cfg.p;
        BigUint q1 = ctx->order_minus_1();
        if (q1.div_small((unsigned long long)n) != 0)
            throw contract_error("all_characters: F_{p^k} too small, need k = " +
                                 std::to_string(minimal_sufficient_k(modulus, cfg)));
        nprime.push_back(n);
        roots.push_back(ctx->root_of_unity(n));
    }
    std::vector<TwistChar> out;
    std::vector<long long> js(nprime.size(), 0);
    while (true) {
        TwistChar chi;
        chi.group = group;
        chi.lprime = {0, 0};
        for (size_t i = 0; i < nprime.size(); ++i) chi.values.push_back(roots[i].pow(js[i]));
        out.push_back(chi);
        size_t i = 0;
        while (i < js.size() && js[i] + 1 == nprime[i]) js[i++] = 0;
        if (i == js.size()) break;
        ++js[i];
    }
    return out;
}

QExpansion twist(const QExpansion& f, const TwistChar& xi) {
    const FieldConfig& cfg = f.cfg;
    if (xi.group->cfg() != cfg) throw contract_error("twist: field mismatch");
    const QuadElem& g = xi.group->modulus();
    bool unit_modulus = g.norm() == Rat(1);

    Weight w = f.weight;
    w.l = {w.l.first + xi.lprime.first, w.l.second + xi.lprime.second};
    QuadElem level = unit_modulus ? f.level : orbit_rep(f.level * g * g, cfg).first;

    std::map<QuadElem, FFElem> out;
    for (auto& [m, c] : f.coeffs) {
        if (!xi.group->is_unit(m)) continue;
        out.emplace(m, xi.value(m).inverse() * c);
    }
    FFElem r0 = unit_modulus ? f.r0 : f.ctx->zero();
    return make_qexp(cfg, w, level, f.bound, std::move(out), r0);
}

}  // namespace hmf
