#include "hmf/qexp.hpp"

#include <cmath>
#include <cstdlib>

namespace hmf {

namespace {

bool prime_to_p(const QuadElem& x, const FieldConfig& cfg) {
    // p inert: p | x iff x/p integral
    return !(x / QuadElem::integer(cfg.p, cfg)).is_integral();
}

FFElem unit_l_factor(const QExpansion& f) {
    return power_l(fundamental_tp_unit(f.cfg), f.weight.l, f.ctx);
}

}  // namespace

long long storage_cap() {
    if (const char* s = std::getenv("HMF_MAX_BOUND")) {
        long long v = std::atoll(s);
        if (v >= 1) return v;
    }
    return 10000;
}

QExpansion make_qexp(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                     long long bound, std::map<QuadElem, FFElem> coeffs, FFElem r0) {
    QExpansion f;
    f.cfg = cfg;
    f.ctx = FFContext::get(cfg);
    f.weight = w;
    f.level = level;
    f.bound = bound;
    if (bound < 1) throw contract_error("make_qexp: bound must be >= 1");
    if (!level.is_integral() || !level.totally_positive())
        throw contract_error("make_qexp: level generator must be totally positive integral");
    if (!prime_to_p(level, cfg)) throw contract_error("make_qexp: level not prime to p");
    for (auto& [m, c] : coeffs) {
        if (!m.is_integral() || !m.totally_positive() || !is_orbit_rep(m, cfg))
            throw contract_error("make_qexp: key is not a canonical representative");
        if (Rat(bound) < m.norm()) throw contract_error("make_qexp: key beyond bound");
        if (!c.is_zero()) f.coeffs.emplace(m, c);
    }
    f.r0 = r0;
    if (!r0.is_zero() && unit_l_factor(f) != f.ctx->one())
        throw contract_error("make_qexp: constant term must vanish unless the unit acts trivially");
    return f;
}

FFElem coeff(const QExpansion& f, const QuadElem& m) {
    if (m.is_zero()) return f.r0;
    if (!m.totally_positive()) throw contract_error("coeff: index not totally positive");
    if (Rat(f.bound) < m.norm()) throw contract_error("coeff: index beyond truncation bound");
    auto [rep, e] = orbit_rep(m, f.cfg);
    auto it = f.coeffs.find(rep);
    if (it == f.coeffs.end()) return f.ctx->zero();
    if (e == 0 || (f.weight.l.first == 0 && f.weight.l.second == 0)) return it->second;
    // r_{eps^e rep} = power_l(eps, -l)^e r_rep
    FFElem u = power_l(fundamental_tp_unit(f.cfg), f.weight.l, f.ctx);
    return u.pow(-e) * it->second;
}

QExpansion add(const QExpansion& f, const QExpansion& g) {
    if (f.cfg != g.cfg || f.weight != g.weight || f.level != g.level)
        throw contract_error("add: weight/level/field mismatch");
    long long b = std::min(f.bound, g.bound);
    std::map<QuadElem, FFElem> c;
    for (auto& [m, x] : f.coeffs)
        if (!(Rat(b) < m.norm())) c.emplace(m, x);
    for (auto& [m, x] : g.coeffs) {
        if (Rat(b) < m.norm()) continue;
        auto it = c.find(m);
        if (it == c.end()) c.emplace(m, x);
        else it->second = it->second + x;
    }
    return make_qexp(f.cfg, f.weight, f.level, b, std::move(c), f.r0 + g.r0);
}

QExpansion scale(const FFElem& s, const QExpansion& f) {
    std::map<QuadElem, FFElem> c;
    for (auto& [m, x] : f.coeffs) c.emplace(m, s * x);
    return make_qexp(f.cfg, f.weight, f.level, f.bound, std::move(c), s * f.r0);
}

QExpansion mul(const QExpansion& f, const QExpansion& g) {
    if (f.cfg != g.cfg || f.level != g.level)
        throw contract_error("mul: level/field mismatch");
    Weight w{f.weight.k + g.weight.k, {f.weight.l.first + g.weight.l.first,
                                       f.weight.l.second + g.weight.l.second}};
    long long b = std::min(f.bound, g.bound);
    const FieldConfig& cfg = f.cfg;
    long long den = cfg.half_coords() ? 2 : 1;
    auto targets = enumerate_tp_reps(cfg, b);

    // r_m(fg) = sum over m = m' + m'' with m', m'' totally positive or 0.
    // Both embeddings of a summand lie below those of m, so every summand of
    // every target sits in one lattice box; tabulate both coefficient tables
    // over it once, then convolve with cheap map lookups.
    double sd = std::sqrt((double)cfg.d);
    double tmax = 0;
    for (auto& m : targets) {
        double tr = 2.0 * m.a.num / m.a.den;
        tmax = std::max(tmax, tr);
    }
    long long amax = (long long)std::ceil(tmax * den) + 2;
    long long bmax = (long long)std::ceil(tmax / sd * den) + 2;
    std::map<std::pair<long long, long long>, std::pair<FFElem, FFElem>> box;
    for (long long aa = 1; aa <= amax; ++aa)
        for (long long bb = -bmax; bb <= bmax; ++bb) {
            if (den == 2 && ((aa ^ bb) & 1)) continue;
            QuadElem x(Rat(aa, den), Rat(bb, den), cfg.d);
            if (!x.totally_positive()) continue;
            if (Rat(b) < x.norm()) continue;
            box.emplace(std::make_pair(aa, bb), std::make_pair(coeff(f, x), coeff(g, x)));
        }

    std::map<QuadElem, FFElem> out;
    for (auto& m : targets) {
        FFElem acc = f.r0 * coeff(g, m) + coeff(f, m) * g.r0;
        auto [ma, mb] = std::make_pair(m.a, m.b);
        long long mA = ma.num * (den / ma.den), mB = mb.num * (den / mb.den);
        for (auto& [key, vals] : box) {
            auto [aa, bb] = key;
            if (aa >= mA) break;  // trace must strictly decrease
            long long ca = mA - aa, cb = mB - bb;
            auto it = box.find({ca, cb});
            if (it == box.end()) continue;
            acc = acc + vals.first * it->second.second;
        }
        if (!acc.is_zero()) out.emplace(m, acc);
    }
    return make_qexp(cfg, w, f.level, b, std::move(out), f.r0 * g.r0);
}

QExpansion hecke_Tv(const QExpansion& f, const PrimeIdeal& v, const std::optional<FFElem>& dv) {
    const FieldConfig& cfg = f.cfg;
    long long b = f.bound / v.norm;
    if (b < 1) throw contract_error("hecke_Tv: truncation bound underflow");

    std::map<QuadElem, FFElem> out;
    FFElem r0_out = f.ctx->zero();
    auto reps = enumerate_tp_reps(cfg, b);

    if (v.q == cfg.p) {
        // v = (p): one-term rule, l = 0 and k >= 2 only
        if (f.weight.l != LVec{0, 0} || f.weight.k.first < 2 || f.weight.k.second < 2)
            throw contract_error("hecke_Tv: operator at p needs l = 0 and k >= 2");
        for (auto& m : reps) {
            FFElem c = coeff(f, m * QuadElem::integer(cfg.p, cfg));
            if (!c.is_zero()) out.emplace(m, c);
        }
        r0_out = f.r0;
        return make_qexp(cfg, f.weight, f.level, b, std::move(out), r0_out);
    }

    FFElem wl = power_l(v.gen, f.weight.l, f.ctx);
    bool level_prime = valuation(f.level, v) > 0;
    if (level_prime) {
        for (auto& m : reps) {
            FFElem c = wl * coeff(f, m * v.gen);
            if (!c.is_zero()) out.emplace(m, c);
        }
        r0_out = wl * f.r0;
        return make_qexp(cfg, f.weight, f.level, b, std::move(out), r0_out);
    }

    if (!dv) throw contract_error("hecke_Tv: S_v scalar required away from the level");
    FFElem wl_inv = power_l(v.gen, {-f.weight.l.first, -f.weight.l.second}, f.ctx);
    FFElem nv = f.ctx->from_int(v.norm);
    for (auto& m : reps) {
        FFElem c = wl * coeff(f, m * v.gen);
        QuadElem down = m / v.gen;
        if (down.is_integral() && down.totally_positive())
            c = c + nv * wl_inv * (*dv) * coeff(f, down);
        if (!c.is_zero()) out.emplace(m, c);
    }
    r0_out = (wl + nv * wl_inv * (*dv)) * f.r0;
    return make_qexp(cfg, f.weight, f.level, b, std::move(out), r0_out);
}

QExpansion theta(const QExpansion& f, int i) {
    std::map<QuadElem, FFElem> out;
    for (auto& [m, c] : f.coeffs) {
        FFElem x = embed(m, i, f.ctx) * c;
        if (!x.is_zero()) out.emplace(m, x);
    }
    return make_qexp(f.cfg, theta_weight(f.weight, i, f.cfg.p), f.level, f.bound,
                     std::move(out), f.ctx->zero());
}

QExpansion phi_v(const QExpansion& f) {
    if (f.weight.l != LVec{0, 0}) throw contract_error("phi_v: requires l = 0");
    long long p = f.cfg.p;
    long long b = std::min(f.bound * p * p, storage_cap());
    std::map<QuadElem, FFElem> out;
    QuadElem pe = QuadElem::integer(p, f.cfg);
    for (auto& [m, c] : f.coeffs) {
        QuadElem pm = m * pe;  // still a canonical representative
        if (Rat(b) < pm.norm()) continue;
        out.emplace(pm, c);
    }
    Weight w{phi_weight(f.weight.k, p), {0, 0}};
    return make_qexp(f.cfg, w, f.level, b, std::move(out), f.r0);
}

QExpansion frob(const QExpansion& f) {
    std::map<QuadElem, FFElem> out;
    for (auto& [m, c] : f.coeffs) out.emplace(m, c.pow(f.cfg.p));
    Weight w{{f.weight.k.second, f.weight.k.first}, {f.weight.l.second, f.weight.l.first}};
    return make_qexp(f.cfg, w, f.level, f.bound, std::move(out), f.r0.pow(f.cfg.p));
}

QExpansion mul_hasse(const QExpansion& f, int i) {
    Weight w = f.weight;
    w.k = w.k + hasse_weight(i, f.cfg.p);
    return make_qexp(f.cfg, w, f.level, f.bound, f.coeffs, f.r0);
}

bool ker_theta_test(const QExpansion& f) {
    if (!f.r0.is_zero()) return false;
    QuadElem pe = QuadElem::integer(f.cfg.p, f.cfg);
    for (auto& [m, c] : f.coeffs) {
        if (c.is_zero()) continue;
        if (!(m / pe).is_integral()) return false;
    }
    return true;
}

bool im_phi_test(const QExpansion& f) {
    if (!ker_theta_test(f)) return false;
    return f.weight.k.first % f.cfg.p == 0 && f.weight.k.second % f.cfg.p == 0;
}

QExpansion phi_v_preimage(const QExpansion& f) {
    if (!im_phi_test(f)) throw contract_error("phi_v_preimage: not a phi image");
    long long p = f.cfg.p;
    long long b = f.bound / (p * p);
    if (b < 1) throw contract_error("phi_v_preimage: truncation bound underflow");
    std::map<QuadElem, FFElem> out;
    QuadElem pe = QuadElem::integer(p, f.cfg);
    for (auto& [m, c] : f.coeffs) {
        QuadElem down = m / pe;
        if (!down.is_integral()) continue;  // cannot happen after im_phi_test
        if (Rat(b) < down.norm()) continue;
        out.emplace(down, c);
    }
    Weight w{{f.weight.k.second / p, f.weight.k.first / p}, {0, 0}};
    return make_qexp(f.cfg, w, f.level, b, std::move(out), f.r0);
}

bool qexp_equal(const QExpansion& f, const QExpansion& g) {
    return f.cfg == g.cfg && f.weight == g.weight && f.level == g.level &&
           f.bound == g.bound && f.r0 == g.r0 && f.coeffs == g.coeffs;
}

bool qexp_equal_lclass(const QExpansion& f, const QExpansion& g) {
    return f.cfg == g.cfg && f.weight.k == g.weight.k &&
           l_class_equal(f.weight.l, g.weight.l, f.cfg.p) && f.level == g.level &&
           f.bound == g.bound && f.r0 == g.r0 && f.coeffs == g.coeffs;
}

bool qexp_agree_on_common_bound(const QExpansion& f, const QExpansion& g) {
    if (f.cfg != g.cfg) return false;
    if (f.r0 != g.r0) return false;
    long long b = std::min(f.bound, g.bound);
    for (auto& m : enumerate_tp_reps(f.cfg, b))
        if (coeff(f, m) != coeff(g, m)) return false;
    return true;
}

}  // namespace hmf
