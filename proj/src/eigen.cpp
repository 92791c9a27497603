#include "hmf/eigen.hpp"

#include <random>

namespace hmf {

namespace {

bool divides(const QuadElem& num, const QuadElem& den) {
    return (num / den).is_integral();
}

FFElem lookup(const std::map<QuadElem, FFElem>& partial, const QuadElem& m,
              const EigenSystem& es, const std::shared_ptr<const FFContext>& ctx) {
    auto [rep, e] = orbit_rep(m, es.cfg);
    auto it = partial.find(rep);
    if (it == partial.end()) throw std::logic_error("reconstruct: norm induction out of order");
    if (e == 0 || es.weight.l == LVec{0, 0}) return it->second;
    FFElem u = power_l(fundamental_tp_unit(es.cfg), es.weight.l, ctx);
    return u.pow(-e) * it->second;
}

LVec neg(const LVec& l) { return {-l.first, -l.second}; }

}  // namespace

EigenSystem make_eigensystem(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                             std::map<QuadElem, EigenEntry> table, std::optional<FFElem> ap,
                             std::set<QuadElem> stabilised) {
    EigenSystem es;
    es.cfg = cfg;
    es.weight = w;
    es.level = level;
    es.table = std::move(table);
    es.ap = std::move(ap);
    es.stabilised = std::move(stabilised);
    if (!level.is_integral() || !level.totally_positive())
        throw contract_error("make_eigensystem: bad level generator");
    for (auto& [gen, entry] : es.table) {
        bool at_level = divides(es.level, gen) || es.stabilised.count(gen);
        bool at_p = divides(gen, QuadElem::integer(cfg.p, cfg));
        if (at_level || at_p) continue;
        if (!entry.d || entry.d->is_zero())
            throw contract_error("make_eigensystem: d_v must be nonzero away from level and p");
    }
    if (!nebentypus_consistent(es))
        throw contract_error("make_eigensystem: nebentypus constraint violated");
    return es;
}

bool nebentypus_consistent(const EigenSystem& es) {
    auto ctx = FFContext::get(es.cfg);
    LVec exp{es.weight.k.first + 2 * es.weight.l.first - 2,
             es.weight.k.second + 2 * es.weight.l.second - 2};
    for (auto& [gen, entry] : es.table) {
        if (!entry.d) continue;
        QuadElem diff = gen - QuadElem::integer(1, es.cfg);
        bool cong1 = diff.is_zero() || divides(diff, es.level);
        if (!cong1) continue;
        if (*entry.d != power_l(gen, exp, ctx)) return false;
    }
    return true;
}

QExpansion reconstruct(const EigenSystem& es, long long bound, PrimePick pick,
                       unsigned long long seed) {
    auto ctx = FFContext::get(es.cfg);
    const FieldConfig& cfg = es.cfg;
    QuadElem pgen = QuadElem::integer(cfg.p, cfg);
    bool p_regime = es.weight.l == LVec{0, 0} && es.weight.k.first >= 2 &&
                    es.weight.k.second >= 2 && es.ap.has_value();
    std::mt19937_64 rng(seed);

    std::map<QuadElem, FFElem> partial;
    partial.emplace(QuadElem::integer(1, cfg), ctx->one());

    // one recursion step along the prime with generator beta
    auto via = [&](const QuadElem& m, const PrimeIdeal& v) -> FFElem {
        const QuadElem& beta = v.gen;
        if (v.q == cfg.p) return *es.ap * lookup(partial, m / beta, es, ctx);
        auto it = es.table.find(beta);
        if (it == es.table.end())
            throw contract_error("reconstruct: missing eigenvalue at " + beta.str());
        const EigenEntry& ev = it->second;
        bool one_term = divides(es.level, beta) || es.stabilised.count(beta);
        FFElem acc = power_l(m, neg(es.weight.l), ctx) *
                     power_l(m / beta, es.weight.l, ctx) * ev.a *
                     lookup(partial, m / beta, es, ctx);
        QuadElem mbb = m / (beta * beta);
        if (!one_term && mbb.is_integral()) {
            if (!ev.d) throw contract_error("reconstruct: missing S_v eigenvalue at " + beta.str());
            acc = acc - power_l(m, neg(es.weight.l), ctx) * power_l(mbb, es.weight.l, ctx) *
                            (*ev.d) * ctx->from_int(v.norm) * lookup(partial, mbb, es, ctx);
        }
        return acc;
    };

    for (auto& m : enumerate_tp_reps(cfg, bound)) {
        if (m == QuadElem::integer(1, cfg)) continue;
        if (divides(m, pgen) && !p_regime) {
            partial.emplace(m, ctx->zero());
            continue;
        }
        auto divs = prime_divisors(m, cfg);
        if (divs.empty()) throw std::logic_error("reconstruct: norm-1 nonunit");
        size_t choice = 0;
        if (pick == PrimePick::largest) choice = divs.size() - 1;
        else if (pick == PrimePick::seeded) choice = rng() % divs.size();
        FFElem val = via(m, divs[choice]);
        // well-definedness across every admissible recursion path
        for (auto& v : divs) {
            FFElem alt = via(m, v);
            if (alt != val)
                throw contract_error("reconstruct: inconsistent multiplicativity at m = " + m.str());
        }
        partial.emplace(m, val);
    }
    return make_qexp(cfg, es.weight, es.level, bound, std::move(partial), ctx->zero());
}

std::pair<QExpansion, EigenSystem> stabilise(const QExpansion& f, const EigenSystem& es,
                                             const PrimeIdeal& v, const FFElem& alpha) {
    auto ctx = FFContext::get(es.cfg);
    if (v.q == es.cfg.p) throw contract_error("stabilise: not defined at p");
    auto it = es.table.find(v.gen);
    if (it == es.table.end() || !it->second.d)
        throw contract_error("stabilise: need a_v and d_v at v");
    FFElem a = it->second.a, d = *it->second.d;
    if (!(alpha * alpha - a * alpha + ctx->from_int(v.norm) * d).is_zero())
        throw contract_error("stabilise: alpha is not a root of the Hecke polynomial");

    FFElem c = power_l(v.gen, neg(f.weight.l), ctx);
    std::map<QuadElem, FFElem> out;
    for (auto& m : enumerate_tp_reps(es.cfg, f.bound)) {
        FFElem x = coeff(f, m);
        QuadElem down = m / v.gen;
        if (down.is_integral()) x = x - alpha * c * coeff(f, down);
        if (!x.is_zero()) out.emplace(m, x);
    }
    QuadElem level2 = orbit_rep(f.level * v.gen, es.cfg).first;
    QExpansion fs = make_qexp(es.cfg, f.weight, level2, f.bound, std::move(out), f.r0);

    EigenSystem es2 = es;
    es2.level = level2;
    es2.table[v.gen] = EigenEntry{a - alpha, std::nullopt};
    es2.stabilised.insert(v.gen);
    return {fs, es2};
}

bool is_strongly_stabilised(const QExpansion& f) {
    if (!f.r0.is_zero()) return false;
    QuadElem pgen = QuadElem::integer(f.cfg.p, f.cfg);
    for (auto& [m, c] : f.coeffs)
        if (!c.is_zero() && (m / pgen).is_integral()) return false;
    return true;
}

StrongCheckReport unique_strong_check(const EigenSystem& es, long long bound) {
    StrongCheckReport rep;
    try {
        QExpansion base = reconstruct(es, bound, PrimePick::smallest);
        for (auto alt : {reconstruct(es, bound, PrimePick::largest),
                         reconstruct(es, bound, PrimePick::seeded, 1),
                         reconstruct(es, bound, PrimePick::seeded, 2)}) {
            if (!qexp_equal(base, alt)) {
                rep.ok = false;
                rep.witness = "reconstruction differs across recursion paths";
                return rep;
            }
        }
    } catch (const contract_error& e) {
        rep.ok = false;
        rep.witness = e.what();
    }
    return rep;
}

LocalShapeReport ordinarity_report(const EigenSystem& es) {
    LocalShapeReport out;
    if (!es.ap) throw contract_error("ordinarity_report: a_p not present");
    if (es.ap->is_zero()) {
        out.concluded = false;
        out.message = "a_p = 0: no ordinarity conclusion";
        return out;
    }
    long long mod = es.cfg.p * es.cfg.p - 1;
    auto red = [&](long long x) { x %= mod; return x < 0 ? x + mod : x; };
    out.concluded = true;
    out.e1 = red(-(es.weight.l.first + es.cfg.p * es.weight.l.second));
    out.e2 = red((1 - es.weight.k.first - es.weight.l.first) +
                 es.cfg.p * (1 - es.weight.k.second - es.weight.l.second));
    out.frob = es.ap;
    out.message = "upper-triangular with unramified-twist line at Frobenius value a_p";
    return out;
}

EigenSystem twist_eigensystem(const EigenSystem& es, const TwistChar& xi) {
    auto ctx = FFContext::get(es.cfg);
    const QuadElem& cond = xi.group->modulus();
    bool unit_modulus = cond.norm() == Rat(1);

    EigenSystem out = es;
    out.weight.l = {es.weight.l.first + xi.lprime.first, es.weight.l.second + xi.lprime.second};
    out.level = unit_modulus ? es.level : orbit_rep(es.level * cond * cond, es.cfg).first;
    for (auto& [gen, entry] : out.table) {
        if (!xi.group->is_unit(gen)) {  // conductor prime: support vanishes
            entry = EigenEntry{ctx->zero(), std::nullopt};
            continue;
        }
        FFElem scalar = xi.value(gen).inverse() * power_l(gen, xi.lprime, ctx);
        entry.a = scalar * entry.a;
        if (entry.d) entry.d = scalar * scalar * (*entry.d);
    }
    return out;
}

bool is_eigenform_for(const QExpansion& f, const EigenSystem& es, const PrimeIdeal& v) {
    auto it = es.table.find(v.gen);
    if (it == es.table.end()) throw contract_error("is_eigenform_for: no eigenvalue at v");
    std::optional<FFElem> dv = it->second.d;
    bool one_term = divides(es.level, v.gen) || es.stabilised.count(v.gen);
    QExpansion tf = one_term ? hecke_Tv(f, v) : hecke_Tv(f, v, dv);
    QExpansion af = scale(it->second.a, f);
    return qexp_agree_on_common_bound(tf, af);
}

}  // namespace hmf
