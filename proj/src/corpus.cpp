#include "hmf/corpus.hpp"

namespace hmf {

FFElem random_fp2(const std::shared_ptr<const FFContext>& ctx, std::mt19937_64& rng) {
    long long p = ctx->p();
    // span of {1, w0 image of omega} is the F_{p^2} subfield
    FFElem w = ctx->res_w0();
    long long a = (long long)(rng() % (unsigned long long)p);
    long long b = (long long)(rng() % (unsigned long long)p);
    return ctx->from_int(a) + ctx->from_int(b) * w;
}

QExpansion random_qexp(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                       long long bound, std::mt19937_64& rng, bool force_r0_zero) {
    auto ctx = FFContext::get(cfg);
    std::map<QuadElem, FFElem> coeffs;
    for (auto& m : enumerate_tp_reps(cfg, bound)) {
        FFElem c = random_fp2(ctx, rng);
        if (!c.is_zero()) coeffs.emplace(m, c);
    }
    FFElem r0 = ctx->zero();
    if (!force_r0_zero && power_l(fundamental_tp_unit(cfg), w.l, ctx) == ctx->one())
        r0 = random_fp2(ctx, rng);
    return make_qexp(cfg, w, level, bound, std::move(coeffs), r0);
}

EigenSystem random_eigensystem(const FieldConfig& cfg, const Weight& w, const QuadElem& level,
                               long long bound, std::mt19937_64& rng, bool with_ap) {
    auto ctx = FFContext::get(cfg);
    std::map<QuadElem, EigenEntry> table;
    for (long long q = 2; q <= bound; ++q) {
        bool prime = true;
        for (long long f = 2; f * f <= q; ++f)
            if (q % f == 0) { prime = false; break; }
        if (!prime || q == cfg.p) continue;
        for (auto& v : prime_over(cfg, q).primes) {
            if (v.norm > bound) continue;
            EigenEntry e;
            e.a = random_fp2(ctx, rng);
            if (!(level / v.gen).is_integral()) {
                QuadElem diff = v.gen - QuadElem::integer(1, cfg);
                if (!diff.is_zero() && (diff / level).is_integral()) {
                    // nebentypus-pinned
                    e.d = power_l(v.gen, {w.k.first + 2 * w.l.first - 2,
                                          w.k.second + 2 * w.l.second - 2}, ctx);
                } else {
                    FFElem d = random_fp2(ctx, rng);
                    while (d.is_zero()) d = random_fp2(ctx, rng);
                    e.d = d;
                }
            }
            table.emplace(v.gen, e);
        }
    }
    std::optional<FFElem> ap;
    if (with_ap) ap = random_fp2(ctx, rng);
    return make_eigensystem(cfg, w, level, std::move(table), ap);
}

}  // namespace hmf
