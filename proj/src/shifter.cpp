#include "hmf/shifter.hpp"

#include <algorithm>

namespace hmf {

WeightSet propagate(const WeightSet& ws, const std::set<Move>& moves,
                    const std::vector<LVec>& twist_lprimes, long long depth) {
    if (depth < 0) throw contract_error("propagate: negative depth");
    WeightSet out = ws;
    std::vector<Weight> frontier;
    for (auto& [w, t] : ws.weights) frontier.push_back(w);

    for (long long step = 0; step < depth && !frontier.empty(); ++step) {
        std::vector<Weight> next;
        auto emit = [&](const Weight& w, WeightTag tag) {
            if (out.weights.emplace(w, tag).second) next.push_back(w);
        };
        for (auto& w : frontier) {
            for (Move m : moves) {
                switch (m) {
                    case Move::Ha0:
                    case Move::Ha1: {
                        int i = (m == Move::Ha0) ? 0 : 1;
                        Weight t = w;
                        t.k = t.k + hasse_weight(i, ws.p);
                        emit(t, WeightTag::via_Ha);
                        break;
                    }
                    case Move::Theta0:
                    case Move::Theta1: {
                        int i = (m == Move::Theta0) ? 0 : 1;
                        Weight plain = theta_weight(w, i, ws.p);
                        Weight sharp = theta_min_weight(w, i, ws.p);
                        emit(sharp, sharp == plain ? WeightTag::via_Theta
                                                   : WeightTag::via_Theta_divided);
                        break;
                    }
                }
            }
            for (auto& lp : twist_lprimes) {
                Weight t = w;
                t.l = {t.l.first + lp.first, t.l.second + lp.second};
                emit(t, WeightTag::via_twist);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

KminResult kmin_bound(const WeightSet& ws, const LVec& l) {
    KminResult res;
    std::vector<KVec> ks;
    for (auto& [w, t] : ws.weights)
        if (w.l == l) ks.push_back(w.k);
    if (ks.empty()) return res;
    for (auto& k : ks) {
        bool minimal = true;
        for (auto& k2 : ks)
            if (k2 != k && leq_hasse(k2, k, ws.p)) { minimal = false; break; }
        if (minimal) res.antichain.push_back(k);
    }
    std::sort(res.antichain.begin(), res.antichain.end());
    if (res.antichain.size() == 1) {
        // a unique minimal element need not be a least element; check it is
        const KVec& cand = res.antichain[0];
        res.has_least = std::all_of(ks.begin(), ks.end(), [&](const KVec& k) {
            return leq_hasse(cand, k, ws.p);
        });
        if (res.has_least) res.least = cand;
    }
    return res;
}

TransferReport pwt1_transfer(const WeightSet& declared, const InertialType& sigma, long long k0,
                             long long p) {
    if (k0 < 2 || k0 > p) throw contract_error("pwt1_transfer: need 2 <= k0 <= p");
    TransferReport rep;
    Weight pw1{{k0, 1}, {0, 0}};
    rep.declared_pw1 = declared.contains(pw1);
    rep.family_a = (k0 > 2) ? Weight{{k0 - 1, p + 1}, {0, 0}} : Weight{{p + 1, p}, {0, 0}};
    rep.family_b = Weight{{k0 + 1, p + 1}, {-1, 0}};

    WeightSet seed{p, {{pw1, WeightTag::initial}}};
    WeightSet closure = propagate(seed, {Move::Ha0, Move::Ha1, Move::Theta0}, {}, 3);
    rep.closure_has_a = closure.contains(rep.family_a);
    rep.closure_has_b = closure.contains(rep.family_b);

    rep.oracle = pwt1shift_check(sigma, k0, p);

    if (!rep.closure_has_a || !rep.closure_has_b)
        rep.flags.push_back("forward moves fail to reach the companion weights");
    if (rep.declared_pw1 && !rep.oracle.lhs)
        rep.flags.push_back("declared partial-weight-one modularity contradicts the lift oracle");
    if (rep.oracle.lhs && !declared.weights.empty()) {
        WeightSet closed = propagate(declared, {Move::Ha0, Move::Ha1, Move::Theta0}, {}, 3);
        if (!closed.contains(rep.family_a) || !closed.contains(rep.family_b))
            rep.flags.push_back("declared set misses a companion family after closure");
    }
    return rep;
}

}  // namespace hmf
