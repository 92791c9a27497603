#include "hmf/json_io.hpp"

namespace hmf {

namespace {

// wrap schema/shape problems in io_error uniformly
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw io_error(std::string("schema error: ") + e.what());
    }
}

}  // namespace

json field_to_json(const FieldConfig& cfg) {
    return json{{"d", cfg.d}, {"p", cfg.p}, {"k", cfg.k}};
}

FieldConfig field_from_json(const json& j) {
    return guarded([&] {
        return FieldConfig(j.at("d").get<long long>(), j.at("p").get<long long>(),
                           j.at("k").get<int>());
    });
}

json weight_to_json(const Weight& w) {
    return json{{"k", {w.k.first, w.k.second}}, {"l", {w.l.first, w.l.second}}};
}

Weight weight_from_json(const json& j) {
    return guarded([&] {
        Weight w;
        w.k = {j.at("k").at(0).get<long long>(), j.at("k").at(1).get<long long>()};
        w.l = {j.at("l").at(0).get<long long>(), j.at("l").at(1).get<long long>()};
        return w;
    });
}

json qexp_to_json(const QExpansion& f) {
    json coeffs = json::array();
    for (auto& [m, c] : f.coeffs) coeffs.push_back(json{{"m", m.str()}, {"c", c.hex()}});
    return json{{"field", field_to_json(f.cfg)},
                {"weight", weight_to_json(f.weight)},
                {"level", f.level.str()},
                {"bound", f.bound},
                {"r0", f.r0.hex()},
                {"coeffs", coeffs}};
}

QExpansion qexp_from_json(const json& j) {
    return guarded([&] {
        FieldConfig cfg = field_from_json(j.at("field"));
        auto ctx = FFContext::get(cfg);
        Weight w = weight_from_json(j.at("weight"));
        QuadElem level = parse_quad(j.at("level").get<std::string>(), cfg);
        long long bound = j.at("bound").get<long long>();
        std::map<QuadElem, FFElem> coeffs;
        for (auto& e : j.at("coeffs"))
            coeffs.emplace(parse_quad(e.at("m").get<std::string>(), cfg),
                           FFElem::from_hex(e.at("c").get<std::string>(), ctx));
        FFElem r0 = FFElem::from_hex(j.at("r0").get<std::string>(), ctx);
        return make_qexp(cfg, w, level, bound, std::move(coeffs), r0);
    });
}

json eigensystem_to_json(const EigenSystem& es) {
    json table = json::array();
    for (auto& [gen, e] : es.table) {
        json row{{"v", gen.str()}, {"a", e.a.hex()}};
        row["d"] = e.d ? json(e.d->hex()) : json(nullptr);
        table.push_back(row);
    }
    json stab = json::array();
    for (auto& g : es.stabilised) stab.push_back(g.str());
    return json{{"field", field_to_json(es.cfg)},
                {"weight", weight_to_json(es.weight)},
                {"level", es.level.str()},
                {"table", table},
                {"ap", es.ap ? json(es.ap->hex()) : json(nullptr)},
                {"stabilised", stab}};
}

EigenSystem eigensystem_from_json(const json& j) {
    return guarded([&] {
        FieldConfig cfg = field_from_json(j.at("field"));
        auto ctx = FFContext::get(cfg);
        Weight w = weight_from_json(j.at("weight"));
        QuadElem level = parse_quad(j.at("level").get<std::string>(), cfg);
        std::map<QuadElem, EigenEntry> table;
        for (auto& row : j.at("table")) {
            EigenEntry e;
            e.a = FFElem::from_hex(row.at("a").get<std::string>(), ctx);
            if (!row.at("d").is_null())
                e.d = FFElem::from_hex(row.at("d").get<std::string>(), ctx);
            table.emplace(parse_quad(row.at("v").get<std::string>(), cfg), e);
        }
        std::optional<FFElem> ap;
        if (!j.at("ap").is_null()) ap = FFElem::from_hex(j.at("ap").get<std::string>(), ctx);
        std::set<QuadElem> stab;
        for (auto& s : j.at("stabilised")) stab.insert(parse_quad(s.get<std::string>(), cfg));
        return make_eigensystem(cfg, w, level, std::move(table), ap, std::move(stab));
    });
}

json twistchar_to_json(const TwistChar& xi) {
    json vals = json::array();
    for (auto& v : xi.values) vals.push_back(v.hex());
    return json{{"modulus", xi.group->modulus().str()},
                {"values", vals},
                {"lprime", {xi.lprime.first, xi.lprime.second}}};
}

TwistChar twistchar_from_json(const json& j, const FieldConfig& cfg) {
    return guarded([&] {
        auto ctx = FFContext::get(cfg);
        TwistChar xi;
        xi.group = std::make_shared<UnitGroupModM>(
            parse_quad(j.at("modulus").get<std::string>(), cfg), cfg);
        xi.lprime = {j.at("lprime").at(0).get<long long>(), j.at("lprime").at(1).get<long long>()};
        for (auto& v : j.at("values"))
            xi.values.push_back(FFElem::from_hex(v.get<std::string>(), ctx));
        if (xi.values.size() != xi.group->generators().size())
            throw io_error("twist character: value count does not match the group generators");
        for (size_t i = 0; i < xi.values.size(); ++i) {
            long long n = xi.group->generators()[i].order;
            if (!xi.values[i].pow(n)  .eq(ctx->one()))
                throw io_error("twist character: value order does not divide the generator order");
        }
        FFElem target = power_l(fundamental_tp_unit(cfg), xi.lprime, ctx);
        if (xi.value(fundamental_tp_unit(cfg)) != target)
            throw io_error("twist character: weight condition fails at the fundamental unit");
        return xi;
    });
}

json inertial_to_json(const InertialType& t) {
    if (t.reducible) {
        const char* ext = t.ext == ExtClass::split ? "split"
                          : t.ext == ExtClass::in_V ? "inV"
                                                    : "generic";
        return json{{"reducible", {{"e1", t.e1}, {"e2", t.e2}, {"ext", ext}}}};
    }
    return json{{"irreducible", {{"c", t.c}}}};
}

InertialType inertial_from_json(const json& j, long long p) {
    return guarded([&] {
        if (j.contains("reducible")) {
            const json& r = j.at("reducible");
            std::string ext = r.at("ext").get<std::string>();
            ExtClass e = ext == "split"  ? ExtClass::split
                         : ext == "inV" ? ExtClass::in_V
                         : ext == "generic" ? ExtClass::generic
                                            : throw io_error("inertial type: bad ext flag");
            return InertialType::make_reducible(r.at("e1").get<long long>(),
                                                r.at("e2").get<long long>(), e, p);
        }
        if (j.contains("irreducible"))
            return InertialType::make_irreducible(j.at("irreducible").at("c").get<long long>(), p);
        throw io_error("inertial type: expected reducible or irreducible");
    });
}

namespace {
const char* tag_name(WeightTag t) {
    switch (t) {
        case WeightTag::initial: return "initial";
        case WeightTag::via_Ha: return "via-Ha";
        case WeightTag::via_Theta: return "via-Theta";
        case WeightTag::via_Theta_divided: return "via-Theta-divided";
        case WeightTag::via_twist: return "via-twist";
    }
    return "initial";
}
WeightTag tag_from(const std::string& s) {
    if (s == "initial") return WeightTag::initial;
    if (s == "via-Ha") return WeightTag::via_Ha;
    if (s == "via-Theta") return WeightTag::via_Theta;
    if (s == "via-Theta-divided") return WeightTag::via_Theta_divided;
    if (s == "via-twist") return WeightTag::via_twist;
    throw io_error("weight set: unknown tag " + s);
}
}  // namespace

json weightset_to_json(const WeightSet& ws) {
    json arr = json::array();
    for (auto& [w, t] : ws.weights) {
        json e = weight_to_json(w);
        e["tag"] = tag_name(t);
        arr.push_back(e);
    }
    return json{{"weights", arr}};
}

WeightSet weightset_from_json(const json& j, long long p) {
    return guarded([&] {
        WeightSet ws;
        ws.p = p;
        for (auto& e : j.at("weights"))
            ws.weights.emplace(weight_from_json(e), tag_from(e.at("tag").get<std::string>()));
        return ws;
    });
}

json document_to_json(const Document& doc) {
    json j{{"schema_version", 1}, {"field_config", field_to_json(doc.cfg)}};
    std::visit(
        [&](auto&& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, QExpansion>) j["qexp"] = qexp_to_json(payload);
            else if constexpr (std::is_same_v<T, EigenSystem>) j["eigen"] = eigensystem_to_json(payload);
            else if constexpr (std::is_same_v<T, TwistChar>) j["twistchar"] = twistchar_to_json(payload);
            else if constexpr (std::is_same_v<T, InertialType>) j["inertial_type"] = inertial_to_json(payload);
            else j["weight_set"] = weightset_to_json(payload);
        },
        doc.payload);
    return j;
}

Document document_from_json(const json& j) {
    return guarded([&] {
        if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
            throw io_error("document: missing or unsupported schema_version");
        FieldConfig cfg = field_from_json(j.at("field_config"));
        Document doc{cfg, WeightSet{}};
        if (j.contains("qexp")) {
            QExpansion f = qexp_from_json(j.at("qexp"));
            if (f.cfg != cfg) throw io_error("document: field_config mismatch");
            doc.payload = std::move(f);
        } else if (j.contains("eigen")) {
            EigenSystem es = eigensystem_from_json(j.at("eigen"));
            if (es.cfg != cfg) throw io_error("document: field_config mismatch");
            doc.payload = std::move(es);
        } else if (j.contains("twistchar")) {
            doc.payload = twistchar_from_json(j.at("twistchar"), cfg);
        } else if (j.contains("inertial_type")) {
            doc.payload = inertial_from_json(j.at("inertial_type"), cfg.p);
        } else if (j.contains("weight_set")) {
            doc.payload = weightset_from_json(j.at("weight_set"), cfg.p);
        } else {
            throw io_error("document: no recognised payload");
        }
        return doc;
    });
}

std::string dump_document(const Document& doc) { return document_to_json(doc).dump(2) + "\n"; }

Document parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw io_error("document: invalid JSON");
    return document_from_json(j);
}

}  // namespace hmf
