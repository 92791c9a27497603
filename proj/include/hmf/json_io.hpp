#pragma once

#include <variant>

#include "json.hpp"

#include "hmf/eigen.hpp"
#include "hmf/serre.hpp"
#include "hmf/shifter.hpp"
#include "hmf/twist.hpp"

namespace hmf {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

json field_to_json(const FieldConfig& cfg);
FieldConfig field_from_json(const json& j);

json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j);

json qexp_to_json(const QExpansion& f);
QExpansion qexp_from_json(const json& j);

json eigensystem_to_json(const EigenSystem& es);
EigenSystem eigensystem_from_json(const json& j);

json twistchar_to_json(const TwistChar& xi);
TwistChar twistchar_from_json(const json& j, const FieldConfig& cfg);

json inertial_to_json(const InertialType& t);
InertialType inertial_from_json(const json& j, long long p);

json weightset_to_json(const WeightSet& ws);
WeightSet weightset_from_json(const json& j, long long p);

// Interchange wrapper: {schema_version, field_config, <kind>: payload}
struct Document {
    FieldConfig cfg;
    std::variant<QExpansion, EigenSystem, TwistChar, InertialType, WeightSet> payload;
};

json document_to_json(const Document& doc);
Document document_from_json(const json& j);

// canonical text form (sorted keys, fixed indentation, trailing newline)
std::string dump_document(const Document& doc);
Document parse_document(const std::string& text);

}  // namespace hmf
