#include "computon/wire.hpp"

#include <stdexcept>

namespace computon {

using nlohmann::json;

json value_to_wire(const Value& v) {
    if (v.is_absent())
        throw std::invalid_argument("absent values cannot be sent on the wire");
    json j;
    j["type"] = to_string(v.kind());
    switch (v.kind()) {
        case ValueKind::control: j["value"] = "*"; break;
        case ValueKind::integer: j["value"] = v.as_integer(); break;
        case ValueKind::real: j["value"] = v.as_real(); break;
        case ValueKind::text: j["value"] = v.as_text(); break;
        case ValueKind::boolean: j["value"] = v.as_boolean(); break;
    }
    return j;
}

json value_to_wire(const Value& v, const std::string& label) {
    json j = value_to_wire(v);
    j["label"] = label;
    return j;
}

Value value_from_wire(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("typed value must be a JSON object");
    if (j.contains("control")) return Value::control();
    if (!j.contains("type") || !j["type"].is_string())
        throw std::invalid_argument("typed value needs a string 'type'");
    ValueKind kind = value_kind_from_string(j["type"].get<std::string>());
    if (kind == ValueKind::control) return Value::control();
    if (!j.contains("value")) throw std::invalid_argument("typed value needs a 'value'");
    const json& v = j["value"];
    switch (kind) {
        case ValueKind::integer:
            if (!v.is_number_integer() && !v.is_number_unsigned())
                throw std::invalid_argument("int value must be a JSON integer");
            return Value::integer(v.get<std::int64_t>());
        case ValueKind::real:
            if (!v.is_number())
                throw std::invalid_argument("float value must be a JSON number");
            return Value::real(v.get<double>());
        case ValueKind::text:
            if (!v.is_string()) throw std::invalid_argument("text value must be a JSON string");
            return Value::text(v.get<std::string>());
        case ValueKind::boolean:
            if (!v.is_boolean())
                throw std::invalid_argument("bool value must be a JSON boolean");
            return Value::boolean(v.get<bool>());
        default: break;
    }
    throw std::invalid_argument("unsupported typed value");
}

}  // namespace computon
