#pragma once

#include <string>

#include "json.hpp"

#include "computon/value.hpp"

namespace computon {

// A typed value on the wire: {"type": "control|int|float|text|bool",
// "value": ..., "label": ...} with the label optional.
nlohmann::json value_to_wire(const Value& v);
nlohmann::json value_to_wire(const Value& v, const std::string& label);

// Accepts the canonical envelope plus the shorthand {"control": true}.
// Throws std::invalid_argument on malformed input; absent values are not
// representable on the wire.
Value value_from_wire(const nlohmann::json& j);

}  // namespace computon
