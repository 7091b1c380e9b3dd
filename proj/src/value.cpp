#include "computon/value.hpp"

#include <stdexcept>

namespace computon {

const char* to_string(ValueKind k) {
    switch (k) {
        case ValueKind::control: return "control";
        case ValueKind::integer: return "int";
        case ValueKind::real: return "float";
        case ValueKind::text: return "text";
        case ValueKind::boolean: return "bool";
    }
    return "?";
}

ValueKind value_kind_from_string(const std::string& s) {
    if (s == "control") return ValueKind::control;
    if (s == "int") return ValueKind::integer;
    if (s == "float") return ValueKind::real;
    if (s == "text") return ValueKind::text;
    if (s == "bool") return ValueKind::boolean;
    throw std::invalid_argument("unknown value kind '" + s + "'");
}

Value Value::control() {
    Value v;
    v.payload_ = Control{};
    return v;
}

Value Value::integer(std::int64_t x) {
    Value v;
    v.payload_ = x;
    return v;
}

Value Value::real(double x) {
    Value v;
    v.payload_ = x;
    return v;
}

Value Value::text(std::string x) {
    Value v;
    v.payload_ = std::move(x);
    return v;
}

Value Value::boolean(bool x) {
    Value v;
    v.payload_ = x;
    return v;
}

ValueKind Value::kind() const {
    switch (payload_.index()) {
        case 1: return ValueKind::control;
        case 2: return ValueKind::integer;
        case 3: return ValueKind::real;
        case 4: return ValueKind::text;
        case 5: return ValueKind::boolean;
        default: throw std::logic_error("absent value has no kind");
    }
}

std::int64_t Value::as_integer() const { return std::get<std::int64_t>(payload_); }
double Value::as_real() const { return std::get<double>(payload_); }
const std::string& Value::as_text() const { return std::get<std::string>(payload_); }
bool Value::as_boolean() const { return std::get<bool>(payload_); }

bool Value::is_numeric() const {
    return !is_absent() && (kind() == ValueKind::integer || kind() == ValueKind::real);
}

double Value::numeric() const {
    if (kind() == ValueKind::integer) return static_cast<double>(as_integer());
    return as_real();
}

std::string Value::to_display() const {
    if (is_absent()) return "_";
    switch (kind()) {
        case ValueKind::control: return "*";
        case ValueKind::integer: return std::to_string(as_integer());
        case ValueKind::real: return std::to_string(as_real());
        case ValueKind::text: return "\"" + as_text() + "\"";
        case ValueKind::boolean: return as_boolean() ? "true" : "false";
    }
    return "?";
}

TypeUniverse::TypeUniverse(std::vector<ValueKind> by_colour) : by_colour_(std::move(by_colour)) {
    if (by_colour_.empty() || by_colour_[0] != ValueKind::control)
        throw std::invalid_argument("colour 0 must map to the control type");
}

TypeUniverse TypeUniverse::standard(Nat colours) {
    static const ValueKind order[] = {ValueKind::control, ValueKind::integer, ValueKind::real,
                                      ValueKind::text, ValueKind::boolean};
    if (colours == 0 || colours > 5)
        throw std::invalid_argument(
            "the standard universe covers 1..5 colours; provide an explicit mapping");
    std::vector<ValueKind> v(order, order + colours);
    return TypeUniverse(std::move(v));
}

ValueKind TypeUniverse::at(Nat colour) const {
    if (colour >= by_colour_.size())
        throw std::domain_error("colour " + std::to_string(colour) +
                                " has no universe entry");
    return by_colour_[colour];
}

bool TypeUniverse::admits(Nat colour, const Value& v) const {
    return !v.is_absent() && v.kind() == at(colour);
}

}  // namespace computon
