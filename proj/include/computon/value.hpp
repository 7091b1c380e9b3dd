#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "computon/finset.hpp"

namespace computon {

enum class ValueKind { control, integer, real, text, boolean };

const char* to_string(ValueKind k);
// Parses the wire names control|int|float|text|bool; throws on anything else.
ValueKind value_kind_from_string(const std::string& s);

// A port buffer content: one of the five concrete types, or absent. Absent
// models an empty buffer and is distinct from every typed value.
class Value {
public:
    Value() = default;  // absent

    static Value control();
    static Value integer(std::int64_t v);
    static Value real(double v);
    static Value text(std::string v);
    static Value boolean(bool v);
    static Value absent() { return Value(); }

    bool is_absent() const { return payload_.index() == 0; }
    ValueKind kind() const;  // throws std::logic_error when absent

    std::int64_t as_integer() const;
    double as_real() const;
    const std::string& as_text() const;
    bool as_boolean() const;

    bool is_numeric() const;
    double numeric() const;  // integer or real widened to double

    friend bool operator==(const Value&, const Value&) = default;

    // Compact rendering for messages and traces: "*", 42, 7.5, "txt", true.
    std::string to_display() const;

private:
    struct Absent {
        friend bool operator==(const Absent&, const Absent&) = default;
    };
    struct Control {
        friend bool operator==(const Control&, const Control&) = default;
    };
    std::variant<Absent, Control, std::int64_t, double, std::string, bool> payload_;
};

// Assigns a concrete type to every colour. Colour 0 is always the control
// type whose only value is the signal *.
class TypeUniverse {
public:
    explicit TypeUniverse(std::vector<ValueKind> by_colour);

    // 0 -> control, 1 -> integer, 2 -> real, 3 -> text, 4 -> boolean.
    static TypeUniverse standard(Nat colours);

    Nat colours() const { return by_colour_.size(); }
    ValueKind at(Nat colour) const;

    bool admits(Nat colour, const Value& v) const;

private:
    std::vector<ValueKind> by_colour_;
};

}  // namespace computon
