#pragma once

// The worked example computons used across the test suites: a multiplier,
// an adder, successor/predecessor/factorial primitives, and the spans that
// compose them.

#include <memory>

#include "computon/operators.hpp"

namespace computon::fixtures {

// One unit holding an echo device for the control path and one arithmetic
// device; every port on the interface.
inline ComputonPtr mul_primitive() {
    PrimitiveSpec spec;
    spec.ports = 5;  // go, a, b, fin, product
    spec.colours = 2;
    spec.src = FinMap(FinSet{3}, FinSet{5}, {0, 1, 2});
    spec.tgt = FinMap(FinSet{2}, FinSet{5}, {3, 4});
    spec.colour = FinMap(FinSet{5}, FinSet{2}, {0, 1, 1, 0, 1});
    spec.relate = FinMap(FinSet{3}, FinSet{2}, {0, 1, 1});
    spec.device = {DeviceId("builtin:epsilon"), DeviceId("builtin:mul")};
    spec.port_labels = {"go", "a", "b", "fin", "product"};
    return std::make_shared<const Computon>(mk_primitive(spec));
}

// Adds an integer to a float; the float inport is the one a partial
// sequencing against mul_primitive leaves at the interface.
inline ComputonPtr add_primitive() {
    PrimitiveSpec spec;
    spec.ports = 5;  // start, x, c, done, sum
    spec.colours = 3;
    spec.src = FinMap(FinSet{3}, FinSet{5}, {0, 1, 2});
    spec.tgt = FinMap(FinSet{2}, FinSet{5}, {3, 4});
    spec.colour = FinMap(FinSet{5}, FinSet{3}, {0, 1, 2, 0, 2});
    spec.relate = FinMap(FinSet{3}, FinSet{2}, {0, 1, 1});
    spec.device = {DeviceId("builtin:epsilon"), DeviceId("builtin:add")};
    spec.port_labels = {"start", "x", "c", "done", "sum"};
    return std::make_shared<const Computon>(mk_primitive(spec));
}

inline ComputonPtr unary_int_primitive(const char* device, const char* name_hint,
                                       Nat out_colour = 1, Nat colours = 2) {
    PrimitiveSpec spec;
    spec.ports = 4;  // go, n, done, out
    spec.colours = colours;
    spec.src = FinMap(FinSet{2}, FinSet{4}, {0, 1});
    spec.tgt = FinMap(FinSet{2}, FinSet{4}, {2, 3});
    spec.colour = FinMap(FinSet{4}, FinSet{colours}, {0, 1, 0, out_colour});
    spec.relate = FinMap(FinSet{2}, FinSet{2}, {0, 1});
    spec.device = {DeviceId("builtin:epsilon"), DeviceId(device)};
    spec.port_labels = {"go", std::string("n"), "done", std::string("out_") + name_hint};
    return std::make_shared<const Computon>(mk_primitive(spec));
}

inline ComputonPtr succ_primitive() { return unary_int_primitive("builtin:succ", "succ"); }
inline ComputonPtr fact_primitive() { return unary_int_primitive("builtin:fact", "fact"); }
// The float-typed result port mirrors the open-branching example where
// operand outports do not have to match.
inline ComputonPtr pred_primitive_float_out() {
    return unary_int_primitive("builtin:pred", "pred", 2, 3);
}

inline ComputonPtr identity_trivial() {
    return std::make_shared<const Computon>(mk_trivial({"go"}, {0}));
}

// Partial sequencing span: mul's outports onto add's control and integer
// inports, omitting the float inport.
inline Span mul_add_span(const ComputonPtr& mul, const ComputonPtr& add) {
    auto s = mk_seq_span(mul, add, {{3, 0}, {4, 1}});
    if (!s) throw std::logic_error("fixture span rejected: " + s.error());
    return std::move(s).value();
}

// Total sequencing span: mul's outports onto all of succ's inports.
inline Span mul_succ_span(const ComputonPtr& mul, const ComputonPtr& succ) {
    auto s = mk_seq_span(mul, succ, {{3, 0}, {4, 1}});
    if (!s) throw std::logic_error("fixture span rejected: " + s.error());
    return std::move(s).value();
}

inline std::pair<Marker, Marker> in_markers(const ComputonPtr& l, const ComputonPtr& r) {
    auto apex = std::make_shared<const Computon>(mk_trivial({"m0", "m1"}, {0, 1}));
    auto ml = mk_in_marker(apex, l, FinMap(apex->ports, l->ports, {0, 1}));
    auto mr = mk_in_marker(apex, r, FinMap(apex->ports, r->ports, {0, 1}));
    if (!ml || !mr) throw std::logic_error("fixture markers rejected");
    return {std::move(ml).value(), std::move(mr).value()};
}

inline std::pair<Marker, Marker> out_markers(const ComputonPtr& l, const ComputonPtr& r) {
    auto apex = std::make_shared<const Computon>(mk_trivial({"w0", "w1"}, {0, 1}));
    auto ml = mk_out_marker(apex, l, FinMap(apex->ports, l->ports, {2, 3}));
    auto mr = mk_out_marker(apex, r, FinMap(apex->ports, r->ports, {2, 3}));
    if (!ml || !mr) throw std::logic_error("fixture markers rejected");
    return {std::move(ml).value(), std::move(mr).value()};
}

// mul >| add of the running example (partial, 8 ports).
inline SeqResult mul_add_composite() {
    auto mul = mul_primitive();
    auto add = add_primitive();
    auto r = seq(leaf_composite(mul, "mul"), leaf_composite(add, "add"),
                 mul_add_span(mul, add));
    if (!r) throw std::logic_error("fixture composite rejected: " + r.error());
    return std::move(r).value();
}

// mul |> succ (total).
inline SeqResult mul_succ_composite() {
    auto mul = mul_primitive();
    auto succ = succ_primitive();
    auto r = seq(leaf_composite(mul, "mul"), leaf_composite(succ, "succ"),
                 mul_succ_span(mul, succ));
    if (!r) throw std::logic_error("fixture composite rejected: " + r.error());
    return std::move(r).value();
}

// succ ?? fact: both inports and both outports fully merged.
inline BranchResult succ_fact_closed() {
    auto succ = succ_primitive();
    auto fact = fact_primitive();
    auto [in_l, in_r] = in_markers(succ, fact);
    auto [out_l, out_r] = out_markers(succ, fact);
    auto r = bra_closed(leaf_composite(succ, "succ"), leaf_composite(fact, "fact"), in_l,
                        in_r, out_l, out_r);
    if (!r) throw std::logic_error("fixture composite rejected: " + r.error());
    return std::move(r).value();
}

}  // namespace computon::fixtures
