#pragma once

#include <vector>

#include "computon/computon.hpp"
#include "computon/result.hpp"

namespace computon {

// A structure-preserving embedding between computons. The colour component
// is always the canonical embedding k |-> k (so the target needs at least
// as many colours) and the device component is the identity on device ids.
struct Morphism {
    ComputonPtr source;
    ComputonPtr target;
    FinMap unit_map;     // U1 -> U2
    FinMap port_map;     // P1 -> P2
    FinMap inflow_map;   // I1 -> I2
    FinMap outflow_map;  // O1 -> O2
};

// Ports of the source whose image gains units: vec_i collects ports whose
// target-side feeding units are not all images of source-side feeding
// units; vec_o is the symmetric notion for fed units. Both ascending.
std::vector<Nat> vec_i(const Morphism& m);
std::vector<Nat> vec_o(const Morphism& m);

// Checks the commuting squares, colour/device preservation, the colour
// embedding and the boundary condition vec_i u vec_o <= interface(source).
// The failure message names the first violated condition.
Result<Morphism> mk_morphism(ComputonPtr source, ComputonPtr target, FinMap unit_map,
                             FinMap port_map, FinMap inflow_map, FinMap outflow_map);

Morphism identity_morphism(ComputonPtr c);

// All four component maps injective (colour/device components always are).
bool is_monomorphism(const Morphism& m);

// compose(f, g) applies f first: the result is g . f.
Morphism compose(const Morphism& f, const Morphism& g);

// A marker embeds a trivial computon onto exactly the inports (kind in) or
// exactly the outports (kind out) of its target.
struct Marker {
    enum class Kind { in, out };
    Kind kind;
    Morphism mono;
};

Result<Marker> mk_in_marker(ComputonPtr trivial_source, ComputonPtr target, FinMap port_map);
Result<Marker> mk_out_marker(ComputonPtr trivial_source, ComputonPtr target, FinMap port_map);

}  // namespace computon
