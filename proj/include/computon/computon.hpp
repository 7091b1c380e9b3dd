#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "computon/finset.hpp"

namespace computon {

// A computing device is addressed either as "builtin:<name>" or as an
// absolute HTTP(S) URL contacted upon evaluation.
class DeviceId {
public:
    explicit DeviceId(std::string id);

    static bool valid(std::string_view id);

    bool is_builtin() const;
    // Name after the "builtin:" prefix; empty for URLs.
    std::string_view builtin_name() const;
    bool is_url() const { return !is_builtin(); }

    const std::string& str() const { return id_; }

    friend bool operator==(const DeviceId&, const DeviceId&) = default;
    friend auto operator<=>(const DeviceId& a, const DeviceId& b) {
        return a.id_ <=> b.id_;
    }

private:
    std::string id_;
};

// The central structure: a bipartite graph of ports and computation units
// joined by inflows/outflows, with typed ports and device-carrying
// outflows. The device set is implicit as the image of `device`; colour 0
// is the control type.
struct Computon {
    FinSet units;     // U
    FinSet ports;     // P
    FinSet inflows;   // I
    FinSet outflows;  // O
    FinSet colours;   // type palette; colour 0 always denotes control

    FinMap src;       // I -> P   source port of each inflow
    FinMap tgt;       // O -> P   target port of each outflow
    FinMap out_unit;  // O -> U   owning unit of each outflow
    FinMap in_unit;   // I -> U   consuming unit of each inflow
    FinMap colour;    // P -> colours
    FinMap relate;    // I -> O   which outflow each inflow feeds

    std::vector<DeviceId> device;          // per outflow
    std::vector<std::string> port_labels;  // unique, one per port

    friend bool operator==(const Computon&, const Computon&) = default;
};

using ComputonPtr = std::shared_ptr<const Computon>;

struct Violation {
    std::string rule;    // e.g. "restriction (iii)"
    std::string detail;  // offending element coordinates
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Structural validation against the full tuple contract: map wiring,
// surjectivity of out_unit/in_unit/relate, restrictions (i)-(iv) and label
// uniqueness. Reports every violation rather than failing on the first.
ValidationReport validate(const Computon& c);

// Interface: inports = ports not targeted by any outflow, outports = ports
// not read by any inflow. Ascending.
std::vector<Nat> inports(const Computon& c);
std::vector<Nat> outports(const Computon& c);

// Pre/post sets, duplicate-free ascending. pre_set/post_set give the ports
// around a unit; port_pre/port_post give the units around a port.
std::vector<Nat> pre_set(const Computon& c, Nat unit);
std::vector<Nat> post_set(const Computon& c, Nat unit);
std::vector<Nat> port_pre(const Computon& c, Nat port);
std::vector<Nat> port_post(const Computon& c, Nat port);

// True iff from every port in inports(c) or src-image there is a flow path
// of length >= 2 ending at an outport. A computon with no flows at all is
// vacuously connected.
bool is_connected(const Computon& c);

bool is_trivial(const Computon& c);
bool is_primitive(const Computon& c);

// Ports only, no units or flows. Throws std::invalid_argument naming the
// violated restriction.
Computon mk_trivial(std::vector<std::string> labels, std::vector<Nat> port_colours);

struct PrimitiveSpec {
    Nat ports = 0;
    Nat colours = 0;
    FinMap src;     // inflows -> ports, injective
    FinMap tgt;     // outflows -> ports, injective
    FinMap colour;  // ports -> colours
    FinMap relate;  // inflows -> outflows, surjective
    std::vector<DeviceId> device;
    std::vector<std::string> port_labels;
};

// Single-unit computon with every port on the interface and one flow per
// port. Throws std::invalid_argument naming the violated restriction.
Computon mk_primitive(const PrimitiveSpec& spec);

// Component bijections witnessing an isomorphism. Colour and device
// components are forced identities, so colours and device ids transport
// verbatim.
struct Isomorphism {
    FinMap unit_map;
    FinMap port_map;
    FinMap inflow_map;
    FinMap outflow_map;
};

// Backtracking search for a structure-preserving bijection; labels are
// metadata and take no part. Intended for desk-scale instances.
std::optional<Isomorphism> find_isomorphism(const Computon& a, const Computon& b);

bool computons_isomorphic(const Computon& a, const Computon& b);

}  // namespace computon
