#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "computon/devnet.hpp"
#include "computon/operators.hpp"
#include "computon/value.hpp"

namespace computon {

using Rng = std::mt19937_64;

// Port-indexed value assignment at one instant.
struct ExecState {
    Nat time = 0;
    std::vector<Value> values;  // one per port, Absent for empty buffers

    friend bool operator==(const ExecState&, const ExecState&) = default;
};

// Direct-access tables derived once from a validated computon so stepping
// never walks the structure maps.
struct CompiledComputon {
    ComputonPtr source;
    TypeUniverse types;

    std::vector<Nat> outport_list;           // ascending
    std::vector<bool> is_control;            // per port
    std::vector<std::vector<Nat>> unit_pre;  // per unit, ascending unique
    std::vector<std::vector<Nat>> unit_post;

    struct OutflowPlan {
        DeviceId device;
        Nat target = 0;
        std::vector<Nat> arg_ports;            // ascending
        std::vector<std::string> arg_labels;   // aligned with arg_ports
    };
    std::vector<OutflowPlan> outflow;
    std::vector<std::vector<Nat>> unit_outflows;  // per unit, ascending
};

// Throws std::invalid_argument when the computon does not validate or a
// colour lacks a universe entry.
CompiledComputon compile(ComputonPtr c, TypeUniverse types);

// Time 0, the given values on the inports, everything else absent. Inputs
// must cover exactly the inport labels and be well-typed.
ExecState initial_state(const CompiledComputon& cc,
                        const std::map<std::string, Value>& inputs);

// Units whose whole pre-set is non-absent.
std::vector<Nat> enabled_units(const CompiledComputon& cc, const ExecState& s);

// One representative per class of enabled units sharing a pre-set; the rng
// choice is the only source of non-determinism.
std::vector<Nat> ready_units(const CompiledComputon& cc, const ExecState& s, Rng& rng);

// Invoke the device of one outflow on its argument ports. Throws
// DeviceError on device failure and std::runtime_error when the result does
// not inhabit the target port's type.
Value evaluate(const CompiledComputon& cc, const ExecState& s, Nat outflow,
               const DeviceRegistry& devices);

// The synchronous transition: control posts of ready units receive *,
// outflow targets receive device results, untouched ports keep their value,
// consumed inputs become absent.
ExecState step(const CompiledComputon& cc, const ExecState& s, Rng& rng,
               const DeviceRegistry& devices);

struct TraceEntry {
    Nat time = 0;
    std::vector<Nat> ready;     // representatives leaving this state
    std::vector<Value> values;  // snapshot at `time`

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct Trace {
    std::vector<TraceEntry> entries;

    friend bool operator==(const Trace&, const Trace&) = default;
};

struct RunOutcome {
    enum class Status { ok, budget_exhausted, device_error, typing_error };

    Status status = Status::ok;
    std::string error;
    ExecState final_state;
    Trace trace;

    bool ok() const { return status == Status::ok; }
};

// Iterate step until every unit is idle or max_steps transitions happened.
// Deterministic for a fixed seed.
RunOutcome run(const CompiledComputon& cc, const std::map<std::string, Value>& inputs,
               std::uint64_t seed, Nat max_steps, const DeviceRegistry& devices);

inline constexpr Nat kDefaultMaxSteps = 10000;

// Execution entry point for composites: refuses unsound ones (throws
// std::invalid_argument), then compiles and runs.
RunOutcome run_composite(const Composite& c, const TypeUniverse& types,
                         const std::map<std::string, Value>& inputs, std::uint64_t seed,
                         Nat max_steps, const DeviceRegistry& devices);

// Map from outport label to its (possibly absent) value.
std::map<std::string, Value> interface_values(const CompiledComputon& cc,
                                              const ExecState& s);

}  // namespace computon
