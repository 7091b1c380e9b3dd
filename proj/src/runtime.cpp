#include "computon/runtime.hpp"

#include <algorithm>
#include <stdexcept>

namespace computon {

CompiledComputon compile(ComputonPtr c, TypeUniverse types) {
    auto rep = validate(*c);
    if (!rep.ok())
        throw std::invalid_argument("compile: computon does not validate: " + rep.to_string());
    for (Nat col = 0; col < c->colours.card; ++col) types.at(col);  // throws when uncovered

    const Computon& cp = *c;
    CompiledComputon cc{std::move(c), std::move(types), {}, {}, {}, {}, {}, {}};

    cc.outport_list = outports(cp);
    cc.is_control.resize(cp.ports.card);
    for (Nat p = 0; p < cp.ports.card; ++p) cc.is_control[p] = cp.colour(p) == 0;

    cc.unit_pre.resize(cp.units.card);
    cc.unit_post.resize(cp.units.card);
    for (Nat u = 0; u < cp.units.card; ++u) {
        cc.unit_pre[u] = pre_set(cp, u);
        cc.unit_post[u] = post_set(cp, u);
    }

    cc.outflow.reserve(cp.outflows.card);
    cc.unit_outflows.resize(cp.units.card);
    for (Nat o = 0; o < cp.outflows.card; ++o) {
        CompiledComputon::OutflowPlan plan{cp.device[o], cp.tgt(o), {}, {}};
        for (Nat i = 0; i < cp.inflows.card; ++i)
            if (cp.relate(i) == o) plan.arg_ports.push_back(cp.src(i));
        std::sort(plan.arg_ports.begin(), plan.arg_ports.end());
        plan.arg_ports.erase(std::unique(plan.arg_ports.begin(), plan.arg_ports.end()),
                             plan.arg_ports.end());
        for (Nat p : plan.arg_ports) plan.arg_labels.push_back(cp.port_labels[p]);
        cc.outflow.push_back(std::move(plan));
        cc.unit_outflows[cp.out_unit(o)].push_back(o);
    }
    return cc;
}

ExecState initial_state(const CompiledComputon& cc,
                        const std::map<std::string, Value>& inputs) {
    const Computon& c = *cc.source;
    std::vector<Nat> in = inports(c);

    ExecState s;
    s.time = 0;
    s.values.assign(c.ports.card, Value::absent());

    std::map<std::string, Value> pending = inputs;
    for (Nat p : in) {
        auto it = pending.find(c.port_labels[p]);
        if (it == pending.end())
            throw std::invalid_argument("uncovered inport '" + c.port_labels[p] + "'");
        if (!cc.types.admits(c.colour(p), it->second))
            throw std::invalid_argument(
                "input for '" + c.port_labels[p] + "' is not of type " +
                to_string(cc.types.at(c.colour(p))));
        s.values[p] = it->second;
        pending.erase(it);
    }
    if (!pending.empty())
        throw std::invalid_argument("input '" + pending.begin()->first +
                                    "' matches no inport");
    return s;
}

std::vector<Nat> enabled_units(const CompiledComputon& cc, const ExecState& s) {
    std::vector<Nat> out;
    for (Nat u = 0; u < cc.unit_pre.size(); ++u) {
        bool all = true;
        for (Nat p : cc.unit_pre[u])
            if (s.values[p].is_absent()) {
                all = false;
                break;
            }
        if (all) out.push_back(u);
    }
    return out;
}

std::vector<Nat> ready_units(const CompiledComputon& cc, const ExecState& s, Rng& rng) {
    std::vector<Nat> enabled = enabled_units(cc, s);
    // Classes keyed by pre-set, in order of their smallest member; each
    // class's list is ascending, so a fixed seed fixes the choice.
    std::vector<std::vector<Nat>> classes;
    for (Nat u : enabled) {
        bool placed = false;
        for (auto& cls : classes)
            if (cc.unit_pre[cls.front()] == cc.unit_pre[u]) {
                cls.push_back(u);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({u});
    }
    std::vector<Nat> out;
    for (const auto& cls : classes)
        out.push_back(cls.size() == 1 ? cls.front() : cls[rng() % cls.size()]);
    std::sort(out.begin(), out.end());
    return out;
}

Value evaluate(const CompiledComputon& cc, const ExecState& s, Nat outflow,
               const DeviceRegistry& devices) {
    const auto& plan = cc.outflow.at(outflow);
    std::vector<Argument> args;
    args.reserve(plan.arg_ports.size());
    for (Nat k = 0; k < plan.arg_ports.size(); ++k) {
        const Value& v = s.values[plan.arg_ports[k]];
        if (v.is_absent())
            throw std::runtime_error("outflow " + std::to_string(outflow) +
                                     ": argument port '" + plan.arg_labels[k] +
                                     "' is absent");
        args.push_back({plan.arg_labels[k], v});
    }
    Value result = devices.invoke(plan.device, args);
    Nat colour = cc.source->colour(plan.target);
    if (!cc.types.admits(colour, result))
        throw std::runtime_error(
            "outflow " + std::to_string(outflow) + ": device " + plan.device.str() +
            " returned " + result.to_display() + ", expected " +
            to_string(cc.types.at(colour)) + " for port '" +
            cc.source->port_labels[plan.target] + "'");
    return result;
}

namespace {

constexpr Nat kNoWriter = static_cast<Nat>(-1);

}  // namespace

ExecState step(const CompiledComputon& cc, const ExecState& s, Rng& rng,
               const DeviceRegistry& devices) {
    const Computon& c = *cc.source;
    std::vector<Nat> ready = ready_units(cc, s, rng);
    std::vector<bool> is_ready(c.units.card, false);
    for (Nat u : ready) is_ready[u] = true;

    // Evaluate every outflow of every ready unit against the previous
    // state; distinct ready units may not write the same port.
    std::vector<Value> written(c.ports.card, Value::absent());
    std::vector<Nat> writer(c.ports.card, kNoWriter);
    for (Nat u : ready)
        for (Nat o : cc.unit_outflows[u]) {
            Nat p = cc.outflow[o].target;
            if (writer[p] != kNoWriter && writer[p] != u)
                throw std::logic_error("step: ports '" + c.port_labels[p] +
                                       "' written by two ready units in one step");
            writer[p] = u;
            written[p] = evaluate(cc, s, o, devices);
        }

    std::vector<bool> adjacent(c.ports.card, false);
    for (Nat u : ready) {
        for (Nat p : cc.unit_pre[u]) adjacent[p] = true;
        for (Nat p : cc.unit_post[u]) adjacent[p] = true;
    }

    ExecState next;
    next.time = s.time + 1;
    next.values.assign(c.ports.card, Value::absent());
    for (Nat p = 0; p < c.ports.card; ++p) {
        if (cc.is_control[p] && writer[p] != kNoWriter) {
            next.values[p] = Value::control();  // control posts of ready units
        } else if (writer[p] != kNoWriter) {
            next.values[p] = written[p];
        } else if (!adjacent[p]) {
            next.values[p] = s.values[p];
        }
        // otherwise: consumed input of a ready unit stays absent
    }
    return next;
}

RunOutcome run(const CompiledComputon& cc, const std::map<std::string, Value>& inputs,
               std::uint64_t seed, Nat max_steps, const DeviceRegistry& devices) {
    if (max_steps < 1) throw std::invalid_argument("run: max_steps must be at least 1");
    Rng rng(seed);
    RunOutcome out;
    ExecState state = initial_state(cc, inputs);
    for (;;) {
        // Snapshot the ready choice that leaves this state, so a trace
        // replays bit-for-bit under the same seed.
        Rng probe = rng;
        std::vector<Nat> ready = ready_units(cc, state, probe);
        out.trace.entries.push_back({state.time, ready, state.values});
        if (ready.empty()) {  // every unit idle: final state reached
            out.status = RunOutcome::Status::ok;
            out.final_state = std::move(state);
            return out;
        }
        if (state.time >= max_steps) {
            out.status = RunOutcome::Status::budget_exhausted;
            out.error = "no final state within " + std::to_string(max_steps) + " steps";
            out.final_state = std::move(state);
            return out;
        }
        try {
            state = step(cc, state, rng, devices);
        } catch (const DeviceError& e) {
            out.status = RunOutcome::Status::device_error;
            out.error = std::string(to_string(e.category)) + ": " + e.what();
            out.final_state = std::move(state);
            return out;
        } catch (const std::runtime_error& e) {
            out.status = RunOutcome::Status::typing_error;
            out.error = e.what();
            out.final_state = std::move(state);
            return out;
        }
    }
}

RunOutcome run_composite(const Composite& c, const TypeUniverse& types,
                         const std::map<std::string, Value>& inputs, std::uint64_t seed,
                         Nat max_steps, const DeviceRegistry& devices) {
    if (!is_sound(c))
        throw std::invalid_argument(
            "only sound composites run: every parsing-tree leaf must be trivial or primitive");
    return run(compile(c.computon, types), inputs, seed, max_steps, devices);
}

std::map<std::string, Value> interface_values(const CompiledComputon& cc,
                                              const ExecState& s) {
    std::map<std::string, Value> out;
    for (Nat p : cc.outport_list) out[cc.source->port_labels[p]] = s.values[p];
    return out;
}

}  // namespace computon
