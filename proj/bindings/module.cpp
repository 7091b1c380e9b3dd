#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "computon/io.hpp"
#include "computon/runtime.hpp"

namespace py = pybind11;
using namespace computon;
using nlohmann::json;

namespace {

py::object value_to_py(const Value& v) {
    if (v.is_absent()) return py::none();
    switch (v.kind()) {
        case ValueKind::control: return py::str("*");
        case ValueKind::integer: return py::int_(v.as_integer());
        case ValueKind::real: return py::float_(v.as_real());
        case ValueKind::text: return py::str(v.as_text());
        case ValueKind::boolean: return py::bool_(v.as_boolean());
    }
    return py::none();
}

json py_to_json(const py::handle& h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<std::int64_t>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::dict>(h)) {
        json out = json::object();
        for (const auto& item : h.cast<py::dict>())
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        return out;
    }
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        json out = json::array();
        for (const auto& item : h.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw py::type_error("unsupported value in mapping");
}

std::vector<std::string> labels_of(const Computon& c, const std::vector<Nat>& ports) {
    std::vector<std::string> out;
    for (Nat p : ports) out.push_back(c.port_labels[p]);
    return out;
}

std::vector<std::pair<std::string, std::string>> as_pairs(const py::iterable& it) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& entry : it) {
        auto seq = entry.cast<py::sequence>();
        if (py::len(seq) != 2) throw py::value_error("pairs are (left, right) labels");
        out.emplace_back(seq[0].cast<std::string>(), seq[1].cast<std::string>());
    }
    return out;
}

Composite as_leaf(const NamedComputon& nc) { return leaf_composite(nc.computon, nc.name); }

struct PyRunResult {
    std::string status;
    std::string error;
    Nat steps = 0;
    py::dict outputs;
    py::list trace;
};

PyRunResult run_py(const Composite& comp, const py::dict& inputs, std::uint64_t seed,
                   Nat max_steps, const py::dict& devices) {
    TypeUniverse types = universe_from_json(comp.computon->colours.card, json(nullptr));
    DeviceRegistry reg = DeviceRegistry::with_builtins();
    for (const auto& item : devices)
        reg.remap(item.first.cast<std::string>(), item.second.cast<std::string>());

    auto cc = compile(comp.computon, types);
    if (!is_sound(comp))
        throw std::invalid_argument("only sound composites run");
    auto parsed = inputs_from_json(*comp.computon, types, py_to_json(inputs));
    RunOutcome out = run(cc, parsed, seed, max_steps, reg);

    PyRunResult res;
    switch (out.status) {
        case RunOutcome::Status::ok: res.status = "ok"; break;
        case RunOutcome::Status::budget_exhausted: res.status = "budget_exhausted"; break;
        case RunOutcome::Status::device_error: res.status = "device_error"; break;
        case RunOutcome::Status::typing_error: res.status = "typing_error"; break;
    }
    res.error = out.error;
    res.steps = out.final_state.time;
    for (const auto& [label, value] : interface_values(cc, out.final_state))
        res.outputs[py::str(label)] = value_to_py(value);
    for (const TraceEntry& e : out.trace.entries) {
        py::dict entry;
        entry["time"] = e.time;
        py::list ready;
        for (Nat u : e.ready) ready.append(u);
        entry["ready"] = std::move(ready);
        py::dict values;
        for (Nat p = 0; p < e.values.size(); ++p)
            values[py::str(comp.computon->port_labels[p])] = value_to_py(e.values[p]);
        entry["values"] = std::move(values);
        res.trace.append(std::move(entry));
    }
    return res;
}

template <typename T>
T unwrap(Result<T> r) {
    if (!r) throw std::invalid_argument(r.error());
    return std::move(r).value();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "colimit-based composition and execution of computing devices";

    py::class_<NamedComputon>(m, "Computon")
        .def_property_readonly("name", [](const NamedComputon& nc) { return nc.name; })
        .def_property_readonly("units",
                               [](const NamedComputon& nc) { return nc.computon->units.card; })
        .def_property_readonly("ports",
                               [](const NamedComputon& nc) { return nc.computon->ports.card; })
        .def_property_readonly(
            "inflows", [](const NamedComputon& nc) { return nc.computon->inflows.card; })
        .def_property_readonly(
            "outflows", [](const NamedComputon& nc) { return nc.computon->outflows.card; })
        .def_property_readonly(
            "colours", [](const NamedComputon& nc) { return nc.computon->colours.card; })
        .def_property_readonly(
            "port_labels", [](const NamedComputon& nc) { return nc.computon->port_labels; })
        .def("validate",
             [](const NamedComputon& nc) {
                 std::vector<std::string> out;
                 for (const auto& v : validate(*nc.computon).violations)
                     out.push_back(v.rule + ": " + v.detail);
                 return out;
             },
             "empty when the computon satisfies every structural restriction")
        .def("inports",
             [](const NamedComputon& nc) {
                 return labels_of(*nc.computon, inports(*nc.computon));
             })
        .def("outports",
             [](const NamedComputon& nc) {
                 return labels_of(*nc.computon, outports(*nc.computon));
             })
        .def("is_trivial", [](const NamedComputon& nc) { return is_trivial(*nc.computon); })
        .def("is_primitive",
             [](const NamedComputon& nc) { return is_primitive(*nc.computon); })
        .def("is_connected",
             [](const NamedComputon& nc) { return is_connected(*nc.computon); })
        .def("to_json",
             [](const NamedComputon& nc) {
                 return computon_to_json(*nc.computon, nc.name).dump(2);
             })
        .def("export_dot",
             [](const NamedComputon& nc) { return export_dot(*nc.computon, nc.name); })
        .def("__repr__", [](const NamedComputon& nc) {
            return "<Computon '" + nc.name + "' units=" +
                   std::to_string(nc.computon->units.card) +
                   " ports=" + std::to_string(nc.computon->ports.card) + ">";
        });

    py::class_<Composite>(m, "Composite")
        .def_property_readonly("computon",
                               [](const Composite& c) {
                                   return NamedComputon{"composite", c.computon};
                               })
        .def("is_sound", [](const Composite& c) { return is_sound(c); })
        .def("tree_json", [](const Composite& c) { return tree_to_json(*c.tree).dump(2); })
        .def_property_readonly("height", [](const Composite& c) { return c.tree->height(); });

    py::class_<PyRunResult>(m, "RunResult")
        .def_readonly("status", &PyRunResult::status)
        .def_readonly("error", &PyRunResult::error)
        .def_readonly("steps", &PyRunResult::steps)
        .def_readonly("outputs", &PyRunResult::outputs)
        .def_readonly("trace", &PyRunResult::trace);

    m.def("load_computon", &load_computon_file, py::arg("path"),
          "read a computon JSON document");
    m.def(
        "computon_from_json",
        [](const std::string& text) { return computon_from_json(json::parse(text)); },
        py::arg("text"));
    m.def(
        "mk_trivial",
        [](const std::vector<std::string>& labels, const std::vector<Nat>& colours,
           const std::string& name) {
            return NamedComputon{name, std::make_shared<const Computon>(
                                           mk_trivial(labels, colours))};
        },
        py::arg("labels"), py::arg("colours"), py::arg("name") = "trivial");
    m.def(
        "isomorphic",
        [](const NamedComputon& a, const NamedComputon& b) {
            return computons_isomorphic(*a.computon, *b.computon);
        },
        py::arg("a"), py::arg("b"), "structure-preserving bijection search");

    m.def("leaf", &as_leaf, py::arg("computon"),
          "wrap a source computon as a height-0 composite");

    m.def(
        "seq",
        [](const NamedComputon& l, const NamedComputon& r, const py::iterable& pairs) {
            Span s = unwrap(seq_span_by_labels(l.computon, r.computon, as_pairs(pairs)));
            SeqResult res = unwrap(seq(as_leaf(l), as_leaf(r), s));
            return py::make_tuple(res.composite,
                                  res.kind == SeqKind::total ? "total" : "partial");
        },
        py::arg("left"), py::arg("right"), py::arg("pairs"),
        "sequence two computons along (left outport, right inport) label pairs");
    m.def(
        "p_async",
        [](const NamedComputon& l, const NamedComputon& r) {
            return p_async(as_leaf(l), as_leaf(r)).composite;
        },
        py::arg("left"), py::arg("right"));
    m.def(
        "sync",
        [](const NamedComputon& l, const NamedComputon& r) {
            SeqResult res = unwrap(sync(as_leaf(l), as_leaf(r)));
            return py::make_tuple(res.composite,
                                  res.kind == SeqKind::total ? "total" : "partial");
        },
        py::arg("left"), py::arg("right"));
    m.def(
        "bra_open",
        [](const NamedComputon& l, const NamedComputon& r, const py::iterable& pairs) {
            auto markers = unwrap(
                marker_pair_by_labels(Marker::Kind::in, l.computon, r.computon, as_pairs(pairs)));
            return unwrap(bra_open(as_leaf(l), as_leaf(r), markers.first, markers.second))
                .composite;
        },
        py::arg("left"), py::arg("right"), py::arg("pairs"));
    m.def(
        "bra_closed",
        [](const NamedComputon& l, const NamedComputon& r, const py::iterable& in_pairs,
           const py::iterable& out_pairs) {
            auto ins = unwrap(marker_pair_by_labels(Marker::Kind::in, l.computon, r.computon,
                                                    as_pairs(in_pairs)));
            auto outs = unwrap(marker_pair_by_labels(Marker::Kind::out, l.computon,
                                                     r.computon, as_pairs(out_pairs)));
            return unwrap(bra_closed(as_leaf(l), as_leaf(r), ins.first, ins.second,
                                     outs.first, outs.second))
                .composite;
        },
        py::arg("left"), py::arg("right"), py::arg("in_pairs"), py::arg("out_pairs"));

    m.def(
        "compose_script",
        [](const std::string& text, const std::string& base_dir) {
            ScriptOutput out = run_script_json(json::parse(text), base_dir);
            py::list steps;
            for (const auto& s : out.steps) {
                py::dict d;
                d["op"] = s.op;
                d["result"] = s.result;
                if (!s.kind.empty()) d["kind"] = s.kind;
                steps.append(std::move(d));
            }
            return py::make_tuple(out.composite, steps);
        },
        py::arg("script"), py::arg("base_dir") = ".",
        "run a composition script given as JSON text");

    m.def("run", &run_py, py::arg("composite"), py::arg("inputs"), py::arg("seed") = 0,
          py::arg("max_steps") = kDefaultMaxSteps, py::arg("devices") = py::dict(),
          "execute a sound composite to its final state");
}
