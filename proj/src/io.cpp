#include "computon/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "computon/wire.hpp"

namespace computon {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const json& field(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

Nat port_by_label(const Computon& c, const std::string& label) {
    for (Nat p = 0; p < c.port_labels.size(); ++p)
        if (c.port_labels[p] == label) return p;
    bad("no port labelled '" + label + "'");
}

}  // namespace

NamedComputon computon_from_json(const json& j) {
    if (!j.is_object()) bad("computon document must be a JSON object");
    NamedComputon out;
    out.name = j.value("name", "");

    auto c = std::make_shared<Computon>();
    c->units = {field(j, "units").get<Nat>()};
    c->colours = {field(j, "colours").get<Nat>()};

    const json& ports = field(j, "ports");
    if (!ports.is_array() || ports.empty()) bad("'ports' must be a nonempty array");
    std::vector<Nat> colour_table;
    for (const json& p : ports) {
        c->port_labels.push_back(field(p, "label").get<std::string>());
        colour_table.push_back(field(p, "colour").get<Nat>());
    }
    c->ports = {c->port_labels.size()};
    for (Nat col : colour_table)
        if (col >= c->colours.card) bad("port colour " + std::to_string(col) + " out of range");
    c->colour = FinMap(c->ports, c->colours, std::move(colour_table));

    const json& inflows = field(j, "inflows");
    std::vector<Nat> src_t, in_unit_t;
    for (const json& f : inflows) {
        src_t.push_back(port_by_label(*c, field(f, "from").get<std::string>()));
        Nat u = field(f, "to").get<Nat>();
        if (u >= c->units.card) bad("inflow targets unit " + std::to_string(u) + " out of range");
        in_unit_t.push_back(u);
    }
    c->inflows = {src_t.size()};
    c->src = FinMap(c->inflows, c->ports, std::move(src_t));
    c->in_unit = FinMap(c->inflows, c->units, std::move(in_unit_t));

    const json& outflows = field(j, "outflows");
    std::vector<Nat> tgt_t, out_unit_t;
    for (const json& f : outflows) {
        Nat u = field(f, "from").get<Nat>();
        if (u >= c->units.card)
            bad("outflow leaves unit " + std::to_string(u) + " out of range");
        out_unit_t.push_back(u);
        tgt_t.push_back(port_by_label(*c, field(f, "to").get<std::string>()));
        c->device.emplace_back(field(f, "device").get<std::string>());
    }
    c->outflows = {tgt_t.size()};
    c->tgt = FinMap(c->outflows, c->ports, std::move(tgt_t));
    c->out_unit = FinMap(c->outflows, c->units, std::move(out_unit_t));

    const json& relate = field(j, "relate");
    std::vector<Nat> relate_t(c->inflows.card, static_cast<Nat>(-1));
    if (!relate.is_array()) bad("'relate' must be an array of [inflow, outflow] pairs");
    for (const json& pair : relate) {
        if (!pair.is_array() || pair.size() != 2) bad("'relate' entries are [inflow, outflow]");
        Nat i = pair[0].get<Nat>(), o = pair[1].get<Nat>();
        if (i >= c->inflows.card || o >= c->outflows.card)
            bad("relate pair [" + std::to_string(i) + ", " + std::to_string(o) +
                "] out of range");
        if (relate_t[i] != static_cast<Nat>(-1)) bad("relate assigns inflow " + std::to_string(i) + " twice");
        relate_t[i] = o;
    }
    for (Nat i = 0; i < relate_t.size(); ++i)
        if (relate_t[i] == static_cast<Nat>(-1))
            bad("relate misses inflow " + std::to_string(i));
    c->relate = FinMap(c->inflows, c->outflows, std::move(relate_t));

    out.computon = std::move(c);
    return out;
}

json computon_to_json(const Computon& c, const std::string& name) {
    json j;
    j["name"] = name;
    j["class"] = is_trivial(c) ? "trivial" : is_primitive(c) ? "primitive" : "composite";
    j["colours"] = c.colours.card;
    j["units"] = c.units.card;
    j["ports"] = json::array();
    for (Nat p = 0; p < c.ports.card; ++p)
        j["ports"].push_back({{"label", c.port_labels[p]}, {"colour", c.colour(p)}});
    j["inflows"] = json::array();
    for (Nat i = 0; i < c.inflows.card; ++i)
        j["inflows"].push_back(
            {{"from", c.port_labels[c.src(i)]}, {"to", c.in_unit(i)}});
    j["outflows"] = json::array();
    for (Nat o = 0; o < c.outflows.card; ++o)
        j["outflows"].push_back({{"from", c.out_unit(o)},
                                 {"to", c.port_labels[c.tgt(o)]},
                                 {"device", c.device[o].str()}});
    j["relate"] = json::array();
    for (Nat i = 0; i < c.inflows.card; ++i)
        j["relate"].push_back({i, c.relate(i)});
    return j;
}

NamedComputon load_computon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    json j = json::parse(in, nullptr, true, true);
    NamedComputon out = computon_from_json(j);
    if (out.name.empty())
        out.name = std::filesystem::path(path).stem().string();
    return out;
}

void save_computon_file(const std::string& path, const Computon& c, const std::string& name) {
    std::ofstream out(path);
    if (!out) bad("cannot write '" + path + "'");
    out << computon_to_json(c, name).dump(2) << "\n";
}

json tree_to_json(const ParsingTree& t) {
    if (t.is_leaf())
        return {{"leaf", t.name()}, {"class", to_string(t.leaf_class())}};
    return {{"op", to_string(t.op())},
            {"left", tree_to_json(*t.left())},
            {"right", tree_to_json(*t.right())}};
}

ParsingTree::Ptr tree_from_json(const json& j) {
    if (!j.is_object()) bad("parsing tree nodes are JSON objects");
    if (j.contains("leaf")) {
        std::string cls = j.value("class", "unknown");
        ParsingTree::LeafClass lc = ParsingTree::LeafClass::unknown;
        if (cls == "trivial") lc = ParsingTree::LeafClass::trivial;
        else if (cls == "primitive") lc = ParsingTree::LeafClass::primitive;
        return ParsingTree::leaf(j["leaf"].get<std::string>(), lc);
    }
    std::string op = field(j, "op").get<std::string>();
    ParsingTree::Op o;
    if (op == "SEQ_TOTAL") o = ParsingTree::Op::seq_total;
    else if (op == "SEQ_PARTIAL") o = ParsingTree::Op::seq_partial;
    else if (op == "ASYNC") o = ParsingTree::Op::async;
    else if (op == "BRA_OPEN") o = ParsingTree::Op::branch_open;
    else if (op == "BRA_CLOSED") o = ParsingTree::Op::branch_closed;
    else bad("unknown tree op '" + op + "'");
    return ParsingTree::node(o, tree_from_json(field(j, "left")),
                             tree_from_json(field(j, "right")));
}

std::string sidecar_path_for(const std::string& computon_path) {
    std::filesystem::path p(computon_path);
    if (p.extension() == ".json") {
        p.replace_extension();
        return p.string() + ".tree.json";
    }
    return computon_path + ".tree.json";
}

Result<Span> seq_span_by_labels(ComputonPtr left, ComputonPtr right,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
    using R = Result<Span>;
    std::vector<std::pair<Nat, Nat>> idx;
    try {
        for (const auto& [l, r] : pairs)
            idx.emplace_back(port_by_label(*left, l), port_by_label(*right, r));
    } catch (const std::invalid_argument& e) {
        return R::failure(e.what());
    }
    return mk_seq_span(std::move(left), std::move(right), idx);
}

Result<std::pair<Marker, Marker>> marker_pair_by_labels(
    Marker::Kind kind, ComputonPtr left, ComputonPtr right,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    using R = Result<std::pair<Marker, Marker>>;
    std::vector<Nat> lmap, rmap;
    std::vector<std::string> labels;
    std::vector<Nat> colours;
    try {
        for (const auto& [l, r] : pairs) {
            Nat lp = port_by_label(*left, l), rp = port_by_label(*right, r);
            if (left->colour(lp) != right->colour(rp))
                return R::failure("marker pairs ports of different colours: '" + l + "' vs '" +
                                  r + "'");
            lmap.push_back(lp);
            rmap.push_back(rp);
            labels.push_back("m" + std::to_string(labels.size()));
            colours.push_back(left->colour(lp));
        }
    } catch (const std::invalid_argument& e) {
        return R::failure(e.what());
    }
    ComputonPtr apex;
    try {
        apex = std::make_shared<const Computon>(mk_trivial(std::move(labels), std::move(colours)));
    } catch (const std::invalid_argument& e) {
        return R::failure(std::string("marker apex: ") + e.what());
    }
    auto mk = [&](const ComputonPtr& target, std::vector<Nat> table) {
        FinMap mp(apex->ports, target->ports, std::move(table));
        return kind == Marker::Kind::in ? mk_in_marker(apex, target, std::move(mp))
                                        : mk_out_marker(apex, target, std::move(mp));
    };
    auto ml = mk(left, std::move(lmap));
    if (!ml) return R::failure("left marker: " + ml.error());
    auto mr = mk(right, std::move(rmap));
    if (!mr) return R::failure("right marker: " + mr.error());
    return R::success({std::move(ml).value(), std::move(mr).value()});
}

namespace {

std::vector<std::pair<std::string, std::string>> pairs_from_json(const json& span) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const json& p : field(span, "pairs"))
        out.emplace_back(field(p, "left").get<std::string>(),
                         field(p, "right").get<std::string>());
    return out;
}

void check_apex_colours(const json& span, const Computon& left,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
    if (!span.contains("apex_colours")) return;
    std::vector<Nat> declared = span["apex_colours"].get<std::vector<Nat>>();
    if (declared.size() != pairs.size())
        bad("apex_colours length differs from the pair count");
    for (Nat k = 0; k < pairs.size(); ++k)
        if (left.colour(port_by_label(left, pairs[k].first)) != declared[k])
            bad("apex_colours[" + std::to_string(k) + "] disagrees with port '" +
                pairs[k].first + "'");
}

}  // namespace

ScriptOutput run_script_json(const json& script, const std::string& base_dir) {
    if (!script.is_object()) bad("script must be a JSON object");
    std::map<std::string, Composite> env;

    if (script.contains("imports"))
        for (const auto& [name, file] : script["imports"].items()) {
            std::filesystem::path p(file.get<std::string>());
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            NamedComputon nc = load_computon_file(p.string());
            auto rep = validate(*nc.computon);
            if (!rep.ok()) bad("import '" + name + "' does not validate: " + rep.to_string());
            env[name] = leaf_composite(nc.computon, name);
        }

    auto lookup = [&](const std::string& name) -> const Composite& {
        auto it = env.find(name);
        if (it == env.end()) bad("'" + name + "' is not defined at this step");
        return it->second;
    };

    ScriptOutput out;
    for (const json& step : field(script, "steps")) {
        const std::string op = field(step, "op").get<std::string>();
        const json& operands = field(step, "operands");
        if (!operands.is_array() || operands.size() != 2) bad(op + " takes two operands");
        const Composite& left = lookup(operands[0].get<std::string>());
        const Composite& right = lookup(operands[1].get<std::string>());
        const std::string result_name = field(step, "result").get<std::string>();

        ScriptStepReport report{op, result_name, ""};
        Composite made;
        if (op == "SEQ") {
            auto pairs = pairs_from_json(field(step, "span"));
            check_apex_colours(step["span"], *left.computon, pairs);
            auto span = seq_span_by_labels(left.computon, right.computon, pairs);
            if (!span) bad("SEQ '" + result_name + "': " + span.error());
            auto r = seq(left, right, span.value());
            if (!r) bad("SEQ '" + result_name + "': " + r.error());
            report.kind = r.value().kind == SeqKind::total ? "total" : "partial";
            made = r.value().composite;
        } else if (op == "ASYNC") {
            made = p_async(left, right).composite;
        } else if (op == "SYNC") {
            auto r = sync(left, right);
            if (!r) bad("SYNC '" + result_name + "': " + r.error());
            report.kind = r.value().kind == SeqKind::total ? "total" : "partial";
            made = r.value().composite;
        } else if (op == "BRA_OPEN") {
            auto pairs = pairs_from_json(field(step, "span"));
            check_apex_colours(step["span"], *left.computon, pairs);
            auto markers = marker_pair_by_labels(Marker::Kind::in, left.computon,
                                                 right.computon, pairs);
            if (!markers) bad("BRA_OPEN '" + result_name + "': " + markers.error());
            auto r = bra_open(left, right, markers.value().first, markers.value().second);
            if (!r) bad("BRA_OPEN '" + result_name + "': " + r.error());
            made = r.value().composite;
        } else if (op == "BRA_CLOSED") {
            auto in_pairs = pairs_from_json(field(step, "span"));
            check_apex_colours(step["span"], *left.computon, in_pairs);
            auto out_pairs = pairs_from_json(field(step, "out_span"));
            auto in_markers = marker_pair_by_labels(Marker::Kind::in, left.computon,
                                                    right.computon, in_pairs);
            if (!in_markers) bad("BRA_CLOSED '" + result_name + "': " + in_markers.error());
            auto out_markers = marker_pair_by_labels(Marker::Kind::out, left.computon,
                                                     right.computon, out_pairs);
            if (!out_markers) bad("BRA_CLOSED '" + result_name + "': " + out_markers.error());
            auto r = bra_closed(left, right, in_markers.value().first,
                                in_markers.value().second, out_markers.value().first,
                                out_markers.value().second);
            if (!r) bad("BRA_CLOSED '" + result_name + "': " + r.error());
            made = r.value().composite;
        } else {
            bad("unknown operator '" + op + "'");
        }
        env[result_name] = std::move(made);
        out.steps.push_back(std::move(report));
    }

    out.export_name = field(script, "export").get<std::string>();
    out.composite = lookup(out.export_name);
    return out;
}

std::map<std::string, Value> inputs_from_json(const Computon& c, const TypeUniverse& types,
                                              const json& j) {
    if (!j.is_object()) bad("inputs must be a JSON object keyed by port label");
    std::map<std::string, Value> out;
    for (const auto& [label, v] : j.items()) {
        Nat p = port_by_label(c, label);
        switch (types.at(c.colour(p))) {
            case ValueKind::control:
                if (!(v.is_string() && v.get<std::string>() == "*"))
                    bad("input '" + label + "' must be the control signal \"*\"");
                out[label] = Value::control();
                break;
            case ValueKind::integer:
                if (!v.is_number_integer() && !v.is_number_unsigned())
                    bad("input '" + label + "' must be an integer");
                out[label] = Value::integer(v.get<std::int64_t>());
                break;
            case ValueKind::real:
                if (!v.is_number()) bad("input '" + label + "' must be a number");
                out[label] = Value::real(v.get<double>());
                break;
            case ValueKind::text:
                if (!v.is_string()) bad("input '" + label + "' must be a string");
                out[label] = Value::text(v.get<std::string>());
                break;
            case ValueKind::boolean:
                if (!v.is_boolean()) bad("input '" + label + "' must be a boolean");
                out[label] = Value::boolean(v.get<bool>());
                break;
        }
    }
    return out;
}

json outputs_to_json(const std::map<std::string, Value>& values) {
    json j = json::object();
    for (const auto& [label, v] : values) {
        if (v.is_absent()) {
            j[label] = nullptr;
            continue;
        }
        switch (v.kind()) {
            case ValueKind::control: j[label] = "*"; break;
            case ValueKind::integer: j[label] = v.as_integer(); break;
            case ValueKind::real: j[label] = v.as_real(); break;
            case ValueKind::text: j[label] = v.as_text(); break;
            case ValueKind::boolean: j[label] = v.as_boolean(); break;
        }
    }
    return j;
}

std::string trace_to_ndjson(const CompiledComputon& cc, const Trace& trace) {
    std::ostringstream out;
    for (const TraceEntry& e : trace.entries) {
        json line;
        line["time"] = e.time;
        line["ready"] = e.ready;
        json vals = json::object();
        for (Nat p = 0; p < e.values.size(); ++p) {
            const std::string& label = cc.source->port_labels[p];
            if (e.values[p].is_absent())
                vals[label] = nullptr;
            else
                vals[label] = value_to_wire(e.values[p]);
        }
        line["values"] = std::move(vals);
        out << line.dump() << "\n";
    }
    return out.str();
}

std::string export_dot(const Computon& c, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    out << "  rankdir=LR;\n";
    for (Nat p = 0; p < c.ports.card; ++p) {
        bool control = c.colour(p) == 0;
        out << "  p" << p << " [label=\"" << c.port_labels[p] << "\" shape="
            << (control ? "square" : "circle") << " fontsize=10];\n";
    }
    for (Nat u = 0; u < c.units.card; ++u)
        out << "  u" << u << " [label=\"u" << u << "\" shape=box style=filled fillcolor=white];\n";
    for (Nat i = 0; i < c.inflows.card; ++i) {
        out << "  p" << c.src(i) << " -> u" << c.in_unit(i);
        if (c.colour(c.src(i)) == 0) out << " [style=dashed]";
        out << ";\n";
    }
    for (Nat o = 0; o < c.outflows.card; ++o) {
        out << "  u" << c.out_unit(o) << " -> p" << c.tgt(o) << " [label=\""
            << c.device[o].str() << "\" fontsize=8";
        if (c.colour(c.tgt(o)) == 0) out << " style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

TypeUniverse universe_from_json(Nat colours, const json& overrides) {
    std::vector<ValueKind> kinds;
    kinds.reserve(colours);
    for (Nat col = 0; col < colours; ++col) {
        if (col == 0) {
            kinds.push_back(ValueKind::control);
        } else if (col < 5 && overrides.is_null()) {
            kinds.push_back(TypeUniverse::standard(5).at(col));
        } else {
            std::string key = std::to_string(col);
            if (overrides.is_object() && overrides.contains(key))
                kinds.push_back(value_kind_from_string(overrides[key].get<std::string>()));
            else if (col < 5)
                kinds.push_back(TypeUniverse::standard(5).at(col));
            else
                bad("colour " + key + " needs an explicit type (--types)");
        }
    }
    return TypeUniverse(std::move(kinds));
}

}  // namespace computon
