#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "computon/operators.hpp"
#include "computon/runtime.hpp"

namespace computon {

struct NamedComputon {
    std::string name;
    ComputonPtr computon;
};

// Document format: ports carry labels and colours, flows address ports by
// label and units by index, relate lists inflow/outflow index pairs. Loads
// are lossless against saves.
NamedComputon computon_from_json(const nlohmann::json& j);
nlohmann::json computon_to_json(const Computon& c, const std::string& name);

NamedComputon load_computon_file(const std::string& path);
void save_computon_file(const std::string& path, const Computon& c, const std::string& name);

nlohmann::json tree_to_json(const ParsingTree& t);
ParsingTree::Ptr tree_from_json(const nlohmann::json& j);

// Sidecar carrying the parsing tree next to a saved composite:
// foo.json -> foo.tree.json.
std::string sidecar_path_for(const std::string& computon_path);

// Label-addressed span builders, the surface used by composition scripts.
Result<Span> seq_span_by_labels(ComputonPtr left, ComputonPtr right,
                                const std::vector<std::pair<std::string, std::string>>& pairs);
Result<std::pair<Marker, Marker>> marker_pair_by_labels(
    Marker::Kind kind, ComputonPtr left, ComputonPtr right,
    const std::vector<std::pair<std::string, std::string>>& pairs);

struct ScriptStepReport {
    std::string op;
    std::string result;
    std::string kind;  // total/partial for SEQ and SYNC, empty otherwise
};

struct ScriptOutput {
    std::string export_name;
    Composite composite;
    std::vector<ScriptStepReport> steps;
};

// Executes a composition script: imports name computon files (relative to
// base_dir), steps apply operators by name, export picks the result.
// Throws std::invalid_argument with the violated clause on bad scripts.
ScriptOutput run_script_json(const nlohmann::json& script, const std::string& base_dir);

// Plain-JSON inputs keyed by port label, coerced against the port colour
// ("*" for control, numbers, strings, booleans; integers widen to float).
std::map<std::string, Value> inputs_from_json(const Computon& c, const TypeUniverse& types,
                                              const nlohmann::json& j);

// Plain-JSON rendering of an interface assignment; absent ports are null.
nlohmann::json outputs_to_json(const std::map<std::string, Value>& values);

// One JSON object per line: {"time", "ready", "values"}.
std::string trace_to_ndjson(const CompiledComputon& cc, const Trace& trace);

// Graphviz rendering of the bipartite structure; control edges dashed.
std::string export_dot(const Computon& c, const std::string& name);

// {"<colour>": "control|int|float|text|bool"} entries overriding the
// standard palette; colour 0 stays control.
TypeUniverse universe_from_json(Nat colours, const nlohmann::json& overrides);

}  // namespace computon
