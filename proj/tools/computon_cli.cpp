#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "computon/io.hpp"

namespace {

using nlohmann::json;
using namespace computon;

constexpr int kExitOk = 0;
constexpr int kExitStructural = 1;
constexpr int kExitNonTermination = 2;
constexpr int kExitDevice = 3;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return json::parse(in, nullptr, true, true);
}

int cmd_validate(const std::string& file) {
    NamedComputon nc = load_computon_file(file);
    ValidationReport rep = validate(*nc.computon);
    if (rep.ok()) {
        std::cout << "ok\n";
        return kExitOk;
    }
    for (const auto& v : rep.violations)
        std::cout << v.rule << ": " << v.detail << "\n";
    return kExitStructural;
}

int cmd_compose(const std::string& script_path, const std::string& out_path) {
    json script = parse_file(script_path);
    std::string base =
        std::filesystem::path(script_path).parent_path().string();
    ScriptOutput result = run_script_json(script, base);
    for (const auto& step : result.steps) {
        std::cout << step.op << " -> " << step.result;
        if (!step.kind.empty()) std::cout << " (kind: " << step.kind << ")";
        std::cout << "\n";
    }
    save_computon_file(out_path, *result.composite.computon, result.export_name);
    std::ofstream side(sidecar_path_for(out_path));
    side << tree_to_json(*result.composite.tree).dump(2) << "\n";
    std::cout << "wrote " << out_path << " and " << sidecar_path_for(out_path) << "\n";
    return kExitOk;
}

Composite load_composite(const std::string& file, const std::string& tree_path) {
    NamedComputon nc = load_computon_file(file);
    std::string side = tree_path.empty() ? sidecar_path_for(file) : tree_path;
    if (std::ifstream in(side); in) {
        json tj = json::parse(in, nullptr, true, true);
        return Composite{nc.computon, tree_from_json(tj)};
    }
    if (!tree_path.empty()) throw std::invalid_argument("cannot open '" + tree_path + "'");
    return leaf_composite(nc.computon, nc.name);
}

int cmd_run(const std::string& file, const std::string& inputs_json,
            std::uint64_t seed, Nat max_steps, const std::string& trace_path,
            const std::string& devices_json, const std::string& types_json,
            const std::string& tree_path) {
    Composite comp = load_composite(file, tree_path);
    auto rep = validate(*comp.computon);
    if (!rep.ok())
        throw std::invalid_argument("computon does not validate: " + rep.to_string());

    TypeUniverse types = universe_from_json(
        comp.computon->colours.card,
        types_json.empty() ? json(nullptr) : json::parse(types_json));

    DeviceRegistry registry = DeviceRegistry::with_builtins();
    if (!devices_json.empty())
        for (const auto& [id, url] : json::parse(devices_json).items())
            registry.remap(id, url.get<std::string>());

    std::map<std::string, Value> inputs =
        inputs_from_json(*comp.computon, types,
                         inputs_json.empty() ? json::object() : json::parse(inputs_json));

    CompiledComputon cc = compile(comp.computon, types);
    if (!is_sound(comp))
        throw std::invalid_argument(
            "only sound composites run: every parsing-tree leaf must be trivial or "
            "primitive (is the .tree.json sidecar present and intact?)");
    RunOutcome outcome = run(cc, inputs, seed, max_steps, registry);

    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::invalid_argument("cannot write '" + trace_path + "'");
        out << trace_to_ndjson(cc, outcome.trace);
    }

    switch (outcome.status) {
        case RunOutcome::Status::ok:
            std::cout << outputs_to_json(interface_values(cc, outcome.final_state)).dump()
                      << "\n";
            return kExitOk;
        case RunOutcome::Status::budget_exhausted:
            std::cerr << "error: " << outcome.error << "\n";
            return kExitNonTermination;
        case RunOutcome::Status::device_error:
        case RunOutcome::Status::typing_error:
            std::cerr << "error: " << outcome.error << "\n";
            return kExitDevice;
    }
    return kExitStructural;
}

int cmd_export_dot(const std::string& file, const std::string& out_path) {
    NamedComputon nc = load_computon_file(file);
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << export_dot(*nc.computon, nc.name);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int cmd_serve(int port) {
    StubServer server;
    if (!server.start(port)) {
        std::cerr << "error: cannot bind port " << port << "\n";
        return kExitDevice;
    }
    std::cout << "serving builtin devices at " << server.base_url()
              << "/devices/<name> (Ctrl-C to stop)\n";
    static StubServer* live = &server;
    std::signal(SIGINT, [](int) { live->stop(); });
    std::signal(SIGTERM, [](int) { live->stop(); });
    for (;;) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        if (live->port() == 0) break;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computon: compose and execute control-driven computing devices"};
    app.require_subcommand(1);

    std::string file, out_path = "composite.json", script_path;
    std::string inputs_json, trace_path, devices_json, types_json, tree_path;
    std::uint64_t seed = 0;
    Nat max_steps = kDefaultMaxSteps;
    int port = 8077;

    auto* validate_cmd = app.add_subcommand("validate", "check a computon file");
    validate_cmd->add_option("file", file, "computon JSON file")->required();

    auto* compose_cmd = app.add_subcommand("compose", "run a composition script");
    compose_cmd->add_option("script", script_path, "composition script JSON")->required();
    compose_cmd->add_option("-o,--out", out_path, "output computon file");

    auto* run_cmd = app.add_subcommand("run", "execute a computon to its final state");
    run_cmd->add_option("file", file, "computon JSON file")->required();
    run_cmd->add_option("--inputs", inputs_json, "JSON object keyed by inport label");
    run_cmd->add_option("--seed", seed, "seed for the ready-unit choice");
    run_cmd->add_option("--max-steps", max_steps, "step budget before giving up");
    run_cmd->add_option("--trace", trace_path, "write the trace as line-delimited JSON");
    run_cmd->add_option("--devices", devices_json,
                        "JSON object remapping device ids to URLs");
    run_cmd->add_option("--types", types_json,
                        "JSON object mapping colours to control|int|float|text|bool");
    run_cmd->add_option("--tree", tree_path, "parsing-tree sidecar (default: <file>.tree.json)");

    auto* dot_cmd = app.add_subcommand("export-dot", "write the port/unit graph as Graphviz");
    dot_cmd->add_option("file", file, "computon JSON file")->required();
    dot_cmd->add_option("-o,--out", out_path, "output .dot file")->required();

    auto* serve_cmd = app.add_subcommand("serve", "serve the builtin devices over HTTP");
    serve_cmd->add_option("--port", port, "TCP port to bind");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(file);
        if (app.got_subcommand(compose_cmd)) return cmd_compose(script_path, out_path);
        if (app.got_subcommand(run_cmd))
            return cmd_run(file, inputs_json, seed, max_steps, trace_path, devices_json,
                           types_json, tree_path);
        if (app.got_subcommand(dot_cmd)) return cmd_export_dot(file, out_path);
        if (app.got_subcommand(serve_cmd)) return cmd_serve(port);
    } catch (const computon::DeviceError& e) {
        std::cerr << "error (" << to_string(e.category) << "): " << e.what() << "\n";
        return kExitDevice;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStructural;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStructural;
    }
    return kExitStructural;
}
