#include "computon/devnet.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "computon/wire.hpp"

namespace computon {

using nlohmann::json;

const char* to_string(DeviceError::Category c) {
    switch (c) {
        case DeviceError::Category::unknown_device: return "unknown device";
        case DeviceError::Category::network: return "network";
        case DeviceError::Category::malformed_response: return "malformed response";
        case DeviceError::Category::evaluation: return "evaluation";
    }
    return "?";
}

HttpConfig HttpConfig::from_env() {
    HttpConfig cfg;
    if (const char* ms = std::getenv("COMPUTON_DEVICE_TIMEOUT_MS")) {
        int v = std::atoi(ms);
        if (v > 0) cfg.timeout_ms = v;
    }
    return cfg;
}

namespace {

[[noreturn]] void eval_error(const std::string& what) {
    throw DeviceError(DeviceError::Category::evaluation, what);
}

void want_arity(const char* name, const std::vector<Argument>& args, Nat n) {
    if (args.size() != n)
        eval_error(std::string(name) + " expects " + std::to_string(n) + " argument(s), got " +
                   std::to_string(args.size()));
}

std::int64_t want_integer(const char* name, const Argument& a) {
    if (a.value.is_absent() || a.value.kind() != ValueKind::integer)
        eval_error(std::string(name) + " expects an integer argument");
    return a.value.as_integer();
}

Value numeric_binop(const char* name, const std::vector<Argument>& args, bool multiply) {
    want_arity(name, args, 2);
    for (const auto& a : args)
        if (!a.value.is_numeric())
            eval_error(std::string(name) + " expects numeric arguments");
    bool both_int = args[0].value.kind() == ValueKind::integer &&
                    args[1].value.kind() == ValueKind::integer;
    if (both_int) {
        std::int64_t a = args[0].value.as_integer(), b = args[1].value.as_integer();
        return Value::integer(multiply ? a * b : a + b);
    }
    double a = args[0].value.numeric(), b = args[1].value.numeric();
    return Value::real(multiply ? a * b : a + b);
}

}  // namespace

DeviceRegistry DeviceRegistry::with_builtins() {
    DeviceRegistry reg;
    // Echoes a control signal; as the device of a glue it waits on one
    // signal per joined branch, so any positive arity is accepted.
    reg.add_builtin("epsilon", [](const std::vector<Argument>& args) {
        if (args.empty()) eval_error("epsilon expects at least one control signal");
        for (const auto& a : args)
            if (a.value.is_absent() || a.value.kind() != ValueKind::control)
                eval_error("epsilon expects control signals only");
        return Value::control();
    });
    reg.add_builtin("mul", [](const std::vector<Argument>& args) {
        return numeric_binop("mul", args, true);
    });
    reg.add_builtin("add", [](const std::vector<Argument>& args) {
        return numeric_binop("add", args, false);
    });
    reg.add_builtin("succ", [](const std::vector<Argument>& args) {
        want_arity("succ", args, 1);
        return Value::integer(want_integer("succ", args[0]) + 1);
    });
    reg.add_builtin("pred", [](const std::vector<Argument>& args) {
        want_arity("pred", args, 1);
        std::int64_t n = want_integer("pred", args[0]);
        if (n < 0) eval_error("pred is defined on naturals");
        return Value::integer(n == 0 ? 0 : n - 1);
    });
    reg.add_builtin("fact", [](const std::vector<Argument>& args) {
        want_arity("fact", args, 1);
        std::int64_t n = want_integer("fact", args[0]);
        if (n < 0 || n > 20) eval_error("fact is defined for 0 <= n <= 20");
        std::int64_t acc = 1;
        for (std::int64_t k = 2; k <= n; ++k) acc *= k;
        return Value::integer(acc);
    });
    return reg;
}

void DeviceRegistry::add_builtin(const std::string& name, BuiltinFn fn) {
    builtins_[name] = std::move(fn);
}

void DeviceRegistry::remap(const std::string& device_id, const std::string& url) {
    remaps_[device_id] = url;
}

Value DeviceRegistry::invoke(const DeviceId& id, const std::vector<Argument>& args) const {
    if (auto it = remaps_.find(id.str()); it != remaps_.end())
        return invoke_url(it->second, args);
    if (id.is_builtin()) {
        auto it = builtins_.find(id.builtin_name());
        if (it == builtins_.end())
            throw DeviceError(DeviceError::Category::unknown_device,
                              "no builtin named '" + std::string(id.builtin_name()) + "'");
        return it->second(args);
    }
    return invoke_url(id.str(), args);
}

namespace {

// scheme://host[:port]/path -> (scheme://host[:port], /path)
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw DeviceError(DeviceError::Category::unknown_device, "not a URL: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

Value DeviceRegistry::invoke_url(const std::string& url, const std::vector<Argument>& args) const {
    json body;
    body["args"] = json::array();
    for (const auto& a : args) body["args"].push_back(value_to_wire(a.value, a.label));
    const std::string payload = body.dump();

    auto [base, path] = split_url(url);
    httplib::Client cli(base);
    cli.set_connection_timeout(std::chrono::milliseconds(http.timeout_ms));
    cli.set_read_timeout(std::chrono::milliseconds(http.timeout_ms));
    cli.set_write_timeout(std::chrono::milliseconds(http.timeout_ms));

    httplib::Result res;
    for (int attempt = 0; attempt <= http.retries; ++attempt) {
        res = cli.Post(path, payload, "application/json");
        if (res) break;  // pure devices: retry only transport failures
    }
    if (!res)
        throw DeviceError(DeviceError::Category::network,
                          "no response from " + url + ": " + httplib::to_string(res.error()));
    if (res->status != 200) {
        std::string msg = "device at " + url + " answered " + std::to_string(res->status);
        if (auto err = json::parse(res->body, nullptr, false);
            err.is_object() && err.contains("error"))
            msg += ": " + err["error"].get<std::string>();
        throw DeviceError(DeviceError::Category::evaluation, msg);
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded())
        throw DeviceError(DeviceError::Category::malformed_response,
                          "device at " + url + " returned non-JSON");
    try {
        return value_from_wire(parsed);
    } catch (const std::invalid_argument& e) {
        throw DeviceError(DeviceError::Category::malformed_response,
                          "device at " + url + " returned a malformed value: " + e.what());
    }
}

struct StubServer::Impl {
    DeviceRegistry catalogue;
    httplib::Server server;
    std::thread worker;
};

StubServer::StubServer(DeviceRegistry catalogue) : impl_(new Impl{std::move(catalogue), {}, {}}) {
    auto& svr = impl_->server;
    svr.Post(R"(/devices/([A-Za-z0-9_]+))",
             [this](const httplib::Request& req, httplib::Response& res) {
                 const std::string name = req.matches[1];
                 json parsed = json::parse(req.body, nullptr, false);
                 if (parsed.is_discarded() || !parsed.contains("args") ||
                     !parsed["args"].is_array()) {
                     res.status = 400;
                     res.set_content(json{{"error", "body must be {\"args\": [...]}"}}.dump(),
                                     "application/json");
                     return;
                 }
                 std::vector<Argument> args;
                 try {
                     for (const auto& a : parsed["args"]) {
                         Argument arg;
                         if (a.is_object() && a.contains("label") && a["label"].is_string())
                             arg.label = a["label"].get<std::string>();
                         arg.value = value_from_wire(a);
                         args.push_back(std::move(arg));
                     }
                 } catch (const std::invalid_argument& e) {
                     res.status = 400;
                     res.set_content(json{{"error", e.what()}}.dump(), "application/json");
                     return;
                 }
                 try {
                     Value out =
                         impl_->catalogue.invoke(DeviceId("builtin:" + name), args);
                     res.set_content(value_to_wire(out).dump(), "application/json");
                 } catch (const DeviceError& e) {
                     res.status =
                         e.category == DeviceError::Category::unknown_device ? 404 : 422;
                     res.set_content(json{{"error", e.what()}}.dump(), "application/json");
                 }
             });
    svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty())
            res.set_content(json{{"error", "no such endpoint"}}.dump(), "application/json");
    });
}

StubServer::~StubServer() { stop(); }

bool StubServer::start(int port) {
    if (!impl_->server.bind_to_port("127.0.0.1", port)) return false;
    port_ = port;
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return true;
}

int StubServer::start_any() {
    int port = impl_->server.bind_to_any_port("127.0.0.1");
    if (port <= 0) return 0;
    port_ = port;
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

void StubServer::stop() {
    if (!impl_) return;
    if (impl_->server.is_running()) impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
    port_ = 0;
}

std::string StubServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
}

}  // namespace computon
