#pragma once

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "computon/computon.hpp"
#include "computon/value.hpp"

namespace computon {

// One labelled device argument; labels let devices bind by port name, the
// order is ascending port index.
struct Argument {
    std::string label;
    Value value;
};

class DeviceError : public std::runtime_error {
public:
    enum class Category { unknown_device, network, malformed_response, evaluation };

    DeviceError(Category c, const std::string& what)
        : std::runtime_error(what), category(c) {}

    Category category;
};

const char* to_string(DeviceError::Category c);

struct HttpConfig {
    int timeout_ms = 5000;
    int retries = 1;

    // Honours COMPUTON_DEVICE_TIMEOUT_MS when set.
    static HttpConfig from_env();
};

using BuiltinFn = std::function<Value(const std::vector<Argument>&)>;

// Resolves device ids to behaviour: builtins evaluate in-process, URLs go
// through one HTTP POST per invocation. Read-only after construction.
class DeviceRegistry {
public:
    DeviceRegistry() = default;

    // epsilon, mul, add, succ, pred, fact.
    static DeviceRegistry with_builtins();

    void add_builtin(const std::string& name, BuiltinFn fn);
    // Route a device id (typically builtin:<name>) to an HTTP endpoint.
    void remap(const std::string& device_id, const std::string& url);

    Value invoke(const DeviceId& id, const std::vector<Argument>& args) const;

    HttpConfig http = HttpConfig::from_env();

private:
    Value invoke_url(const std::string& url, const std::vector<Argument>& args) const;

    std::map<std::string, BuiltinFn, std::less<>> builtins_;
    std::map<std::string, std::string> remaps_;
};

// Serves every builtin of a registry at POST /devices/<name>. A test double
// for remote devices; handles requests concurrently, shuts down cleanly.
class StubServer {
public:
    explicit StubServer(DeviceRegistry catalogue = DeviceRegistry::with_builtins());
    ~StubServer();

    StubServer(const StubServer&) = delete;
    StubServer& operator=(const StubServer&) = delete;

    // Returns false when the port cannot be bound.
    bool start(int port);
    // Binds an ephemeral port and returns it (0 on failure).
    int start_any();
    void stop();

    int port() const { return port_; }
    std::string base_url() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
};

}  // namespace computon
