#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>

namespace computon {

// Failure is ordinary data for constructors that reject bad inputs as part
// of their contract; the message names the violated condition.
template <typename T>
class Result {
public:
    static Result success(T v) {
        Result r;
        r.value_ = std::move(v);
        return r;
    }
    static Result failure(std::string why) {
        Result r;
        r.error_ = std::move(why);
        return r;
    }

    bool ok() const { return value_.has_value(); }
    explicit operator bool() const { return ok(); }

    const T& value() const& {
        assert(ok());
        return *value_;
    }
    T&& value() && {
        assert(ok());
        return std::move(*value_);
    }
    const std::string& error() const { return error_; }

private:
    Result() = default;
    std::optional<T> value_;
    std::string error_;
};

}  // namespace computon
