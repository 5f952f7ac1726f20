#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <gmq/ext/json.hpp>

namespace gmq {

// Error taxonomy used across the library.  Every throw site attaches a JSON
// "details" object carrying the offending values, so a driver can print a
// machine-readable diagnostic without parsing the what() string.
//
//   invalid_parameter       -> caller passed something outside the domain
//   infeasible_construction -> the requested stencil does not exist
//   numerical_failure       -> an internal tolerance could not be met
class error : public std::runtime_error {
public:
    error(const std::string& msg, nlohmann::json details)
        : std::runtime_error(msg), details_(std::move(details)) {}

    const nlohmann::json& details() const noexcept { return details_; }
    virtual const char* kind() const noexcept = 0;

private:
    nlohmann::json details_;
};

class invalid_parameter : public error {
public:
    using error::error;
    explicit invalid_parameter(const std::string& msg)
        : error(msg, nlohmann::json::object()) {}
    const char* kind() const noexcept override { return "invalid_parameter"; }
};

class infeasible_construction : public error {
public:
    using error::error;
    explicit infeasible_construction(const std::string& msg)
        : error(msg, nlohmann::json::object()) {}
    const char* kind() const noexcept override { return "infeasible_construction"; }
};

class numerical_failure : public error {
public:
    using error::error;
    explicit numerical_failure(const std::string& msg)
        : error(msg, nlohmann::json::object()) {}
    const char* kind() const noexcept override { return "numerical_failure"; }
};

} // namespace gmq
