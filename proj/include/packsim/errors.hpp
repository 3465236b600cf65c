#pragma once

#include <stdexcept>
#include <string>

namespace packsim {

// Base for every error this library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter set violates its documented invariants.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// An argument lies outside the domain of an operation (soc outside [0,1], dt <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Scenario document problems. `key_path()` names the offending key ("charger.i_charge").
class ConfigError : public Error {
public:
    ConfigError(std::string key_path, const std::string& message)
        : Error(key_path.empty() ? message : key_path + ": " + message),
          key_path_(std::move(key_path)) {}

    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

}  // namespace packsim
