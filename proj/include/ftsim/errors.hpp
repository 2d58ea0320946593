// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ftsim {

/// Invalid configuration value. `field()` is the dotted path of the offending
/// key, e.g. "faults.sdc_corruption_prob_per_step".
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An event was scheduled before the current simulated time. Always a bug.
class SchedulingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ftsim
