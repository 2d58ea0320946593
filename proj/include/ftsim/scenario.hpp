// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: one JSON document holding the topology, fault rates,
// controller settings, horizon and seed list for a batch of runs.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ftsim/controller.hpp"
#include "ftsim/faults.hpp"
#include "ftsim/topology.hpp"

namespace ftsim {

struct Scenario {
    std::string name;
    std::string notes;
    double horizon_days = 1.0;
    std::vector<std::uint64_t> seeds{0};
    TopologyConfig topology;
    FaultRates faults;
    ControllerConfig controller;

    double horizon_seconds() const noexcept { return horizon_days * 86400.0; }
};

/// Throws IoError if the file cannot be read, ConfigError on malformed JSON.
nlohmann::json load_json_file(const std::filesystem::path& path);

/// Applies `path=value` (e.g. "faults.slice_failures_per_hour=4") to a raw
/// scenario document. The value is parsed as JSON and falls back to a plain
/// string. Throws ConfigError for malformed overrides and unknown keys.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Strict conversion: unknown keys, wrong types and violated invariants all
/// throw ConfigError naming the field path.
Scenario parse_scenario(const nlohmann::json& doc);

/// Every field with defaults filled in and the seed list expanded.
nlohmann::json to_json(const Scenario& scenario);

/// Hex digest of everything that shapes a run except the seeds, name and
/// notes. Reports from the same configuration share it.
std::string config_hash(const Scenario& scenario);

}  // namespace ftsim
