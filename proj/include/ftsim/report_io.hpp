// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftsim/ledger.hpp"
#include "ftsim/metrics.hpp"

namespace ftsim {

/// Report fields under snake_case keys, the derived ratios, and `config` as
/// an echo of the scenario that produced it.
nlohmann::json report_to_json(const GoodputReport& report, const nlohmann::json& config);

nlohmann::json aggregate_to_json(const AggregateReport& aggregate, const nlohmann::json& config);

struct TimelineRow {
    double time_start = 0.0;
    double time_end = 0.0;
    TimeBucket bucket = TimeBucket::Compute;
    std::uint32_t healthy_slices = 0;
    std::optional<std::uint64_t> step_index;
};

/// Every step execution and pause in wall-clock order, closed by an idle row
/// when the last interval ends before the horizon.
std::vector<TimelineRow> timeline(const RunLedger& ledger, double horizon_seconds);

void write_timeline_csv(std::ostream& out, const std::vector<TimelineRow>& rows);

/// Writes through a temporary sibling and renames it into place. Throws
/// IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ftsim
