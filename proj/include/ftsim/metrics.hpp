// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Wall-time bucket accounting for a run and seed-sweep aggregation.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ftsim {

struct GoodputReport {
    std::uint64_t seed = 0;
    std::string config_hash;

    double horizon_seconds = 0.0;
    double compute_seconds = 0.0;
    double reconfig_seconds_total = 0.0;
    double tail_seconds_total = 0.0;
    double baseline_reschedule_seconds_total = 0.0;
    double idle_residual_seconds = 0.0;

    std::uint64_t steps_computed = 0;
    std::uint64_t steps_replayed = 0;
    std::uint64_t steps_rolled_back = 0;
    std::uint64_t genuine_sdc_incidents = 0;
    std::uint64_t suspicions = 0;
    std::uint64_t silent_corruptions = 0;
    std::uint64_t interruptions = 0;
    std::optional<double> mean_detection_latency_seconds;

    std::uint64_t steps_completed = 0;   // live history length at the horizon
    std::uint64_t exclusions = 0;
    std::uint64_t debug_interventions = 0;
    std::uint64_t legacy_sdc_rollbacks = 0;
    std::uint64_t straggler_checks = 0;
    std::uint64_t stragglers_flagged = 0;
    std::uint64_t warnings = 0;

    double non_compute_seconds() const noexcept { return horizon_seconds - compute_seconds; }
    /// Sum of the five buckets; equals horizon_seconds up to rounding.
    double bucket_sum() const noexcept {
        return compute_seconds + reconfig_seconds_total + tail_seconds_total +
               baseline_reschedule_seconds_total + idle_residual_seconds;
    }
};

/// compute_seconds / horizon_seconds, clamped to [0, 1].
double goodput(const GoodputReport& report);

struct OverheadSplit {
    double reconfig_fraction = 0.0;
    double tail_fraction = 0.0;
};

/// Shares of non-compute time spent in reconfiguration and in tail cases.
/// Empty when there was no non-compute time.
std::optional<OverheadSplit> overhead_split(const GoodputReport& report);

struct ReplayStats {
    double replay_fraction_of_steps = 0.0;
    double genuine_fraction_of_replays = 0.0;
    double debug_recompute_fraction = 0.0;
    /// Set when a ratio had a zero denominator and was reported as 0.
    bool degenerate = false;
};

ReplayStats replay_stats(const GoodputReport& report);

/// Step executions that did not end up on the final live history: replays,
/// clean recomputes after a localized corruption, rolled-back work, and a
/// suspected step still awaiting its replay at the horizon.
std::uint64_t redundant_steps(const GoodputReport& report) noexcept;

struct FieldStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single report
    std::size_t count = 0;
};

struct AggregateReport {
    std::size_t count = 0;
    double horizon_seconds = 0.0;
    std::string config_hash;
    std::vector<std::uint64_t> seeds;
    std::map<std::string, FieldStats> fields;
};

/// Named numeric view of a report, including derived ratios. This is the
/// field list used by merge_reports and the aggregate serializers.
std::vector<std::pair<std::string, std::optional<double>>> numeric_fields(
    const GoodputReport& report);

/// Field-wise mean and sample standard deviation. Throws InvalidInput when the
/// list is empty or the reports disagree on horizon_seconds or config_hash.
AggregateReport merge_reports(std::span<const GoodputReport> reports);

}  // namespace ftsim
