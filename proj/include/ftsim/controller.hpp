// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// The single global controller. It drives the synchronous step loop over a
// discrete-event timeline and owns every fault-tolerance decision:
//
//  * slice failures pause the run for a reconfiguration and training then
//    continues on the surviving slices (or, in a tail case or without
//    elasticity, waits for a full reschedule);
//  * a step with a suspicious metric is immediately replayed on the same
//    devices, and the per-device checksums of the two executions are compared
//    to find the corrupted accelerators, which are excluded;
//  * debug interventions and the legacy delayed SDC flow roll the live
//    history back to a checkpoint.
//
// Fault events take effect at the next step boundary: the step in flight when
// a slice fails completes and the pause starts afterwards.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ftsim/faults.hpp"
#include "ftsim/ledger.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/rng.hpp"
#include "ftsim/topology.hpp"
#include "ftsim/workload.hpp"

namespace ftsim {

enum class ElasticityMode : std::uint8_t { Elastic, NonElasticBaseline };
enum class SdcMode : std::uint8_t { SplitPhase, LegacyDelayed };

/// Which steps get their per-device checksums computed. Suspected steps and
/// their replays are always materialized since localization needs them.
enum class ChecksumPolicy : std::uint8_t { SuspectedSteps, AllSteps };

std::string_view to_string(ElasticityMode mode) noexcept;
std::string_view to_string(SdcMode mode) noexcept;
std::string_view to_string(ChecksumPolicy policy) noexcept;

struct ControllerConfig {
    ElasticityMode mode = ElasticityMode::Elastic;
    SdcMode sdc_mode = SdcMode::SplitPhase;
    double base_step_seconds = 10.0;
    double reconfig_seconds = 30.0;
    double tail_failure_prob = 0.0;
    double reschedule_seconds = 600.0;
    std::int64_t checkpoint_interval_steps = 100;
    double legacy_detection_delay_seconds = 4 * 3600.0;
    double straggler_threshold_ratio = 2.0;
    /// How long an excluded device's slice sits out while a spare is swapped
    /// in. 0 masks the device alone and leaves slice throughput unchanged.
    double spare_substitution_seconds = 0.0;
    ChecksumPolicy checksum_policy = ChecksumPolicy::SuspectedSteps;
};

/// Throws ConfigError("controller.<field>").
void validate(const ControllerConfig& config);

/// Synchronous data-parallel step time when `healthy` of `total` slices carry
/// the global batch. Empty when healthy == 0 (the run stalls). Throws
/// InvalidInput if healthy > total or total == 0.
std::optional<double> step_duration(const ControllerConfig& config, std::uint32_t healthy,
                                    std::uint32_t total);

enum class SuspicionCause : std::uint8_t { None, MetricAnomaly, AuditSample };

std::string_view to_string(SuspicionCause cause) noexcept;

struct SuspicionVerdict {
    bool suspected = false;
    SuspicionCause cause = SuspicionCause::None;
};

/// Whether the monitor flags the step. A corrupted step is caught with
/// sdc_detect_prob_given_corruption; a clean one raises a false alarm with
/// false_suspicion_prob_per_step. One draw from `rng` either way.
SuspicionVerdict judge_step(bool corruption_was_injected, const FaultRates& rates,
                            SplitMix64& rng);

struct ReplayOutcome {
    bool genuine = false;
    std::vector<DeviceId> localized_devices;
    /// Extra step executions caused by the suspicion: the replay, plus the
    /// clean recompute when the corruption was genuine.
    std::uint64_t recompute_count = 0;
    StepOutcome replay;
};

/// Re-executes `replay_input` and diffs its checksums against `original`.
/// Throws ConsistencyError when the participant sets differ.
ReplayOutcome replay_and_localize(const StepInput& replay_input, const StepOutcome& original);

struct ReconfigurationRecord {
    SliceId slice = 0;
    double at = 0.0;
    bool ignored = false;          // slice was not Healthy
    TimeBucket bucket = TimeBucket::Reconfig;
    double seconds = 0.0;
    bool restores_pool = false;    // full reschedule brings every slice back
    bool stalled = false;          // no healthy slice left in the pod
};

/// Marks the slice Failed and decides what the interruption costs. Elastic:
/// reconfig_seconds, or with tail_failure_prob (or when the slice's pod has
/// no healthy slice left) a full reschedule charged to the tail bucket.
/// Baseline: always a full reschedule.
ReconfigurationRecord handle_slice_failure(const ControllerConfig& config, FleetState& fleet,
                                           SliceId slice, double now, SplitMix64& rng);

/// Brings a Failed or Recovering slice back to Healthy; it takes part again
/// from the next step boundary. Returns false for a slice that is already
/// Healthy.
bool handle_slice_recovery(FleetState& fleet, SliceId slice, double now);

/// Legacy delayed SDC handling: every live step that started at or after
/// `onset_time` is potentially corrupt, so the live history is rewound to the
/// last checkpoint before the first of them. Returns the recompute count (0
/// when no step ran since the onset). Throws InvalidInput outside
/// LegacyDelayed mode.
std::uint64_t legacy_sdc_flow(const ControllerConfig& config, RunLedger& ledger,
                              double onset_time);

struct DeviceTiming {
    DeviceId device = 0;
    double seconds = 0.0;
};

/// Devices slower than threshold_ratio x the median, ascending. Throws
/// InvalidInput for an empty sample.
std::vector<DeviceId> detect_stragglers(std::span<const DeviceTiming> timings,
                                        double threshold_ratio);

struct RunResult {
    RunLedger ledger;
    GoodputReport report;
};

/// Runs the controller over an explicit fault trace.
RunResult simulate(const ControllerConfig& config, const FaultRates& rates,
                   const ClusterTopology& topology, const FaultTrace& trace,
                   double horizon_seconds, std::uint64_t seed);

/// Samples the fault trace from `rates` and `seed`, then simulates.
RunResult run_training(const ControllerConfig& config, const FaultRates& rates,
                       const ClusterTopology& topology, double horizon_seconds,
                       std::uint64_t seed);

}  // namespace ftsim
