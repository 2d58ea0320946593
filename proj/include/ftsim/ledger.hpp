// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// The controller's global view of the run: every step execution, every
// pause, checkpoints, rollbacks and device exclusions.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ftsim/topology.hpp"

namespace ftsim {

enum class StepStatus : std::uint8_t {
    Computed,
    Suspected,
    ReplayedFalseAlarm,
    ReplayedGenuine,
    RolledBack,
};

std::string_view to_string(StepStatus status) noexcept;

enum class TimeBucket : std::uint8_t { Compute, Reconfig, Tail, BaselineReschedule, Idle };

std::string_view to_string(TimeBucket bucket) noexcept;

struct StepRecord {
    std::uint64_t step_index = 0;
    /// How many earlier executions of this step index exist (replays,
    /// recomputes and post-rollback re-executions all count).
    std::uint64_t attempt = 0;
    double wall_start = 0.0;
    double wall_end = 0.0;
    std::shared_ptr<const ParticipantSet> participants;
    /// Present only for steps whose per-device checksums were materialized.
    std::optional<std::uint64_t> checksum_digest;
    std::optional<double> metric;
    StepStatus status = StepStatus::Computed;
    bool verified = false;
    std::uint32_t active_slices = 0;
    /// Ground truth from fault injection; used for accounting and tests only.
    std::vector<DeviceId> injected_corruption;
};

/// A stretch of wall time in which no step runs.
struct Pause {
    double start = 0.0;
    double end = 0.0;          // clipped to the horizon
    double requested = 0.0;    // full configured cost
    TimeBucket bucket = TimeBucket::Reconfig;
    std::optional<SliceId> slice;
    std::uint32_t active_slices = 0;
    std::uint64_t next_step = 0;
};

struct Exclusion {
    DeviceId device = 0;
    double time = 0.0;
};

enum class RollbackReason : std::uint8_t { SdcLegacy, DebugIntervention };

struct RollbackEvent {
    std::uint64_t from_step = 0;
    std::uint64_t to_checkpoint = 0;
    RollbackReason reason = RollbackReason::DebugIntervention;
};

struct LedgerWarnings {
    std::uint64_t ignored_failures = 0;
    std::uint64_t ignored_recoveries = 0;
    std::uint64_t ignored_onsets = 0;
    std::uint64_t double_exclusions = 0;

    std::uint64_t total() const noexcept {
        return ignored_failures + ignored_recoveries + ignored_onsets + double_exclusions;
    }
};

class RunLedger {
public:
    explicit RunLedger(std::int64_t checkpoint_interval_steps);

    const std::vector<StepRecord>& records() const noexcept { return records_; }
    const std::vector<std::uint64_t>& checkpoints() const noexcept { return checkpoints_; }
    const std::vector<Exclusion>& excluded_devices() const noexcept { return exclusions_; }
    const std::vector<Pause>& pauses() const noexcept { return pauses_; }
    const std::vector<RollbackEvent>& rollbacks() const noexcept { return rollbacks_; }
    std::int64_t checkpoint_interval() const noexcept { return interval_; }

    /// Index of the next step to compute; equals the number of completed steps
    /// on the live history.
    std::uint64_t next_step() const noexcept { return next_step_; }

    /// Throws ConsistencyError if the record starts before the previous one.
    StepRecord& append(StepRecord record);
    void append_pause(Pause pause);
    void record_exclusion(DeviceId device, double time);

    /// Marks `step_index` done on the live history and records a checkpoint
    /// when the completed count reaches a multiple of the interval. Returns
    /// true if a checkpoint was taken.
    bool complete_step(std::uint64_t step_index);

    /// Largest checkpoint <= step.
    std::uint64_t checkpoint_at_or_before(std::uint64_t step) const;

    LedgerWarnings& warnings() noexcept { return warnings_; }
    const LedgerWarnings& warnings() const noexcept { return warnings_; }

private:
    friend std::uint64_t rollback(RunLedger&, std::uint64_t, RollbackReason);

    std::int64_t interval_;
    std::uint64_t next_step_ = 0;
    std::vector<StepRecord> records_;
    std::vector<std::uint64_t> checkpoints_{0};
    std::vector<Exclusion> exclusions_;
    std::vector<Pause> pauses_;
    std::vector<RollbackEvent> rollbacks_;
    LedgerWarnings warnings_;
};

/// Rewinds the live history to `to_checkpoint`: every live record at or after
/// it becomes RolledBack and unverified, later checkpoints are dropped.
/// Returns the number of steps that must be recomputed. Throws InvalidInput
/// for an unknown checkpoint.
std::uint64_t rollback(RunLedger& ledger, std::uint64_t to_checkpoint, RollbackReason reason);

/// Excludes the device for the rest of the run. Returns false (and bumps the
/// double-exclusion warning) if it was already excluded.
bool exclude_device(RunLedger& ledger, FleetState& fleet, DeviceId device, double now);

}  // namespace ftsim
