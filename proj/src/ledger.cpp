// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/ledger.hpp"

#include <algorithm>
#include <string>

#include "ftsim/errors.hpp"

namespace ftsim {

std::string_view to_string(StepStatus status) noexcept {
    switch (status) {
        case StepStatus::Computed: return "computed";
        case StepStatus::Suspected: return "suspected";
        case StepStatus::ReplayedFalseAlarm: return "replayed_false_alarm";
        case StepStatus::ReplayedGenuine: return "replayed_genuine";
        case StepStatus::RolledBack: return "rolled_back";
    }
    return "?";
}

std::string_view to_string(TimeBucket bucket) noexcept {
    switch (bucket) {
        case TimeBucket::Compute: return "compute";
        case TimeBucket::Reconfig: return "reconfig";
        case TimeBucket::Tail: return "tail";
        case TimeBucket::BaselineReschedule: return "baseline_reschedule";
        case TimeBucket::Idle: return "idle";
    }
    return "?";
}

RunLedger::RunLedger(std::int64_t checkpoint_interval_steps) : interval_(checkpoint_interval_steps) {
    if (interval_ < 1) throw InvalidInput("checkpoint interval must be >= 1");
}

StepRecord& RunLedger::append(StepRecord record) {
    if (!records_.empty() && record.wall_start < records_.back().wall_start) {
        throw ConsistencyError("ledger records must be appended in wall-time order");
    }
    if (!(record.wall_end > record.wall_start)) {
        throw ConsistencyError("step record with non-positive duration");
    }
    records_.push_back(std::move(record));
    return records_.back();
}

void RunLedger::append_pause(Pause pause) { pauses_.push_back(std::move(pause)); }

void RunLedger::record_exclusion(DeviceId device, double time) {
    if (!exclusions_.empty() && time < exclusions_.back().time) {
        throw ConsistencyError("exclusion timestamps must be nondecreasing");
    }
    exclusions_.push_back(Exclusion{device, time});
}

bool RunLedger::complete_step(std::uint64_t step_index) {
    if (step_index != next_step_) {
        throw ConsistencyError("completed step " + std::to_string(step_index) +
                               " but the live history expects " + std::to_string(next_step_));
    }
    next_step_ = step_index + 1;
    if (next_step_ % static_cast<std::uint64_t>(interval_) == 0) {
        checkpoints_.push_back(next_step_);
        return true;
    }
    return false;
}

std::uint64_t RunLedger::checkpoint_at_or_before(std::uint64_t step) const {
    auto it = std::upper_bound(checkpoints_.begin(), checkpoints_.end(), step);
    return *std::prev(it);  // checkpoint 0 always exists
}

std::uint64_t rollback(RunLedger& ledger, std::uint64_t to_checkpoint, RollbackReason reason) {
    auto& cps = ledger.checkpoints_;
    if (!std::binary_search(cps.begin(), cps.end(), to_checkpoint)) {
        throw InvalidInput("rollback: unknown checkpoint " + std::to_string(to_checkpoint));
    }
    if (to_checkpoint > ledger.next_step_) {
        throw InvalidInput("rollback: checkpoint is ahead of the latest step");
    }

    // Live records have nondecreasing step indices in wall-time order, so the
    // ones to discard form a suffix of the live history.
    for (auto it = ledger.records_.rbegin(); it != ledger.records_.rend(); ++it) {
        if (it->status == StepStatus::RolledBack) continue;
        if (it->step_index < to_checkpoint) break;
        it->status = StepStatus::RolledBack;
        it->verified = false;
    }
    cps.erase(std::upper_bound(cps.begin(), cps.end(), to_checkpoint), cps.end());

    const std::uint64_t recompute = ledger.next_step_ - to_checkpoint;
    ledger.rollbacks_.push_back(RollbackEvent{ledger.next_step_, to_checkpoint, reason});
    ledger.next_step_ = to_checkpoint;
    return recompute;
}

bool exclude_device(RunLedger& ledger, FleetState& fleet, DeviceId device, double now) {
    (void)fleet.device(device);  // LookupError for unknown ids
    if (!fleet.exclude(device, now)) {
        ++ledger.warnings().double_exclusions;
        return false;
    }
    ledger.record_exclusion(device, now);
    return true;
}

}  // namespace ftsim
