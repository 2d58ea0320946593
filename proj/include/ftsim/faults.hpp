// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reproducible fault injection: the pre-sampled trace of slice failures, SDC
// onsets and debug interventions, and the per-step stochastic effects
// (intermittent corruption, false suspicion).

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "ftsim/rng.hpp"
#include "ftsim/topology.hpp"
#include "ftsim/workload.hpp"

namespace ftsim {

struct FaultRates {
    double slice_failures_per_hour = 0.0;
    double slice_recovery_seconds = 600.0;
    double sdc_onsets_per_device_per_hour = 0.0;
    double sdc_corruption_prob_per_step = 0.0;
    double false_suspicion_prob_per_step = 0.0;
    double sdc_detect_prob_given_corruption = 0.0;
    double debug_interventions_per_day = 0.0;
    std::int64_t debug_rollback_depth_steps = 1;
    // Probability that a device reports a slow step when the controller polls
    // per-device timings.
    double straggler_prob_per_device_check = 0.0;
};

/// Throws ConfigError("faults.<field>") on the first out-of-range value.
void validate(const FaultRates& rates);

struct SliceFailure {
    SliceId slice;
    friend bool operator==(const SliceFailure&, const SliceFailure&) = default;
};
struct SliceRecovered {
    SliceId slice;
    friend bool operator==(const SliceRecovered&, const SliceRecovered&) = default;
};
struct SdcOnset {
    DeviceId device;
    friend bool operator==(const SdcOnset&, const SdcOnset&) = default;
};
struct DebugIntervention {
    std::int64_t rollback_depth;
    friend bool operator==(const DebugIntervention&, const DebugIntervention&) = default;
};

using FaultKind = std::variant<SliceFailure, SliceRecovered, SdcOnset, DebugIntervention>;

struct FaultEvent {
    double time = 0.0;
    FaultKind kind;
    /// Generation order; breaks ties between equal times.
    std::uint64_t ordinal = 0;

    friend bool operator==(const FaultEvent&, const FaultEvent&) = default;
};

struct FaultTrace {
    std::vector<FaultEvent> events;  // sorted by (time, ordinal)
    std::uint64_t seed = 0;

    friend bool operator==(const FaultTrace&, const FaultTrace&) = default;
};

/// Poisson arrivals per event class, each class from its own substream of
/// `seed`. A failed slice is never failed again before its recovery; the
/// recovery is dropped if it would land after the horizon.
FaultTrace sample_trace(const FaultRates& rates, const ClusterTopology& topology,
                        double horizon_seconds, std::uint64_t seed);

/// Independent random streams used while executing one attempt of one step.
struct StepStreams {
    SplitMix64 corruption;
    SplitMix64 judge;
    SplitMix64 replay;
};

StepStreams step_streams(std::uint64_t run_seed, std::uint64_t step_index,
                         std::uint64_t attempt) noexcept;

/// Each SdcProne participant corrupts independently with
/// sdc_corruption_prob_per_step.
CorruptionMask corruption_for_step(const FleetState& fleet, const ParticipantSet& participants,
                                   const FaultRates& rates, SplitMix64& rng);

bool false_suspicion(const FaultRates& rates, SplitMix64& rng);

}  // namespace ftsim
