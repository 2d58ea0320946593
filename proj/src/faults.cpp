// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/faults.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftsim/errors.hpp"

namespace ftsim {

namespace {

void check(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(std::string("faults.") + field, what);
}

bool finite(double v) { return std::isfinite(v); }
bool probability(double v) { return finite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

void validate(const FaultRates& r) {
    check(finite(r.slice_failures_per_hour) && r.slice_failures_per_hour >= 0.0,
          "slice_failures_per_hour", "must be >= 0");
    check(finite(r.slice_recovery_seconds) && r.slice_recovery_seconds > 0.0,
          "slice_recovery_seconds", "must be > 0");
    check(finite(r.sdc_onsets_per_device_per_hour) && r.sdc_onsets_per_device_per_hour >= 0.0,
          "sdc_onsets_per_device_per_hour", "must be >= 0");
    check(probability(r.sdc_corruption_prob_per_step), "sdc_corruption_prob_per_step",
          "must be in [0, 1]");
    check(probability(r.false_suspicion_prob_per_step), "false_suspicion_prob_per_step",
          "must be in [0, 1]");
    check(probability(r.sdc_detect_prob_given_corruption), "sdc_detect_prob_given_corruption",
          "must be in [0, 1]");
    check(finite(r.debug_interventions_per_day) && r.debug_interventions_per_day >= 0.0,
          "debug_interventions_per_day", "must be >= 0");
    check(r.debug_rollback_depth_steps >= 1, "debug_rollback_depth_steps", "must be >= 1");
    check(probability(r.straggler_prob_per_device_check), "straggler_prob_per_device_check",
          "must be in [0, 1]");
}

FaultTrace sample_trace(const FaultRates& rates, const ClusterTopology& topology,
                        double horizon_seconds, std::uint64_t seed) {
    if (!(horizon_seconds > 0.0) || !std::isfinite(horizon_seconds)) {
        throw InvalidInput("sample_trace: horizon must be positive");
    }
    validate(rates);

    FaultTrace trace;
    trace.seed = seed;
    std::uint64_t ordinal = 0;
    auto emit = [&](double t, FaultKind kind) {
        trace.events.push_back(FaultEvent{t, kind, ordinal++});
    };

    if (rates.slice_failures_per_hour > 0.0) {
        SplitMix64 rng(derive_seed(seed, stream::kSliceFailure));
        const double rate = rates.slice_failures_per_hour / 3600.0;
        std::vector<double> down_until(topology.total_slices(), -1.0);
        std::vector<SliceId> up;
        for (double t = rng.exponential(rate); t < horizon_seconds; t += rng.exponential(rate)) {
            up.clear();
            for (SliceId s = 0; s < down_until.size(); ++s) {
                if (down_until[s] <= t) up.push_back(s);
            }
            if (up.empty()) continue;
            const SliceId s = up[rng.below(up.size())];
            const double back = t + rates.slice_recovery_seconds;
            down_until[s] = back;
            emit(t, SliceFailure{s});
            if (back <= horizon_seconds) emit(back, SliceRecovered{s});
        }
    }

    if (rates.sdc_onsets_per_device_per_hour > 0.0) {
        SplitMix64 rng(derive_seed(seed, stream::kSdcOnset));
        const double rate =
            rates.sdc_onsets_per_device_per_hour * topology.total_devices() / 3600.0;
        for (double t = rng.exponential(rate); t < horizon_seconds; t += rng.exponential(rate)) {
            emit(t, SdcOnset{static_cast<DeviceId>(rng.below(topology.total_devices()))});
        }
    }

    if (rates.debug_interventions_per_day > 0.0) {
        SplitMix64 rng(derive_seed(seed, stream::kDebugIntervention));
        const double rate = rates.debug_interventions_per_day / 86400.0;
        for (double t = rng.exponential(rate); t < horizon_seconds; t += rng.exponential(rate)) {
            emit(t, DebugIntervention{rates.debug_rollback_depth_steps});
        }
    }

    std::sort(trace.events.begin(), trace.events.end(),
              [](const FaultEvent& a, const FaultEvent& b) {
                  return a.time != b.time ? a.time < b.time : a.ordinal < b.ordinal;
              });
    return trace;
}

StepStreams step_streams(std::uint64_t run_seed, std::uint64_t step_index,
                         std::uint64_t attempt) noexcept {
    const std::uint64_t key = derive_seed(derive_seed(run_seed, stream::kStep, step_index),
                                          attempt);
    return StepStreams{SplitMix64(derive_seed(key, 0)), SplitMix64(derive_seed(key, 1)),
                       SplitMix64(derive_seed(key, 2))};
}

CorruptionMask corruption_for_step(const FleetState& fleet, const ParticipantSet& participants,
                                   const FaultRates& rates, SplitMix64& rng) {
    CorruptionMask mask;
    for (DeviceId d : fleet.sdc_prone_devices()) {
        if (!participants.contains(d)) continue;
        if (rng.bernoulli(rates.sdc_corruption_prob_per_step)) {
            mask.corrupted_devices.push_back(d);
        }
    }
    return mask;
}

bool false_suspicion(const FaultRates& rates, SplitMix64& rng) {
    return rng.bernoulli(rates.false_suspicion_prob_per_step);
}

}  // namespace ftsim
