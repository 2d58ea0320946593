// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic training step. Each participating device produces a 64-bit digest
// of its "intermediate values"; the digests are a pure function of
// (run seed, step index, device id) unless the device is corrupted, so a
// replay on healthy hardware reproduces them bit for bit.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftsim/topology.hpp"

namespace ftsim {

inline constexpr int kDigestLanes = 16;
inline constexpr std::uint64_t kStepKey = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kDeviceKey = 0xC2B2AE3D27D4EB4FULL;
inline constexpr std::uint64_t kCorruptKey = 0x165667B19E3779F9ULL;

std::uint64_t device_digest(std::uint64_t run_seed, std::uint64_t step_index, DeviceId device,
                            bool corrupted) noexcept;

struct CorruptionMask {
    std::vector<DeviceId> corrupted_devices;  // ascending

    bool empty() const noexcept { return corrupted_devices.empty(); }
    bool contains(DeviceId device) const noexcept;
    friend bool operator==(const CorruptionMask&, const CorruptionMask&) = default;
};

/// Per-device digests, stored as parallel ascending arrays.
class ChecksumVector {
public:
    ChecksumVector() = default;
    ChecksumVector(std::vector<DeviceId> devices, std::vector<std::uint64_t> digests);

    std::size_t size() const noexcept { return devices_.size(); }
    bool empty() const noexcept { return devices_.empty(); }
    std::span<const DeviceId> devices() const noexcept { return devices_; }
    std::span<const std::uint64_t> digests() const noexcept { return digests_; }

    std::optional<std::uint64_t> find(DeviceId device) const noexcept;
    /// XOR of every digest.
    std::uint64_t fold() const noexcept;

    friend bool operator==(const ChecksumVector&, const ChecksumVector&) = default;

private:
    std::vector<DeviceId> devices_;
    std::vector<std::uint64_t> digests_;
};

struct StepInput {
    std::uint64_t step_index = 0;
    std::uint64_t run_seed = 0;
    std::vector<DeviceId> participant_devices;  // strictly ascending, nonempty
    CorruptionMask corruption;
    double compute_seconds = 0.0;
};

struct StepOutcome {
    ChecksumVector checksums;
    double metric = 0.0;
    double compute_cost = 0.0;

    friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

/// Throws InvalidInput if the participant list is empty, unsorted, or the
/// corruption mask names a non-participant.
StepOutcome execute_step(const StepInput& input);

/// XOR-fold of the digests scaled into [0, 1). Throws InvalidInput if empty.
double metric_of(const ChecksumVector& checksums);

/// The same scaling applied to an already folded value.
double metric_from_fold(std::uint64_t fold) noexcept;

/// Keys at which the two vectors disagree. Throws ConsistencyError if the key
/// sets differ.
std::vector<DeviceId> differing_devices(const ChecksumVector& a, const ChecksumVector& b);

}  // namespace ftsim
