// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/workload.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ftsim/errors.hpp"
#include "ftsim/rng.hpp"

namespace ftsim {

std::uint64_t device_digest(std::uint64_t run_seed, std::uint64_t step_index, DeviceId device,
                            bool corrupted) noexcept {
    const std::uint64_t base = run_seed ^ (step_index * kStepKey) ^
                               (static_cast<std::uint64_t>(device) * kDeviceKey);
    std::uint64_t x = 0;
    for (std::uint64_t lane = 0; lane < kDigestLanes; ++lane) {
        x = std::rotl(x, 7) ^ mix64(base ^ lane);
    }
    if (corrupted) x ^= mix64(x ^ kCorruptKey);
    return x;
}

bool CorruptionMask::contains(DeviceId device) const noexcept {
    return std::binary_search(corrupted_devices.begin(), corrupted_devices.end(), device);
}

ChecksumVector::ChecksumVector(std::vector<DeviceId> devices, std::vector<std::uint64_t> digests)
    : devices_(std::move(devices)), digests_(std::move(digests)) {
    if (devices_.size() != digests_.size()) {
        throw InvalidInput("checksum vector: device and digest counts differ");
    }
    if (std::adjacent_find(devices_.begin(), devices_.end(), std::greater_equal<>()) !=
        devices_.end()) {
        throw InvalidInput("checksum vector: device ids must be strictly ascending");
    }
}

std::optional<std::uint64_t> ChecksumVector::find(DeviceId device) const noexcept {
    auto it = std::lower_bound(devices_.begin(), devices_.end(), device);
    if (it == devices_.end() || *it != device) return std::nullopt;
    return digests_[static_cast<std::size_t>(it - devices_.begin())];
}

std::uint64_t ChecksumVector::fold() const noexcept {
    std::uint64_t x = 0;
    for (std::uint64_t d : digests_) x ^= d;
    return x;
}

double metric_from_fold(std::uint64_t fold) noexcept {
    // Top 53 bits so the quotient is exact and strictly below 1.
    return static_cast<double>(fold >> 11) * 0x1.0p-53;
}

double metric_of(const ChecksumVector& checksums) {
    if (checksums.empty()) throw InvalidInput("metric_of: empty checksum vector");
    return metric_from_fold(checksums.fold());
}

StepOutcome execute_step(const StepInput& input) {
    const auto& devices = input.participant_devices;
    if (devices.empty()) throw InvalidInput("execute_step: empty participant list");
    if (std::adjacent_find(devices.begin(), devices.end(), std::greater_equal<>()) !=
        devices.end()) {
        throw InvalidInput("execute_step: participants must be strictly ascending");
    }
    const auto& mask = input.corruption.corrupted_devices;
    if (std::adjacent_find(mask.begin(), mask.end(), std::greater_equal<>()) != mask.end()) {
        throw InvalidInput("execute_step: corruption mask must be strictly ascending");
    }
    for (DeviceId d : mask) {
        if (!std::binary_search(devices.begin(), devices.end(), d)) {
            throw InvalidInput("execute_step: corrupted device " + std::to_string(d) +
                               " is not a participant");
        }
    }

    std::vector<std::uint64_t> digests(devices.size());
    const auto& corrupted = input.corruption.corrupted_devices;
    auto next_corrupt = corrupted.begin();
    for (std::size_t i = 0; i < devices.size(); ++i) {
        bool hit = next_corrupt != corrupted.end() && *next_corrupt == devices[i];
        if (hit) ++next_corrupt;
        digests[i] = device_digest(input.run_seed, input.step_index, devices[i], hit);
    }

    StepOutcome outcome;
    outcome.checksums = ChecksumVector(devices, std::move(digests));
    outcome.metric = metric_of(outcome.checksums);
    outcome.compute_cost = input.compute_seconds;
    return outcome;
}

std::vector<DeviceId> differing_devices(const ChecksumVector& a, const ChecksumVector& b) {
    if (!std::ranges::equal(a.devices(), b.devices())) {
        throw ConsistencyError("checksum comparison over different participant sets");
    }
    std::vector<DeviceId> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.digests()[i] != b.digests()[i]) out.push_back(a.devices()[i]);
    }
    return out;
}

}  // namespace ftsim
