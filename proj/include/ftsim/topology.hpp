// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Accelerator fleet model: datacenters -> pods -> slices -> devices, plus the
// per-slice and per-device health owned by the controller.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace ftsim {

using DeviceId = std::uint32_t;
using SliceId = std::uint32_t;
using PodId = std::uint32_t;

struct TopologyConfig {
    std::int64_t datacenters = 1;
    std::int64_t pods_per_datacenter = 3;
    std::int64_t slices_per_pod = 32;
    std::int64_t devices_per_slice = 280;
};

/// Immutable shape of the fleet. Device ids are dense and grouped by slice:
/// slice s owns [s * devices_per_slice, (s + 1) * devices_per_slice).
class ClusterTopology {
public:
    std::uint32_t datacenters() const noexcept { return datacenters_; }
    std::uint32_t pods_per_datacenter() const noexcept { return pods_per_datacenter_; }
    std::uint32_t slices_per_pod() const noexcept { return slices_per_pod_; }
    std::uint32_t devices_per_slice() const noexcept { return devices_per_slice_; }

    std::uint32_t total_pods() const noexcept { return datacenters_ * pods_per_datacenter_; }
    std::uint32_t total_slices() const noexcept { return total_pods() * slices_per_pod_; }
    std::uint32_t total_devices() const noexcept { return total_slices() * devices_per_slice_; }
    std::uint32_t devices_per_pod() const noexcept { return slices_per_pod_ * devices_per_slice_; }

    SliceId slice_of(DeviceId device) const;
    PodId pod_of_slice(SliceId slice) const;
    std::uint32_t datacenter_of_pod(PodId pod) const;

    TopologyConfig config() const;

private:
    friend ClusterTopology build_topology(const TopologyConfig& config);
    ClusterTopology() = default;

    std::uint32_t datacenters_ = 0;
    std::uint32_t pods_per_datacenter_ = 0;
    std::uint32_t slices_per_pod_ = 0;
    std::uint32_t devices_per_slice_ = 0;
};

/// Throws ConfigError naming the first count that is < 1, or the product if
/// the fleet would not fit 32-bit device ids.
ClusterTopology build_topology(const TopologyConfig& config);

/// Ascending device ids of one slice. Throws LookupError for unknown slices.
std::vector<DeviceId> devices_of(const ClusterTopology& topology, SliceId slice);

enum class SliceState : std::uint8_t { Healthy, Failed, Recovering };
enum class DeviceState : std::uint8_t { Healthy, SdcProne, Excluded };

std::string_view to_string(SliceState state) noexcept;
std::string_view to_string(DeviceState state) noexcept;

struct SliceHealth {
    SliceState state = SliceState::Healthy;
    double since = 0.0;
};

struct DeviceHealth {
    DeviceState state = DeviceState::Healthy;
    std::optional<double> sdc_onset;
};

/// True for Healthy->Failed, Failed->Recovering and Recovering->Healthy.
bool is_legal_transition(SliceState from, SliceState to) noexcept;

/// The devices taking part in a step: every device of an active slice except
/// excluded ones. Kept compact because a run references one instance per
/// fleet configuration rather than one device list per step.
class ParticipantSet {
public:
    ParticipantSet(std::vector<SliceId> slices, std::vector<DeviceId> excluded,
                   std::uint32_t devices_per_slice);

    const std::vector<SliceId>& slices() const noexcept { return slices_; }
    const std::vector<DeviceId>& excluded() const noexcept { return excluded_; }
    std::size_t size() const noexcept;
    bool contains(DeviceId device) const noexcept;
    std::vector<DeviceId> expand() const;

    /// New set with `devices` additionally masked.
    ParticipantSet without(const std::vector<DeviceId>& devices) const;

    friend bool operator==(const ParticipantSet&, const ParticipantSet&) = default;

private:
    std::vector<SliceId> slices_;
    std::vector<DeviceId> excluded_;
    std::uint32_t devices_per_slice_;
};

/// Mutable health of every slice and device. Owned by a single controller.
class FleetState {
public:
    explicit FleetState(ClusterTopology topology);

    const ClusterTopology& topology() const noexcept { return topology_; }

    const SliceHealth& slice(SliceId id) const;
    const DeviceHealth& device(DeviceId id) const;

    /// Applies a legal transition; returns false (and changes nothing) if the
    /// transition is illegal or would move `since` backwards.
    bool transition_slice(SliceId id, SliceState to, double now);

    /// Healthy -> SdcProne. Returns false if the device is not Healthy.
    bool mark_sdc_prone(DeviceId id, double onset);

    /// Any state -> Excluded. Returns false if already Excluded.
    bool exclude(DeviceId id, double now);

    /// Temporarily keeps a Healthy slice out of steps (spare substitution).
    void mask_slice(SliceId id, double until);
    /// Lifts the mask if it has expired by `now`.
    void unmask_slice(SliceId id, double now);
    void clear_mask(SliceId id);
    bool is_masked(SliceId id) const;

    bool is_active(SliceId id) const;

    /// Ascending ids of SdcProne devices.
    const std::vector<DeviceId>& sdc_prone_devices() const noexcept { return sdc_prone_; }
    std::size_t excluded_count() const noexcept { return excluded_.size(); }

    std::uint32_t active_slice_count() const;
    /// Smallest number of active slices in any pod.
    std::uint32_t min_active_slices_per_pod() const;

    /// Cached; recomputed only after a health change.
    std::shared_ptr<const ParticipantSet> participants() const;

private:
    void invalidate() noexcept { participants_.reset(); }

    ClusterTopology topology_;
    std::vector<SliceHealth> slices_;
    std::vector<std::optional<double>> masked_until_;
    std::vector<DeviceHealth> devices_;
    std::vector<DeviceId> sdc_prone_;
    std::vector<DeviceId> excluded_;
    mutable std::shared_ptr<const ParticipantSet> participants_;
};

std::uint32_t healthy_slice_count(const FleetState& fleet);

}  // namespace ftsim
