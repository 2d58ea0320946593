// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/topology.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ftsim/errors.hpp"

namespace ftsim {

namespace {

void require_positive(std::int64_t value, const char* field) {
    if (value < 1) {
        throw ConfigError(std::string("topology.") + field,
                          "must be >= 1, got " + std::to_string(value));
    }
}

}  // namespace

ClusterTopology build_topology(const TopologyConfig& config) {
    require_positive(config.datacenters, "datacenters");
    require_positive(config.pods_per_datacenter, "pods_per_datacenter");
    require_positive(config.slices_per_pod, "slices_per_pod");
    require_positive(config.devices_per_slice, "devices_per_slice");

    // Device ids are 32-bit; reject fleets that would overflow them.
    constexpr std::int64_t kMax = std::numeric_limits<std::uint32_t>::max();
    std::int64_t product = 1;
    for (std::int64_t count : {config.datacenters, config.pods_per_datacenter,
                               config.slices_per_pod, config.devices_per_slice}) {
        if (count > kMax || product > kMax / count) {
            throw ConfigError("topology", "total device count exceeds 2^32 - 1");
        }
        product *= count;
    }

    ClusterTopology topology;
    topology.datacenters_ = static_cast<std::uint32_t>(config.datacenters);
    topology.pods_per_datacenter_ = static_cast<std::uint32_t>(config.pods_per_datacenter);
    topology.slices_per_pod_ = static_cast<std::uint32_t>(config.slices_per_pod);
    topology.devices_per_slice_ = static_cast<std::uint32_t>(config.devices_per_slice);
    return topology;
}

SliceId ClusterTopology::slice_of(DeviceId device) const {
    if (device >= total_devices()) {
        throw LookupError("unknown device id " + std::to_string(device));
    }
    return device / devices_per_slice_;
}

PodId ClusterTopology::pod_of_slice(SliceId slice) const {
    if (slice >= total_slices()) {
        throw LookupError("unknown slice id " + std::to_string(slice));
    }
    return slice / slices_per_pod_;
}

std::uint32_t ClusterTopology::datacenter_of_pod(PodId pod) const {
    if (pod >= total_pods()) {
        throw LookupError("unknown pod id " + std::to_string(pod));
    }
    return pod / pods_per_datacenter_;
}

TopologyConfig ClusterTopology::config() const {
    return TopologyConfig{datacenters_, pods_per_datacenter_, slices_per_pod_,
                          devices_per_slice_};
}

std::vector<DeviceId> devices_of(const ClusterTopology& topology, SliceId slice) {
    if (slice >= topology.total_slices()) {
        throw LookupError("unknown slice id " + std::to_string(slice));
    }
    const std::uint32_t n = topology.devices_per_slice();
    std::vector<DeviceId> ids(n);
    for (std::uint32_t i = 0; i < n; ++i) ids[i] = slice * n + i;
    return ids;
}

std::string_view to_string(SliceState state) noexcept {
    switch (state) {
        case SliceState::Healthy: return "healthy";
        case SliceState::Failed: return "failed";
        case SliceState::Recovering: return "recovering";
    }
    return "?";
}

std::string_view to_string(DeviceState state) noexcept {
    switch (state) {
        case DeviceState::Healthy: return "healthy";
        case DeviceState::SdcProne: return "sdc_prone";
        case DeviceState::Excluded: return "excluded";
    }
    return "?";
}

bool is_legal_transition(SliceState from, SliceState to) noexcept {
    return (from == SliceState::Healthy && to == SliceState::Failed) ||
           (from == SliceState::Failed && to == SliceState::Recovering) ||
           (from == SliceState::Recovering && to == SliceState::Healthy);
}

// ParticipantSet -------------------------------------------------------------

ParticipantSet::ParticipantSet(std::vector<SliceId> slices, std::vector<DeviceId> excluded,
                               std::uint32_t devices_per_slice)
    : slices_(std::move(slices)),
      excluded_(std::move(excluded)),
      devices_per_slice_(devices_per_slice) {
    std::sort(slices_.begin(), slices_.end());
    slices_.erase(std::unique(slices_.begin(), slices_.end()), slices_.end());
    std::sort(excluded_.begin(), excluded_.end());
    excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
    // Only exclusions inside participating slices matter.
    std::erase_if(excluded_, [this](DeviceId d) {
        return !std::binary_search(slices_.begin(), slices_.end(), d / devices_per_slice_);
    });
}

std::size_t ParticipantSet::size() const noexcept {
    return slices_.size() * devices_per_slice_ - excluded_.size();
}

bool ParticipantSet::contains(DeviceId device) const noexcept {
    return std::binary_search(slices_.begin(), slices_.end(), device / devices_per_slice_) &&
           !std::binary_search(excluded_.begin(), excluded_.end(), device);
}

std::vector<DeviceId> ParticipantSet::expand() const {
    std::vector<DeviceId> out;
    out.reserve(size());
    auto skip = excluded_.begin();
    for (SliceId s : slices_) {
        const DeviceId first = s * devices_per_slice_;
        for (DeviceId d = first; d < first + devices_per_slice_; ++d) {
            if (skip != excluded_.end() && *skip == d) {
                ++skip;
                continue;
            }
            out.push_back(d);
        }
    }
    return out;
}

ParticipantSet ParticipantSet::without(const std::vector<DeviceId>& devices) const {
    std::vector<DeviceId> excluded = excluded_;
    excluded.insert(excluded.end(), devices.begin(), devices.end());
    return ParticipantSet(slices_, std::move(excluded), devices_per_slice_);
}

// FleetState -----------------------------------------------------------------

FleetState::FleetState(ClusterTopology topology)
    : topology_(topology),
      slices_(topology.total_slices()),
      masked_until_(topology.total_slices()),
      devices_(topology.total_devices()) {}

const SliceHealth& FleetState::slice(SliceId id) const {
    if (id >= slices_.size()) throw LookupError("unknown slice id " + std::to_string(id));
    return slices_[id];
}

const DeviceHealth& FleetState::device(DeviceId id) const {
    if (id >= devices_.size()) throw LookupError("unknown device id " + std::to_string(id));
    return devices_[id];
}

bool FleetState::transition_slice(SliceId id, SliceState to, double now) {
    SliceHealth& health = slices_.at(id);
    if (!is_legal_transition(health.state, to) || now < health.since) return false;
    health.state = to;
    health.since = now;
    invalidate();
    return true;
}

bool FleetState::mark_sdc_prone(DeviceId id, double onset) {
    DeviceHealth& health = devices_.at(id);
    if (health.state != DeviceState::Healthy) return false;
    health.state = DeviceState::SdcProne;
    health.sdc_onset = onset;
    sdc_prone_.insert(std::lower_bound(sdc_prone_.begin(), sdc_prone_.end(), id), id);
    return true;
}

bool FleetState::exclude(DeviceId id, double /*now*/) {
    DeviceHealth& health = devices_.at(id);
    if (health.state == DeviceState::Excluded) return false;
    if (health.state == DeviceState::SdcProne) {
        sdc_prone_.erase(std::lower_bound(sdc_prone_.begin(), sdc_prone_.end(), id));
    }
    health.state = DeviceState::Excluded;
    excluded_.insert(std::lower_bound(excluded_.begin(), excluded_.end(), id), id);
    invalidate();
    return true;
}

void FleetState::mask_slice(SliceId id, double until) {
    masked_until_.at(id) = until;
    invalidate();
}

void FleetState::unmask_slice(SliceId id, double now) {
    auto& until = masked_until_.at(id);
    if (until && *until <= now) {
        until.reset();
        invalidate();
    }
}

void FleetState::clear_mask(SliceId id) {
    auto& until = masked_until_.at(id);
    if (until) {
        until.reset();
        invalidate();
    }
}

bool FleetState::is_masked(SliceId id) const { return masked_until_.at(id).has_value(); }

bool FleetState::is_active(SliceId id) const {
    return slices_.at(id).state == SliceState::Healthy && !masked_until_[id].has_value();
}

std::uint32_t FleetState::active_slice_count() const {
    std::uint32_t n = 0;
    for (SliceId s = 0; s < slices_.size(); ++s) n += is_active(s) ? 1U : 0U;
    return n;
}

std::uint32_t FleetState::min_active_slices_per_pod() const {
    const std::uint32_t per_pod = topology_.slices_per_pod();
    std::uint32_t best = per_pod;
    for (PodId p = 0; p < topology_.total_pods(); ++p) {
        std::uint32_t n = 0;
        for (SliceId s = p * per_pod; s < (p + 1) * per_pod; ++s) n += is_active(s) ? 1U : 0U;
        best = std::min(best, n);
    }
    return best;
}

std::shared_ptr<const ParticipantSet> FleetState::participants() const {
    if (!participants_) {
        std::vector<SliceId> active;
        for (SliceId s = 0; s < slices_.size(); ++s) {
            if (is_active(s)) active.push_back(s);
        }
        participants_ = std::make_shared<const ParticipantSet>(std::move(active), excluded_,
                                                               topology_.devices_per_slice());
    }
    return participants_;
}

std::uint32_t healthy_slice_count(const FleetState& fleet) {
    std::uint32_t n = 0;
    for (SliceId s = 0; s < fleet.topology().total_slices(); ++s) {
        n += fleet.slice(s).state == SliceState::Healthy ? 1U : 0U;
    }
    return n;
}

}  // namespace ftsim
