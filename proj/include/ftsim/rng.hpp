// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// splitmix64 finalizer, a splitmix64 stream generator, and the substream
// derivation used everywhere randomness is needed. All draws are defined on
// raw 64-bit outputs so runs are reproducible across standard libraries.

#pragma once

#include <cmath>
#include <cstdint>

namespace ftsim {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for an independent substream identified by (tag, index) under `root`.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                                    std::uint64_t index = 0) noexcept {
    return mix64(mix64(root ^ mix64(tag + kGolden)) + index * kGolden);
}

class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Exponential variate with the given rate (events per unit).
    double exponential(double rate) noexcept { return -std::log1p(-uniform()) / rate; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept {
        __extension__ using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

// Stream tags. Each class of randomness draws from its own substream so that
// changing one rate never perturbs the others.
namespace stream {
inline constexpr std::uint64_t kSliceFailure = 1;
inline constexpr std::uint64_t kSdcOnset = 2;
inline constexpr std::uint64_t kDebugIntervention = 3;
inline constexpr std::uint64_t kStep = 4;
inline constexpr std::uint64_t kTail = 5;
inline constexpr std::uint64_t kStraggler = 6;
}  // namespace stream

}  // namespace ftsim
