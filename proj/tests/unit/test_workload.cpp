// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "ftsim/errors.hpp"
#include "ftsim/rng.hpp"
#include "ftsim/workload.hpp"

using namespace ftsim;

namespace {

StepInput input_for(std::uint64_t seed, std::uint64_t step, std::vector<DeviceId> devices,
                    std::vector<DeviceId> corrupted = {}) {
    StepInput in;
    in.run_seed = seed;
    in.step_index = step;
    in.participant_devices = std::move(devices);
    in.corruption.corrupted_devices = std::move(corrupted);
    in.compute_seconds = 10.0;
    return in;
}

std::vector<DeviceId> iota(DeviceId n) {
    std::vector<DeviceId> v(n);
    for (DeviceId i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_CASE("device_digest matches frozen golden vectors") {
    std::ifstream in(FTSIM_TEST_DATA_DIR "/golden_digests.txt");
    REQUIRE(in);
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::uint64_t seed = 0, step = 0;
        std::uint32_t device = 0;
        int corrupted = 0;
        std::string hex;
        row >> seed >> step >> device >> corrupted >> hex;
        REQUIRE(row);
        CAPTURE(line);
        CHECK(device_digest(seed, step, device, corrupted != 0) == std::stoull(hex, nullptr, 16));
        ++checked;
    }
    CHECK(checked == 16);
    CHECK(device_digest(0, 0, 0, false) == 0xbfe339a7609b830aULL);
}

TEST_CASE("device_digest corruption flag changes the digest") {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t seed = rng.next();
        const std::uint64_t step = rng.below(1u << 20);
        const auto device = static_cast<DeviceId>(rng.below(26880));
        CHECK(device_digest(seed, step, device, false) == device_digest(seed, step, device, false));
        CHECK(device_digest(seed, step, device, false) != device_digest(seed, step, device, true));
    }
}

TEST_CASE("execute_step replay fidelity and corruption locality") {
    const auto clean = execute_step(input_for(11, 5, iota(8)));
    CHECK(clean == execute_step(input_for(11, 5, iota(8))));
    CHECK(clean.checksums.size() == 8);
    CHECK(clean.compute_cost == 10.0);

    const auto dirty = execute_step(input_for(11, 5, iota(8), {3}));
    CHECK(differing_devices(clean.checksums, dirty.checksums) == std::vector<DeviceId>{3});
    CHECK(clean.metric != dirty.metric);

    const auto two = execute_step(input_for(11, 5, iota(8), {1, 6}));
    CHECK(differing_devices(clean.checksums, two.checksums) == std::vector<DeviceId>{1, 6});
}

TEST_CASE("execute_step validates its input") {
    CHECK_THROWS_AS(execute_step(input_for(1, 1, {})), InvalidInput);
    CHECK_THROWS_AS(execute_step(input_for(1, 1, {2, 1})), InvalidInput);
    CHECK_THROWS_AS(execute_step(input_for(1, 1, {1, 1})), InvalidInput);
    CHECK_THROWS_AS(execute_step(input_for(1, 1, {1, 2}, {3})), InvalidInput);
    CHECK_THROWS_AS(execute_step(input_for(1, 1, {1, 2, 3}, {3, 1})), InvalidInput);
}

TEST_CASE("metric") {
    CHECK(metric_of(ChecksumVector({0}, {0})) == 0.0);
    CHECK(metric_of(ChecksumVector({0, 1}, {0xdeadbeefULL, 0xdeadbeefULL})) == 0.0);
    CHECK_THROWS_AS(metric_of(ChecksumVector()), InvalidInput);
    CHECK(metric_from_fold(~0ULL) < 1.0);

    SplitMix64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const auto n = static_cast<DeviceId>(1 + rng.below(64));
        const auto out = execute_step(input_for(rng.next(), rng.below(100000), iota(n)));
        REQUIRE(out.metric >= 0.0);
        REQUIRE(out.metric < 1.0);
        REQUIRE(out.metric == metric_of(out.checksums));
    }
}

TEST_CASE("differing_devices rejects mismatched key sets") {
    const ChecksumVector a({1, 2}, {5, 6});
    const ChecksumVector b({1, 3}, {5, 6});
    CHECK_THROWS_AS(differing_devices(a, b), ConsistencyError);
    CHECK(a.find(2) == 6u);
    CHECK_FALSE(a.find(3).has_value());
    CHECK(a.fold() == (5u ^ 6u));
}
