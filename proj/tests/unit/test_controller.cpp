// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ftsim/controller.hpp"
#include "ftsim/errors.hpp"

using namespace ftsim;

namespace {

FaultTrace trace_of(std::vector<std::pair<double, FaultKind>> events) {
    FaultTrace trace;
    std::uint64_t ordinal = 0;
    for (auto& [t, kind] : events) trace.events.push_back(FaultEvent{t, kind, ordinal++});
    return trace;
}

std::vector<const StepRecord*> compute_rows(const RunLedger& ledger, double from, double to) {
    std::vector<const StepRecord*> rows;
    for (const StepRecord& r : ledger.records()) {
        if (r.wall_start >= from && r.wall_start < to) rows.push_back(&r);
    }
    return rows;
}

bool same_ledger(const RunLedger& a, const RunLedger& b) {
    if (a.records().size() != b.records().size()) return false;
    for (std::size_t i = 0; i < a.records().size(); ++i) {
        const StepRecord& x = a.records()[i];
        const StepRecord& y = b.records()[i];
        if (x.step_index != y.step_index || x.attempt != y.attempt ||
            x.wall_start != y.wall_start || x.wall_end != y.wall_end || x.status != y.status ||
            x.verified != y.verified || x.checksum_digest != y.checksum_digest ||
            x.metric != y.metric || !(*x.participants == *y.participants) ||
            x.injected_corruption != y.injected_corruption) {
            return false;
        }
    }
    if (a.pauses().size() != b.pauses().size()) return false;
    for (std::size_t i = 0; i < a.pauses().size(); ++i) {
        const Pause& x = a.pauses()[i];
        const Pause& y = b.pauses()[i];
        if (x.start != y.start || x.end != y.end || x.bucket != y.bucket) return false;
    }
    if (a.excluded_devices().size() != b.excluded_devices().size()) return false;
    for (std::size_t i = 0; i < a.excluded_devices().size(); ++i) {
        if (a.excluded_devices()[i].device != b.excluded_devices()[i].device ||
            a.excluded_devices()[i].time != b.excluded_devices()[i].time) {
            return false;
        }
    }
    return a.checkpoints() == b.checkpoints();
}

bool same_report(const GoodputReport& a, const GoodputReport& b) {
    const auto fa = numeric_fields(a);
    const auto fb = numeric_fields(b);
    return fa == fb && a.seed == b.seed;
}

void check_conservation(const GoodputReport& r) {
    CHECK(std::abs(r.bucket_sum() - r.horizon_seconds) <= 1e-9 * r.horizon_seconds);
}

ControllerConfig small_config() {
    ControllerConfig c;
    c.checksum_policy = ChecksumPolicy::AllSteps;
    return c;
}

}  // namespace

TEST_CASE("fault-free day computes every step and verifies all of them") {
    const auto topo = build_topology({});
    const auto run = run_training(ControllerConfig{}, FaultRates{}, topo, 86400.0, 1);
    CHECK(goodput(run.report) == 1.0);
    CHECK(run.report.compute_seconds == 86400.0);
    CHECK(run.ledger.records().size() == 8640);
    CHECK(std::all_of(run.ledger.records().begin(), run.ledger.records().end(),
                      [](const StepRecord& r) {
                          return r.status == StepStatus::Computed && r.verified &&
                                 r.active_slices == 96;
                      }));
    CHECK(run.report.idle_residual_seconds == 0.0);
    CHECK_FALSE(overhead_split(run.report).has_value());
    CHECK(run.ledger.checkpoints().back() == 8600);
    check_conservation(run.report);
}

TEST_CASE("all-steps checksum policy attaches digests that replay bit-exactly") {
    const auto topo = build_topology({1, 1, 2, 8});
    const auto a = run_training(small_config(), FaultRates{}, topo, 1000.0, 5);
    const auto b = run_training(small_config(), FaultRates{}, topo, 1000.0, 5);
    REQUIRE(a.ledger.records().size() == 100);
    for (const StepRecord& r : a.ledger.records()) {
        REQUIRE(r.checksum_digest.has_value());
        REQUIRE(r.metric.has_value());
        CHECK(*r.metric == metric_from_fold(*r.checksum_digest));
    }
    CHECK(same_ledger(a.ledger, b.ledger));
}

TEST_CASE("step_duration") {
    ControllerConfig c;
    CHECK(step_duration(c, 32, 32) == 10.0);
    CHECK(10.0 / *step_duration(c, 31, 32) == doctest::Approx(31.0 / 32.0));
    CHECK(step_duration(c, 16, 32) == 20.0);
    CHECK_FALSE(step_duration(c, 0, 32).has_value());
    CHECK_THROWS_AS(step_duration(c, 33, 32), InvalidInput);
    CHECK_THROWS_AS(step_duration(c, 0, 0), InvalidInput);
}

TEST_CASE("judge_step") {
    FaultRates r;
    r.sdc_detect_prob_given_corruption = 1.0;
    SplitMix64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto v = judge_step(true, r, rng);
        CHECK(v.suspected);
        CHECK(v.cause == SuspicionCause::MetricAnomaly);
        const auto w = judge_step(false, r, rng);
        CHECK_FALSE(w.suspected);
        CHECK(w.cause == SuspicionCause::None);
    }
    r.false_suspicion_prob_per_step = 1.0;
    CHECK(judge_step(false, r, rng).cause == SuspicionCause::AuditSample);
    r.sdc_detect_prob_given_corruption = 0.0;
    CHECK(judge_step(true, r, rng).cause == SuspicionCause::None);
}

TEST_CASE("replay_and_localize") {
    std::vector<DeviceId> devices(64);
    for (DeviceId d = 0; d < 64; ++d) devices[d] = d;
    StepInput original;
    original.run_seed = 3;
    original.step_index = 77;
    original.participant_devices = devices;
    original.compute_seconds = 10.0;

    StepInput replay = original;
    const auto clean = replay_and_localize(replay, execute_step(original));
    CHECK_FALSE(clean.genuine);
    CHECK(clean.localized_devices.empty());
    CHECK(clean.recompute_count == 1);

    original.corruption.corrupted_devices = {7};
    const auto hit = replay_and_localize(replay, execute_step(original));
    CHECK(hit.genuine);
    CHECK(hit.localized_devices == std::vector<DeviceId>{7});
    CHECK(hit.recompute_count == 2);

    replay.participant_devices.pop_back();
    CHECK_THROWS_AS(replay_and_localize(replay, execute_step(original)), ConsistencyError);
}

TEST_CASE("single-device corruption localizes to that device") {
    SplitMix64 rng(8080);
    for (int i = 0; i < 1000; ++i) {
        const auto n = static_cast<DeviceId>(2 + rng.below(300));
        StepInput in;
        in.run_seed = rng.next();
        in.step_index = rng.below(1 << 24);
        for (DeviceId d = 0; d < n; ++d) in.participant_devices.push_back(d * 3 + 1);
        const DeviceId victim = in.participant_devices[rng.below(n)];
        StepInput corrupted = in;
        corrupted.corruption.corrupted_devices = {victim};
        const auto out = replay_and_localize(in, execute_step(corrupted));
        REQUIRE(out.localized_devices == std::vector<DeviceId>{victim});
    }
}

TEST_CASE("handle_slice_failure") {
    SplitMix64 rng(1);
    ControllerConfig c;
    {
        FleetState fleet(build_topology({}));
        const auto rec = handle_slice_failure(c, fleet, 4, 100.0, rng);
        CHECK_FALSE(rec.ignored);
        CHECK(rec.bucket == TimeBucket::Reconfig);
        CHECK(rec.seconds == 30.0);
        CHECK_FALSE(rec.restores_pool);
        CHECK(fleet.slice(4).state == SliceState::Failed);
        CHECK(handle_slice_failure(c, fleet, 4, 101.0, rng).ignored);
    }
    {
        ControllerConfig tail = c;
        tail.tail_failure_prob = 1.0;
        FleetState fleet(build_topology({}));
        const auto rec = handle_slice_failure(tail, fleet, 4, 100.0, rng);
        CHECK(rec.bucket == TimeBucket::Tail);
        CHECK(rec.seconds == 600.0);
        CHECK(rec.restores_pool);
    }
    {
        ControllerConfig base = c;
        base.mode = ElasticityMode::NonElasticBaseline;
        FleetState fleet(build_topology({}));
        const auto rec = handle_slice_failure(base, fleet, 4, 100.0, rng);
        CHECK(rec.bucket == TimeBucket::BaselineReschedule);
        CHECK(rec.seconds >= 600.0);
    }
    {
        // Losing the only slice of a pod leaves nothing to continue on.
        FleetState fleet(build_topology({1, 2, 1, 4}));
        const auto rec = handle_slice_failure(c, fleet, 1, 5.0, rng);
        CHECK(rec.stalled);
        CHECK(rec.bucket == TimeBucket::Tail);
    }
}

TEST_CASE("handle_slice_recovery") {
    FleetState fleet(build_topology({}));
    CHECK_FALSE(handle_slice_recovery(fleet, 3, 1.0));
    CHECK(healthy_slice_count(fleet) == 96);
    fleet.transition_slice(3, SliceState::Failed, 1.0);
    fleet.transition_slice(4, SliceState::Failed, 1.0);
    CHECK(healthy_slice_count(fleet) == 94);
    CHECK(handle_slice_recovery(fleet, 3, 2.0));
    CHECK(healthy_slice_count(fleet) == 95);
    fleet.transition_slice(4, SliceState::Recovering, 3.0);
    CHECK(handle_slice_recovery(fleet, 4, 4.0));
    CHECK(healthy_slice_count(fleet) == 96);
}

TEST_CASE("one elastic failure costs exactly the reconfiguration time") {
    const auto topo = build_topology({});
    const auto trace = trace_of({{1000.5, SliceFailure{5}}, {1600.5, SliceRecovered{5}}});
    const auto run = simulate(ControllerConfig{}, FaultRates{}, topo, trace, 3600.0, 1);
    CHECK(run.report.reconfig_seconds_total == 30.0);
    CHECK(run.report.tail_seconds_total == 0.0);
    CHECK(run.report.interruptions == 1);
    REQUIRE(run.ledger.pauses().size() == 1);
    const Pause& p = run.ledger.pauses().front();
    // The step in flight at the failure completes first.
    CHECK(p.start == 1010.0);
    CHECK(p.end == 1040.0);
    CHECK(p.active_slices == 95);
    check_conservation(run.report);

    // Throughput law: 31/32 of nominal while the slice is away.
    const double degraded = 10.0 * 32.0 / 31.0;
    const auto rows = compute_rows(run.ledger, 1040.0, 1600.5);
    for (const StepRecord* r : rows) CHECK(r->wall_end - r->wall_start == doctest::Approx(degraded));
    const double expected = (1600.5 - 1040.0) * 31.0 / 320.0;
    CHECK(std::abs(static_cast<double>(rows.size()) - expected) <= 1.0);
    for (const StepRecord* r : compute_rows(run.ledger, 1610.0, 3600.0)) {
        CHECK(r->wall_end - r->wall_start == doctest::Approx(10.0));
        CHECK(r->active_slices == 96);
    }
}

TEST_CASE("recovery timeline: degraded until the slice rejoins") {
    const auto topo = build_topology({});
    const auto trace = trace_of({{0.0, SliceFailure{0}}, {600.0, SliceRecovered{0}}});
    const auto run = simulate(ControllerConfig{}, FaultRates{}, topo, trace, 1200.0, 1);
    const auto& recs = run.ledger.records();
    REQUIRE(!recs.empty());
    CHECK(recs.front().wall_start == 30.0);
    for (const StepRecord& r : recs) {
        if (r.wall_start < 600.0) {
            CHECK(r.wall_end - r.wall_start == doctest::Approx(320.0 / 31.0));
        } else {
            CHECK(r.wall_end - r.wall_start == doctest::Approx(10.0));
        }
    }
}

TEST_CASE("baseline pays a full reschedule and elastic dominates on the same trace") {
    const auto topo = build_topology({});
    const auto trace = trace_of({{1000.5, SliceFailure{5}}, {1600.5, SliceRecovered{5}}});
    ControllerConfig base;
    base.mode = ElasticityMode::NonElasticBaseline;
    const auto b = simulate(base, FaultRates{}, topo, trace, 3600.0, 1);
    CHECK(b.report.baseline_reschedule_seconds_total >= 600.0);
    CHECK(b.report.reconfig_seconds_total == 0.0);
    // Full pool after the reschedule.
    for (const StepRecord* r : compute_rows(b.ledger, 1610.0, 3600.0)) CHECK(r->active_slices == 96);
    const auto e = simulate(ControllerConfig{}, FaultRates{}, topo, trace, 3600.0, 1);
    CHECK(goodput(e.report) > goodput(b.report));
    check_conservation(b.report);
}

TEST_CASE("a pod with no slice left stalls into a reschedule") {
    const auto topo = build_topology({1, 2, 1, 4});
    const auto trace = trace_of({{55.0, SliceFailure{1}}, {2000.0, SliceRecovered{1}}});
    const auto run = simulate(ControllerConfig{}, FaultRates{}, topo, trace, 3600.0, 1);
    CHECK(run.report.tail_seconds_total == 600.0);
    CHECK(run.report.reconfig_seconds_total == 0.0);
    CHECK(run.report.warnings == 0);
    check_conservation(run.report);
}

TEST_CASE("debug intervention rewinds to a checkpoint") {
    const auto topo = build_topology({1, 1, 2, 4});
    const auto trace = trace_of({{2505.0, DebugIntervention{50}}});
    const auto run = simulate(small_config(), FaultRates{}, topo, trace, 5000.0, 1);
    // Applied at the 2510 boundary with 251 steps done: back to checkpoint 200.
    CHECK(run.report.steps_rolled_back == 51);
    CHECK(run.report.debug_interventions == 1);
    REQUIRE(run.ledger.rollbacks().size() == 1);
    CHECK(run.ledger.rollbacks()[0].from_step == 251);
    CHECK(run.ledger.rollbacks()[0].to_checkpoint == 200);
    CHECK(run.report.steps_completed == 500 - 51);
    CHECK(run.report.steps_computed == 500);
    CHECK(goodput(run.report) == 1.0);
    // Recomputed steps reproduce the original digests.
    std::map<std::uint64_t, std::uint64_t> digest;
    for (const StepRecord& r : run.ledger.records()) {
        auto [it, fresh] = digest.emplace(r.step_index, *r.checksum_digest);
        if (!fresh) CHECK(it->second == *r.checksum_digest);
    }
}

TEST_CASE("legacy flow rolls back the post-onset history") {
    const auto topo = build_topology({1, 1, 2, 4});
    ControllerConfig c = small_config();
    c.sdc_mode = SdcMode::LegacyDelayed;
    for (double onset : {1000.0, 1003.0, 1095.0, 5432.1}) {
        const auto trace = trace_of({{onset, SdcOnset{2}}});
        const auto run = simulate(c, FaultRates{}, topo, trace, onset + 20000.0, 1);
        CAPTURE(onset);
        CHECK(run.report.legacy_sdc_rollbacks == 1);
        CHECK(run.report.steps_rolled_back >= 1440 - 100);
        CHECK(run.report.steps_rolled_back <= 1440 + 100);
        REQUIRE(run.ledger.excluded_devices().size() == 1);
        CHECK(run.ledger.excluded_devices()[0].device == 2);
        CHECK(run.ledger.excluded_devices()[0].time >= onset + 14400.0);
        CHECK(run.ledger.excluded_devices()[0].time < onset + 14400.0 + 10.0);
    }

    RunLedger empty(100);
    CHECK(legacy_sdc_flow(c, empty, 0.0) == 0);
    CHECK_THROWS_AS(legacy_sdc_flow(small_config(), empty, 0.0), InvalidInput);
}

TEST_CASE("legacy flow with zero delay excludes immediately") {
    const auto topo = build_topology({1, 1, 2, 4});
    ControllerConfig c = small_config();
    c.sdc_mode = SdcMode::LegacyDelayed;
    c.legacy_detection_delay_seconds = 0.0;
    FaultRates r;
    r.sdc_corruption_prob_per_step = 1.0;
    const auto run = simulate(c, r, topo, trace_of({{1003.0, SdcOnset{2}}}), 5000.0, 1);
    CHECK(run.report.steps_rolled_back == 0);
    REQUIRE(run.ledger.excluded_devices().size() == 1);
    CHECK(run.ledger.excluded_devices()[0].time == 1010.0);
    CHECK(*run.report.mean_detection_latency_seconds == doctest::Approx(7.0));
}

TEST_CASE("detect_stragglers") {
    auto timings = [](std::vector<double> s) {
        std::vector<DeviceTiming> t;
        for (std::size_t i = 0; i < s.size(); ++i) t.push_back({static_cast<DeviceId>(i), s[i]});
        return t;
    };
    CHECK(detect_stragglers(timings({1, 1, 1, 1, 10, 10}), 2.0) == std::vector<DeviceId>{4, 5});
    CHECK(detect_stragglers(timings({2, 2, 2, 2}), 2.0).empty());
    CHECK(detect_stragglers(timings({1, 1, 3, 1, 1}), 2.0) == std::vector<DeviceId>{2});
    CHECK(detect_stragglers(timings({1, 1, 2, 1}), 2.0).empty());
    CHECK_THROWS_AS(detect_stragglers(std::vector<DeviceTiming>{}, 2.0), InvalidInput);
}

TEST_CASE("straggler polling reports counters only") {
    const auto topo = build_topology({1, 1, 4, 64});
    FaultRates r;
    r.straggler_prob_per_device_check = 0.01;
    const auto run = run_training(ControllerConfig{}, r, topo, 100000.0, 3);
    CHECK(run.report.straggler_checks == 100);
    CHECK(run.report.stragglers_flagged > 0);
    CHECK(run.report.exclusions == 0);
    CHECK(goodput(run.report) == 1.0);
}

TEST_CASE("split-phase ledger soundness and suspicion accounting") {
    const auto topo = build_topology({1, 2, 4, 16});
    FaultRates r;
    r.sdc_onsets_per_device_per_hour = 2e-3;
    r.sdc_corruption_prob_per_step = 0.3;
    r.sdc_detect_prob_given_corruption = 1.0;
    r.false_suspicion_prob_per_step = 0.01;
    std::uint64_t genuine_total = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto run = run_training(small_config(), r, topo, 2 * 86400.0, seed);
        const auto& recs = run.ledger.records();
        CAPTURE(seed);

        // Every suspicion got exactly one replay, except one still pending at
        // the horizon.
        std::uint64_t replays = 0;
        for (const StepRecord& s : recs) {
            replays += (s.status == StepStatus::ReplayedFalseAlarm ||
                        s.status == StepStatus::ReplayedGenuine) ? 1 : 0;
        }
        const bool pending = recs.back().status == StepStatus::Suspected ||
                             recs.back().status == StepStatus::ReplayedGenuine;
        CHECK(replays == run.report.steps_replayed);
        CHECK(run.report.suspicions ==
              run.report.steps_replayed + (recs.back().status == StepStatus::Suspected ? 1 : 0));
        CHECK(run.report.genuine_sdc_incidents <= run.report.steps_replayed);

        // Localization excludes exactly the devices whose corruption differed
        // between the original and the replay.
        std::set<DeviceId> expected;
        for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
            if (recs[i + 1].status != StepStatus::ReplayedGenuine) continue;
            REQUIRE(recs[i].status == StepStatus::Suspected);
            REQUIRE(recs[i].step_index == recs[i + 1].step_index);
            std::vector<DeviceId> diff;
            std::set_symmetric_difference(
                recs[i].injected_corruption.begin(), recs[i].injected_corruption.end(),
                recs[i + 1].injected_corruption.begin(), recs[i + 1].injected_corruption.end(),
                std::back_inserter(diff));
            REQUIRE(!diff.empty());
            expected.insert(diff.begin(), diff.end());
            ++genuine_total;
            // The recompute follows and leaves the culprits out.
            if (i + 2 < recs.size()) {
                const StepRecord& again = recs[i + 2];
                CHECK(again.step_index == recs[i].step_index);
                CHECK(again.status == StepStatus::Computed);
                for (DeviceId d : diff) CHECK_FALSE(again.participants->contains(d));
                CHECK(again.verified == again.injected_corruption.empty());
            }
        }
        std::set<DeviceId> excluded;
        for (const Exclusion& e : run.ledger.excluded_devices()) excluded.insert(e.device);
        if (!pending) CHECK(excluded == expected);

        // The live history carries no unverified step that was free of
        // corruption.
        for (const StepRecord& s : recs) {
            if (s.status == StepStatus::Computed) CHECK(s.verified == s.injected_corruption.empty());
            if (s.status == StepStatus::RolledBack || s.status == StepStatus::ReplayedGenuine ||
                s.status == StepStatus::Suspected) {
                CHECK_FALSE(s.verified);
            }
        }
        check_conservation(run.report);
    }
    CHECK(genuine_total > 0);
}

TEST_CASE("spare substitution sits the slice out for the configured time") {
    const auto topo = build_topology({1, 1, 4, 8});
    ControllerConfig c = small_config();
    c.spare_substitution_seconds = 300.0;
    FaultRates r;
    r.sdc_corruption_prob_per_step = 1.0;
    r.sdc_detect_prob_given_corruption = 1.0;
    // Device 9 lives in slice 1. With corruption probability 1 the replay is
    // corrupted the same way, so the checksums agree and nothing is localized.
    const auto trace = trace_of({{100.0, SdcOnset{9}}});
    const auto run = simulate(c, r, topo, trace, 3000.0, 2);
    CHECK(run.report.exclusions == 0);
    CHECK(run.report.silent_corruptions > 0);

    r.sdc_corruption_prob_per_step = 0.5;
    bool seen = false;
    for (std::uint64_t seed = 1; seed < 20 && !seen; ++seed) {
        const auto res = simulate(c, r, topo, trace, 3000.0, seed);
        if (res.ledger.excluded_devices().empty()) continue;
        seen = true;
        const double at = res.ledger.excluded_devices()[0].time;
        for (const StepRecord* s : compute_rows(res.ledger, at + 10.0, at + 290.0)) {
            if (s->status == StepStatus::Computed && s->attempt == 0) {
                CHECK(s->active_slices == 3);
                CHECK(s->wall_end - s->wall_start == doctest::Approx(10.0 * 4.0 / 3.0));
            }
        }
        for (const StepRecord* s : compute_rows(res.ledger, at + 320.0, 3000.0)) {
            CHECK(s->active_slices == 4);
        }
        check_conservation(res.report);
    }
    CHECK(seen);
}

TEST_CASE("runs are deterministic") {
    const auto topo = build_topology({1, 3, 8, 16});
    FaultRates r;
    r.slice_failures_per_hour = 6.0;
    r.sdc_onsets_per_device_per_hour = 5e-4;
    r.sdc_corruption_prob_per_step = 0.3;
    r.sdc_detect_prob_given_corruption = 0.9;
    r.false_suspicion_prob_per_step = 0.003;
    r.debug_interventions_per_day = 4.0;
    r.debug_rollback_depth_steps = 120;
    ControllerConfig c = small_config();
    c.tail_failure_prob = 0.1;
    const auto a = run_training(c, r, topo, 3 * 86400.0, 17);
    const auto b = run_training(c, r, topo, 3 * 86400.0, 17);
    CHECK(same_ledger(a.ledger, b.ledger));
    CHECK(same_report(a.report, b.report));
    const auto other = run_training(c, r, topo, 3 * 86400.0, 18);
    CHECK_FALSE(same_ledger(a.ledger, other.ledger));
}

TEST_CASE("bucket conservation across modes") {
    const auto topo = build_topology({1, 2, 4, 16});
    FaultRates r;
    r.slice_failures_per_hour = 12.0;
    r.slice_recovery_seconds = 1500.0;
    r.sdc_onsets_per_device_per_hour = 1e-3;
    r.sdc_corruption_prob_per_step = 0.4;
    r.sdc_detect_prob_given_corruption = 0.8;
    r.false_suspicion_prob_per_step = 0.01;
    r.debug_interventions_per_day = 10.0;
    r.debug_rollback_depth_steps = 40;
    for (int variant = 0; variant < 4; ++variant) {
        ControllerConfig c = small_config();
        c.tail_failure_prob = 0.2;
        c.mode = variant % 2 ? ElasticityMode::NonElasticBaseline : ElasticityMode::Elastic;
        c.sdc_mode = variant / 2 ? SdcMode::LegacyDelayed : SdcMode::SplitPhase;
        c.legacy_detection_delay_seconds = 3600.0;
        c.spare_substitution_seconds = variant == 0 ? 120.0 : 0.0;
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const auto run = run_training(c, r, topo, 86400.0 + 7.25, seed);
            CAPTURE(variant);
            CAPTURE(seed);
            check_conservation(run.report);
            CHECK(run.report.idle_residual_seconds < c.base_step_seconds * 4);
            CHECK(goodput(run.report) < 1.0);
            if (c.mode == ElasticityMode::Elastic) {
                CHECK(run.report.baseline_reschedule_seconds_total == 0.0);
            } else {
                CHECK(run.report.reconfig_seconds_total == 0.0);
                CHECK(run.report.tail_seconds_total == 0.0);
            }
            // Timestamps of exclusions never go backwards.
            const auto& ex = run.ledger.excluded_devices();
            CHECK(std::is_sorted(ex.begin(), ex.end(), [](const Exclusion& a, const Exclusion& b) {
                return a.time < b.time;
            }));
            CHECK(run.report.exclusions == ex.size());
            CHECK(run.report.warnings == run.ledger.warnings().total());
            for (std::size_t i = 1; i < run.ledger.checkpoints().size(); ++i) {
                CHECK(run.ledger.checkpoints()[i] % 100 == 0);
            }
        }
    }
}

TEST_CASE("invalid configuration is rejected before simulating") {
    const auto topo = build_topology({1, 1, 1, 4});
    ControllerConfig c;
    c.reconfig_seconds = -1.0;
    CHECK_THROWS_AS(run_training(c, FaultRates{}, topo, 100.0, 1), ConfigError);
    c = {};
    c.straggler_threshold_ratio = 1.0;
    CHECK_THROWS_AS(run_training(c, FaultRates{}, topo, 100.0, 1), ConfigError);
    c = {};
    CHECK_THROWS_AS(run_training(c, FaultRates{}, topo, 0.0, 1), InvalidInput);
}
