// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <variant>

#include "ftsim/engine.hpp"
#include "ftsim/errors.hpp"

namespace ftsim {

std::string_view to_string(ElasticityMode mode) noexcept {
    return mode == ElasticityMode::Elastic ? "elastic" : "non_elastic_baseline";
}

std::string_view to_string(SdcMode mode) noexcept {
    return mode == SdcMode::SplitPhase ? "split_phase" : "legacy_delayed";
}

std::string_view to_string(ChecksumPolicy policy) noexcept {
    return policy == ChecksumPolicy::AllSteps ? "all_steps" : "suspected_steps";
}

std::string_view to_string(SuspicionCause cause) noexcept {
    switch (cause) {
        case SuspicionCause::None: return "none";
        case SuspicionCause::MetricAnomaly: return "metric_anomaly";
        case SuspicionCause::AuditSample: return "audit_sample";
    }
    return "?";
}

namespace {

void check(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(std::string("controller.") + field, what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const ControllerConfig& c) {
    check(positive(c.base_step_seconds), "base_step_seconds", "must be > 0");
    check(positive(c.reconfig_seconds), "reconfig_seconds", "must be > 0");
    check(std::isfinite(c.tail_failure_prob) && c.tail_failure_prob >= 0.0 &&
              c.tail_failure_prob <= 1.0,
          "tail_failure_prob", "must be in [0, 1]");
    check(positive(c.reschedule_seconds), "reschedule_seconds", "must be > 0");
    check(c.checkpoint_interval_steps >= 1, "checkpoint_interval_steps", "must be >= 1");
    check(std::isfinite(c.legacy_detection_delay_seconds) &&
              c.legacy_detection_delay_seconds >= 0.0,
          "legacy_detection_delay_seconds", "must be >= 0");
    check(std::isfinite(c.straggler_threshold_ratio) && c.straggler_threshold_ratio > 1.0,
          "straggler_threshold_ratio", "must be > 1");
    check(std::isfinite(c.spare_substitution_seconds) && c.spare_substitution_seconds >= 0.0,
          "spare_substitution_seconds", "must be >= 0");
}

std::optional<double> step_duration(const ControllerConfig& config, std::uint32_t healthy,
                                    std::uint32_t total) {
    if (total == 0 || healthy > total) {
        throw InvalidInput("step_duration: need 0 <= healthy <= total and total >= 1");
    }
    if (healthy == 0) return std::nullopt;
    if (healthy == total) return config.base_step_seconds;
    return config.base_step_seconds * static_cast<double>(total) / static_cast<double>(healthy);
}

SuspicionVerdict judge_step(bool corruption_was_injected, const FaultRates& rates,
                            SplitMix64& rng) {
    if (corruption_was_injected) {
        if (rng.bernoulli(rates.sdc_detect_prob_given_corruption)) {
            return {true, SuspicionCause::MetricAnomaly};
        }
        return {};
    }
    if (false_suspicion(rates, rng)) return {true, SuspicionCause::AuditSample};
    return {};
}

ReplayOutcome replay_and_localize(const StepInput& replay_input, const StepOutcome& original) {
    if (!std::ranges::equal(replay_input.participant_devices, original.checksums.devices())) {
        throw ConsistencyError("replay participants differ from the original step");
    }
    ReplayOutcome out;
    out.replay = execute_step(replay_input);
    out.localized_devices = differing_devices(original.checksums, out.replay.checksums);
    out.genuine = !out.localized_devices.empty();
    out.recompute_count = out.genuine ? 2 : 1;
    return out;
}

ReconfigurationRecord handle_slice_failure(const ControllerConfig& config, FleetState& fleet,
                                           SliceId slice, double now, SplitMix64& rng) {
    ReconfigurationRecord rec;
    rec.slice = slice;
    rec.at = now;
    if (!fleet.transition_slice(slice, SliceState::Failed, now)) {
        rec.ignored = true;
        return rec;
    }
    if (config.mode == ElasticityMode::NonElasticBaseline) {
        rec.bucket = TimeBucket::BaselineReschedule;
        rec.seconds = config.reschedule_seconds;
        rec.restores_pool = true;
        return rec;
    }

    const auto& topo = fleet.topology();
    const PodId pod = topo.pod_of_slice(slice);
    std::uint32_t left = 0;
    for (SliceId s = pod * topo.slices_per_pod(); s < (pod + 1) * topo.slices_per_pod(); ++s) {
        left += fleet.is_active(s) ? 1U : 0U;
    }
    const bool tail = rng.bernoulli(config.tail_failure_prob);
    rec.stalled = left == 0;
    if (tail || rec.stalled) {
        rec.bucket = TimeBucket::Tail;
        rec.seconds = config.reschedule_seconds;
        rec.restores_pool = true;
    } else {
        rec.bucket = TimeBucket::Reconfig;
        rec.seconds = config.reconfig_seconds;
    }
    return rec;
}

bool handle_slice_recovery(FleetState& fleet, SliceId slice, double now) {
    switch (fleet.slice(slice).state) {
        case SliceState::Healthy:
            return false;
        case SliceState::Failed:
            fleet.transition_slice(slice, SliceState::Recovering, now);
            [[fallthrough]];
        case SliceState::Recovering:
            return fleet.transition_slice(slice, SliceState::Healthy, now);
    }
    return false;
}

std::uint64_t legacy_sdc_flow(const ControllerConfig& config, RunLedger& ledger,
                              double onset_time) {
    if (config.sdc_mode != SdcMode::LegacyDelayed) {
        throw InvalidInput("legacy_sdc_flow requires sdc_mode=legacy_delayed");
    }
    std::optional<std::uint64_t> first_suspect;
    const auto& records = ledger.records();
    for (auto it = records.rbegin(); it != records.rend() && it->wall_start >= onset_time; ++it) {
        if (it->status == StepStatus::RolledBack) continue;
        first_suspect = it->step_index;
    }
    if (!first_suspect) return 0;
    return rollback(ledger, ledger.checkpoint_at_or_before(*first_suspect),
                    RollbackReason::SdcLegacy);
}

std::vector<DeviceId> detect_stragglers(std::span<const DeviceTiming> timings,
                                        double threshold_ratio) {
    if (timings.empty()) throw InvalidInput("detect_stragglers: no timings");
    std::vector<double> seconds(timings.size());
    std::ranges::transform(timings, seconds.begin(), &DeviceTiming::seconds);
    const std::size_t mid = seconds.size() / 2;
    std::nth_element(seconds.begin(), seconds.begin() + static_cast<std::ptrdiff_t>(mid),
                     seconds.end());
    double median = seconds[mid];
    if (seconds.size() % 2 == 0) {
        const double lower =
            *std::max_element(seconds.begin(), seconds.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (lower + median);
    }
    std::vector<DeviceId> slow;
    for (const DeviceTiming& t : timings) {
        if (t.seconds > threshold_ratio * median) slow.push_back(t.device);
    }
    std::ranges::sort(slow);
    return slow;
}

// Controller -----------------------------------------------------------------

namespace {

struct StepBoundary {};
struct ReconfigDone {
    std::size_t pause_index;
    bool restores_pool;
    std::optional<SliceId> slice;
};
struct SliceRejoin {
    SliceId slice;
};
struct LegacyDetection {
    DeviceId device;
    double onset;
};

using Payload = std::variant<FaultEvent, StepBoundary, ReconfigDone, SliceRejoin, LegacyDetection>;

/// Work left over from a suspected step: its replay, then (if the replay
/// localized a corruption) a clean recompute without the culprits.
struct PendingReplay {
    enum class Stage { Replay, Recompute } stage = Stage::Replay;
    std::uint64_t step_index = 0;
    StepInput input;
    StepOutcome original;
    std::shared_ptr<const ParticipantSet> participants;
    std::vector<DeviceId> localized;
    SplitMix64 rng{0};
    double seconds = 0.0;
    std::uint32_t active_slices = 0;
};

using RewindAction = std::variant<LegacyDetection, DebugIntervention>;

class Controller {
public:
    Controller(const ControllerConfig& config, const FaultRates& rates,
               const ClusterTopology& topology, double horizon, std::uint64_t seed)
        : config_(config),
          rates_(rates),
          horizon_(horizon),
          seed_(seed),
          fleet_(topology),
          ledger_(config.checkpoint_interval_steps),
          restored_(topology.total_slices(), false) {}

    RunResult run(const FaultTrace& trace) {
        for (const FaultEvent& e : trace.events) {
            if (e.time <= horizon_) queue_.push(e.time, e);
        }
        queue_.push(0.0, StepBoundary{});
        while (!finished_) {
            auto event = queue_.pop_next();
            if (!event || event->time > horizon_) break;
            const double now = event->time;
            std::visit(
                [&](const auto& payload) {
                    using T = std::decay_t<decltype(payload)>;
                    if constexpr (std::is_same_v<T, FaultEvent>) {
                        on_fault(payload, now);
                    } else if constexpr (std::is_same_v<T, StepBoundary>) {
                        on_boundary(now);
                    } else if constexpr (std::is_same_v<T, ReconfigDone>) {
                        on_reconfig_done(payload, now);
                    } else if constexpr (std::is_same_v<T, SliceRejoin>) {
                        fleet_.unmask_slice(payload.slice, now);
                    } else {
                        rewinds_.emplace_back(payload);
                    }
                },
                event->payload);
        }
        GoodputReport report = build_report();
        return RunResult{std::move(ledger_), std::move(report)};
    }

private:
    // Fault events only update state; their effect on the step loop waits for
    // the next boundary.
    void on_fault(const FaultEvent& event, double now) {
        std::visit(
            [&](const auto& kind) {
                using T = std::decay_t<decltype(kind)>;
                if constexpr (std::is_same_v<T, SliceFailure>) {
                    SplitMix64 rng(derive_seed(seed_, stream::kTail, event.ordinal));
                    restored_[kind.slice] = false;
                    auto rec = handle_slice_failure(config_, fleet_, kind.slice, now, rng);
                    if (rec.ignored) {
                        ++ledger_.warnings().ignored_failures;
                    } else {
                        ++interruptions_;
                        pending_pauses_.push_back(rec);
                    }
                } else if constexpr (std::is_same_v<T, SliceRecovered>) {
                    if (restored_[kind.slice]) {
                        // Already replaced by a full reschedule.
                        restored_[kind.slice] = false;
                    } else if (!handle_slice_recovery(fleet_, kind.slice, now)) {
                        ++ledger_.warnings().ignored_recoveries;
                    }
                } else if constexpr (std::is_same_v<T, SdcOnset>) {
                    if (!fleet_.mark_sdc_prone(kind.device, now)) {
                        ++ledger_.warnings().ignored_onsets;
                    } else if (config_.sdc_mode == SdcMode::LegacyDelayed) {
                        queue_.push(now + config_.legacy_detection_delay_seconds,
                                    LegacyDetection{kind.device, now});
                    }
                } else {
                    rewinds_.emplace_back(kind);
                }
            },
            event.kind);
    }

    void on_boundary(double now) {
        if (pending_) {
            continue_suspected_step(now);
            return;
        }
        apply_rewinds(now);
        if (!pending_pauses_.empty()) {
            const ReconfigurationRecord rec = pending_pauses_.front();
            pending_pauses_.pop_front();
            start_pause(now, rec.bucket, rec.seconds, rec.restores_pool, rec.slice);
            return;
        }
        if (fleet_.min_active_slices_per_pod() == 0 || fleet_.participants()->size() == 0) {
            // Nothing left to compute on: wait for a full reschedule.
            const TimeBucket bucket = config_.mode == ElasticityMode::Elastic
                                          ? TimeBucket::Tail
                                          : TimeBucket::BaselineReschedule;
            start_pause(now, bucket, config_.reschedule_seconds, true, std::nullopt);
            return;
        }
        execute_new_step(now);
    }

    void on_reconfig_done(const ReconfigDone& done, double now) {
        if (done.restores_pool) {
            restore_pool(now);
        } else if (done.slice && fleet_.slice(*done.slice).state == SliceState::Failed) {
            fleet_.transition_slice(*done.slice, SliceState::Recovering, now);
        }
        on_boundary(now);
    }

    void apply_rewinds(double now) {
        for (const RewindAction& action : rewinds_) {
            if (const auto* legacy = std::get_if<LegacyDetection>(&action)) {
                const std::uint64_t n = legacy_sdc_flow(config_, ledger_, legacy->onset);
                steps_rolled_back_ += n;
                if (n > 0) ++legacy_rollbacks_;
                exclude(legacy->device, now);
            } else {
                const auto& debug = std::get<DebugIntervention>(action);
                const std::uint64_t depth = static_cast<std::uint64_t>(debug.rollback_depth);
                const std::uint64_t head = ledger_.next_step();
                const std::uint64_t target =
                    ledger_.checkpoint_at_or_before(head > depth ? head - depth : 0);
                steps_rolled_back_ += rollback(ledger_, target, RollbackReason::DebugIntervention);
                ++debug_interventions_;
            }
        }
        rewinds_.clear();
    }

    void start_pause(double now, TimeBucket bucket, double seconds, bool restores_pool,
                     std::optional<SliceId> slice) {
        Pause pause;
        pause.start = now;
        pause.requested = seconds;
        pause.end = std::min(now + seconds, horizon_);
        pause.bucket = bucket;
        pause.slice = slice;
        pause.active_slices = fleet_.active_slice_count();
        pause.next_step = ledger_.next_step();
        const double spent = pause.end - pause.start;
        switch (bucket) {
            case TimeBucket::Reconfig: reconfig_seconds_ += spent; break;
            case TimeBucket::Tail: tail_seconds_ += spent; break;
            case TimeBucket::BaselineReschedule: baseline_seconds_ += spent; break;
            default: throw ConsistencyError("pause in a non-pause bucket");
        }
        cursor_ = pause.end;
        ledger_.append_pause(pause);
        queue_.push(now + seconds,
                    ReconfigDone{ledger_.pauses().size() - 1, restores_pool, slice});
    }

    void restore_pool(double now) {
        const std::uint32_t n = fleet_.topology().total_slices();
        for (SliceId s = 0; s < n; ++s) {
            fleet_.clear_mask(s);
            const SliceState state = fleet_.slice(s).state;
            if (state == SliceState::Healthy) continue;
            if (state == SliceState::Failed) {
                fleet_.transition_slice(s, SliceState::Recovering, now);
            }
            fleet_.transition_slice(s, SliceState::Healthy, now);
            restored_[s] = true;
        }
    }

    double current_step_seconds() const {
        return *step_duration(config_, fleet_.min_active_slices_per_pod(),
                              fleet_.topology().slices_per_pod());
    }

    StepInput make_input(std::uint64_t step_index, const ParticipantSet& participants,
                         CorruptionMask mask, double seconds) const {
        StepInput input;
        input.step_index = step_index;
        input.run_seed = seed_;
        input.participant_devices = participants.expand();
        input.corruption = std::move(mask);
        input.compute_seconds = seconds;
        return input;
    }

    StepRecord& append_record(std::uint64_t step_index, std::uint64_t attempt, double now,
                              double seconds, std::shared_ptr<const ParticipantSet> participants,
                              StepStatus status, bool verified, std::uint32_t active_slices,
                              std::vector<DeviceId> corruption) {
        StepRecord r;
        r.step_index = step_index;
        r.attempt = attempt;
        r.wall_start = now;
        r.wall_end = now + seconds;
        r.participants = std::move(participants);
        r.status = status;
        r.verified = verified;
        r.active_slices = active_slices;
        r.injected_corruption = std::move(corruption);
        compute_seconds_ += seconds;
        cursor_ = r.wall_end;
        ++steps_computed_;
        return ledger_.append(std::move(r));
    }

    static void attach_checksums(StepRecord& record, const StepOutcome& outcome) {
        record.checksum_digest = outcome.checksums.fold();
        record.metric = outcome.metric;
    }

    std::uint64_t next_attempt(std::uint64_t step_index) {
        if (step_index >= attempts_.size()) attempts_.resize(step_index + 1, 0);
        return attempts_[step_index]++;
    }

    void execute_new_step(double now) {
        const double seconds = current_step_seconds();
        if (now + seconds > horizon_) {
            finished_ = true;
            return;
        }
        const auto participants = fleet_.participants();
        const std::uint64_t k = ledger_.next_step();
        const std::uint64_t attempt = next_attempt(k);
        StepStreams streams = step_streams(seed_, k, attempt);

        CorruptionMask mask = corruption_for_step(fleet_, *participants, rates_, streams.corruption);
        const bool corrupted = !mask.empty();
        SuspicionVerdict verdict;
        if (config_.sdc_mode == SdcMode::SplitPhase) {
            verdict = judge_step(corrupted, rates_, streams.judge);
        }
        if (corrupted && !verdict.suspected) ++silent_corruptions_;

        const std::uint32_t active = fleet_.active_slice_count();
        StepRecord& record = append_record(
            k, attempt, now, seconds, participants,
            verdict.suspected ? StepStatus::Suspected : StepStatus::Computed,
            !corrupted && !verdict.suspected, active, mask.corrupted_devices);

        if (verdict.suspected) {
            ++suspicions_;
            PendingReplay p;
            p.step_index = k;
            p.input = make_input(k, *participants, std::move(mask), seconds);
            p.original = execute_step(p.input);
            p.participants = participants;
            p.rng = streams.replay;
            p.seconds = seconds;
            p.active_slices = active;
            attach_checksums(record, p.original);
            pending_ = std::move(p);
        } else {
            if (config_.checksum_policy == ChecksumPolicy::AllSteps) {
                attach_checksums(record, execute_step(make_input(k, *participants, mask, seconds)));
            }
            finish_step(k, participants);
        }
        queue_.push(now + seconds, StepBoundary{});
    }

    void continue_suspected_step(double now) {
        PendingReplay& p = *pending_;
        if (p.stage == PendingReplay::Stage::Recompute && !p.localized.empty()) {
            // Culprits are excluded as of the end of the replay.
            for (DeviceId d : p.localized) exclude(d, now);
            p.participants =
                std::make_shared<const ParticipantSet>(p.participants->without(p.localized));
            p.localized.clear();
        }
        if (now + p.seconds > horizon_) {
            finished_ = true;
            return;
        }
        const std::uint64_t attempt = next_attempt(p.step_index);

        if (p.stage == PendingReplay::Stage::Replay) {
            StepInput replay_input = p.input;
            replay_input.corruption =
                corruption_for_step(fleet_, *p.participants, rates_, p.rng);
            ReplayOutcome outcome = replay_and_localize(replay_input, p.original);
            ++steps_replayed_;
            // A replay that hit the same corruption looks clean but is not.
            const bool replay_clean = replay_input.corruption.empty();
            if (!outcome.genuine && !replay_clean) ++silent_corruptions_;
            StepRecord& record = append_record(
                p.step_index, attempt, now, p.seconds, p.participants,
                outcome.genuine ? StepStatus::ReplayedGenuine : StepStatus::ReplayedFalseAlarm,
                !outcome.genuine && replay_clean, p.active_slices,
                replay_input.corruption.corrupted_devices);
            attach_checksums(record, outcome.replay);
            queue_.push(now + p.seconds, StepBoundary{});
            if (outcome.genuine) {
                ++genuine_incidents_;
                p.localized = std::move(outcome.localized_devices);
                p.stage = PendingReplay::Stage::Recompute;
            } else {
                const auto participants = p.participants;
                const std::uint64_t k = p.step_index;
                pending_.reset();
                finish_step(k, participants);
            }
            return;
        }

        const auto participants = p.participants;
        CorruptionMask mask = corruption_for_step(fleet_, *participants, rates_, p.rng);
        const bool clean = mask.empty();
        if (!clean) ++silent_corruptions_;
        StepRecord& record =
            append_record(p.step_index, attempt, now, p.seconds, participants,
                          StepStatus::Computed, clean, p.active_slices, mask.corrupted_devices);
        attach_checksums(record,
                         execute_step(make_input(p.step_index, *participants, std::move(mask),
                                                 p.seconds)));
        const std::uint64_t k = p.step_index;
        const double seconds = p.seconds;
        pending_.reset();
        finish_step(k, participants);
        queue_.push(now + seconds, StepBoundary{});
    }

    void exclude(DeviceId device, double now) {
        if (!exclude_device(ledger_, fleet_, device, now)) return;
        const auto& health = fleet_.device(device);
        if (health.sdc_onset) latencies_.push_back(now - *health.sdc_onset);
        if (config_.spare_substitution_seconds > 0.0) {
            const SliceId slice = fleet_.topology().slice_of(device);
            fleet_.mask_slice(slice, now + config_.spare_substitution_seconds);
            queue_.push(now + config_.spare_substitution_seconds, SliceRejoin{slice});
        }
    }

    void finish_step(std::uint64_t step_index,
                     const std::shared_ptr<const ParticipantSet>& participants) {
        if (ledger_.complete_step(step_index) && rates_.straggler_prob_per_device_check > 0.0) {
            poll_stragglers(*participants, ledger_.checkpoints().size());
        }
    }

    // Per-device step timings as reported by the workers at a checkpoint:
    // small jitter for everyone, a multi-x slowdown for the unlucky few.
    void poll_stragglers(const ParticipantSet& participants, std::uint64_t poll_index) {
        SplitMix64 rng(derive_seed(seed_, stream::kStraggler, poll_index));
        const double base = current_step_seconds();
        timings_.clear();
        for (DeviceId d : participants.expand()) {
            double t = base * (1.0 + 0.05 * rng.uniform());
            if (rng.bernoulli(rates_.straggler_prob_per_device_check)) {
                t *= 2.0 + 2.0 * rng.uniform();
            }
            timings_.push_back(DeviceTiming{d, t});
        }
        ++straggler_checks_;
        stragglers_flagged_ += detect_stragglers(timings_, config_.straggler_threshold_ratio).size();
    }

    GoodputReport build_report() const {
        GoodputReport r;
        r.seed = seed_;
        r.horizon_seconds = horizon_;
        r.compute_seconds = compute_seconds_;
        r.reconfig_seconds_total = reconfig_seconds_;
        r.tail_seconds_total = tail_seconds_;
        r.baseline_reschedule_seconds_total = baseline_seconds_;
        r.idle_residual_seconds = std::max(0.0, horizon_ - cursor_);
        r.steps_computed = steps_computed_;
        r.steps_replayed = steps_replayed_;
        r.steps_rolled_back = steps_rolled_back_;
        r.genuine_sdc_incidents = genuine_incidents_;
        r.suspicions = suspicions_;
        r.silent_corruptions = silent_corruptions_;
        r.interruptions = interruptions_;
        if (!latencies_.empty()) {
            double sum = 0.0;
            for (double l : latencies_) sum += l;
            r.mean_detection_latency_seconds = sum / static_cast<double>(latencies_.size());
        }
        r.steps_completed = ledger_.next_step();
        r.exclusions = ledger_.excluded_devices().size();
        r.debug_interventions = debug_interventions_;
        r.legacy_sdc_rollbacks = legacy_rollbacks_;
        r.straggler_checks = straggler_checks_;
        r.stragglers_flagged = stragglers_flagged_;
        r.warnings = ledger_.warnings().total();
        return r;
    }

    const ControllerConfig config_;
    const FaultRates rates_;
    const double horizon_;
    const std::uint64_t seed_;

    FleetState fleet_;
    RunLedger ledger_;
    EventQueue<Payload> queue_;

    std::deque<ReconfigurationRecord> pending_pauses_;
    std::vector<RewindAction> rewinds_;
    std::optional<PendingReplay> pending_;
    std::vector<bool> restored_;
    std::vector<std::uint64_t> attempts_;
    std::vector<DeviceTiming> timings_;
    std::vector<double> latencies_;
    bool finished_ = false;
    double cursor_ = 0.0;

    double compute_seconds_ = 0.0;
    double reconfig_seconds_ = 0.0;
    double tail_seconds_ = 0.0;
    double baseline_seconds_ = 0.0;
    std::uint64_t steps_computed_ = 0;
    std::uint64_t steps_replayed_ = 0;
    std::uint64_t steps_rolled_back_ = 0;
    std::uint64_t genuine_incidents_ = 0;
    std::uint64_t suspicions_ = 0;
    std::uint64_t silent_corruptions_ = 0;
    std::uint64_t interruptions_ = 0;
    std::uint64_t debug_interventions_ = 0;
    std::uint64_t legacy_rollbacks_ = 0;
    std::uint64_t straggler_checks_ = 0;
    std::uint64_t stragglers_flagged_ = 0;
};

}  // namespace

RunResult simulate(const ControllerConfig& config, const FaultRates& rates,
                   const ClusterTopology& topology, const FaultTrace& trace,
                   double horizon_seconds, std::uint64_t seed) {
    validate(config);
    validate(rates);
    if (!(horizon_seconds > 0.0) || !std::isfinite(horizon_seconds)) {
        throw InvalidInput("horizon must be positive");
    }
    Controller controller(config, rates, topology, horizon_seconds, seed);
    return controller.run(trace);
}

RunResult run_training(const ControllerConfig& config, const FaultRates& rates,
                       const ClusterTopology& topology, double horizon_seconds,
                       std::uint64_t seed) {
    validate(config);
    return simulate(config, rates, topology, sample_trace(rates, topology, horizon_seconds, seed),
                    horizon_seconds, seed);
}

}  // namespace ftsim
