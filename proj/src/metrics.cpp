// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ftsim/errors.hpp"

namespace ftsim {

double goodput(const GoodputReport& report) {
    if (!(report.horizon_seconds > 0.0)) return 0.0;
    return std::clamp(report.compute_seconds / report.horizon_seconds, 0.0, 1.0);
}

std::optional<OverheadSplit> overhead_split(const GoodputReport& report) {
    const double idle = report.reconfig_seconds_total + report.tail_seconds_total +
                        report.baseline_reschedule_seconds_total +
                        report.idle_residual_seconds;
    if (!(idle > 0.0)) return std::nullopt;
    return OverheadSplit{report.reconfig_seconds_total / idle, report.tail_seconds_total / idle};
}

ReplayStats replay_stats(const GoodputReport& report) {
    ReplayStats stats;
    if (report.steps_computed == 0) {
        stats.degenerate = true;
        return stats;
    }
    const auto computed = static_cast<double>(report.steps_computed);
    stats.replay_fraction_of_steps = static_cast<double>(report.steps_replayed) / computed;
    stats.debug_recompute_fraction =
        static_cast<double>(report.steps_replayed + report.steps_rolled_back) / computed;
    if (report.steps_replayed == 0) {
        stats.degenerate = true;
    } else {
        stats.genuine_fraction_of_replays = static_cast<double>(report.genuine_sdc_incidents) /
                                            static_cast<double>(report.steps_replayed);
    }
    return stats;
}

std::uint64_t redundant_steps(const GoodputReport& r) noexcept {
    return r.steps_computed > r.steps_completed ? r.steps_computed - r.steps_completed : 0;
}

std::vector<std::pair<std::string, std::optional<double>>> numeric_fields(
    const GoodputReport& r) {
    auto u = [](std::uint64_t v) { return std::optional<double>(static_cast<double>(v)); };
    const auto split = overhead_split(r);
    const auto stats = replay_stats(r);
    return {
        {"compute_seconds", r.compute_seconds},
        {"reconfig_seconds_total", r.reconfig_seconds_total},
        {"tail_seconds_total", r.tail_seconds_total},
        {"baseline_reschedule_seconds_total", r.baseline_reschedule_seconds_total},
        {"idle_residual_seconds", r.idle_residual_seconds},
        {"steps_computed", u(r.steps_computed)},
        {"steps_replayed", u(r.steps_replayed)},
        {"steps_rolled_back", u(r.steps_rolled_back)},
        {"genuine_sdc_incidents", u(r.genuine_sdc_incidents)},
        {"suspicions", u(r.suspicions)},
        {"silent_corruptions", u(r.silent_corruptions)},
        {"interruptions", u(r.interruptions)},
        {"mean_detection_latency_seconds", r.mean_detection_latency_seconds},
        {"steps_completed", u(r.steps_completed)},
        {"exclusions", u(r.exclusions)},
        {"debug_interventions", u(r.debug_interventions)},
        {"legacy_sdc_rollbacks", u(r.legacy_sdc_rollbacks)},
        {"straggler_checks", u(r.straggler_checks)},
        {"stragglers_flagged", u(r.stragglers_flagged)},
        {"warnings", u(r.warnings)},
        {"goodput", goodput(r)},
        {"reconfig_fraction",
         split ? std::optional<double>(split->reconfig_fraction) : std::nullopt},
        {"tail_fraction", split ? std::optional<double>(split->tail_fraction) : std::nullopt},
        {"replay_fraction_of_steps", stats.replay_fraction_of_steps},
        {"genuine_fraction_of_replays",
         r.steps_replayed > 0 ? std::optional<double>(stats.genuine_fraction_of_replays)
                              : std::nullopt},
        {"debug_recompute_fraction", stats.debug_recompute_fraction},
    };
}

AggregateReport merge_reports(std::span<const GoodputReport> reports) {
    if (reports.empty()) throw InvalidInput("merge_reports: no reports");
    const GoodputReport& first = reports.front();
    for (const GoodputReport& r : reports) {
        if (r.horizon_seconds != first.horizon_seconds) {
            throw InvalidInput("merge_reports: mismatched horizon_seconds");
        }
        if (r.config_hash != first.config_hash) {
            throw InvalidInput("merge_reports: mismatched config_hash");
        }
    }

    AggregateReport agg;
    agg.count = reports.size();
    agg.horizon_seconds = first.horizon_seconds;
    agg.config_hash = first.config_hash;

    // Welford's online update per field; fields absent in a report (no
    // replays, no exclusions) are skipped for that report.
    struct Acc {
        std::size_t n = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::map<std::string, Acc> acc;
    for (const GoodputReport& r : reports) {
        agg.seeds.push_back(r.seed);
        for (auto& [name, value] : numeric_fields(r)) {
            Acc& a = acc[name];
            if (!value) continue;
            ++a.n;
            const double delta = *value - a.mean;
            a.mean += delta / static_cast<double>(a.n);
            a.m2 += delta * (*value - a.mean);
        }
    }
    for (auto& [name, a] : acc) {
        FieldStats f;
        f.count = a.n;
        f.mean = a.mean;
        f.stddev = a.n > 1 ? std::sqrt(a.m2 / static_cast<double>(a.n - 1)) : 0.0;
        agg.fields.emplace(name, f);
    }
    return agg;
}

}  // namespace ftsim
