// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "ftsim/errors.hpp"

namespace ftsim {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json report_to_json(const GoodputReport& r, const json& config) {
    json out = {
        {"seed", r.seed},
        {"config_hash", r.config_hash},
        {"horizon_seconds", r.horizon_seconds},
        {"compute_seconds", r.compute_seconds},
        {"reconfig_seconds_total", r.reconfig_seconds_total},
        {"tail_seconds_total", r.tail_seconds_total},
        {"baseline_reschedule_seconds_total", r.baseline_reschedule_seconds_total},
        {"idle_residual_seconds", r.idle_residual_seconds},
        {"steps_computed", r.steps_computed},
        {"steps_replayed", r.steps_replayed},
        {"steps_rolled_back", r.steps_rolled_back},
        {"genuine_sdc_incidents", r.genuine_sdc_incidents},
        {"suspicions", r.suspicions},
        {"silent_corruptions", r.silent_corruptions},
        {"interruptions", r.interruptions},
        {"mean_detection_latency_seconds", optional_number(r.mean_detection_latency_seconds)},
        {"steps_completed", r.steps_completed},
        {"exclusions", r.exclusions},
        {"debug_interventions", r.debug_interventions},
        {"legacy_sdc_rollbacks", r.legacy_sdc_rollbacks},
        {"straggler_checks", r.straggler_checks},
        {"stragglers_flagged", r.stragglers_flagged},
        {"warnings", r.warnings},
        {"goodput", goodput(r)},
    };
    if (const auto split = overhead_split(r)) {
        out["overhead_split"] = {{"reconfig_fraction", split->reconfig_fraction},
                                 {"tail_fraction", split->tail_fraction}};
    } else {
        out["overhead_split"] = nullptr;
    }
    const ReplayStats stats = replay_stats(r);
    out["replay_stats"] = {{"replay_fraction_of_steps", stats.replay_fraction_of_steps},
                           {"genuine_fraction_of_replays", stats.genuine_fraction_of_replays},
                           {"debug_recompute_fraction", stats.debug_recompute_fraction},
                           {"degenerate", stats.degenerate}};
    out["config"] = config;
    return out;
}

json aggregate_to_json(const AggregateReport& agg, const json& config) {
    json fields = json::object();
    for (const auto& [name, f] : agg.fields) {
        fields[name] = {{"mean", f.mean}, {"stddev", f.stddev}, {"count", f.count}};
    }
    return json{{"count", agg.count},
                {"horizon_seconds", agg.horizon_seconds},
                {"config_hash", agg.config_hash},
                {"seeds", agg.seeds},
                {"fields", fields},
                {"config", config}};
}

std::vector<TimelineRow> timeline(const RunLedger& ledger, double horizon) {
    std::vector<TimelineRow> rows;
    rows.reserve(ledger.records().size() + ledger.pauses().size() + 1);
    for (const StepRecord& r : ledger.records()) {
        rows.push_back({r.wall_start, r.wall_end, TimeBucket::Compute, r.active_slices,
                        r.step_index});
    }
    for (const Pause& p : ledger.pauses()) {
        rows.push_back({p.start, p.end, p.bucket, p.active_slices, std::nullopt});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const TimelineRow& a, const TimelineRow& b) {
        return a.time_start < b.time_start;
    });
    const double last = rows.empty() ? 0.0 : rows.back().time_end;
    if (last < horizon) {
        const std::uint32_t healthy = rows.empty() ? 0U : rows.back().healthy_slices;
        rows.push_back({last, horizon, TimeBucket::Idle, healthy, std::nullopt});
    }
    return rows;
}

void write_timeline_csv(std::ostream& out, const std::vector<TimelineRow>& rows) {
    out << "time_start,time_end,bucket,healthy_slices,step_index\n";
    char buf[64];
    for (const TimelineRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.time_start);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", row.time_end);
        out << buf << ',' << to_string(row.bucket) << ',' << row.healthy_slices << ',';
        if (row.step_index) out << *row.step_index;
        out << '\n';
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw IoError("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

}  // namespace ftsim
