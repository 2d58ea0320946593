// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/cli.hpp"

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftsim/controller.hpp"
#include "ftsim/errors.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/report_io.hpp"
#include "ftsim/scenario.hpp"

namespace ftsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string scenario;
    std::string out = "ftsim-out";
    std::optional<std::int64_t> seeds;
    std::optional<std::uint64_t> base_seed;
    std::optional<double> horizon_days;
    int jobs = 1;
    std::vector<std::string> overrides;
    std::string format = "json";
    std::string axis;
};

void add_scenario_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--scenario", o.scenario, "Scenario file (JSON)")->required();
    cmd.add_option("--seeds", o.seeds, "Number of seeds (seeds.count)");
    cmd.add_option("--base-seed", o.base_seed, "First seed (seeds.base_seed)");
    cmd.add_option("--horizon-days", o.horizon_days, "Simulated days (horizon_days)");
    cmd.add_option("--set", o.overrides, "Override a field: key.path=value (repeatable)");
}

void add_output_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd.add_option("--jobs", o.jobs, "Simulations run in parallel")
        ->check(CLI::Range(1, 1024))
        ->capture_default_str();
    cmd.add_option("--format", o.format, "Per-seed output: json, or csv to add timelines")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

Scenario load_scenario(const Options& o) {
    json doc = load_json_file(o.scenario);
    if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
    if (o.horizon_days) doc["horizon_days"] = *o.horizon_days;
    if (o.seeds || o.base_seed) {
        std::uint64_t base = 0;
        std::int64_t count = 1;
        if (auto it = doc.find("seeds"); it != doc.end()) {
            if (it->is_array() && !it->empty() && it->front().is_number_unsigned()) {
                base = it->front().get<std::uint64_t>();
                count = static_cast<std::int64_t>(it->size());
            } else if (it->is_object()) {
                if (auto b = it->find("base_seed"); b != it->end() && b->is_number_unsigned()) {
                    base = b->get<std::uint64_t>();
                }
                if (auto c = it->find("count"); c != it->end() && c->is_number_integer()) {
                    count = c->get<std::int64_t>();
                }
            }
        }
        doc["seeds"] = {{"base_seed", o.base_seed.value_or(base)},
                        {"count", o.seeds.value_or(count)}};
    }
    for (const std::string& assignment : o.overrides) apply_override(doc, assignment);
    return parse_scenario(doc);
}

// Runs task(i) for i in [0, n) on up to `jobs` threads. The first exception
// is rethrown after every worker has stopped.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& task) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

struct SeedResult {
    GoodputReport report;
    std::string timeline_csv;
};

std::vector<SeedResult> simulate_seeds(const Scenario& sc, int jobs, bool want_timeline) {
    const ClusterTopology topology = build_topology(sc.topology);
    const std::string hash = config_hash(sc);
    std::vector<SeedResult> results(sc.seeds.size());
    parallel_for(sc.seeds.size(), jobs, [&](std::size_t i) {
        RunResult run = run_training(sc.controller, sc.faults, topology, sc.horizon_seconds(),
                                     sc.seeds[i]);
        run.report.config_hash = hash;
        results[i].report = run.report;
        if (want_timeline) {
            std::ostringstream csv;
            write_timeline_csv(csv, timeline(run.ledger, sc.horizon_seconds()));
            results[i].timeline_csv = csv.str();
        }
    });
    return results;
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

std::string seed_name(std::uint64_t seed) { return std::to_string(seed); }

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Writes reports, the aggregate and (for csv) timelines plus a summary table.
AggregateReport write_arm(const fs::path& dir, const Scenario& sc,
                          const std::vector<SeedResult>& results, const std::string& format) {
    make_dir(dir);
    const json echo = to_json(sc);
    std::vector<GoodputReport> reports;
    for (const SeedResult& r : results) {
        reports.push_back(r.report);
        write_file_atomic(dir / ("report_" + seed_name(r.report.seed) + ".json"),
                          report_to_json(r.report, echo).dump(2) + "\n");
        if (format == "csv") {
            write_file_atomic(dir / ("timeline_" + seed_name(r.report.seed) + ".csv"),
                              r.timeline_csv);
        }
    }
    if (format == "csv") {
        std::ostringstream table;
        const auto header = numeric_fields(reports.front());
        table << "seed";
        for (const auto& [name, value] : header) table << ',' << name;
        table << '\n';
        for (const GoodputReport& r : reports) {
            table << r.seed;
            for (const auto& [name, value] : numeric_fields(r)) {
                table << ',';
                if (value) table << fmt(*value, "%.17g");
            }
            table << '\n';
        }
        write_file_atomic(dir / "reports.csv", table.str());
    }
    AggregateReport agg = merge_reports(reports);
    write_file_atomic(dir / "aggregate.json", aggregate_to_json(agg, echo).dump(2) + "\n");
    return agg;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_meta(const fs::path& dir, const std::string& command, const Options& o,
                const Scenario& sc) {
    const json meta = {{"generated_at", utc_now()},
                       {"command", command},
                       {"scenario_path", o.scenario},
                       {"scenario", sc.name},
                       {"config_hash", config_hash(sc)},
                       {"jobs", o.jobs},
                       {"format", o.format}};
    write_file_atomic(dir / "run_meta.json", meta.dump(2) + "\n");
}

void print_field(std::ostream& out, const AggregateReport& agg, const std::string& name) {
    auto it = agg.fields.find(name);
    out << "  " << name << ": ";
    if (it == agg.fields.end() || it->second.count == 0) {
        out << "n/a\n";
    } else {
        out << fmt(it->second.mean) << " (sd " << fmt(it->second.stddev) << ", n "
            << it->second.count << ")\n";
    }
}

int cmd_run(const Options& o, std::ostream& out) {
    const Scenario sc = load_scenario(o);
    const auto results = simulate_seeds(sc, o.jobs, o.format == "csv");
    const fs::path dir(o.out);
    const AggregateReport agg = write_arm(dir, sc, results, o.format);
    write_meta(dir, "run", o, sc);
    out << sc.name << ": " << agg.count << " seed(s), " << fmt(sc.horizon_days, "%g")
        << " day(s)\n";
    for (const char* name : {"goodput", "reconfig_fraction", "tail_fraction",
                             "replay_fraction_of_steps", "genuine_fraction_of_replays",
                             "debug_recompute_fraction", "mean_detection_latency_seconds"}) {
        print_field(out, agg, name);
    }
    return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
    const Scenario base = load_scenario(o);
    Scenario a = base;
    Scenario b = base;
    if (o.axis == "elastic-vs-baseline") {
        a.controller.mode = ElasticityMode::Elastic;
        b.controller.mode = ElasticityMode::NonElasticBaseline;
    } else {
        a.controller.sdc_mode = SdcMode::SplitPhase;
        b.controller.sdc_mode = SdcMode::LegacyDelayed;
    }
    const std::string name_a(o.axis == "elastic-vs-baseline" ? to_string(a.controller.mode)
                                                             : to_string(a.controller.sdc_mode));
    const std::string name_b(o.axis == "elastic-vs-baseline" ? to_string(b.controller.mode)
                                                             : to_string(b.controller.sdc_mode));

    // Both arms of a seed share its fault trace since the trace depends only
    // on the rates, topology, horizon and seed.
    std::vector<SeedResult> ra;
    std::vector<SeedResult> rb;
    {
        const bool timelines = o.format == "csv";
        const ClusterTopology topology = build_topology(base.topology);
        const std::string ha = config_hash(a);
        const std::string hb = config_hash(b);
        const std::size_t n = base.seeds.size();
        ra.resize(n);
        rb.resize(n);
        parallel_for(2 * n, o.jobs, [&](std::size_t task) {
            const bool first = task % 2 == 0;
            const Scenario& sc = first ? a : b;
            SeedResult& slot = first ? ra[task / 2] : rb[task / 2];
            RunResult run = run_training(sc.controller, sc.faults, topology, sc.horizon_seconds(),
                                         sc.seeds[task / 2]);
            run.report.config_hash = first ? ha : hb;
            slot.report = run.report;
            if (timelines) {
                std::ostringstream csv;
                write_timeline_csv(csv, timeline(run.ledger, sc.horizon_seconds()));
                slot.timeline_csv = csv.str();
            }
        });
    }

    const fs::path dir(o.out);
    make_dir(dir);
    write_arm(dir / name_a, a, ra, o.format);
    write_arm(dir / name_b, b, rb, o.format);

    std::ostringstream table;
    table << "seed,goodput_" << name_a << ",goodput_" << name_b << ",goodput_delta,recompute_"
          << name_a << ",recompute_" << name_b
          << ",recompute_delta,interruptions,genuine_sdc_incidents\n";
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const GoodputReport& x = ra[i].report;
        const GoodputReport& y = rb[i].report;
        const auto rx = static_cast<std::int64_t>(redundant_steps(x));
        const auto ry = static_cast<std::int64_t>(redundant_steps(y));
        table << x.seed << ',' << fmt(goodput(x), "%.17g") << ',' << fmt(goodput(y), "%.17g")
              << ',' << fmt(goodput(x) - goodput(y), "%.17g") << ',' << rx << ',' << ry << ','
              << rx - ry << ',' << std::max(x.interruptions, y.interruptions) << ','
              << std::max(x.genuine_sdc_incidents, y.genuine_sdc_incidents) << '\n';
    }
    write_file_atomic(dir / "compare.csv", table.str());
    write_meta(dir, "compare " + o.axis, o, base);
    out << table.str();
    return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const Scenario sc = load_scenario(o);
    out << to_json(sc).dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fault-tolerant training run simulator", "ftsim"};
    app.require_subcommand(1);
    Options o;

    CLI::App* run_cmd = app.add_subcommand("run", "Simulate every seed of a scenario");
    add_scenario_options(*run_cmd, o);
    add_output_options(*run_cmd, o);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run two controller arms on identical fault traces");
    add_scenario_options(*compare_cmd, o);
    add_output_options(*compare_cmd, o);
    compare_cmd->add_option("--axis", o.axis, "Which arms to compare")
        ->required()
        ->check(CLI::IsMember({"elastic-vs-baseline", "splitphase-vs-legacy"}));

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Check a scenario and print it normalized");
    add_scenario_options(*validate_cmd, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(o, out);
        if (compare_cmd->parsed()) return cmd_compare(o, out);
        return cmd_validate(o, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace ftsim::cli
