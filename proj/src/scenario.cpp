// Copyright 2026 The ftsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "ftsim/scenario.hpp"

#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ftsim/errors.hpp"

namespace ftsim {

using nlohmann::json;

namespace {

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Reads the keys of one JSON object and rejects whatever was not asked for.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    const json* find(std::string_view key) {
        seen_.emplace(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void number(std::string_view key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ConfigError(join(path_, key), "expected a number");
            out = v->get<double>();
        }
    }

    void integer(std::string_view key, std::int64_t& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw ConfigError(join(path_, key), "expected an integer");
            if (v->is_number_unsigned() &&
                v->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
                throw ConfigError(join(path_, key), "out of range");
            }
            out = v->get<std::int64_t>();
        }
    }

    void text(std::string_view key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) throw ConfigError(join(path_, key), "expected a string");
            out = v->get<std::string>();
        }
    }

    template <typename Enum, std::size_t N>
    void choice(std::string_view key, Enum& out, const std::array<Enum, N>& options) {
        std::string name;
        text(key, name);
        if (name.empty()) return;
        for (Enum option : options) {
            if (to_string(option) == name) {
                out = option;
                return;
            }
        }
        std::string allowed;
        for (Enum option : options) {
            if (!allowed.empty()) allowed += ", ";
            allowed += to_string(option);
        }
        throw ConfigError(join(path_, key), "expected one of " + allowed);
    }

    std::string path(std::string_view key) const { return join(path_, key); }

    void finish() const {
        for (const auto& item : node_.items()) {
            if (!seen_.count(item.key())) throw ConfigError(join(path_, item.key()), "unknown key");
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string, std::less<>> seen_;
};

std::uint64_t as_seed(const json& v, const std::string& path) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> parse_seeds(const json& v) {
    std::vector<std::uint64_t> seeds;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            seeds.push_back(as_seed(v[i], "seeds[" + std::to_string(i) + "]"));
        }
    } else if (v.is_object()) {
        Section s(v, "seeds");
        std::uint64_t base = 0;
        if (const json* b = s.find("base_seed")) base = as_seed(*b, "seeds.base_seed");
        std::int64_t count = 1;
        s.integer("count", count);
        s.finish();
        if (count < 1 || count > 1'000'000) {
            throw ConfigError("seeds.count", "must be in [1, 1000000]");
        }
        for (std::int64_t i = 0; i < count; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));
    } else {
        throw ConfigError("seeds", "expected a list or {base_seed, count}");
    }
    if (seeds.empty()) throw ConfigError("seeds", "must not be empty");
    return seeds;
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
}

void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(std::string(assignment), "override must look like key.path=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &doc;
    std::string walked;
    std::size_t begin = 0;
    while (true) {
        const auto dot = key.find('.', begin);
        const std::string part = key.substr(begin, dot == std::string::npos ? dot : dot - begin);
        if (part.empty()) throw ConfigError(key, "empty path component");
        if (!node->is_object()) throw ConfigError(walked.empty() ? "<root>" : walked, "not an object");
        walked = join(walked, part);
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) *node = json::object();
        begin = dot + 1;
    }
}

Scenario parse_scenario(const json& doc) {
    Scenario sc;
    Section root(doc, "");
    root.text("name", sc.name);
    if (const json* notes = root.find("notes")) {
        if (notes->is_string()) {
            sc.notes = notes->get<std::string>();
        } else if (notes->is_array()) {
            for (const json& line : *notes) {
                if (!line.is_string()) throw ConfigError("notes", "expected strings");
                if (!sc.notes.empty()) sc.notes += '\n';
                sc.notes += line.get<std::string>();
            }
        } else {
            throw ConfigError("notes", "expected a string or a list of strings");
        }
    }
    root.number("horizon_days", sc.horizon_days);
    if (const json* seeds = root.find("seeds")) sc.seeds = parse_seeds(*seeds);

    if (const json* t = root.find("topology")) {
        Section s(*t, "topology");
        s.integer("datacenters", sc.topology.datacenters);
        s.integer("pods_per_datacenter", sc.topology.pods_per_datacenter);
        s.integer("slices_per_pod", sc.topology.slices_per_pod);
        s.integer("devices_per_slice", sc.topology.devices_per_slice);
        s.finish();
    }
    if (const json* f = root.find("faults")) {
        Section s(*f, "faults");
        FaultRates& r = sc.faults;
        s.number("slice_failures_per_hour", r.slice_failures_per_hour);
        s.number("slice_recovery_seconds", r.slice_recovery_seconds);
        s.number("sdc_onsets_per_device_per_hour", r.sdc_onsets_per_device_per_hour);
        s.number("sdc_corruption_prob_per_step", r.sdc_corruption_prob_per_step);
        s.number("false_suspicion_prob_per_step", r.false_suspicion_prob_per_step);
        s.number("sdc_detect_prob_given_corruption", r.sdc_detect_prob_given_corruption);
        s.number("debug_interventions_per_day", r.debug_interventions_per_day);
        s.integer("debug_rollback_depth_steps", r.debug_rollback_depth_steps);
        s.number("straggler_prob_per_device_check", r.straggler_prob_per_device_check);
        s.finish();
    }
    if (const json* c = root.find("controller")) {
        Section s(*c, "controller");
        ControllerConfig& k = sc.controller;
        s.choice("mode", k.mode,
                 std::array{ElasticityMode::Elastic, ElasticityMode::NonElasticBaseline});
        s.choice("sdc_mode", k.sdc_mode, std::array{SdcMode::SplitPhase, SdcMode::LegacyDelayed});
        s.number("base_step_seconds", k.base_step_seconds);
        s.number("reconfig_seconds", k.reconfig_seconds);
        s.number("tail_failure_prob", k.tail_failure_prob);
        s.number("reschedule_seconds", k.reschedule_seconds);
        s.integer("checkpoint_interval_steps", k.checkpoint_interval_steps);
        s.number("legacy_detection_delay_seconds", k.legacy_detection_delay_seconds);
        s.number("straggler_threshold_ratio", k.straggler_threshold_ratio);
        s.number("spare_substitution_seconds", k.spare_substitution_seconds);
        s.choice("checksum_policy", k.checksum_policy,
                 std::array{ChecksumPolicy::SuspectedSteps, ChecksumPolicy::AllSteps});
        s.finish();
    }
    root.finish();

    if (sc.name.empty()) throw ConfigError("name", "must not be empty");
    if (!(sc.horizon_days > 0.0) || !std::isfinite(sc.horizon_days)) {
        throw ConfigError("horizon_days", "must be > 0");
    }
    (void)build_topology(sc.topology);
    validate(sc.faults);
    validate(sc.controller);
    return sc;
}

json to_json(const Scenario& sc) {
    const FaultRates& r = sc.faults;
    const ControllerConfig& k = sc.controller;
    return json{
        {"name", sc.name},
        {"notes", sc.notes},
        {"horizon_days", sc.horizon_days},
        {"seeds", sc.seeds},
        {"topology",
         {{"datacenters", sc.topology.datacenters},
          {"pods_per_datacenter", sc.topology.pods_per_datacenter},
          {"slices_per_pod", sc.topology.slices_per_pod},
          {"devices_per_slice", sc.topology.devices_per_slice}}},
        {"faults",
         {{"slice_failures_per_hour", r.slice_failures_per_hour},
          {"slice_recovery_seconds", r.slice_recovery_seconds},
          {"sdc_onsets_per_device_per_hour", r.sdc_onsets_per_device_per_hour},
          {"sdc_corruption_prob_per_step", r.sdc_corruption_prob_per_step},
          {"false_suspicion_prob_per_step", r.false_suspicion_prob_per_step},
          {"sdc_detect_prob_given_corruption", r.sdc_detect_prob_given_corruption},
          {"debug_interventions_per_day", r.debug_interventions_per_day},
          {"debug_rollback_depth_steps", r.debug_rollback_depth_steps},
          {"straggler_prob_per_device_check", r.straggler_prob_per_device_check}}},
        {"controller",
         {{"mode", std::string(to_string(k.mode))},
          {"sdc_mode", std::string(to_string(k.sdc_mode))},
          {"base_step_seconds", k.base_step_seconds},
          {"reconfig_seconds", k.reconfig_seconds},
          {"tail_failure_prob", k.tail_failure_prob},
          {"reschedule_seconds", k.reschedule_seconds},
          {"checkpoint_interval_steps", k.checkpoint_interval_steps},
          {"legacy_detection_delay_seconds", k.legacy_detection_delay_seconds},
          {"straggler_threshold_ratio", k.straggler_threshold_ratio},
          {"spare_substitution_seconds", k.spare_substitution_seconds},
          {"checksum_policy", std::string(to_string(k.checksum_policy))}}},
    };
}

std::string config_hash(const Scenario& sc) {
    json shape = to_json(sc);
    shape.erase("name");
    shape.erase("notes");
    shape.erase("seeds");
    // FNV-1a over the canonical dump.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : shape.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace ftsim
