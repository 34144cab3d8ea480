// SPDX-License-Identifier: Apache-2.0
//
// crossfield: simulation and estimation workbench for THz UM-MIMO
// array-of-subarrays channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "crossfield.h"

#include "crossfield/experiment.hpp"
#include "crossfield/version.hpp"

#include <cstring>
#include <sstream>
#include <string>

using namespace crossfield;

struct cf_plan {
    ExperimentPlan plan;
};

struct cf_thresholds {
    Thresholds thresholds;
};

namespace {

thread_local std::string g_last_error;

cf_status fail(cf_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

cf_status ok() {
    g_last_error.clear();
    return CF_OK;
}

std::vector<double> parse_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> parse_names(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// run a body translating exceptions into status codes
template <typename Fn>
cf_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& ex) {
        return fail(CF_ERR_VALIDATION, ex.what());
    } catch (const std::runtime_error& ex) {
        return fail(CF_ERR_IO, ex.what());
    } catch (const std::exception& ex) {
        return fail(CF_ERR_INTERNAL, ex.what());
    }
}

} // namespace

extern "C" {

const char* cf_version(void) { return CROSSFIELD_VERSION; }

const char* cf_last_error(void) { return g_last_error.c_str(); }

cf_status cf_plan_create_desk_scale(cf_plan** out) {
    if (!out) return fail(CF_ERR_INVALID_ARG, "null output pointer");
    return guarded([&] {
        *out = new cf_plan{desk_scale_plan()};
        return ok();
    });
}

cf_status cf_plan_create_scenario(const char* name, cf_plan** out) {
    if (!out || !name) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = new cf_plan{full_scale_plan(name)};
        return ok();
    });
}

cf_status cf_plan_create_from_file(const char* config_path, cf_plan** out) {
    if (!out || !config_path) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        ExperimentPlan plan = desk_scale_plan();
        plan.scenario = "custom";
        plan.config = load_config(config_path);
        // grids scale with the configured arrays
        const auto [d_sa, d_full] = rayleigh_distances(plan.config);
        plan.distances.clear();
        plan.calibration_distances.clear();
        for (int i = 0; i < 10; ++i)
            plan.distances.push_back(0.05 * d_sa *
                                     std::pow(10.0 * d_full / (0.05 * d_sa), i / 9.0));
        for (int i = 0; i < 15; ++i)
            plan.calibration_distances.push_back(
                0.05 * d_sa * std::pow(10.0 * d_full / (0.05 * d_sa), i / 14.0));
        *out = new cf_plan{std::move(plan)};
        return ok();
    });
}

cf_status cf_plan_set(cf_plan* plan, const char* key, const char* value) {
    if (!plan || !key || !value) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&]() -> cf_status {
        const std::string k = key;
        const std::string v = value;
        ExperimentPlan& p = plan->plan;
        if (k == "seed") p.seed = std::stoull(v);
        else if (k == "trials") p.trials = std::stoi(v);
        else if (k == "out_dir") p.out_dir = v;
        else if (k == "dump_dir") p.dump_dir = v;
        else if (k == "workers") p.workers = std::stoi(v);
        else if (k == "scenario") p.scenario = v;
        else if (k == "methods") p.methods = parse_names(v);
        else if (k == "distances") p.distances = parse_list(v);
        else if (k == "rotations_deg") p.rotations_deg = parse_list(v);
        else if (k == "snr_db") p.snr_db = parse_list(v);
        else if (k == "calibration_distances") p.calibration_distances = parse_list(v);
        else if (k == "calibration_rotations") p.calibration_rotations = std::stoi(v);
        else if (k == "calibration_trials") p.calibration_trials = std::stoi(v);
        else if (k == "calibration_snr_db") p.calibration_snr_db = std::stod(v);
        else if (k == "rotation_span_deg") p.rotation_span_deg = std::stod(v);
        else if (k == "pin_codebooks") p.pin_codebooks = v == "1" || v == "true";
        else if (k == "threshold_near_intermediate") p.override_near_intermediate = std::stod(v);
        else if (k == "threshold_intermediate_far") p.override_intermediate_far = std::stod(v);
        else {
            // fall through to the system-config schema
            try {
                p.config = parse_config(format_config(p.config) + k + " = " + v + "\n");
            } catch (const std::exception& ex) {
                return fail(CF_ERR_INVALID_ARG, ex.what());
            }
        }
        return ok();
    });
}

void cf_plan_destroy(cf_plan* plan) { delete plan; }

cf_status cf_plan_rayleigh_distances(const cf_plan* plan, double* subarray_level, double* full) {
    if (!plan || !subarray_level || !full) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const auto [sa, f] = rayleigh_distances(plan->plan.config);
        *subarray_level = sa;
        *full = f;
        return ok();
    });
}

cf_status cf_calibrate(const cf_plan* plan, const char* thresholds_path) {
    if (!plan || !thresholds_path) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        run_calibrate(plan->plan, thresholds_path);
        return ok();
    });
}

cf_status cf_thresholds_load(const char* path, cf_thresholds** out) {
    if (!path || !out) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = new cf_thresholds{load_calibration(path).thresholds};
        return ok();
    });
}

cf_status cf_thresholds_values(const cf_thresholds* t, double* near_intermediate,
                               double* intermediate_far) {
    if (!t || !near_intermediate || !intermediate_far)
        return fail(CF_ERR_INVALID_ARG, "null argument");
    *near_intermediate = t->thresholds.near_intermediate;
    *intermediate_far = t->thresholds.intermediate_far;
    return ok();
}

void cf_thresholds_destroy(cf_thresholds* t) { delete t; }

cf_status cf_sweep(const cf_plan* plan, const cf_thresholds* thresholds) {
    if (!plan) return fail(CF_ERR_INVALID_ARG, "null plan");
    return guarded([&]() -> cf_status {
        Thresholds t;
        if (thresholds) t = thresholds->thresholds;
        const SweepReport report = run_sweep(plan->plan, t);
        if (!report.failures.empty())
            return fail(CF_ERR_TRIAL_FAILURES, std::to_string(report.failures.size()) +
                                                   " trial(s) failed; see failures.csv");
        return ok();
    });
}

cf_status cf_report(const char* in_dir, const char* out_path) {
    if (!in_dir || !out_path) return fail(CF_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        run_report(in_dir, out_path);
        return ok();
    });
}

} // extern "C"
