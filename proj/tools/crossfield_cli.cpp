// SPDX-License-Identifier: Apache-2.0
//
// crossfield: simulation and estimation workbench for THz UM-MIMO
// array-of-subarrays channels
//
// Command-line front end. Deliberately a thin shell over the C API in
// crossfield.h: argument parsing here, all simulation logic behind the
// library boundary.
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

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_trial_failures = 3;

int status_to_exit(cf_status s) {
    switch (s) {
    case CF_OK: return exit_ok;
    case CF_ERR_TRIAL_FAILURES: return exit_trial_failures;
    case CF_ERR_VALIDATION:
    case CF_ERR_INVALID_ARG: return exit_validation;
    default: return 1;
    }
}

int report_failure(cf_status s, const char* what) {
    std::fprintf(stderr, "crossfield: %s failed: %s\n", what, cf_last_error());
    return status_to_exit(s);
}

struct PlanDeleter {
    void operator()(cf_plan* p) const { cf_plan_destroy(p); }
};
struct ThresholdsDeleter {
    void operator()(cf_thresholds* t) const { cf_thresholds_destroy(t); }
};

using PlanPtr = std::unique_ptr<cf_plan, PlanDeleter>;
using ThresholdsPtr = std::unique_ptr<cf_thresholds, ThresholdsDeleter>;

struct CommonOptions {
    std::string config_path;
    std::string scenario;
    bool desk_scale = false;
    std::string out_dir = "out";
    std::string methods;
    std::string seed;
    std::string trials;
    std::string distances;
    std::string rotations;
    std::string snr;
    std::string workers;
    std::string dump_dir;
    bool pin_codebooks = false;
    std::vector<std::string> extra; // raw key=value passthrough
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key/value system config file");
    cmd->add_option("--scenario", opt.scenario, "built-in preset: scenario1 or scenario2");
    cmd->add_flag("--desk-scale", opt.desk_scale, "use the small desk-scale preset");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--methods", opt.methods, "comma-separated method list");
    cmd->add_option("--seed", opt.seed, "master seed (u64)");
    cmd->add_option("--trials", opt.trials, "trials per grid point");
    cmd->add_option("--distances", opt.distances, "comma-separated distances (m)");
    cmd->add_option("--rotations", opt.rotations, "comma-separated rotations (deg)");
    cmd->add_option("--snr", opt.snr, "comma-separated SNR points (dB)");
    cmd->add_option("--workers", opt.workers, "worker threads (0 = auto)");
    cmd->add_option("--dump-dir", opt.dump_dir, "export realizations of trial 0 per point");
    cmd->add_flag("--pin-codebooks", opt.pin_codebooks,
                  "derive pilot codebooks above the trial level");
    cmd->add_option("--set", opt.extra, "extra key=value plan/config overrides")
        ->take_all();
}

int build_plan(const CommonOptions& opt, PlanPtr& plan) {
    cf_plan* raw = nullptr;
    cf_status s = CF_OK;
    if (!opt.config_path.empty())
        s = cf_plan_create_from_file(opt.config_path.c_str(), &raw);
    else if (!opt.scenario.empty())
        s = cf_plan_create_scenario(opt.scenario.c_str(), &raw);
    else
        s = cf_plan_create_desk_scale(&raw); // desk scale is the default
    if (s != CF_OK) return report_failure(s, "plan creation");
    plan.reset(raw);

    auto set = [&](const char* key, const std::string& value) -> int {
        if (value.empty()) return exit_ok;
        const cf_status st = cf_plan_set(plan.get(), key, value.c_str());
        if (st != CF_OK) return report_failure(st, "plan option");
        return exit_ok;
    };
    int rc = 0;
    if ((rc = set("out_dir", opt.out_dir))) return rc;
    if ((rc = set("methods", opt.methods))) return rc;
    if ((rc = set("seed", opt.seed))) return rc;
    if ((rc = set("trials", opt.trials))) return rc;
    if ((rc = set("distances", opt.distances))) return rc;
    if ((rc = set("rotations_deg", opt.rotations))) return rc;
    if ((rc = set("snr_db", opt.snr))) return rc;
    if ((rc = set("workers", opt.workers))) return rc;
    if ((rc = set("dump_dir", opt.dump_dir))) return rc;
    if (opt.pin_codebooks && (rc = set("pin_codebooks", "1"))) return rc;
    for (const std::string& kv : opt.extra) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "crossfield: --set expects key=value, got '%s'\n", kv.c_str());
            return exit_validation;
        }
        const cf_status st = cf_plan_set(plan.get(), kv.substr(0, eq).c_str(),
                                         kv.substr(eq + 1).c_str());
        if (st != CF_OK) return report_failure(st, "plan option");
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("crossfield ") + cf_version() +
                 " - THz AoSA channel simulation and cross-field estimation"};
    app.require_subcommand(1);

    CommonOptions cal_opt, sweep_opt;
    std::string cal_out = "thresholds.json";
    std::string thresholds_path;
    std::string report_in, report_out = "report.csv";

    CLI::App* cal = app.add_subcommand("calibrate", "offline threshold calibration");
    add_common(cal, cal_opt);
    cal->add_option("--thresholds", cal_out, "output thresholds JSON path");

    CLI::App* sweep = app.add_subcommand("sweep", "online estimation sweep, CSV reports");
    add_common(sweep, sweep_opt);
    sweep->add_option("--thresholds", thresholds_path,
                      "thresholds JSON from a calibrate run (required for cross-field-rd)");

    CLI::App* report = app.add_subcommand("report", "merge sweep CSVs into pivot tables");
    report->add_option("--in", report_in, "directory containing summary.csv files")->required();
    report->add_option("--out", report_out, "merged report path");

    CLI11_PARSE(app, argc, argv);

    if (cal->parsed()) {
        PlanPtr plan;
        if (int rc = build_plan(cal_opt, plan)) return rc;
        const cf_status s = cf_calibrate(plan.get(), cal_out.c_str());
        if (s != CF_OK) return report_failure(s, "calibrate");
        std::printf("thresholds written to %s\n", cal_out.c_str());
        return exit_ok;
    }

    if (sweep->parsed()) {
        PlanPtr plan;
        if (int rc = build_plan(sweep_opt, plan)) return rc;
        ThresholdsPtr thresholds;
        if (!thresholds_path.empty()) {
            cf_thresholds* raw = nullptr;
            const cf_status s = cf_thresholds_load(thresholds_path.c_str(), &raw);
            if (s != CF_OK) return report_failure(s, "thresholds load");
            thresholds.reset(raw);
        }
        const cf_status s = cf_sweep(plan.get(), thresholds.get());
        if (s == CF_ERR_TRIAL_FAILURES) {
            std::fprintf(stderr, "crossfield: sweep finished with failures: %s\n",
                         cf_last_error());
            return exit_trial_failures;
        }
        if (s != CF_OK) return report_failure(s, "sweep");
        std::printf("sweep reports written to %s\n", sweep_opt.out_dir.c_str());
        return exit_ok;
    }

    if (report->parsed()) {
        const cf_status s = cf_report(report_in.c_str(), report_out.c_str());
        if (s != CF_OK) return report_failure(s, "report");
        std::printf("merged report written to %s\n", report_out.c_str());
        return exit_ok;
    }
    return exit_validation;
}
