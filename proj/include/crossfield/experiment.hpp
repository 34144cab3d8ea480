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

#ifndef CROSSFIELD_EXPERIMENT_HPP
#define CROSSFIELD_EXPERIMENT_HPP

#include "crossfield/evaluation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crossfield {

/// Names accepted in ExperimentPlan::methods / on the command line.
const std::vector<std::string>& known_methods();
bool method_known(const std::string& name);

/// One experiment campaign: the system config plus sweep grids, method list,
/// trial counts and the master seed every random stream derives from.
struct ExperimentPlan {
    std::string scenario = "custom";
    SystemConfig config;

    std::vector<double> distances;      // online sweep grid (m)
    std::vector<double> rotations_deg;  // online rotation set (deg)
    std::vector<double> snr_db{6.0};
    std::vector<std::string> methods;
    int trials = 45; // E per (distance, rotation, snr)
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool pin_codebooks = false; // derive codebooks above the trial level

    // offline calibration
    std::vector<double> calibration_distances;
    int calibration_rotations = 31; // R_offline
    int calibration_trials = 45;    // E_offline
    double calibration_snr_db = 6.0;
    double rotation_span_deg = 30.0;

    // optional overrides of the calibrated thresholds
    std::optional<double> override_near_intermediate;
    std::optional<double> override_intermediate_far;

    std::string dump_dir; // when set, exports realizations of trial 0 per point
    int workers = 0;      // 0 -> hardware concurrency

    std::vector<std::string> validate() const;
};

/// The built-in small-geometry preset (Q_T = Q_R = 2, Q̄_T = 32, Q̄_R = 8):
/// grids derived from the Rayleigh distances, sized so full sweeps run on a
/// laptop. This is the configuration the acceptance suite drives.
ExperimentPlan desk_scale_plan();

/// Table-driven presets for the two full-scale array layouts ("scenario1",
/// "scenario2"); multi-hour sweeps, intended as overnight jobs.
ExperimentPlan full_scale_plan(const std::string& scenario);

/// Runs the offline calibration of the plan and writes the thresholds JSON.
CalibrationResult run_calibrate(const ExperimentPlan& plan, const std::string& out_path);

/// Aggregated sweep row (one per method/distance/SNR).
struct SweepRow {
    std::string method;
    double distance = 0.0;
    double snr_db = 0.0;
    double nmse_db = 0.0;
    double achievable = 0.0;       // AR, bits/s/Hz
    double effective = 0.0;        // EAR
    double n_est = 0.0;            // mean counter
    double rd_overhead = 0.0;
    double complexity = 0.0;       // mean total 𝒞
    double wallclock_seconds = 0.0;
    int trials = 0;
};

struct BranchRow {
    double distance = 0.0;
    double snr_db = 0.0;
    double frac_swm = 0.0, frac_hspwm = 0.0, frac_pwm = 0.0;
    int trials = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<BranchRow> branches;
    std::vector<std::string> failures; // one line per failed trial
};

/// Runs the online sweep: per (distance, rotation, snr, trial) one SWM
/// ground truth is generated, sounded once, and every requested method is
/// evaluated on the same measurements. Writes summary.csv / branches.csv
/// (and failures.csv when trials failed) under plan.out_dir.
SweepReport run_sweep(const ExperimentPlan& plan, const Thresholds& thresholds);

/// Merges the summary.csv files found under `in_dir` into per-metric pivot
/// tables (method rows x distance columns), written next to them.
std::string run_report(const std::string& in_dir, const std::string& out_path);

} // namespace crossfield

#endif
