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

#include "crossfield/experiment.hpp"

#include "crossfield/io.hpp"
#include "crossfield/seed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace crossfield {

namespace fs = std::filesystem;

const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> methods = {
        "cross-field-rd", "swm-rd",          "hspwm-rd",        "pwm-rd",
        "somp-nf-polar",  "somp-nf-polar-lhalf", "somp-ff-angular", "pwm-full",
        "hybrid-ff-nf",   "hybrid-nf-ff",    "oracle-ls"};
    return methods;
}

bool method_known(const std::string& name) {
    const auto& m = known_methods();
    return std::find(m.begin(), m.end(), name) != m.end();
}

std::vector<std::string> ExperimentPlan::validate() const {
    std::vector<std::string> errors = config.validate();
    if (distances.empty()) errors.push_back("plan: empty distance grid");
    for (double d : distances)
        if (!(d > 0)) errors.push_back("plan: non-positive distance");
    if (rotations_deg.empty()) errors.push_back("plan: empty rotation set");
    for (double r : rotations_deg)
        if (r < -90 || r > 90) errors.push_back("plan: rotation outside [-90, 90] deg");
    if (snr_db.empty()) errors.push_back("plan: empty SNR set");
    if (methods.empty()) errors.push_back("plan: empty method list");
    for (const std::string& m : methods)
        if (!method_known(m)) errors.push_back("plan: unknown method '" + m + "'");
    if (trials < 1) errors.push_back("plan: trials must be >= 1");
    if (calibration_distances.size() < 2)
        errors.push_back("plan: calibration grid needs at least two distances");
    if (calibration_rotations < 1 || calibration_trials < 1)
        errors.push_back("plan: calibration rotations/trials must be >= 1");
    return errors;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> out(points);
    const double step = (std::log(hi) - std::log(lo)) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = std::exp(std::log(lo) + step * i);
    return out;
}

} // namespace

ExperimentPlan desk_scale_plan() {
    ExperimentPlan plan;
    plan.scenario = "desk";
    SystemConfig& cfg = plan.config;
    cfg.carrier_frequency = 300e9;
    cfg.bandwidth = 10e9;
    cfg.subcarriers = 16;
    cfg.tx_subarrays = 2;
    cfg.rx_subarrays = 2;
    cfg.tx_elements = 32;
    cfg.rx_elements = 8;
    const double lambda = cfg.carrier_wavelength();
    cfg.tx_element_spacing = lambda / 2;
    cfg.rx_element_spacing = lambda / 2;
    cfg.tx_subarray_spacing = 32 * lambda;
    cfg.rx_subarray_spacing = 8 * lambda;
    cfg.tx_phase_bits = 4;
    cfg.rx_phase_bits = 4;
    cfg.tx_pilots = 16; // compression ratio 0.5 at the Tx
    cfg.rx_pilots = 8;  // full measurements at the Rx
    cfg.noise_power = dbm_to_watt(-73.8);
    cfg.path_count = 3;
    cfg.pursuit_paths = 6;
    cfg.polar_coherence = 1.0;
    cfg.polar_min_distance = 0.02;
    cfg.polar_max_distance = 200.0;
    cfg.oversampling = 2;
    cfg.streams = 2;

    const auto [d_sa, d_full] = rayleigh_distances(cfg);
    plan.distances = log_grid(0.05 * d_sa, 10.0 * d_full, 10);
    plan.calibration_distances = log_grid(0.05 * d_sa, 10.0 * d_full, 15);
    plan.rotations_deg = {-30, -15, 0, 15, 30};
    plan.snr_db = {6.0};
    plan.methods = known_methods();
    plan.trials = 15;
    plan.calibration_rotations = 7;
    plan.calibration_trials = 10;
    return plan;
}

ExperimentPlan full_scale_plan(const std::string& scenario) {
    if (scenario != "scenario1" && scenario != "scenario2")
        throw std::invalid_argument("full_scale_plan: expected 'scenario1' or 'scenario2'");
    ExperimentPlan plan;
    plan.scenario = scenario;
    SystemConfig& cfg = plan.config;
    cfg.carrier_frequency = 300e9;
    cfg.bandwidth = 10e9;
    cfg.subcarriers = 16;
    cfg.tx_subarrays = 4;
    cfg.rx_subarrays = 4;
    cfg.tx_elements = 256;
    cfg.rx_elements = 16;
    const double lambda = cfg.carrier_wavelength();
    cfg.tx_element_spacing = lambda / 2;
    cfg.rx_element_spacing = lambda / 2;
    if (scenario == "scenario1") {
        cfg.tx_subarray_spacing = 128 * lambda;
        cfg.rx_subarray_spacing = 8 * lambda;
    } else {
        cfg.tx_subarray_spacing = 256 * lambda;
        cfg.rx_subarray_spacing = 80 * lambda;
    }
    cfg.tx_phase_bits = 4;
    cfg.rx_phase_bits = 4;
    cfg.tx_pilots = 128;
    cfg.rx_pilots = 16;
    cfg.noise_power = dbm_to_watt(-73.8);
    cfg.path_count = 3;
    cfg.pursuit_paths = 10;
    // tuned pair reproducing the 2077-column Tx polar grid
    cfg.polar_coherence = 1.0;
    cfg.polar_min_distance = 0.7198;
    cfg.polar_max_distance = 500.0;
    cfg.oversampling = 2;
    cfg.streams = 4;

    plan.distances = {1, 2, 4, 7, 10, 20, 50, 100, 200, 400};
    plan.calibration_distances = log_grid(0.5, 600.0, 16);
    plan.rotations_deg = {-30, -22, -15, -7, 0, 7, 15, 22, 30};
    plan.snr_db = {6.0};
    plan.methods = known_methods();
    plan.trials = 45;
    plan.calibration_rotations = 31;
    plan.calibration_trials = 45;
    return plan;
}

CalibrationResult run_calibrate(const ExperimentPlan& plan, const std::string& out_path) {
    if (auto errors = plan.config.validate(); !errors.empty())
        throw std::invalid_argument("run_calibrate: " + errors.front());
    if (plan.calibration_distances.size() < 2)
        throw std::invalid_argument("run_calibrate: calibration grid needs at least two distances"
                                    " (thresholds would coincide)");
    CalibrationResult result = calibrate_thresholds(
        plan.config, plan.calibration_distances, plan.calibration_rotations,
        plan.calibration_trials, plan.calibration_snr_db,
        SeedTree(plan.seed).child(plan.scenario).value(), plan.rotation_span_deg);
    if (plan.override_near_intermediate) {
        result.thresholds.near_intermediate = *plan.override_near_intermediate;
    }
    if (plan.override_intermediate_far) {
        result.thresholds.intermediate_far = *plan.override_intermediate_far;
    }
    if (!out_path.empty()) save_calibration(out_path, result);
    return result;
}

namespace {

struct MethodOutcome {
    double ratio = 0.0;
    double ar = 0.0;
    double ear = 0.0;
    double n_est = 0.0;
    double rd_overhead = 0.0;
    double complexity = 0.0;
    double wallclock = 0.0;
    int branch = -1; // 0 swm, 1 hspwm, 2 pwm (cross-field only)
};

struct TrialOutcome {
    bool ok = false;
    std::string error;
    // indexed [method][snr]
    std::vector<std::vector<MethodOutcome>> cells;
};

EstimateResult dispatch_method(const std::string& name, const SystemConfig& cfg,
                               const MeasurementSet& meas, const DictionarySet& dicts,
                               const Thresholds& thresholds, const ArrayGeometry& geometry,
                               const PathSet& paths) {
    if (name == "cross-field-rd") return cross_field_estimate(cfg, meas, dicts, thresholds);
    if (name == "swm-rd") return estimate_swm_rd(cfg, meas, dicts);
    if (name == "hspwm-rd") return estimate_hspwm_rd(cfg, meas, dicts);
    if (name == "pwm-rd") return estimate_pwm_rd(cfg, meas, dicts);
    if (name == "somp-nf-polar")
        return estimate_full(cfg, meas, dicts, WaveModel::swm, -1, name);
    if (name == "somp-nf-polar-lhalf")
        return estimate_full(cfg, meas, dicts, WaveModel::swm, std::max(1, cfg.pursuit_paths / 2),
                             name);
    if (name == "somp-ff-angular")
        return estimate_full(cfg, meas, dicts, WaveModel::hspwm, -1, name);
    if (name == "pwm-full") return estimate_full(cfg, meas, dicts, WaveModel::pwm, -1, name);
    if (name == "hybrid-ff-nf")
        return hybrid_field_baseline(cfg, meas, dicts, HybridOrder::far_then_near);
    if (name == "hybrid-nf-ff")
        return hybrid_field_baseline(cfg, meas, dicts, HybridOrder::near_then_far);
    if (name == "oracle-ls") return oracle_ls(cfg, meas, geometry, paths, WaveModel::swm);
    throw std::invalid_argument("unknown method '" + name + "'");
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace

SweepReport run_sweep(const ExperimentPlan& plan, const Thresholds& thresholds) {
    if (auto errors = plan.validate(); !errors.empty())
        throw std::invalid_argument("run_sweep: " + errors.front());
    const bool needs_thresholds =
        std::find(plan.methods.begin(), plan.methods.end(), "cross-field-rd") !=
        plan.methods.end();
    if (needs_thresholds &&
        (!std::isfinite(thresholds.near_intermediate) || thresholds.near_intermediate <= 0))
        throw std::invalid_argument("run_sweep: cross-field-rd requested but thresholds missing");

    const SystemConfig& cfg = plan.config;
    const DictionarySet dicts = DictionarySet::build(cfg);
    const SeedTree scenario_root = SeedTree(plan.seed).child(plan.scenario);

    const int n_d = static_cast<int>(plan.distances.size());
    const int n_r = static_cast<int>(plan.rotations_deg.size());
    const int n_e = plan.trials;
    const int n_s = static_cast<int>(plan.snr_db.size());
    const int n_m = static_cast<int>(plan.methods.size());
    const int task_count = n_d * n_r * n_e;

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(task_count));
    const int workers = plan.workers > 0
                            ? plan.workers
                            : std::max(1u, std::thread::hardware_concurrency());

    parallel_for(task_count, workers, [&](int task) {
        const int di = task / (n_r * n_e);
        const int ri = (task / n_e) % n_r;
        const int e = task % n_e;
        TrialOutcome& out = outcomes[static_cast<std::size_t>(task)];
        out.cells.assign(n_m, std::vector<MethodOutcome>(n_s));
        try {
            const double d = plan.distances[di];
            const double beta = plan.rotations_deg[ri] * pi / 180.0;
            const SeedTree trial_node =
                scenario_root.child(static_cast<std::uint64_t>(di))
                    .child(static_cast<std::uint64_t>(ri))
                    .child(static_cast<std::uint64_t>(e));

            const ArrayGeometry geometry = build_array_geometry(cfg, d, beta);
            auto path_rng = trial_node.child("paths").rng();
            const PathSet paths = sample_paths(path_rng, d, cfg, geometry);
            const ChannelRealization truth = swm_channel(geometry, paths, cfg);

            // pinned codebooks are shared by all trials of a (distance, rotation)
            const SeedTree codebook_node =
                plan.pin_codebooks ? scenario_root.child(static_cast<std::uint64_t>(di))
                                         .child(static_cast<std::uint64_t>(ri))
                                         .child("codebook")
                                   : trial_node.child("codebook");
            auto cb_rng = codebook_node.rng();
            const PilotCodebooks codebooks = make_codebooks(cb_rng, cfg);

            for (int si = 0; si < n_s; ++si) {
                const double snr = db_to_linear(plan.snr_db[si]);
                SystemConfig trial_cfg = cfg;
                trial_cfg.transmit_power =
                    normalize_tx_power(d, snr, cfg.noise_power, cfg.subcarriers, cfg);
                const MeasurementSet meas =
                    sound_all(truth, trial_cfg, codebooks, trial_cfg.transmit_power,
                              plan.snr_db[si], trial_node.child("noise").value());

                if (!plan.dump_dir.empty() && e == 0 && ri == 0 && si == 0) {
                    fs::create_directories(plan.dump_dir);
                    const std::string stem =
                        (fs::path(plan.dump_dir) / ("truth_d" + std::to_string(di))).string();
                    dump_matrices(stem, truth.per_subcarrier, "channel",
                                  trial_node.child("paths").value(), "swm");
                    dump_measurements((fs::path(plan.dump_dir) /
                                       ("measurements_d" + std::to_string(di)))
                                          .string(),
                                      meas);
                }

                for (int mi = 0; mi < n_m; ++mi) {
                    const EstimateResult est = dispatch_method(
                        plan.methods[mi], trial_cfg, meas, dicts, thresholds, geometry, paths);
                    MethodOutcome& cell = out.cells[mi][si];
                    cell.ratio = nmse_ratio(est.reconstructed, truth.per_subcarrier);
                    const Beamformers beams = configure_beamformers(est, trial_cfg);
                    const double rho = training_overhead_factor(
                        est.tx_pilots_used, est.rx_pilots_used, cfg.coherence_time_symbols());
                    cell.ar = achievable_rate(truth.per_subcarrier, beams,
                                              trial_cfg.transmit_power, cfg.noise_power, 1.0);
                    cell.ear = achievable_rate(truth.per_subcarrier, beams,
                                               trial_cfg.transmit_power, cfg.noise_power, rho);
                    cell.n_est = static_cast<double>(est.n_est);
                    cell.rd_overhead = static_cast<double>(est.rd_overhead);
                    cell.complexity = static_cast<double>(estimation_complexity(est, trial_cfg));
                    cell.wallclock = est.wallclock_seconds;
                    if (est.branch_valid) cell.branch = static_cast<int>(est.branch);
                }
            }
            out.ok = true;
        } catch (const std::exception& ex) {
            out.ok = false;
            out.error = ex.what();
        }
    });

    SweepReport report;
    for (int di = 0; di < n_d; ++di)
        for (int si = 0; si < n_s; ++si) {
            BranchRow branch;
            branch.distance = plan.distances[di];
            branch.snr_db = plan.snr_db[si];
            for (int mi = 0; mi < n_m; ++mi) {
                SweepRow row;
                row.method = plan.methods[mi];
                row.distance = plan.distances[di];
                row.snr_db = plan.snr_db[si];
                double ratio_sum = 0;
                int count = 0;
                for (int ri = 0; ri < n_r; ++ri)
                    for (int e = 0; e < n_e; ++e) {
                        const TrialOutcome& out =
                            outcomes[static_cast<std::size_t>((di * n_r + ri) * n_e + e)];
                        if (!out.ok) continue;
                        const MethodOutcome& cell = out.cells[mi][si];
                        ratio_sum += cell.ratio;
                        row.achievable += cell.ar;
                        row.effective += cell.ear;
                        row.n_est += cell.n_est;
                        row.rd_overhead += cell.rd_overhead;
                        row.complexity += cell.complexity;
                        row.wallclock_seconds += cell.wallclock;
                        ++count;
                        if (cell.branch == 0) branch.frac_swm += 1;
                        if (cell.branch == 1) branch.frac_hspwm += 1;
                        if (cell.branch == 2) branch.frac_pwm += 1;
                    }
                row.trials = count;
                if (count > 0) {
                    row.nmse_db = nmse_db(ratio_sum / count);
                    row.achievable /= count;
                    row.effective /= count;
                    row.n_est /= count;
                    row.rd_overhead /= count;
                    row.complexity /= count;
                    row.wallclock_seconds /= count;
                }
                report.rows.push_back(row);
                if (row.method == "cross-field-rd") branch.trials = count;
            }
            if (branch.trials > 0) {
                branch.frac_swm /= branch.trials;
                branch.frac_hspwm /= branch.trials;
                branch.frac_pwm /= branch.trials;
                report.branches.push_back(branch);
            }
        }

    for (int task = 0; task < task_count; ++task) {
        const TrialOutcome& out = outcomes[static_cast<std::size_t>(task)];
        if (out.ok) continue;
        const int di = task / (n_r * n_e);
        const int ri = (task / n_e) % n_r;
        const int e = task % n_e;
        std::ostringstream msg;
        msg << "distance=" << plan.distances[di] << " rotation=" << plan.rotations_deg[ri]
            << " trial=" << e << ": " << out.error;
        report.failures.push_back(msg.str());
    }

    // reports
    fs::create_directories(plan.out_dir);
    {
        CsvWriter csv((fs::path(plan.out_dir) / "summary.csv").string(),
                      {"method", "distance_m", "snr_db", "nmse_db", "ar", "ear", "n_est",
                       "rd_overhead", "complexity", "wallclock_s", "trials"});
        for (const SweepRow& r : report.rows)
            csv.row({r.method, CsvWriter::num(r.distance), CsvWriter::num(r.snr_db),
                     CsvWriter::num(r.nmse_db), CsvWriter::num(r.achievable),
                     CsvWriter::num(r.effective), CsvWriter::num(r.n_est),
                     CsvWriter::num(r.rd_overhead), CsvWriter::num(r.complexity),
                     CsvWriter::num(r.wallclock_seconds), std::to_string(r.trials)});
    }
    if (!report.branches.empty()) {
        CsvWriter csv((fs::path(plan.out_dir) / "branches.csv").string(),
                      {"distance_m", "snr_db", "frac_swm_rd", "frac_hspwm_rd", "frac_pwm_rd",
                       "trials"});
        for (const BranchRow& b : report.branches)
            csv.row({CsvWriter::num(b.distance), CsvWriter::num(b.snr_db),
                     CsvWriter::num(b.frac_swm), CsvWriter::num(b.frac_hspwm),
                     CsvWriter::num(b.frac_pwm), std::to_string(b.trials)});
    }
    if (!report.failures.empty()) {
        std::ofstream out(fs::path(plan.out_dir) / "failures.csv");
        out << "error\n";
        for (const std::string& f : report.failures) out << '"' << f << '"' << "\n";
    }
    return report;
}

std::string run_report(const std::string& in_dir, const std::string& out_path) {
    // collect summary.csv files (directly or one level down)
    std::vector<fs::path> files;
    if (!fs::exists(in_dir)) throw std::runtime_error("run_report: no such directory " + in_dir);
    for (const auto& entry : fs::recursive_directory_iterator(in_dir))
        if (entry.is_regular_file() && entry.path().filename() == "summary.csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("run_report: no summary.csv under " + in_dir);

    struct Key {
        std::string method;
        double distance;
        double snr;
        bool operator<(const Key& o) const {
            if (method != o.method) return method < o.method;
            if (distance != o.distance) return distance < o.distance;
            return snr < o.snr;
        }
    };
    std::map<Key, std::vector<std::string>> rows;
    std::vector<std::string> header;
    for (const fs::path& f : files) {
        std::ifstream in(f);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            if (first) {
                header = cells;
                first = false;
                continue;
            }
            if (cells.size() < 4) continue;
            rows[{cells[0], std::stod(cells[1]), std::stod(cells[2])}] = cells;
        }
    }

    std::set<double> distances;
    std::set<std::string> methods;
    std::set<double> snrs;
    for (const auto& [key, _] : rows) {
        methods.insert(key.method);
        distances.insert(key.distance);
        snrs.insert(key.snr);
    }

    std::ostringstream text;
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("run_report: cannot write " + out_path);
    const std::vector<std::pair<std::string, int>> metrics = {
        {"nmse_db", 3}, {"ar", 4}, {"ear", 5}, {"complexity", 8}};
    for (double snr : snrs) {
        for (const auto& [metric, col] : metrics) {
            text << "# " << metric << " @ snr_db=" << snr << "\n";
            text << "method";
            for (double d : distances) text << "," << d;
            text << "\n";
            for (const std::string& m : methods) {
                text << m;
                for (double d : distances) {
                    auto it = rows.find({m, d, snr});
                    text << ",";
                    if (it != rows.end() && static_cast<int>(it->second.size()) > col)
                        text << it->second[col];
                }
                text << "\n";
            }
            text << "\n";
        }
    }
    out << text.str();
    return text.str();
}

} // namespace crossfield
