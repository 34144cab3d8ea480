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

#include "crossfield/selection.hpp"

#include "crossfield/geometry.hpp"
#include "crossfield/seed.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace crossfield {

double model_select_metric(const std::vector<VectorXcd>& per_rx_sa) {
    if (per_rx_sa.size() < 2)
        throw std::invalid_argument("model_select_metric: need at least two Rx subarrays");
    std::vector<VectorXd> profiles;
    profiles.reserve(per_rx_sa.size());
    for (const VectorXcd& raw : per_rx_sa) {
        const double norm = raw.norm();
        if (!(norm > 0))
            throw std::invalid_argument("model_select_metric: degenerate all-zero observation");
        profiles.push_back(raw.cwiseAbs() / norm);
    }
    double best = 0.0;
    for (std::size_t r = 0; r + 1 < profiles.size(); ++r)
        for (std::size_t c = r + 1; c < profiles.size(); ++c)
            best = std::max(best, (profiles[r] - profiles[c]).squaredNorm());
    return best;
}

std::pair<double, double> rayleigh_distances(const SystemConfig& cfg) {
    const double lambda = cfg.carrier_wavelength();
    const double sa = tx_subarray_aperture(cfg) + rx_subarray_aperture(cfg);
    const double full = tx_aperture(cfg) + rx_aperture(cfg);
    return {2.0 * sa * sa / lambda, 2.0 * full * full / lambda};
}

double DistanceCdf::median() const { return quantile(0.5); }

double DistanceCdf::quantile(double p) const {
    if (samples.empty()) throw std::runtime_error("DistanceCdf: no samples");
    if (samples.size() == 1) return samples.front();
    const double pos = std::clamp(p, 0.0, 1.0) * (samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= samples.size()) return samples.back();
    const double t = pos - lo;
    return samples[lo] * (1.0 - t) + samples[lo + 1] * t;
}

CalibrationResult calibrate_thresholds(const SystemConfig& cfg,
                                       const std::vector<double>& distances, int rotations,
                                       int trials, double snr_db, std::uint64_t seed,
                                       double rotation_span_deg) {
    if (distances.size() < 2)
        throw std::invalid_argument("calibrate_thresholds: need at least two grid distances");
    if (rotations < 1 || trials < 1)
        throw std::invalid_argument("calibrate_thresholds: rotations and trials must be >= 1");
    if (!std::is_sorted(distances.begin(), distances.end()))
        throw std::invalid_argument("calibrate_thresholds: distance grid must be ascending");

    const double snr = db_to_linear(snr_db);
    const double span = rotation_span_deg * pi / 180.0;
    const SeedTree root = SeedTree(seed).child("calibration");

    CalibrationResult result;
    result.cdfs.reserve(distances.size());

    for (std::size_t di = 0; di < distances.size(); ++di) {
        const double d = distances[di];
        const double transmit_power = normalize_tx_power(d, snr, cfg.noise_power, cfg.subcarriers, cfg);
        DistanceCdf cdf;
        cdf.distance = d;
        cdf.samples.reserve(static_cast<std::size_t>(rotations) * trials);
        const SeedTree dist_node = root.child(di);
        for (int r = 0; r < rotations; ++r) {
            const SeedTree rot_node = dist_node.child(static_cast<std::uint64_t>(r));
            auto rot_rng = rot_node.child("rotation").rng();
            std::uniform_real_distribution<double> rot(-span, span);
            const double beta = rot(rot_rng);
            const ArrayGeometry geometry = build_array_geometry(cfg, d, beta);
            for (int e = 0; e < trials; ++e) {
                const SeedTree trial_node = rot_node.child(static_cast<std::uint64_t>(e));
                auto path_rng = trial_node.child("paths").rng();
                const PathSet paths = sample_paths(path_rng, d, cfg, geometry);
                // only the reference Tx SA is ever sounded during calibration
                const std::vector<MatrixXcd> blocks = swm_tx_column(geometry, paths, cfg, 0);
                auto cb_rng = trial_node.child("codebook").rng();
                const PilotCodebooks cb = make_codebooks(cb_rng, cfg);
                const SeedTree noise_node = trial_node.child("noise");
                std::vector<VectorXcd> per_sa(cfg.rx_subarrays);
                for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
                    auto noise_rng = noise_node.child(static_cast<std::uint64_t>(qr)).rng();
                    VectorXcd chi(static_cast<Eigen::Index>(cfg.rx_pilots) * cfg.tx_pilots *
                                  cfg.subcarriers);
                    for (int k = 0; k < cfg.subcarriers; ++k) {
                        const MatrixXcd y = sound_channel(
                            blocks[k].middleRows(qr * cfg.rx_elements, cfg.rx_elements),
                            cb.beamformer, cb.combiner, transmit_power, cfg.noise_power,
                            noise_rng);
                        chi.segment(static_cast<Eigen::Index>(k) * y.size(), y.size()) =
                            Eigen::Map<const VectorXcd>(y.data(), y.size());
                    }
                    per_sa[qr] = std::move(chi);
                }
                cdf.samples.push_back(model_select_metric(per_sa));
            }
        }
        std::sort(cdf.samples.begin(), cdf.samples.end());
        result.cdfs.push_back(std::move(cdf));
    }

    // γ_S-H: median at the grid point closest to the SA-level Rayleigh
    // distance (log scale). γ_H-P: median at the first point whose median is
    // within 5% of the far end's.
    const auto [d_sa, d_full] = rayleigh_distances(cfg);
    (void)d_full;
    std::size_t sa_idx = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const double gap = std::abs(std::log(distances[i]) - std::log(d_sa));
        if (gap < best_gap) {
            best_gap = gap;
            sa_idx = i;
        }
    }
    const double far_median = result.cdfs.back().median();
    std::size_t flat_idx = result.cdfs.size() - 1;
    for (std::size_t i = 0; i < result.cdfs.size(); ++i) {
        if (std::abs(result.cdfs[i].median() - far_median) <= 0.05 * far_median) {
            flat_idx = i;
            break;
        }
    }

    Thresholds& t = result.thresholds;
    t.near_intermediate = result.cdfs[sa_idx].median();
    t.intermediate_far = result.cdfs[flat_idx].median();
    t.meta.distance_grid = distances;
    t.meta.rotations = rotations;
    t.meta.trials = trials;
    t.meta.snr_db = snr_db;
    t.meta.seed = seed;
    t.meta.rotation_span_deg = rotation_span_deg;

    if (!(t.intermediate_far >= 0) || !(t.intermediate_far < t.near_intermediate))
        throw std::invalid_argument(
            "calibrate_thresholds: extracted thresholds violate 0 <= γ_H-P < γ_S-H (grid too "
            "narrow?)");
    return result;
}

void save_calibration(const std::string& path, const CalibrationResult& result) {
    nlohmann::json doc;
    doc["schema"] = "crossfield-thresholds-v1";
    doc["near_intermediate"] = result.thresholds.near_intermediate;
    doc["intermediate_far"] = result.thresholds.intermediate_far;
    doc["meta"] = {{"distance_grid", result.thresholds.meta.distance_grid},
                   {"rotations", result.thresholds.meta.rotations},
                   {"trials", result.thresholds.meta.trials},
                   {"snr_db", result.thresholds.meta.snr_db},
                   {"seed", result.thresholds.meta.seed},
                   {"rotation_span_deg", result.thresholds.meta.rotation_span_deg}};
    nlohmann::json cdfs = nlohmann::json::array();
    for (const DistanceCdf& c : result.cdfs) {
        nlohmann::json entry;
        entry["distance"] = c.distance;
        entry["samples"] = c.samples;
        entry["median"] = c.median();
        cdfs.push_back(std::move(entry));
    }
    doc["cdfs"] = std::move(cdfs);
    doc["generated_at"] = ""; // callers may stamp; kept stable for reproducibility

    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_calibration: cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

CalibrationResult load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_calibration: cannot open '" + path + "'");
    nlohmann::json doc = nlohmann::json::parse(in);
    CalibrationResult result;
    result.thresholds.near_intermediate = doc.at("near_intermediate").get<double>();
    result.thresholds.intermediate_far = doc.at("intermediate_far").get<double>();
    const auto& meta = doc.at("meta");
    result.thresholds.meta.distance_grid = meta.at("distance_grid").get<std::vector<double>>();
    result.thresholds.meta.rotations = meta.at("rotations").get<int>();
    result.thresholds.meta.trials = meta.at("trials").get<int>();
    result.thresholds.meta.snr_db = meta.at("snr_db").get<double>();
    result.thresholds.meta.seed = meta.at("seed").get<std::uint64_t>();
    result.thresholds.meta.rotation_span_deg = meta.at("rotation_span_deg").get<double>();
    for (const auto& entry : doc.at("cdfs")) {
        DistanceCdf c;
        c.distance = entry.at("distance").get<double>();
        c.samples = entry.at("samples").get<std::vector<double>>();
        result.cdfs.push_back(std::move(c));
    }
    return result;
}

} // namespace crossfield
