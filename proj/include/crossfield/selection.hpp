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

#ifndef CROSSFIELD_SELECTION_HPP
#define CROSSFIELD_SELECTION_HPP

#include "crossfield/sounding.hpp"

#include <string>
#include <vector>

namespace crossfield {

/// Model-selection metric η: each Rx SA's reference-Tx-SA observations are
/// flattened, reduced to a normalized magnitude profile
/// χ = |χ̄| / ‖χ̄‖, and η is the maximum pairwise squared distance
/// ‖χ_r − χ_c‖² over unordered SA pairs. Always in [0, 2].
/// Throws std::invalid_argument when any observation vector is all-zero.
double model_select_metric(const std::vector<VectorXcd>& per_rx_sa);

struct CalibrationMeta {
    std::vector<double> distance_grid;
    int rotations = 0; // R_offline
    int trials = 0;    // E_offline
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    double rotation_span_deg = 30.0;
};

/// Region thresholds on η. Near field when η ≥ near_intermediate, far field
/// when η < intermediate_far, the hybrid model in between.
struct Thresholds {
    double near_intermediate = 0.0; // γ_S-H
    double intermediate_far = 0.0;  // γ_H-P
    CalibrationMeta meta;
};

struct DistanceCdf {
    double distance = 0.0;
    std::vector<double> samples; // sorted ascending
    double median() const;
    double quantile(double p) const;
};

struct CalibrationResult {
    Thresholds thresholds;
    std::vector<DistanceCdf> cdfs;
};

/// Offline threshold calibration: for every grid distance, R×E trials of
/// {SWM channel → reference-SA sounding → η} under rotations drawn from
/// U(−span, span). γ_S-H is the median η at the grid point closest (in log
/// distance) to the SA-level Rayleigh distance; γ_H-P the median at the
/// first grid point whose median is within 5% of the far end's median.
/// Throws std::invalid_argument for degenerate grids (< 2 distances) or when
/// the extracted thresholds fail 0 ≤ γ_H-P < γ_S-H.
CalibrationResult calibrate_thresholds(const SystemConfig& cfg,
                                       const std::vector<double>& distances, int rotations,
                                       int trials, double snr_db, std::uint64_t seed,
                                       double rotation_span_deg = 30.0);

/// Conventional near/far boundaries 2(D_T + D_R)²/λ_c evaluated with the
/// single-subarray apertures (first) and the full-array apertures (second).
std::pair<double, double> rayleigh_distances(const SystemConfig& cfg);

/// Thresholds + CDF persistence (JSON document).
void save_calibration(const std::string& path, const CalibrationResult& result);
CalibrationResult load_calibration(const std::string& path);

} // namespace crossfield

#endif
