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

#ifndef CROSSFIELD_EVALUATION_HPP
#define CROSSFIELD_EVALUATION_HPP

#include "crossfield/estimators.hpp"

namespace crossfield {

inline constexpr double nmse_floor_db = -200.0;

/// Per-trial NMSE ratio (Σ_k ‖Ĥ−H‖_F²)/(Σ_k ‖H‖_F²). Throws on zero-norm
/// truth.
double nmse_ratio(const std::vector<MatrixXcd>& estimate, const std::vector<MatrixXcd>& truth);

/// Ratio in dB, floored at nmse_floor_db for exact estimates.
double nmse_db(double ratio);

/// Hybrid analog/digital beamformers configured from an estimate.
struct Beamformers {
    MatrixXcd tx_rf; // F_RF, N_T x Q_T block diagonal
    MatrixXcd rx_rf; // W_RF, N_R x Q_R
    std::vector<MatrixXcd> tx_bb; // F_BB[k], Q_T x N_S
    std::vector<MatrixXcd> rx_bb; // W_BB[k], Q_R x N_S
    bool degenerate = false;      // fell back to identity baseband

    MatrixXcd precoder(int k) const { return tx_rf * tx_bb[k]; }
    MatrixXcd combiner(int k) const { return rx_rf * rx_bb[k]; }
};

/// Analog beams from the strongest estimated coefficient of each subarray
/// (wideband power, summed over subcarriers), phases snapped to the
/// quantized set; baseband from the SVD of the estimated effective channel,
/// keeping N_S streams and rescaled to the total power constraint
/// Σ_k ‖F_RF F_BB[k]‖_F² = K·N_S.
Beamformers configure_beamformers(const EstimateResult& estimate, const SystemConfig& cfg);

/// Mean over subcarriers of log2 det(I + P_T/(K N_S) · R_n⁻¹ CᴴC) with
/// C[k] = F̂ᴴ[k] Hᴴ[k] Ŵ[k] and R_n = σ_n² Ŵᴴ[k] Ŵ[k], multiplied by the
/// training factor ϱ. ϱ = 1 gives the plain achievable rate.
double achievable_rate(const std::vector<MatrixXcd>& truth, const Beamformers& beams,
                       double transmit_power, double noise_power, double overhead_factor);

/// ϱ = max(0, 1 − M_T^tr·M_R^tr / T_coh).
double training_overhead_factor(int tx_pilots_used, int rx_pilots_used, double coherence_symbols);

/// Total estimation complexity 𝒞 = N_est·K·M_T·M_R·L̂ + RD construction
/// overhead.
long long estimation_complexity(const EstimateResult& estimate, const SystemConfig& cfg);

} // namespace crossfield

#endif
