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

#ifndef CROSSFIELD_ESTIMATORS_HPP
#define CROSSFIELD_ESTIMATORS_HPP

#include "crossfield/selection.hpp"
#include "crossfield/somp.hpp"

#include <string>
#include <vector>

namespace crossfield {

/// Immutable dictionary bundle shared across trials: the four base
/// dictionaries plus their oversampled variants used by the reductions.
struct DictionarySet {
    Dictionary angular_tx, angular_rx;
    Dictionary polar_tx, polar_rx;
    Dictionary angular_tx_ovs, angular_rx_ovs;
    Dictionary polar_tx_ovs, polar_rx_ovs;

    // resolved reduction budgets
    int rd_angular_tx = 0, rd_angular_rx = 0;
    int rd_polar_tx = 0, rd_polar_rx = 0;

    static DictionarySet build(const SystemConfig& cfg);
};

enum class EstimationBranch { swm_rd, hspwm_rd, pwm_rd };

/// Sparse estimate of one subarray-pair channel. Atoms are stored directly
/// (not just grid indices) so reconstruction and dictionary chaining work the
/// same for full and reduced grids.
struct SaPairEstimate {
    std::vector<int> support;  // pair-grid indices g = g_T·G_R + g_R
    MatrixXcd coefficients;    // |support| x K
    MatrixXcd tx_atoms;        // Q̄_T x |support|, selected Tx columns
    MatrixXcd rx_atoms;        // Q̄_R x |support|
    std::vector<GridPoint> tx_grid, rx_grid; // metadata of the selected columns
    std::vector<int> tx_indices, rx_indices; // per-support column index on each side

    /// Σ_k |coefficient|² per support entry.
    std::vector<double> entry_powers() const;
    /// Reconstructed block at subcarrier k: Σ_s coeff(s,k)·rx_s·tx_sᵀ.
    MatrixXcd reconstruct(int k, int rx_rows, int tx_cols) const;
};

struct EstimateResult {
    std::string method;
    EstimationBranch branch = EstimationBranch::hspwm_rd;
    bool branch_valid = false; // true only for the cross-field estimator
    bool stop_flag = false;    // one-time stop flag sent to the Tx (PWM path)
    double metric = -1.0;      // η observed online (cross-field only)

    std::vector<SaPairEstimate> pairs; // index q_r + Q_R·q_t
    std::vector<MatrixXcd> reconstructed; // per subcarrier, N_R x N_T

    long long n_est = 0;       // dictionary-column count entering SOMP (closed form)
    long long rd_overhead = 0; // reduced-dictionary construction cost term
    int tx_pilots_used = 0;    // M_T^tr
    int rx_pilots_used = 0;    // M_R^tr
    double wallclock_seconds = 0.0;
    bool rank_deficient = false;
};

/// Closed-form SOMP search sizes N_est per strategy.
long long nest_swm_full(const SystemConfig& cfg, const DictionarySet& dicts);
long long nest_swm_rd(const SystemConfig& cfg, const DictionarySet& dicts);
long long nest_hspwm_full(const SystemConfig& cfg, const DictionarySet& dicts);
long long nest_hspwm_rd(const SystemConfig& cfg, const DictionarySet& dicts);
long long nest_pwm_full(const SystemConfig& cfg, const DictionarySet& dicts);
long long nest_pwm_rd(const SystemConfig& cfg, const DictionarySet& dicts);

/// Full-dictionary SOMP over every subarray pair with the polar (SWM) or
/// angular (HSPWM/PWM) dictionaries. `iterations` overrides L̂ when >= 0.
EstimateResult estimate_full(const SystemConfig& cfg, const MeasurementSet& meas,
                             const DictionarySet& dicts, WaveModel model, int iterations,
                             const std::string& method_name);

/// Near-field estimator: full polar search on the reference Rx SA, then a
/// chain of reduced polar dictionaries, each cut around the previous Rx SA's
/// support; the chain restarts at every Tx SA.
EstimateResult estimate_swm_rd(const SystemConfig& cfg, const MeasurementSet& meas,
                               const DictionarySet& dicts, int iterations = -1);

/// Intermediate-field estimator: like estimate_swm_rd but with angular
/// dictionaries and the cluster-budgeted reduction fed by the dominant 95%
/// of the support power.
EstimateResult estimate_hspwm_rd(const SystemConfig& cfg, const MeasurementSet& meas,
                                 const DictionarySet& dicts, int iterations = -1);

/// Far-field estimator: one SOMP solve on the reference pair, beamspace
/// replicated to every subarray pair. Pilot overhead counts the reference
/// Tx SA only.
EstimateResult estimate_pwm_rd(const SystemConfig& cfg, const MeasurementSet& meas,
                               const DictionarySet& dicts, int iterations = -1);

/// η observed online from the reference-Tx-SA observations of a trial.
double online_metric(const MeasurementSet& meas);

/// Top-level cross-field estimation: computes η, branches on the calibrated
/// thresholds (SWM-RD / HSPWM-RD / PWM-RD) and records the continue/stop
/// pilot flag and the pilot counters of the branch taken.
EstimateResult cross_field_estimate(const SystemConfig& cfg, const MeasurementSet& meas,
                                    const DictionarySet& dicts, const Thresholds& thresholds,
                                    int iterations = -1);

enum class HybridOrder { far_then_near, near_then_far };

/// Two-stage hybrid-field baseline: ⌊L̂/2⌋ SOMP picks on the first
/// dictionary, the residual is handed to ⌈L̂/2⌉ picks on the other, and the
/// union of both supports reconstructs the channel.
EstimateResult hybrid_field_baseline(const SystemConfig& cfg, const MeasurementSet& meas,
                                     const DictionarySet& dicts, HybridOrder order,
                                     int iterations = -1);

/// Oracle least squares on the exact (off-grid) path atoms built from the
/// true geometry: per subarray pair the L true ARVs are projected through
/// the codebooks and fit per subcarrier. Serves as the NMSE lower bound.
EstimateResult oracle_ls(const SystemConfig& cfg, const MeasurementSet& meas,
                         const ArrayGeometry& geometry, const PathSet& paths, WaveModel model);

} // namespace crossfield

#endif
