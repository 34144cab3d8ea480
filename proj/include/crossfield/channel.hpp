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

#ifndef CROSSFIELD_CHANNEL_HPP
#define CROSSFIELD_CHANNEL_HPP

#include "crossfield/geometry.hpp"

#include <random>
#include <vector>

namespace crossfield {

enum class WaveModel { swm, pwm, hspwm };

enum class PathType { line_of_sight, reflected };

/// One propagation path. Path 1 is always LoS (total_length = d, unit
/// reflection); reflected paths are single-bounce with Tx-side and Rx-side
/// legs that sum to the total length.
struct Path {
    PathType type = PathType::line_of_sight;
    double total_length = 0.0; // d^ℓ
    double tx_leg = 0.0;       // d_T^ℓ (LoS: equals total_length)
    double rx_leg = 0.0;       // d_R^ℓ (LoS: 0)
    double aod = 0.0;          // θ^ℓ in [0, π], from the Tx array axis
    double aoa = 0.0;          // φ^ℓ in [0, π], from the Rx array axis
    double incidence = 0.0;    // φ_inc^ℓ (reflected paths)
    double phase = 0.0;        // ϑ^ℓ random phase (reflected paths)
    cxd reflection{1.0, 0.0};  // Γ^ℓ, evaluated at f_c; Γ^1 = 1
};

struct PathSet {
    std::vector<Path> paths;
    int size() const { return static_cast<int>(paths.size()); }
};

/// Draws the multipath geometry for a link at LoS distance d:
/// d^ℓ ~ U(d + d/1000, 6d), d_T^ℓ = d^ℓ·U(0,1), θ/φ ~ U(0,π),
/// φ_inc ~ U(0,π/2), ϑ ~ U(0,2π); the LoS entry carries the exact geometric
/// angles. Reflection coefficients are evaluated at the carrier.
PathSet sample_paths(std::mt19937_64& rng, double distance, const SystemConfig& cfg,
                     const ArrayGeometry& geometry);

/// Scatterer positions implied by a reflected path: the Tx-side anchor sits
/// at distance d_T^ℓ from the Tx center along the AoD in the X-Z plane, the
/// Rx-side anchor at d_R^ℓ from the Rx center along the AoA in the rotated
/// frame. The two anchors are independent, mirroring the independent
/// parameter sampling.
Vector3d tx_scatterer(const Path& path, const ArrayGeometry& geometry);
Vector3d rx_scatterer(const Path& path, const ArrayGeometry& geometry);

/// A path as seen from a pair of reference points (typically two subarray
/// centers): leg lengths, total propagation length and the angles measured
/// from the local array axes.
struct PathView {
    double tx_distance = 0.0; // anchor -> scatterer (or the other anchor for LoS)
    double rx_distance = 0.0;
    double total = 0.0;
    double aod = 0.0;
    double aoa = 0.0;
};

PathView path_view(const Path& path, const ArrayGeometry& geometry, const Vector3d& tx_anchor,
                   const Vector3d& rx_anchor);

struct ChannelRealization {
    WaveModel model = WaveModel::swm;
    std::vector<MatrixXcd> per_subcarrier; // K matrices of size N_R x N_T
    PathSet paths;
    ArrayGeometry geometry;

    int subcarriers() const { return static_cast<int>(per_subcarrier.size()); }
    /// View of the (q_R, q_T) subarray block (0-based) at subcarrier index k.
    Eigen::Block<const MatrixXcd> block(int k, int q_r, int q_t) const;
};

/// Exact per-AE spherical-wave channel: for every AE pair and subcarrier,
/// h = sqrt(1/L) Σ_ℓ α^ℓ(f_k, d^ℓ_pair) exp(−j 2π d^ℓ_pair / λ_k) with the
/// per-AE path lengths computed from positions (LoS) or from the scatterer
/// anchors (reflected).
ChannelRealization swm_channel(const ArrayGeometry& geometry, const PathSet& paths,
                               const SystemConfig& cfg);

/// Planar-wave channel: one reference block computed from the reference
/// subarray pair (angles/distances between the reference SA centers and the
/// scatterers) and replicated to every SA pair.
ChannelRealization pwm_channel(const ArrayGeometry& geometry, const PathSet& paths,
                               const SystemConfig& cfg);

/// Hybrid spherical-planar channel: planar within each SA, with angles,
/// distances and gains recomputed between the SA centers for every pair.
ChannelRealization hspwm_channel(const ArrayGeometry& geometry, const PathSet& paths,
                                 const SystemConfig& cfg);

/// SWM blocks for a single Tx subarray (per subcarrier, N_R x Q̄_T); used by
/// the calibration loop, which only ever sounds the reference Tx SA.
std::vector<MatrixXcd> swm_tx_column(const ArrayGeometry& geometry, const PathSet& paths,
                                     const SystemConfig& cfg, int q_t);

} // namespace crossfield

#endif
