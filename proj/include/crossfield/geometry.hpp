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

#ifndef CROSSFIELD_GEOMETRY_HPP
#define CROSSFIELD_GEOMETRY_HPP

#include "crossfield/config.hpp"

namespace crossfield {

/// Antenna element positions for one Tx/Rx placement.
///
/// The Tx array is a ULA of subarrays on the Z-axis centered at the origin.
/// The Rx array uses the same Z-axis layout, rotated by `rotation` (β̇, rad)
/// about the Y-axis and translated to (distance, 0, 0). Euler vector is
/// stored as [α̇, β̇, γ̇] around Z/Y/X; only β̇ affects the positions for the
/// on-axis ULA, the 180° yaw merely faces the Rx toward the Tx.
struct ArrayGeometry {
    Eigen::Matrix3Xd tx_positions; // 3 x N_T
    Eigen::Matrix3Xd rx_positions; // 3 x N_R
    Vector3d rotation;             // [α̇, β̇, γ̇]
    double distance = 0.0;         // LoS center distance d (m)

    int tx_subarrays = 0, tx_elements = 0;
    int rx_subarrays = 0, rx_elements = 0;

    Vector3d tx_axis() const { return Vector3d(0, 0, 1); }
    Vector3d rx_axis() const;

    Vector3d tx_center() const { return Vector3d::Zero(); }
    Vector3d rx_center() const { return Vector3d(distance, 0, 0); }
    Vector3d tx_subarray_center(int q) const;
    Vector3d rx_subarray_center(int q) const;
};

/// Places every AE of both arrays. `rotation` is β̇ in [−π/2, π/2].
ArrayGeometry build_array_geometry(const SystemConfig& cfg, double distance, double rotation);

/// End-to-end span of the Tx / Rx array along its axis: (Q−1)Δ + (Q̄−1)δ.
double tx_aperture(const SystemConfig& cfg);
double rx_aperture(const SystemConfig& cfg);
/// Span of a single subarray: (Q̄−1)δ.
double tx_subarray_aperture(const SystemConfig& cfg);
double rx_subarray_aperture(const SystemConfig& cfg);

/// Angle of arrival of the LoS ray at the Rx, measured from the Rx array
/// axis; equals arccos(−sin β̇) for this geometry.
double los_aoa(const ArrayGeometry& geometry);
/// Angle of departure of the LoS ray from the Tx array axis (π/2 here).
double los_aod(const ArrayGeometry& geometry);

} // namespace crossfield

#endif
