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

#ifndef CROSSFIELD_PROPAGATION_HPP
#define CROSSFIELD_PROPAGATION_HPP

#include "crossfield/config.hpp"

namespace crossfield {

/// LoS path amplitude gain (c0/(4π f d))^{υ/2} · exp(−K(f)·d/2) combining
/// spreading loss and molecular absorption. Real and positive for real υ.
/// Throws std::invalid_argument for d <= 0 or f <= 0.
double los_path_gain(double frequency, double distance, const SystemConfig& cfg);

/// Smooth-surface Fresnel reflection with a Rayleigh roughness factor:
///   Γ = (cos φ_inc − κ cos φ_ref) / (cos φ_inc + κ cos φ_ref)
///       · exp(−8π² f² σ² cos² φ_inc / c0²),
/// with φ_ref = arcsin(sin φ_inc / κ) evaluated with the complex arcsin so a
/// complex refractive index poses no domain issue.
cxd reflection_coefficient(double frequency, double incidence_angle, cxd refractive_index,
                           double roughness);

} // namespace crossfield

#endif
