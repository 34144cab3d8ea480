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

#ifndef CROSSFIELD_ARV_HPP
#define CROSSFIELD_ARV_HPP

#include "crossfield/common.hpp"

namespace crossfield {

/// Near-field (spherical wavefront) array response of a Q̄-element ULA for a
/// point source at angle `theta` from the array axis and range `dist` from
/// the array center:
///   [b]_q̄ = (1/√Q̄) exp(−j 2π/λ (d_{(1,q̄)} − dist)),
///   d_{(1,q̄)} = sqrt(dist² + δ̄² δ² − 2 δ̄ δ dist cosθ), δ̄ = q̄ − 1 − (Q̄−1)/2.
VectorXcd near_field_arv(double theta, double dist, int elements, double spacing,
                         double wavelength);

/// Far-field (planar wavefront) response: [a]_q̄ = (1/√Q̄) e^{j 2π δ cosθ q̄ / λ},
/// q̄ = 0..Q̄−1.
VectorXcd far_field_arv(double theta, int elements, double spacing, double wavelength);

/// Same as far_field_arv but parameterized by the spatial angle ψ = δ cosθ / λ:
/// [a]_q̄ = (1/√Q̄) e^{j 2π ψ q̄}.
VectorXcd spatial_arv(double psi, int elements);

} // namespace crossfield

#endif
