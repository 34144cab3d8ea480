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

#include "crossfield/arv.hpp"

#include <cmath>
#include <stdexcept>

namespace crossfield {

VectorXcd near_field_arv(double theta, double dist, int elements, double spacing,
                         double wavelength) {
    if (elements < 1) throw std::invalid_argument("near_field_arv: need at least one element");
    if (!(dist > 0)) throw std::invalid_argument("near_field_arv: distance must be positive");
    VectorXcd v(elements);
    const double scale = 1.0 / std::sqrt(static_cast<double>(elements));
    const double wave_number = 2.0 * pi / wavelength;
    const double cos_theta = std::cos(theta);
    for (int q = 0; q < elements; ++q) {
        const double offset = q - (elements - 1) / 2.0; // δ̄_q̄
        const double element_dist = std::sqrt(dist * dist + offset * offset * spacing * spacing -
                                              2.0 * offset * spacing * dist * cos_theta);
        v[q] = std::polar(scale, -wave_number * (element_dist - dist));
    }
    return v;
}

VectorXcd far_field_arv(double theta, int elements, double spacing, double wavelength) {
    if (elements < 1) throw std::invalid_argument("far_field_arv: need at least one element");
    VectorXcd v(elements);
    const double scale = 1.0 / std::sqrt(static_cast<double>(elements));
    const double phase_step = 2.0 * pi / wavelength * spacing * std::cos(theta);
    for (int q = 0; q < elements; ++q) v[q] = std::polar(scale, phase_step * q);
    return v;
}

VectorXcd spatial_arv(double psi, int elements) {
    if (elements < 1) throw std::invalid_argument("spatial_arv: need at least one element");
    VectorXcd v(elements);
    const double scale = 1.0 / std::sqrt(static_cast<double>(elements));
    for (int q = 0; q < elements; ++q) v[q] = std::polar(scale, 2.0 * pi * psi * q);
    return v;
}

} // namespace crossfield
