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

#include "crossfield/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace crossfield {

double los_path_gain(double frequency, double distance, const SystemConfig& cfg) {
    if (!(frequency > 0)) throw std::invalid_argument("los_path_gain: frequency must be positive");
    if (!(distance > 0)) throw std::invalid_argument("los_path_gain: distance must be positive");
    const double spreading =
        std::pow(speed_of_light / (4.0 * pi * frequency * distance), cfg.path_loss_exponent / 2.0);
    const double absorption = std::exp(-0.5 * cfg.absorption.coefficient(frequency) * distance);
    return spreading * absorption;
}

cxd reflection_coefficient(double frequency, double incidence_angle, cxd refractive_index,
                           double roughness) {
    const double cos_inc = std::cos(incidence_angle);
    const cxd sin_ref = std::sin(incidence_angle) / refractive_index;
    const cxd refraction_angle = std::asin(sin_ref);
    const cxd cos_ref = std::cos(refraction_angle);
    const cxd fresnel = (cos_inc - refractive_index * cos_ref) /
                        (cos_inc + refractive_index * cos_ref);
    const double rayleigh = std::exp(-(8.0 * pi * pi * frequency * frequency * roughness *
                                       roughness * cos_inc * cos_inc) /
                                     (speed_of_light * speed_of_light));
    return fresnel * rayleigh;
}

} // namespace crossfield
