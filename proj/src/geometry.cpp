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

#include "crossfield/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace crossfield {

namespace {

// Axis coordinate of AE (q, q̄) in a centered array-of-subarrays ULA.
double axis_offset(int q, int qbar, int subarrays, int elements, double sa_spacing,
                   double el_spacing) {
    return (q - (subarrays - 1) / 2.0) * sa_spacing + (qbar - (elements - 1) / 2.0) * el_spacing;
}

Eigen::Matrix3d rotation_about_y(double beta) {
    Eigen::Matrix3d r;
    r << std::cos(beta), 0, std::sin(beta), 0, 1, 0, -std::sin(beta), 0, std::cos(beta);
    return r;
}

} // namespace

Vector3d ArrayGeometry::rx_axis() const {
    return rotation_about_y(rotation[1]) * Vector3d(0, 0, 1);
}

Vector3d ArrayGeometry::tx_subarray_center(int q) const {
    // mean of the subarray's element positions (exact for a symmetric ULA)
    Vector3d acc = Vector3d::Zero();
    for (int i = 0; i < tx_elements; ++i) acc += tx_positions.col(q * tx_elements + i);
    return acc / tx_elements;
}

Vector3d ArrayGeometry::rx_subarray_center(int q) const {
    Vector3d acc = Vector3d::Zero();
    for (int i = 0; i < rx_elements; ++i) acc += rx_positions.col(q * rx_elements + i);
    return acc / rx_elements;
}

ArrayGeometry build_array_geometry(const SystemConfig& cfg, double distance, double rotation) {
    if (!(distance > 0)) throw std::invalid_argument("geometry: distance must be positive");
    if (rotation < -pi / 2 || rotation > pi / 2)
        throw std::invalid_argument("geometry: rotation must lie in [-pi/2, pi/2]");
    if (auto errors = cfg.validate(); !errors.empty())
        throw std::invalid_argument("geometry: invalid config: " + errors.front());

    ArrayGeometry g;
    g.distance = distance;
    g.rotation = Vector3d(pi, rotation, 0); // 180° yaw faces the Rx toward the Tx
    g.tx_subarrays = cfg.tx_subarrays;
    g.tx_elements = cfg.tx_elements;
    g.rx_subarrays = cfg.rx_subarrays;
    g.rx_elements = cfg.rx_elements;

    g.tx_positions.resize(3, cfg.total_tx_elements());
    for (int q = 0; q < cfg.tx_subarrays; ++q)
        for (int e = 0; e < cfg.tx_elements; ++e)
            g.tx_positions.col(q * cfg.tx_elements + e) =
                Vector3d(0, 0,
                         axis_offset(q, e, cfg.tx_subarrays, cfg.tx_elements,
                                     cfg.subarray_spacing_tx(), cfg.element_spacing_tx()));

    const Eigen::Matrix3d rot = rotation_about_y(rotation);
    const Vector3d offset(distance, 0, 0);
    g.rx_positions.resize(3, cfg.total_rx_elements());
    for (int q = 0; q < cfg.rx_subarrays; ++q)
        for (int e = 0; e < cfg.rx_elements; ++e) {
            const double z = axis_offset(q, e, cfg.rx_subarrays, cfg.rx_elements,
                                         cfg.subarray_spacing_rx(), cfg.element_spacing_rx());
            g.rx_positions.col(q * cfg.rx_elements + e) = offset + rot * Vector3d(0, 0, z);
        }
    return g;
}

double tx_aperture(const SystemConfig& cfg) {
    return (cfg.tx_subarrays - 1) * cfg.subarray_spacing_tx() +
           (cfg.tx_elements - 1) * cfg.element_spacing_tx();
}
double rx_aperture(const SystemConfig& cfg) {
    return (cfg.rx_subarrays - 1) * cfg.subarray_spacing_rx() +
           (cfg.rx_elements - 1) * cfg.element_spacing_rx();
}
double tx_subarray_aperture(const SystemConfig& cfg) {
    return (cfg.tx_elements - 1) * cfg.element_spacing_tx();
}
double rx_subarray_aperture(const SystemConfig& cfg) {
    return (cfg.rx_elements - 1) * cfg.element_spacing_rx();
}

double los_aoa(const ArrayGeometry& geometry) {
    const Vector3d to_tx = (geometry.tx_center() - geometry.rx_center()).normalized();
    return std::acos(std::clamp(to_tx.dot(geometry.rx_axis()), -1.0, 1.0));
}

double los_aod(const ArrayGeometry& geometry) {
    const Vector3d to_rx = (geometry.rx_center() - geometry.tx_center()).normalized();
    return std::acos(std::clamp(to_rx.dot(geometry.tx_axis()), -1.0, 1.0));
}

} // namespace crossfield
