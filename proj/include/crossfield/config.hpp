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

#ifndef CROSSFIELD_CONFIG_HPP
#define CROSSFIELD_CONFIG_HPP

#include "crossfield/common.hpp"

#include <string>
#include <utility>
#include <vector>

namespace crossfield {

/// Frequency-dependent molecular absorption coefficient K(f) in 1/m.
///
/// The detailed line-by-line physics is out of scope; the coefficient is
/// pluggable with three modes: disabled (0 everywhere), a constant value, or
/// a piecewise-linear table over frequency. Table queries clamp to the end
/// samples; negative inputs clamp to zero.
struct AbsorptionModel {
    enum class Mode { disabled, constant_value, table };

    Mode mode = Mode::disabled;
    double constant = 0.0;
    std::vector<std::pair<double, double>> samples; // (frequency Hz, K 1/m), sorted by frequency

    double coefficient(double frequency) const;

    static AbsorptionModel disabled_model() { return {}; }
    static AbsorptionModel constant_model(double value);
    static AbsorptionModel table_model(std::vector<std::pair<double, double>> samples);
};

/// Full parameter set of one simulated link: array dimensions, spacings,
/// pilot/codebook sizes, THz material constants and the dictionary design
/// knobs. Everything is SI (Hz, m, W, rad).
struct SystemConfig {
    // carrier and OFDM grid
    double carrier_frequency = 300e9; // f_c
    double bandwidth = 10e9;          // B_sys
    int subcarriers = 16;             // K

    // array-of-subarrays dimensions
    int tx_subarrays = 4;  // Q_T
    int rx_subarrays = 4;  // Q_R
    int tx_elements = 256; // AEs per Tx SA
    int rx_elements = 16;  // AEs per Rx SA
    double tx_element_spacing = 0.0;  // δ_T (m), 0 -> λ_c/2
    double rx_element_spacing = 0.0;  // δ_R (m), 0 -> λ_c/2
    double tx_subarray_spacing = 0.0; // Δ_T (m), centers of adjacent SAs
    double rx_subarray_spacing = 0.0; // Δ_R (m)

    // phase shifters and pilots
    int tx_phase_bits = 4; // Q_T^quant
    int rx_phase_bits = 4;
    int tx_pilots = 128; // M_T
    int rx_pilots = 16;  // M_R

    // powers
    double transmit_power = 1.0;      // P_T (W); sweeps overwrite via SNR normalization
    double noise_power = 4.1687e-14;  // σ_n² (W), default −73.8 dBm

    // propagation
    int path_count = 3;              // L (>=1, path 1 is LoS)
    int pursuit_paths = 10;          // SOMP iterations L̂
    double path_loss_exponent = 2.0; // υ
    cxd refractive_index{2.24, -0.025};
    double roughness = 0.088e-3; // σ_rough (m)
    AbsorptionModel absorption;

    // dictionary design
    int tx_angular_grid = 0; // G_T, 0 -> tx_elements
    int rx_angular_grid = 0; // G_R, 0 -> rx_elements
    double polar_coherence = 1.0;     // β_coh
    double polar_min_distance = 0.7198; // m
    double polar_max_distance = 500.0;  // m
    int oversampling = 2;    // G_ovs
    int tx_rd_columns = 0;   // angular G_{T,RD}, 0 -> G_T/2
    int rx_rd_columns = 0;   // angular G_{R,RD}, 0 -> G_R
    int tx_rd_columns_polar = 0; // polar G^pol_{T,RD}, 0 -> G^pol_T/4
    int rx_rd_columns_polar = 0; // polar G^pol_{R,RD}, 0 -> G^pol_R

    // rate evaluation
    int streams = 4;               // N_S
    double coherence_symbols = 0.0; // T_coh, 0 -> 2 Q_R Q_T Q̄_R Q̄_T

    int total_tx_elements() const { return tx_subarrays * tx_elements; }
    int total_rx_elements() const { return rx_subarrays * rx_elements; }
    double carrier_wavelength() const { return speed_of_light / carrier_frequency; }

    /// f_k = f_c + (B/K)(k − (K−1)/2), k in {1..K}. For even K the grid sits
    /// half a spacing above f_c; K odd is nearly centered.
    double subcarrier_frequency(int k) const;
    double wavelength(int k) const { return speed_of_light / subcarrier_frequency(k); }

    double element_spacing_tx() const;
    double element_spacing_rx() const;
    double subarray_spacing_tx() const;
    double subarray_spacing_rx() const;
    int angular_grid_tx() const { return tx_angular_grid > 0 ? tx_angular_grid : tx_elements; }
    int angular_grid_rx() const { return rx_angular_grid > 0 ? rx_angular_grid : rx_elements; }
    int quantization_levels_tx() const { return 1 << tx_phase_bits; }
    int quantization_levels_rx() const { return 1 << rx_phase_bits; }
    double coherence_time_symbols() const;

    /// Returns human-readable violations; empty means the config is usable.
    std::vector<std::string> validate() const;
};

/// Parses the key/value config format (one `key = value` per line, '#'
/// comments). Unknown keys are an error. See configs/README in the repo for
/// the schema.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& text);

/// Serializes a config back to the key/value format (used by exports).
std::string format_config(const SystemConfig& cfg);

} // namespace crossfield

#endif
