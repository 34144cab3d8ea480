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

#ifndef CROSSFIELD_SOUNDING_HPP
#define CROSSFIELD_SOUNDING_HPP

#include "crossfield/channel.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace crossfield {

/// Random constant-modulus training codebooks. The same combiner C is
/// applied at every Rx subarray within a sounding round; `id` tags the
/// object so that sharing can be asserted downstream.
struct PilotCodebooks {
    MatrixXcd beamformer; // Z, Q̄_T x M_T
    MatrixXcd combiner;   // C, Q̄_R x M_R
    int tx_bits = 0;
    int rx_bits = 0;
    std::uint64_t id = 0;
};

/// Q̄ x M matrix with entries (1/√Q̄) e^{jζ}, ζ drawn uniformly from the
/// 2^bits-point quantized phase set {2πm/2^bits}.
MatrixXcd random_codebook(std::mt19937_64& rng, int elements, int count, int bits);

PilotCodebooks make_codebooks(std::mt19937_64& rng, const SystemConfig& cfg);

/// Measurement matrix Ψ = Zᵀ ⊗ Cᴴ of shape (M_T·M_R) x (Q̄_T·Q̄_R);
/// satisfies vec(CᴴHZ) = Ψ vec(H).
MatrixXcd measurement_matrix(const MatrixXcd& beamformer, const MatrixXcd& combiner);

/// One sounding round of a subarray block: Y = √P_T·CᴴHZ + CᴴN with N i.i.d.
/// circular Gaussian of variance `noise_power`; the noise is correlated
/// through Cᴴ exactly as it is in the receive chain.
MatrixXcd sound_channel(const Eigen::Ref<const MatrixXcd>& block, const MatrixXcd& beamformer,
                        const MatrixXcd& combiner, double transmit_power, double noise_power,
                        std::mt19937_64& rng);

/// Transmit power that realizes `snr_linear` after the distance-dependent
/// LoS path loss: P_T = snr · K · σ_n² · ρ(d) with ρ(d) = |α_los(f_c, d)|⁻².
double normalize_tx_power(double distance, double snr_linear, double noise_power, int subcarriers,
                          const SystemConfig& cfg);

/// All pilot observations of one trial: per (q_R, q_T) pair and subcarrier,
/// the M_R x M_T received matrix, plus the codebooks that produced them.
struct MeasurementSet {
    int rx_subarrays = 0;
    int tx_subarrays = 0;
    int subcarriers = 0;
    std::vector<MatrixXcd> observations; // index = (q_r + Q_R·q_t)·K + k
    PilotCodebooks codebooks;
    double transmit_power = 0.0;
    double snr_db = 0.0;
    std::uint64_t noise_seed = 0;

    const MatrixXcd& at(int q_r, int q_t, int k) const;
    /// Vectorized observations of one pair, stacked per subcarrier:
    /// (M_R·M_T) x K.
    MatrixXcd stacked(int q_r, int q_t) const;
    /// All subcarriers of the reference Tx SA for one Rx SA, flattened into
    /// one vector (input of the model-selection metric).
    VectorXcd reference_column(int q_r) const;
};

/// Sounds every (q_R, q_T) pair of a ground-truth channel. Noise streams are
/// derived per pair from `noise_seed` so soundings are independent and
/// reproducible.
MeasurementSet sound_all(const ChannelRealization& truth, const SystemConfig& cfg,
                         const PilotCodebooks& codebooks, double transmit_power, double snr_db,
                         std::uint64_t noise_seed);

} // namespace crossfield

#endif
