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

#include "crossfield/sounding.hpp"

#include "crossfield/propagation.hpp"
#include "crossfield/seed.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace crossfield {

namespace {

std::atomic<std::uint64_t> codebook_counter{1};

MatrixXcd gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                          double variance) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
    MatrixXcd n(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) n(r, c) = cxd(gauss(rng), gauss(rng));
    return n;
}

} // namespace

MatrixXcd random_codebook(std::mt19937_64& rng, int elements, int count, int bits) {
    if (elements < 1 || count < 1) throw std::invalid_argument("random_codebook: bad dimensions");
    if (bits < 1) throw std::invalid_argument("random_codebook: need at least one phase bit");
    const int levels = 1 << bits;
    std::uniform_int_distribution<int> level(0, levels - 1);
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(elements));
    MatrixXcd m(elements, count);
    for (int c = 0; c < count; ++c)
        for (int r = 0; r < elements; ++r)
            m(r, c) = std::polar(magnitude, 2.0 * pi * level(rng) / levels);
    return m;
}

PilotCodebooks make_codebooks(std::mt19937_64& rng, const SystemConfig& cfg) {
    PilotCodebooks cb;
    cb.beamformer = random_codebook(rng, cfg.tx_elements, cfg.tx_pilots, cfg.tx_phase_bits);
    cb.combiner = random_codebook(rng, cfg.rx_elements, cfg.rx_pilots, cfg.rx_phase_bits);
    cb.tx_bits = cfg.tx_phase_bits;
    cb.rx_bits = cfg.rx_phase_bits;
    cb.id = codebook_counter.fetch_add(1);
    return cb;
}

MatrixXcd measurement_matrix(const MatrixXcd& beamformer, const MatrixXcd& combiner) {
    const Eigen::Index mt = beamformer.cols(), mr = combiner.cols();
    const Eigen::Index qt = beamformer.rows(), qr = combiner.rows();
    MatrixXcd psi(mt * mr, qt * qr);
    const MatrixXcd ch = combiner.adjoint(); // M_R x Q̄_R
    for (Eigen::Index t = 0; t < mt; ++t)
        for (Eigen::Index j = 0; j < qt; ++j)
            psi.block(t * mr, j * qr, mr, qr) = beamformer(j, t) * ch;
    return psi;
}

MatrixXcd sound_channel(const Eigen::Ref<const MatrixXcd>& block, const MatrixXcd& beamformer,
                        const MatrixXcd& combiner, double transmit_power, double noise_power,
                        std::mt19937_64& rng) {
    if (block.rows() != combiner.rows() || block.cols() != beamformer.rows())
        throw std::invalid_argument("sound_channel: block shape mismatch");
    MatrixXcd y = std::sqrt(transmit_power) * (combiner.adjoint() * block * beamformer);
    if (noise_power > 0) {
        const MatrixXcd noise = gaussian_matrix(rng, block.rows(), beamformer.cols(), noise_power);
        y.noalias() += combiner.adjoint() * noise;
    }
    return y;
}

double normalize_tx_power(double distance, double snr_linear, double noise_power, int subcarriers,
                          const SystemConfig& cfg) {
    const double gain = los_path_gain(cfg.carrier_frequency, distance, cfg);
    const double path_loss = 1.0 / (gain * gain); // ρ(d)
    return snr_linear * subcarriers * noise_power * path_loss;
}

const MatrixXcd& MeasurementSet::at(int q_r, int q_t, int k) const {
    return observations[(q_r + rx_subarrays * q_t) * subcarriers + k];
}

MatrixXcd MeasurementSet::stacked(int q_r, int q_t) const {
    const Eigen::Index m = at(q_r, q_t, 0).size();
    MatrixXcd out(m, subcarriers);
    for (int k = 0; k < subcarriers; ++k) {
        const MatrixXcd& y = at(q_r, q_t, k);
        out.col(k) = Eigen::Map<const VectorXcd>(y.data(), y.size());
    }
    return out;
}

VectorXcd MeasurementSet::reference_column(int q_r) const {
    const Eigen::Index m = at(q_r, 0, 0).size();
    VectorXcd out(m * subcarriers);
    for (int k = 0; k < subcarriers; ++k) {
        const MatrixXcd& y = at(q_r, 0, k);
        out.segment(k * m, m) = Eigen::Map<const VectorXcd>(y.data(), y.size());
    }
    return out;
}

MeasurementSet sound_all(const ChannelRealization& truth, const SystemConfig& cfg,
                         const PilotCodebooks& codebooks, double transmit_power, double snr_db,
                         std::uint64_t noise_seed) {
    MeasurementSet set;
    set.rx_subarrays = cfg.rx_subarrays;
    set.tx_subarrays = cfg.tx_subarrays;
    set.subcarriers = cfg.subcarriers;
    set.codebooks = codebooks;
    set.transmit_power = transmit_power;
    set.snr_db = snr_db;
    set.noise_seed = noise_seed;
    set.observations.resize(static_cast<std::size_t>(cfg.rx_subarrays) * cfg.tx_subarrays *
                            cfg.subcarriers);

    const SeedTree noise_tree{noise_seed};
    for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
            // independent noise stream per sounded pair
            auto rng = noise_tree.child(static_cast<std::uint64_t>(qt * cfg.rx_subarrays + qr)).rng();
            for (int k = 0; k < cfg.subcarriers; ++k)
                set.observations[(qr + cfg.rx_subarrays * qt) * cfg.subcarriers + k] =
                    sound_channel(truth.block(k, qr, qt), codebooks.beamformer, codebooks.combiner,
                                  transmit_power, cfg.noise_power, rng);
        }
    return set;
}

} // namespace crossfield
