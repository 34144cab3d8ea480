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

#include "crossfield/evaluation.hpp"

#include <cmath>
#include <stdexcept>

namespace crossfield {

double nmse_ratio(const std::vector<MatrixXcd>& estimate, const std::vector<MatrixXcd>& truth) {
    if (estimate.size() != truth.size() || truth.empty())
        throw std::invalid_argument("nmse: subcarrier count mismatch");
    double err = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (estimate[k].rows() != truth[k].rows() || estimate[k].cols() != truth[k].cols())
            throw std::invalid_argument("nmse: shape mismatch");
        err += (estimate[k] - truth[k]).squaredNorm();
        ref += truth[k].squaredNorm();
    }
    if (!(ref > 0)) throw std::invalid_argument("nmse: zero-norm ground truth");
    return err / ref;
}

double nmse_db(double ratio) {
    if (!(ratio > 0)) return nmse_floor_db;
    return std::max(nmse_floor_db, linear_to_db(ratio));
}

namespace {

double snap_phase(double phase, int levels) {
    const double step = 2.0 * pi / levels;
    double m = std::round(phase / step);
    m = std::fmod(m, static_cast<double>(levels));
    if (m < 0) m += levels;
    return m * step;
}

VectorXcd quantize_beam(const VectorXcd& atom, int levels) {
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(atom.size()));
    VectorXcd out(atom.size());
    for (Eigen::Index i = 0; i < atom.size(); ++i)
        out[i] = std::polar(magnitude, snap_phase(std::arg(atom[i]), levels));
    return out;
}

// Strongest estimated beam of one subarray across its pair estimates
// (wideband power). Falls back to a broadside beam when nothing was
// estimated.
VectorXcd best_subarray_beam(const EstimateResult& est, const SystemConfig& cfg, bool tx_side,
                             int subarray, bool& found) {
    double best_power = -1.0;
    VectorXcd best;
    for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
            if (tx_side && qt != subarray) continue;
            if (!tx_side && qr != subarray) continue;
            const SaPairEstimate& pe = est.pairs[qr + cfg.rx_subarrays * qt];
            const std::vector<double> powers = pe.entry_powers();
            for (std::size_t i = 0; i < powers.size(); ++i) {
                if (powers[i] > best_power) {
                    best_power = powers[i];
                    best = tx_side ? pe.tx_atoms.col(static_cast<Eigen::Index>(i))
                                   : pe.rx_atoms.col(static_cast<Eigen::Index>(i));
                }
            }
        }
    found = best_power >= 0;
    if (!found) {
        const int n = tx_side ? cfg.tx_elements : cfg.rx_elements;
        best = VectorXcd::Constant(n, cxd(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    }
    return best;
}

} // namespace

Beamformers configure_beamformers(const EstimateResult& estimate, const SystemConfig& cfg) {
    Beamformers bf;
    const int n_s = cfg.streams;
    bf.tx_rf = MatrixXcd::Zero(cfg.total_tx_elements(), cfg.tx_subarrays);
    bf.rx_rf = MatrixXcd::Zero(cfg.total_rx_elements(), cfg.rx_subarrays);

    bool found = true;
    for (int qt = 0; qt < cfg.tx_subarrays; ++qt) {
        bool f = false;
        const VectorXcd beam = best_subarray_beam(estimate, cfg, /*tx_side=*/true, qt, f);
        found &= f;
        bf.tx_rf.col(qt).segment(qt * cfg.tx_elements, cfg.tx_elements) =
            quantize_beam(beam, cfg.quantization_levels_tx());
    }
    for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
        bool f = false;
        const VectorXcd beam = best_subarray_beam(estimate, cfg, /*tx_side=*/false, qr, f);
        found &= f;
        bf.rx_rf.col(qr).segment(qr * cfg.rx_elements, cfg.rx_elements) =
            quantize_beam(beam, cfg.quantization_levels_rx());
    }
    bf.degenerate = !found;

    const int subcarriers = static_cast<int>(estimate.reconstructed.size());
    bf.tx_bb.resize(subcarriers);
    bf.rx_bb.resize(subcarriers);
    for (int k = 0; k < subcarriers; ++k) {
        const MatrixXcd effective =
            bf.rx_rf.adjoint() * estimate.reconstructed[k] * bf.tx_rf; // Q_R x Q_T
        if (effective.norm() < 1e-300) {
            bf.tx_bb[k] = MatrixXcd::Identity(cfg.tx_subarrays, n_s);
            bf.rx_bb[k] = MatrixXcd::Identity(cfg.rx_subarrays, n_s);
            bf.degenerate = true;
            continue;
        }
        Eigen::JacobiSVD<MatrixXcd> svd(effective, Eigen::ComputeFullU | Eigen::ComputeFullV);
        bf.tx_bb[k] = svd.matrixV().leftCols(n_s);
        bf.rx_bb[k] = svd.matrixU().leftCols(n_s);
    }

    // total power constraint Σ_k ‖F_RF F_BB[k]‖_F² = K·N_S
    double power = 0.0;
    for (int k = 0; k < subcarriers; ++k) power += (bf.tx_rf * bf.tx_bb[k]).squaredNorm();
    if (power > 0) {
        const double gain = std::sqrt(subcarriers * static_cast<double>(n_s) / power);
        for (int k = 0; k < subcarriers; ++k) bf.tx_bb[k] *= gain;
    }
    return bf;
}

double achievable_rate(const std::vector<MatrixXcd>& truth, const Beamformers& beams,
                       double transmit_power, double noise_power, double overhead_factor) {
    const int subcarriers = static_cast<int>(truth.size());
    if (subcarriers == 0) throw std::invalid_argument("achievable_rate: no subcarriers");
    const int n_s = static_cast<int>(beams.tx_bb.front().cols());

    double total = 0.0;
    for (int k = 0; k < subcarriers; ++k) {
        const MatrixXcd f = beams.precoder(k); // N_T x N_S
        const MatrixXcd w = beams.combiner(k); // N_R x N_S
        const MatrixXcd c = f.adjoint() * truth[k].adjoint() * w; // N_S x N_S
        const MatrixXcd rn = noise_power * (w.adjoint() * w);
        Eigen::FullPivLU<MatrixXcd> lu(rn);
        if (!lu.isInvertible())
            throw std::invalid_argument("achievable_rate: singular noise covariance");
        const MatrixXcd m = MatrixXcd::Identity(n_s, n_s) +
                            transmit_power / (subcarriers * static_cast<double>(n_s)) *
                                lu.solve(c.adjoint() * c);
        total += std::log2(std::abs(m.determinant()));
    }
    return overhead_factor * total / subcarriers;
}

double training_overhead_factor(int tx_pilots_used, int rx_pilots_used, double coherence_symbols) {
    if (!(coherence_symbols > 0))
        throw std::invalid_argument("training_overhead_factor: coherence time must be positive");
    const double used = static_cast<double>(tx_pilots_used) * rx_pilots_used;
    return std::max(0.0, 1.0 - used / coherence_symbols);
}

long long estimation_complexity(const EstimateResult& estimate, const SystemConfig& cfg) {
    return estimate.n_est * cfg.subcarriers * cfg.tx_pilots * cfg.rx_pilots * cfg.pursuit_paths +
           estimate.rd_overhead;
}

} // namespace crossfield
