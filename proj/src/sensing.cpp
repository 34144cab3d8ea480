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

#include "crossfield/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace crossfield {

SensingMatrix::SensingMatrix(MatrixXcd tx_factor, MatrixXcd rx_factor)
    : tx_factor_(std::move(tx_factor)), rx_factor_(std::move(rx_factor)) {
    if (tx_factor_.size() == 0 || rx_factor_.size() == 0)
        throw std::invalid_argument("SensingMatrix: empty factor");
}

VectorXcd SensingMatrix::column(Eigen::Index g) const {
    const Eigen::Index g_t = g / rx_factor_.cols();
    const Eigen::Index g_r = g % rx_factor_.cols();
    const Eigen::Index mt = tx_factor_.rows(), mr = rx_factor_.rows();
    VectorXcd col(mt * mr);
    for (Eigen::Index t = 0; t < mt; ++t)
        col.segment(t * mr, mr) = tx_factor_(t, g_t) * rx_factor_.col(g_r);
    return col;
}

MatrixXcd SensingMatrix::columns(const std::vector<int>& indices) const {
    MatrixXcd out(rows(), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = column(indices[i]);
    return out;
}

MatrixXcd SensingMatrix::dense() const {
    MatrixXcd out(rows(), cols());
    for (Eigen::Index g = 0; g < cols(); ++g) out.col(g) = column(g);
    return out;
}

void SensingMatrix::accumulate_scores(const Eigen::Ref<const VectorXcd>& residual,
                                      VectorXd& scores) const {
    const Eigen::Index mt = tx_factor_.rows(), mr = rx_factor_.rows();
    if (residual.size() != mt * mr)
        throw std::invalid_argument("SensingMatrix: residual length mismatch");
    if (scores.size() != cols()) throw std::invalid_argument("SensingMatrix: scores length mismatch");
    const Eigen::Map<const MatrixXcd> r(residual.data(), mr, mt);
    // (A ⊗ B)ᴴ vec(R) = vec(Bᴴ R A*)
    const MatrixXcd corr = rx_factor_.adjoint() * r * tx_factor_.conjugate();
    scores += Eigen::Map<const VectorXcd>(corr.data(), corr.size()).cwiseAbs2();
}

SensingMatrix assemble_sensing(const MatrixXcd& beamformer, const MatrixXcd& combiner,
                               const Dictionary& tx_dict, const Dictionary& rx_dict,
                               double transmit_power) {
    if (beamformer.rows() != tx_dict.elements())
        throw std::invalid_argument("assemble_sensing: beamformer/tx dictionary shape mismatch");
    if (combiner.rows() != rx_dict.elements())
        throw std::invalid_argument("assemble_sensing: combiner/rx dictionary shape mismatch");
    MatrixXcd a = std::sqrt(transmit_power) * (beamformer.transpose() * tx_dict.atoms);
    MatrixXcd b = combiner.adjoint() * rx_dict.atoms;
    return SensingMatrix(std::move(a), std::move(b));
}

MatrixXcd assemble_sensing_dense(const MatrixXcd& measurement, const MatrixXcd& tx_atoms,
                                 const MatrixXcd& rx_atoms) {
    const Eigen::Index gt = tx_atoms.cols(), gr = rx_atoms.cols();
    const Eigen::Index qt = tx_atoms.rows(), qr = rx_atoms.rows();
    if (measurement.cols() != qt * qr)
        throw std::invalid_argument("assemble_sensing_dense: measurement shape mismatch");
    MatrixXcd theta(qt * qr, gt * gr);
    for (Eigen::Index t = 0; t < gt; ++t)
        for (Eigen::Index r = 0; r < gr; ++r) {
            VectorXcd col(qt * qr);
            for (Eigen::Index i = 0; i < qt; ++i)
                col.segment(i * qr, qr) = tx_atoms(i, t) * rx_atoms.col(r);
            theta.col(t * gr + r) = col;
        }
    return measurement * theta;
}

} // namespace crossfield
