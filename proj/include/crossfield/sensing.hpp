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

#ifndef CROSSFIELD_SENSING_HPP
#define CROSSFIELD_SENSING_HPP

#include "crossfield/dictionary.hpp"

#include <vector>

namespace crossfield {

/// Sensing matrix Υ = √P_T · Ψ (D_T ⊗ D_R) held in its Kronecker factors
/// A = √P_T·Zᵀ D_T and B = Cᴴ D_R, so that Υ = A ⊗ B. Column g corresponds
/// to the dictionary pair (g_T = g / G_R, g_R = g % G_R), matching the
/// column-major vectorization of the beamspace matrix.
class SensingMatrix {
  public:
    SensingMatrix(MatrixXcd tx_factor, MatrixXcd rx_factor);

    Eigen::Index rows() const { return tx_factor_.rows() * rx_factor_.rows(); }
    Eigen::Index cols() const { return tx_factor_.cols() * rx_factor_.cols(); }
    Eigen::Index tx_cols() const { return tx_factor_.cols(); }
    Eigen::Index rx_cols() const { return rx_factor_.cols(); }

    VectorXcd column(Eigen::Index g) const;
    MatrixXcd columns(const std::vector<int>& indices) const;
    MatrixXcd dense() const;

    /// Adds |Υᴴ r|² of one vectorized observation/residual to `scores`.
    /// Uses the reshape identity (A⊗B)ᴴ vec(R) = vec(Bᴴ R A*), so the full
    /// matrix is never materialized; results agree with the dense product to
    /// better than 1e-10.
    void accumulate_scores(const Eigen::Ref<const VectorXcd>& residual, VectorXd& scores) const;

  private:
    MatrixXcd tx_factor_; // M_T x G_T, includes the √P_T scale
    MatrixXcd rx_factor_; // M_R x G_R
};

/// Builds Υ from codebooks and a dictionary pair.
SensingMatrix assemble_sensing(const MatrixXcd& beamformer, const MatrixXcd& combiner,
                               const Dictionary& tx_dict, const Dictionary& rx_dict,
                               double transmit_power);

/// Reference construction Υ = Ψ (D_T ⊗ D_R) with the explicit measurement
/// matrix; for tests and small problems only.
MatrixXcd assemble_sensing_dense(const MatrixXcd& measurement, const MatrixXcd& tx_atoms,
                                 const MatrixXcd& rx_atoms);

} // namespace crossfield

#endif
