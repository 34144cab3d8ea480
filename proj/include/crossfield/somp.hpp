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

#ifndef CROSSFIELD_SOMP_HPP
#define CROSSFIELD_SOMP_HPP

#include "crossfield/sensing.hpp"

namespace crossfield {

struct SompResult {
    std::vector<int> support;       // selected column indices, in pick order
    MatrixXcd coefficients;         // |support| x K, least-squares refit
    MatrixXcd residual;             // M x K after the last iteration
    std::vector<double> residual_energy; // Σ_k ‖r_k‖², one entry per state (initial + per pick)
    bool rank_deficient = false;    // a support submatrix needed the pseudo-inverse
};

/// Simultaneous OMP over K measurement vectors sharing one support.
/// Per iteration the column maximizing Σ_k |Υ_{:,g}ᴴ r_k|² joins the support
/// (ties to the lowest index), all K coefficient vectors are refit by least
/// squares on the support, and the residuals are updated. Runs exactly
/// `iterations` picks; iterations = 0 returns the observations untouched.
SompResult somp(const Eigen::Ref<const MatrixXcd>& observations, const SensingMatrix& sensing,
                int iterations);

/// Dense-matrix overload for tests and small problems.
SompResult somp(const Eigen::Ref<const MatrixXcd>& observations, const MatrixXcd& sensing,
                int iterations);

} // namespace crossfield

#endif
