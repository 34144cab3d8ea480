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

#include "crossfield/somp.hpp"

#include <stdexcept>

namespace crossfield {

namespace {

// Shared greedy loop; `score` accumulates Σ_k |Υᴴ r_k|² and `extract` pulls
// support columns out of the operator.
template <typename ScoreFn, typename ExtractFn>
SompResult somp_impl(const Eigen::Ref<const MatrixXcd>& observations, Eigen::Index num_columns,
                     int iterations, ScoreFn&& score, ExtractFn&& extract) {
    if (iterations < 0) throw std::invalid_argument("somp: iterations must be >= 0");
    SompResult result;
    result.residual = observations;
    result.residual_energy.push_back(result.residual.squaredNorm());
    if (iterations == 0) {
        result.coefficients.resize(0, observations.cols());
        return result;
    }

    for (int it = 0; it < iterations; ++it) {
        VectorXd scores = VectorXd::Zero(num_columns);
        for (Eigen::Index k = 0; k < observations.cols(); ++k) score(result.residual.col(k), scores);

        Eigen::Index pick = 0;
        scores.maxCoeff(&pick); // first maximizer wins ties (lowest index)
        result.support.push_back(static_cast<int>(pick));

        const MatrixXcd sub = extract(result.support);
        Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(sub);
        if (cod.rank() < sub.cols()) result.rank_deficient = true;
        result.coefficients = cod.solve(observations);
        result.residual = observations - sub * result.coefficients;
        result.residual_energy.push_back(result.residual.squaredNorm());
    }
    return result;
}

} // namespace

SompResult somp(const Eigen::Ref<const MatrixXcd>& observations, const SensingMatrix& sensing,
                int iterations) {
    if (observations.rows() != sensing.rows())
        throw std::invalid_argument("somp: observation/sensing row mismatch");
    return somp_impl(
        observations, sensing.cols(), iterations,
        [&](const Eigen::Ref<const VectorXcd>& r, VectorXd& s) { sensing.accumulate_scores(r, s); },
        [&](const std::vector<int>& support) { return sensing.columns(support); });
}

SompResult somp(const Eigen::Ref<const MatrixXcd>& observations, const MatrixXcd& sensing,
                int iterations) {
    if (observations.rows() != sensing.rows())
        throw std::invalid_argument("somp: observation/sensing row mismatch");
    return somp_impl(
        observations, sensing.cols(), iterations,
        [&](const Eigen::Ref<const VectorXcd>& r, VectorXd& s) {
            s += (sensing.adjoint() * r).cwiseAbs2();
        },
        [&](const std::vector<int>& support) {
            MatrixXcd sub(sensing.rows(), static_cast<Eigen::Index>(support.size()));
            for (std::size_t i = 0; i < support.size(); ++i)
                sub.col(static_cast<Eigen::Index>(i)) = sensing.col(support[i]);
            return sub;
        });
}

} // namespace crossfield
