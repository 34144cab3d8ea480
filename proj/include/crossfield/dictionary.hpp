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

#ifndef CROSSFIELD_DICTIONARY_HPP
#define CROSSFIELD_DICTIONARY_HPP

#include "crossfield/common.hpp"

#include <limits>
#include <vector>

namespace crossfield {

enum class DictionaryKind { angular, polar, reduced };

/// Per-column grid metadata. Angular columns carry the spatial angle ψ̄ and
/// distance = +inf; polar columns carry the sampled angle and either a finite
/// ring distance or +inf for the far-field column of that angle.
struct GridPoint {
    double spatial_angle = 0.0; // ψ̄ = δ cosθ / λ
    double angle = 0.0;         // θ̄ (rad)
    double distance = std::numeric_limits<double>::infinity();

    bool far_field() const { return !std::isfinite(distance); }
};

struct AngularDesign {
    int elements = 0;
    int grid_size = 0;
    double spacing = 0.0;
    double wavelength = 0.0;
};

struct PolarDesign {
    int elements = 0;
    double spacing = 0.0;
    double wavelength = 0.0;
    double coherence = 1.0; // β_coh
    double min_distance = 0.0;
    double max_distance = 0.0;
    int ring_oversampling = 1; // ring index step 1/G_ovs when > 1
};

/// CS dictionary: unit-norm atoms plus the grid they were sampled on.
/// Reduced dictionaries keep their provenance (indices into the oversampled
/// grid they were cut from).
struct Dictionary {
    MatrixXcd atoms; // Q̄ x G
    std::vector<GridPoint> grid;
    DictionaryKind kind = DictionaryKind::angular;

    bool is_polar = false;
    AngularDesign angular_design;
    PolarDesign polar_design;

    std::vector<int> parent_indices; // reduced only: columns of the oversampled base
    bool truncated = false;          // set when a reduction request was clamped

    int size() const { return static_cast<int>(atoms.cols()); }
    int elements() const { return static_cast<int>(atoms.rows()); }
};

/// Angular-domain dictionary on the uniform spatial-angle grid
/// ψ̄_g = (1/G)(g − (G+1)/2), g = 1..G. Orthonormal for G = Q̄.
Dictionary angular_dictionary(int elements, int grid_size, double spacing, double wavelength);

/// Polar-domain dictionary: Q̄ uniformly sampled spatial angles
/// ψ̄_q = −1/2 + (q−1)/Q̄; per angle one far-field column plus distance rings
/// d̄ = Z(θ̄)/s, s = 1,2,... restricted to [d_min, d_max], with the ring
/// radius Z(θ̄) = Q̄²δ² sin²θ̄ / (2 β_coh² λ). Larger β_coh means coarser
/// distance sampling; β_coh → ∞ degenerates to one far-field column per
/// angle.
Dictionary polar_dictionary(int elements, double spacing, double wavelength, double coherence,
                            double min_distance, double max_distance);

/// Oversampled variant: angular grids get G_ovs·G spatial angles; polar
/// grids keep their angles and densify the rings (index step 1/G_ovs).
/// factor = 1 reproduces the base dictionary.
Dictionary oversample(const Dictionary& base, int factor);

/// Reduced dictionary around previously estimated atoms: scores every
/// oversampled atom by its best correlation with the reference columns
/// [base]_{:,support} and keeps the `budget` top-scoring ones (ties go to the
/// lowest index). Requests larger than the oversampled grid are clamped and
/// flagged.
Dictionary reduce_dictionary(const std::vector<int>& support, const Dictionary& base, int budget,
                             int factor);

/// Cluster-budgeted reduction: the dominant support prefix covering 95% of
/// the power picks the reference columns; their best-matching oversampled
/// indices are grouped into runs of consecutive indices, and each run gets
/// floor(members/total · budget) columns centered on the run. Falls back to
/// the plain reduction when every run budget floors to zero.
Dictionary reduce_dictionary_clustered(const std::vector<int>& support,
                                       const std::vector<double>& powers, const Dictionary& base,
                                       int budget, int factor);

/// Dominant prefix of a power profile: the smallest set of highest-power
/// entries whose sum reaches `fraction` of the total. Returns indices into
/// `powers` ordered by decreasing power.
std::vector<int> dominant_prefix(const std::vector<double>& powers, double fraction);

/// Workhorse variants that take a prebuilt oversampled dictionary so hot
/// loops can reuse it across subarrays.
Dictionary reduce_with_oversampled(const MatrixXcd& reference_atoms, const Dictionary& oversampled,
                                   int budget);
Dictionary reduce_clustered_with_oversampled(const MatrixXcd& reference_atoms,
                                             const Dictionary& oversampled, int budget);

} // namespace crossfield

#endif
