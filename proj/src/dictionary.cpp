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

#include "crossfield/dictionary.hpp"

#include "crossfield/arv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crossfield {

namespace {

double physical_angle(double psi, double spacing, double wavelength) {
    return std::acos(std::clamp(psi * wavelength / spacing, -1.0, 1.0));
}

Dictionary column_subset(const Dictionary& source, const std::vector<int>& indices,
                         bool truncated) {
    Dictionary out;
    out.kind = DictionaryKind::reduced;
    out.is_polar = source.is_polar;
    out.angular_design = source.angular_design;
    out.polar_design = source.polar_design;
    out.truncated = truncated;
    out.atoms.resize(source.atoms.rows(), static_cast<Eigen::Index>(indices.size()));
    out.grid.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        out.atoms.col(static_cast<Eigen::Index>(i)) = source.atoms.col(indices[i]);
        out.grid.push_back(source.grid[indices[i]]);
    }
    out.parent_indices = indices;
    return out;
}

std::vector<int> best_match_indices(const MatrixXcd& reference_atoms, const Dictionary& ovs) {
    const MatrixXd corr = (ovs.atoms.adjoint() * reference_atoms).cwiseAbs();
    std::vector<int> best(reference_atoms.cols());
    for (Eigen::Index l = 0; l < corr.cols(); ++l) {
        Eigen::Index row = 0;
        corr.col(l).maxCoeff(&row); // Eigen returns the first (lowest) maximizer
        best[static_cast<std::size_t>(l)] = static_cast<int>(row);
    }
    return best;
}

} // namespace

Dictionary angular_dictionary(int elements, int grid_size, double spacing, double wavelength) {
    if (elements < 1 || grid_size < 1)
        throw std::invalid_argument("angular_dictionary: dimensions must be >= 1");
    Dictionary d;
    d.kind = DictionaryKind::angular;
    d.is_polar = false;
    d.angular_design = {elements, grid_size, spacing, wavelength};
    d.atoms.resize(elements, grid_size);
    d.grid.resize(grid_size);
    for (int g = 1; g <= grid_size; ++g) {
        const double psi = (g - (grid_size + 1) / 2.0) / grid_size;
        d.atoms.col(g - 1) = spatial_arv(psi, elements);
        d.grid[g - 1].spatial_angle = psi;
        d.grid[g - 1].angle = physical_angle(psi, spacing, wavelength);
        // distance stays +inf
    }
    return d;
}

namespace {

Dictionary build_polar(const PolarDesign& design) {
    const int elements = design.elements;
    Dictionary d;
    d.kind = DictionaryKind::polar;
    d.is_polar = true;
    d.polar_design = design;

    std::vector<GridPoint> grid;
    std::vector<VectorXcd> atoms;
    for (int q = 1; q <= elements; ++q) {
        const double psi = -0.5 + (q - 1) / static_cast<double>(elements);
        const double cos_theta = std::clamp(psi * design.wavelength / design.spacing, -1.0, 1.0);
        const double theta = std::acos(cos_theta);
        const double sin_sq = 1.0 - cos_theta * cos_theta;
        const double ring_radius = elements * static_cast<double>(elements) * design.spacing *
                                   design.spacing * sin_sq /
                                   (2.0 * design.coherence * design.coherence * design.wavelength);

        GridPoint far;
        far.spatial_angle = psi;
        far.angle = theta;
        grid.push_back(far);
        atoms.push_back(far_field_arv(theta, elements, design.spacing, design.wavelength));

        // ring distances Z/s; index step 1/G_ovs for oversampled variants
        for (int j = 1;; ++j) {
            const double dist = ring_radius * design.ring_oversampling / j;
            if (dist < design.min_distance) break;
            if (dist > design.max_distance) continue;
            GridPoint p;
            p.spatial_angle = psi;
            p.angle = theta;
            p.distance = dist;
            grid.push_back(p);
            atoms.push_back(
                near_field_arv(theta, dist, elements, design.spacing, design.wavelength));
        }
    }

    d.atoms.resize(elements, static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t i = 0; i < atoms.size(); ++i)
        d.atoms.col(static_cast<Eigen::Index>(i)) = atoms[i];
    d.grid = std::move(grid);
    return d;
}

} // namespace

Dictionary polar_dictionary(int elements, double spacing, double wavelength, double coherence,
                            double min_distance, double max_distance) {
    if (elements < 1) throw std::invalid_argument("polar_dictionary: elements must be >= 1");
    if (!(coherence > 0)) throw std::invalid_argument("polar_dictionary: coherence must be > 0");
    if (!(min_distance > 0) || !(max_distance > min_distance))
        throw std::invalid_argument("polar_dictionary: need 0 < d_min < d_max");
    PolarDesign design{elements, spacing, wavelength, coherence, min_distance, max_distance, 1};
    return build_polar(design);
}

Dictionary oversample(const Dictionary& base, int factor) {
    if (factor < 1) throw std::invalid_argument("oversample: factor must be >= 1");
    if (base.is_polar) {
        PolarDesign design = base.polar_design;
        design.ring_oversampling *= factor;
        return build_polar(design);
    }
    const AngularDesign& a = base.angular_design;
    return angular_dictionary(a.elements, a.grid_size * factor, a.spacing, a.wavelength);
}

Dictionary reduce_with_oversampled(const MatrixXcd& reference_atoms, const Dictionary& oversampled,
                                   int budget) {
    if (reference_atoms.cols() < 1)
        throw std::invalid_argument("reduce: reference atom set is empty");
    const int total = oversampled.size();
    const bool truncated = budget > total;
    const int keep = std::min(budget, total);
    if (keep == total) {
        std::vector<int> all(total);
        std::iota(all.begin(), all.end(), 0);
        return column_subset(oversampled, all, truncated);
    }

    const VectorXd scores =
        (oversampled.atoms.adjoint() * reference_atoms).cwiseAbs().rowwise().maxCoeff();
    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b; // deterministic tie-break
    });
    std::vector<int> selected(order.begin(), order.begin() + keep);
    std::sort(selected.begin(), selected.end());
    return column_subset(oversampled, selected, truncated);
}

Dictionary reduce_dictionary(const std::vector<int>& support, const Dictionary& base, int budget,
                             int factor) {
    if (support.empty()) throw std::invalid_argument("reduce_dictionary: empty support");
    for (int idx : support)
        if (idx < 0 || idx >= base.size())
            throw std::invalid_argument("reduce_dictionary: support index out of range");
    MatrixXcd ref(base.atoms.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i)
        ref.col(static_cast<Eigen::Index>(i)) = base.atoms.col(support[i]);
    return reduce_with_oversampled(ref, oversample(base, factor), budget);
}

std::vector<int> dominant_prefix(const std::vector<double>& powers, double fraction) {
    std::vector<int> order(powers.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (powers[a] != powers[b]) return powers[a] > powers[b];
        return a < b;
    });
    const double total = std::accumulate(powers.begin(), powers.end(), 0.0);
    if (!(total > 0)) return order; // degenerate profile: keep everything
    std::vector<int> prefix;
    double acc = 0.0;
    for (int idx : order) {
        prefix.push_back(idx);
        acc += powers[idx];
        if (acc >= fraction * total) break;
    }
    return prefix;
}

Dictionary reduce_clustered_with_oversampled(const MatrixXcd& reference_atoms,
                                             const Dictionary& oversampled, int budget) {
    if (reference_atoms.cols() < 1)
        throw std::invalid_argument("reduce_clustered: reference atom set is empty");
    const int total = oversampled.size();
    const int dominant = static_cast<int>(reference_atoms.cols()); // L_dom

    std::vector<int> best = best_match_indices(reference_atoms, oversampled);
    std::sort(best.begin(), best.end());

    struct Cluster {
        long long sum = 0;
        int members = 0;
        int center() const { return static_cast<int>(std::llround(double(sum) / members)); }
    };
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < best.size(); ++i) {
        if (i == 0 || best[i] - best[i - 1] > 1) clusters.push_back({});
        clusters.back().sum += best[i];
        clusters.back().members += 1;
    }

    std::set<int> picked;
    bool any = false;
    for (const Cluster& c : clusters) {
        const int cols = static_cast<int>(std::floor(double(c.members) / dominant * budget));
        if (cols < 1) continue;
        any = true;
        int width = std::min(cols, total);
        int start = c.center() - (width - 1) / 2;
        start = std::clamp(start, 0, total - width);
        for (int i = 0; i < width; ++i) picked.insert(start + i);
    }
    if (!any) return reduce_with_oversampled(reference_atoms, oversampled, budget);

    std::vector<int> selected(picked.begin(), picked.end());
    return column_subset(oversampled, selected, budget > total);
}

Dictionary reduce_dictionary_clustered(const std::vector<int>& support,
                                       const std::vector<double>& powers, const Dictionary& base,
                                       int budget, int factor) {
    if (support.empty()) throw std::invalid_argument("reduce_dictionary_clustered: empty support");
    if (support.size() != powers.size())
        throw std::invalid_argument("reduce_dictionary_clustered: support/power size mismatch");
    const std::vector<int> prefix = dominant_prefix(powers, 0.95);
    MatrixXcd ref(base.atoms.rows(), static_cast<Eigen::Index>(prefix.size()));
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const int idx = support[prefix[i]];
        if (idx < 0 || idx >= base.size())
            throw std::invalid_argument("reduce_dictionary_clustered: support index out of range");
        ref.col(static_cast<Eigen::Index>(i)) = base.atoms.col(idx);
    }
    return reduce_clustered_with_oversampled(ref, oversample(base, factor), budget);
}

} // namespace crossfield
