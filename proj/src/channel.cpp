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

#include "crossfield/channel.hpp"

#include "crossfield/arv.hpp"
#include "crossfield/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace crossfield {

namespace {

// Unit vector in the X-Z plane at angle `angle` from the +Z axis.
Vector3d direction_in_plane(double angle) { return Vector3d(std::sin(angle), 0, std::cos(angle)); }

Eigen::Matrix3d rotation_about_y(double beta) {
    Eigen::Matrix3d r;
    r << std::cos(beta), 0, std::sin(beta), 0, 1, 0, -std::sin(beta), 0, std::cos(beta);
    return r;
}

// Complex path amplitude at frequency f for a propagation length `dist`.
cxd path_amplitude(const Path& path, double f, double dist, const SystemConfig& cfg) {
    const double los = los_path_gain(f, dist, cfg);
    if (path.type == PathType::line_of_sight) return cxd(los, 0.0);
    return std::abs(path.reflection) * los * std::polar(1.0, path.phase);
}

double angle_from_axis(const Vector3d& from, const Vector3d& to, const Vector3d& axis,
                       double fallback) {
    const Vector3d diff = to - from;
    const double n = diff.norm();
    if (n < 1e-12) return fallback; // degenerate anchor, keep the sampled angle
    return std::acos(std::clamp(diff.dot(axis) / n, -1.0, 1.0));
}

// Outer-product block Σ_ℓ α e^{-j2πd/λ} a_R a_Tᵀ for precomputed per-path
// pair parameters.
MatrixXcd outer_product_block(const std::vector<PathView>& params, const PathSet& paths,
                              const SystemConfig& cfg, double f, double lambda) {
    MatrixXcd block = MatrixXcd::Zero(cfg.rx_elements, cfg.tx_elements);
    const double scale =
        std::sqrt(static_cast<double>(cfg.rx_elements) * cfg.tx_elements / paths.size());
    for (int l = 0; l < paths.size(); ++l) {
        const PathView& p = params[l];
        const cxd amp = path_amplitude(paths.paths[l], f, p.total, cfg) *
                        std::polar(1.0, -2.0 * pi * p.total / lambda);
        const VectorXcd a_r =
            far_field_arv(p.aoa, cfg.rx_elements, cfg.element_spacing_rx(), lambda);
        const VectorXcd a_t =
            far_field_arv(p.aod, cfg.tx_elements, cfg.element_spacing_tx(), lambda);
        block.noalias() += scale * amp * (a_r * a_t.transpose());
    }
    return block;
}

// Exact per-AE accumulation of one path into H[k] for a column range of Tx
// elements.
void accumulate_swm_path(MatrixXcd& h, const Path& path, const ArrayGeometry& g,
                         const SystemConfig& cfg, double f, double lambda, int tx_begin,
                         int tx_count) {
    const int n_r = static_cast<int>(g.rx_positions.cols());
    const double wave_number = 2.0 * pi / lambda;
    const double spreading_const =
        std::pow(speed_of_light / (4.0 * pi * f), cfg.path_loss_exponent / 2.0);
    const double absorption = cfg.absorption.coefficient(f);
    const double reflection_mag =
        path.type == PathType::line_of_sight ? 1.0 : std::abs(path.reflection);
    const cxd extra_phase = path.type == PathType::line_of_sight
                                ? cxd(1.0, 0.0)
                                : std::polar(1.0, path.phase);

    Eigen::VectorXd tx_leg(tx_count), rx_leg(n_r);
    if (path.type == PathType::line_of_sight) {
        for (int nr = 0; nr < n_r; ++nr)
            for (int nt = 0; nt < tx_count; ++nt) {
                const double dist =
                    (g.rx_positions.col(nr) - g.tx_positions.col(tx_begin + nt)).norm();
                const double amp = spreading_const *
                                   std::pow(dist, -cfg.path_loss_exponent / 2.0) *
                                   std::exp(-0.5 * absorption * dist);
                h(nr, nt) += amp * std::polar(1.0, -wave_number * dist);
            }
        return;
    }
    const Vector3d st = tx_scatterer(path, g);
    const Vector3d sr = rx_scatterer(path, g);
    for (int nt = 0; nt < tx_count; ++nt)
        tx_leg[nt] = (st - g.tx_positions.col(tx_begin + nt)).norm();
    for (int nr = 0; nr < n_r; ++nr) rx_leg[nr] = (sr - g.rx_positions.col(nr)).norm();
    for (int nr = 0; nr < n_r; ++nr)
        for (int nt = 0; nt < tx_count; ++nt) {
            const double dist = tx_leg[nt] + rx_leg[nr];
            const double amp = reflection_mag * spreading_const *
                               std::pow(dist, -cfg.path_loss_exponent / 2.0) *
                               std::exp(-0.5 * absorption * dist);
            h(nr, nt) += amp * extra_phase * std::polar(1.0, -wave_number * dist);
        }
}

std::vector<MatrixXcd> swm_blocks(const ArrayGeometry& g, const PathSet& paths,
                                  const SystemConfig& cfg, int tx_begin, int tx_count) {
    if (paths.size() < 1) throw std::invalid_argument("swm: empty path set");
    std::vector<MatrixXcd> out(cfg.subcarriers);
    const double norm = std::sqrt(1.0 / paths.size());
    for (int k = 1; k <= cfg.subcarriers; ++k) {
        const double f = cfg.subcarrier_frequency(k);
        const double lambda = cfg.wavelength(k);
        MatrixXcd h = MatrixXcd::Zero(g.rx_positions.cols(), tx_count);
        for (const Path& p : paths.paths) accumulate_swm_path(h, p, g, cfg, f, lambda, tx_begin, tx_count);
        out[k - 1] = norm * h;
    }
    return out;
}

} // namespace

Vector3d tx_scatterer(const Path& path, const ArrayGeometry& geometry) {
    if (path.type == PathType::line_of_sight)
        throw std::invalid_argument("tx_scatterer: LoS path has no scatterer");
    return geometry.tx_center() + path.tx_leg * direction_in_plane(path.aod);
}

Vector3d rx_scatterer(const Path& path, const ArrayGeometry& geometry) {
    if (path.type == PathType::line_of_sight)
        throw std::invalid_argument("rx_scatterer: LoS path has no scatterer");
    return geometry.rx_center() +
           path.rx_leg * (rotation_about_y(geometry.rotation[1]) * direction_in_plane(path.aoa));
}

PathView path_view(const Path& path, const ArrayGeometry& g, const Vector3d& tx_anchor,
                   const Vector3d& rx_anchor) {
    PathView p;
    if (path.type == PathType::line_of_sight) {
        p.total = (rx_anchor - tx_anchor).norm();
        p.tx_distance = p.total;
        p.rx_distance = p.total;
        p.aod = angle_from_axis(tx_anchor, rx_anchor, g.tx_axis(), path.aod);
        p.aoa = angle_from_axis(rx_anchor, tx_anchor, g.rx_axis(), path.aoa);
    } else {
        const Vector3d st = tx_scatterer(path, g);
        const Vector3d sr = rx_scatterer(path, g);
        p.tx_distance = (st - tx_anchor).norm();
        p.rx_distance = (sr - rx_anchor).norm();
        p.total = p.tx_distance + p.rx_distance;
        p.aod = angle_from_axis(tx_anchor, st, g.tx_axis(), path.aod);
        p.aoa = angle_from_axis(rx_anchor, sr, g.rx_axis(), path.aoa);
    }
    return p;
}

PathSet sample_paths(std::mt19937_64& rng, double distance, const SystemConfig& cfg,
                     const ArrayGeometry& geometry) {
    if (!(distance > 0)) throw std::invalid_argument("sample_paths: distance must be positive");
    if (cfg.path_count < 1) throw std::invalid_argument("sample_paths: need at least one path");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PathSet set;
    set.paths.reserve(cfg.path_count);

    Path los;
    los.type = PathType::line_of_sight;
    los.total_length = distance;
    los.tx_leg = distance;
    los.rx_leg = 0.0;
    los.aod = los_aod(geometry);
    los.aoa = los_aoa(geometry);
    los.reflection = cxd(1.0, 0.0);
    set.paths.push_back(los);

    const double d_min = distance + distance / 1000.0;
    const double d_max = 6.0 * distance;
    for (int l = 1; l < cfg.path_count; ++l) {
        Path p;
        p.type = PathType::reflected;
        p.total_length = d_min + (d_max - d_min) * unit(rng);
        p.tx_leg = p.total_length * unit(rng);
        p.rx_leg = p.total_length - p.tx_leg;
        p.aod = pi * unit(rng);
        p.aoa = pi * unit(rng);
        p.incidence = pi / 2.0 * unit(rng);
        p.phase = 2.0 * pi * unit(rng);
        p.reflection = reflection_coefficient(cfg.carrier_frequency, p.incidence,
                                              cfg.refractive_index, cfg.roughness);
        set.paths.push_back(p);
    }
    return set;
}

Eigen::Block<const MatrixXcd> ChannelRealization::block(int k, int q_r, int q_t) const {
    const int rows = geometry.rx_elements;
    const int cols = geometry.tx_elements;
    return per_subcarrier[k].block(q_r * rows, q_t * cols, rows, cols);
}

ChannelRealization swm_channel(const ArrayGeometry& geometry, const PathSet& paths,
                               const SystemConfig& cfg) {
    ChannelRealization out;
    out.model = WaveModel::swm;
    out.geometry = geometry;
    out.paths = paths;
    out.per_subcarrier = swm_blocks(geometry, paths, cfg, 0, cfg.total_tx_elements());
    return out;
}

std::vector<MatrixXcd> swm_tx_column(const ArrayGeometry& geometry, const PathSet& paths,
                                     const SystemConfig& cfg, int q_t) {
    return swm_blocks(geometry, paths, cfg, q_t * cfg.tx_elements, cfg.tx_elements);
}

ChannelRealization pwm_channel(const ArrayGeometry& geometry, const PathSet& paths,
                               const SystemConfig& cfg) {
    ChannelRealization out;
    out.model = WaveModel::pwm;
    out.geometry = geometry;
    out.paths = paths;

    // reference parameters: between the centers of the first Tx and Rx SAs
    std::vector<PathView> ref(paths.size());
    for (int l = 0; l < paths.size(); ++l)
        ref[l] = path_view(paths.paths[l], geometry, geometry.tx_subarray_center(0),
                           geometry.rx_subarray_center(0));

    out.per_subcarrier.resize(cfg.subcarriers);
    for (int k = 1; k <= cfg.subcarriers; ++k) {
        const MatrixXcd block =
            outer_product_block(ref, paths, cfg, cfg.subcarrier_frequency(k), cfg.wavelength(k));
        MatrixXcd h(cfg.total_rx_elements(), cfg.total_tx_elements());
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr)
            for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
                h.block(qr * cfg.rx_elements, qt * cfg.tx_elements, cfg.rx_elements,
                        cfg.tx_elements) = block;
        out.per_subcarrier[k - 1] = std::move(h);
    }
    return out;
}

ChannelRealization hspwm_channel(const ArrayGeometry& geometry, const PathSet& paths,
                                 const SystemConfig& cfg) {
    ChannelRealization out;
    out.model = WaveModel::hspwm;
    out.geometry = geometry;
    out.paths = paths;

    // per-pair parameters between the SA centers
    std::vector<std::vector<PathView>> params(cfg.rx_subarrays * cfg.tx_subarrays);
    for (int qr = 0; qr < cfg.rx_subarrays; ++qr)
        for (int qt = 0; qt < cfg.tx_subarrays; ++qt) {
            auto& vec = params[qr + cfg.rx_subarrays * qt];
            vec.resize(paths.size());
            for (int l = 0; l < paths.size(); ++l)
                vec[l] = path_view(paths.paths[l], geometry, geometry.tx_subarray_center(qt),
                                   geometry.rx_subarray_center(qr));
        }

    out.per_subcarrier.resize(cfg.subcarriers);
    for (int k = 1; k <= cfg.subcarriers; ++k) {
        const double f = cfg.subcarrier_frequency(k);
        const double lambda = cfg.wavelength(k);
        MatrixXcd h(cfg.total_rx_elements(), cfg.total_tx_elements());
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr)
            for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
                h.block(qr * cfg.rx_elements, qt * cfg.tx_elements, cfg.rx_elements,
                        cfg.tx_elements) =
                    outer_product_block(params[qr + cfg.rx_subarrays * qt], paths, cfg, f, lambda);
        out.per_subcarrier[k - 1] = std::move(h);
    }
    return out;
}

} // namespace crossfield
