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

#include "crossfield/estimators.hpp"

#include "crossfield/arv.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace crossfield {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int resolve_iterations(const SystemConfig& cfg, int iterations) {
    return iterations >= 0 ? iterations : cfg.pursuit_paths;
}

int pair_index(const SystemConfig& cfg, int q_r, int q_t) { return q_r + cfg.rx_subarrays * q_t; }

SaPairEstimate make_pair_estimate(const SompResult& r, const Dictionary& tx_dict,
                                  const Dictionary& rx_dict) {
    SaPairEstimate pe;
    pe.support = r.support;
    pe.coefficients = r.coefficients;
    const int g_r = rx_dict.size();
    const int n = static_cast<int>(r.support.size());
    pe.tx_atoms.resize(tx_dict.elements(), n);
    pe.rx_atoms.resize(rx_dict.elements(), n);
    pe.tx_grid.resize(n);
    pe.rx_grid.resize(n);
    pe.tx_indices.resize(n);
    pe.rx_indices.resize(n);
    for (int i = 0; i < n; ++i) {
        const int g = r.support[i];
        const int gt = g / g_r;
        const int gr = g % g_r;
        pe.tx_atoms.col(i) = tx_dict.atoms.col(gt);
        pe.rx_atoms.col(i) = rx_dict.atoms.col(gr);
        pe.tx_grid[i] = tx_dict.grid[gt];
        pe.rx_grid[i] = rx_dict.grid[gr];
        pe.tx_indices[i] = gt;
        pe.rx_indices[i] = gr;
    }
    return pe;
}

std::vector<MatrixXcd> reconstruct_channel(const SystemConfig& cfg,
                                           const std::vector<SaPairEstimate>& pairs) {
    std::vector<MatrixXcd> out(cfg.subcarriers);
    for (int k = 0; k < cfg.subcarriers; ++k) {
        MatrixXcd h = MatrixXcd::Zero(cfg.total_rx_elements(), cfg.total_tx_elements());
        for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
            for (int qr = 0; qr < cfg.rx_subarrays; ++qr)
                h.block(qr * cfg.rx_elements, qt * cfg.tx_elements, cfg.rx_elements,
                        cfg.tx_elements) =
                    pairs[pair_index(cfg, qr, qt)].reconstruct(k, cfg.rx_elements,
                                                               cfg.tx_elements);
        out[k] = std::move(h);
    }
    return out;
}

// Unique side atoms of a support, optionally restricted to the entries that
// carry 95% of the power (the HSPWM rule). Order of first appearance.
struct SideReferences {
    MatrixXcd tx;
    MatrixXcd rx;
};

SideReferences side_references(const SaPairEstimate& pe, bool dominant_only) {
    std::vector<int> keep;
    if (dominant_only) {
        keep = dominant_prefix(pe.entry_powers(), 0.95);
    } else {
        keep.resize(pe.support.size());
        for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = static_cast<int>(i);
    }
    std::vector<int> tx_cols, rx_cols;
    std::vector<int> seen_tx, seen_rx;
    for (int i : keep) {
        if (std::find(seen_tx.begin(), seen_tx.end(), pe.tx_indices[i]) == seen_tx.end()) {
            seen_tx.push_back(pe.tx_indices[i]);
            tx_cols.push_back(i);
        }
        if (std::find(seen_rx.begin(), seen_rx.end(), pe.rx_indices[i]) == seen_rx.end()) {
            seen_rx.push_back(pe.rx_indices[i]);
            rx_cols.push_back(i);
        }
    }
    SideReferences refs;
    refs.tx.resize(pe.tx_atoms.rows(), static_cast<Eigen::Index>(tx_cols.size()));
    for (std::size_t i = 0; i < tx_cols.size(); ++i) refs.tx.col(i) = pe.tx_atoms.col(tx_cols[i]);
    refs.rx.resize(pe.rx_atoms.rows(), static_cast<Eigen::Index>(rx_cols.size()));
    for (std::size_t i = 0; i < rx_cols.size(); ++i) refs.rx.col(i) = pe.rx_atoms.col(rx_cols[i]);
    return refs;
}

} // namespace

std::vector<double> SaPairEstimate::entry_powers() const {
    std::vector<double> p(support.size());
    for (std::size_t i = 0; i < support.size(); ++i)
        p[i] = coefficients.row(static_cast<Eigen::Index>(i)).squaredNorm();
    return p;
}

MatrixXcd SaPairEstimate::reconstruct(int k, int rx_rows, int tx_cols) const {
    MatrixXcd block = MatrixXcd::Zero(rx_rows, tx_cols);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(support.size()); ++i)
        block.noalias() += coefficients(i, k) * (rx_atoms.col(i) * tx_atoms.col(i).transpose());
    return block;
}

DictionarySet DictionarySet::build(const SystemConfig& cfg) {
    DictionarySet d;
    const double lambda = cfg.carrier_wavelength();
    d.angular_tx = angular_dictionary(cfg.tx_elements, cfg.angular_grid_tx(),
                                      cfg.element_spacing_tx(), lambda);
    d.angular_rx = angular_dictionary(cfg.rx_elements, cfg.angular_grid_rx(),
                                      cfg.element_spacing_rx(), lambda);
    d.polar_tx = polar_dictionary(cfg.tx_elements, cfg.element_spacing_tx(), lambda,
                                  cfg.polar_coherence, cfg.polar_min_distance,
                                  cfg.polar_max_distance);
    d.polar_rx = polar_dictionary(cfg.rx_elements, cfg.element_spacing_rx(), lambda,
                                  cfg.polar_coherence, cfg.polar_min_distance,
                                  cfg.polar_max_distance);
    d.angular_tx_ovs = oversample(d.angular_tx, cfg.oversampling);
    d.angular_rx_ovs = oversample(d.angular_rx, cfg.oversampling);
    d.polar_tx_ovs = oversample(d.polar_tx, cfg.oversampling);
    d.polar_rx_ovs = oversample(d.polar_rx, cfg.oversampling);

    d.rd_angular_tx =
        cfg.tx_rd_columns > 0 ? cfg.tx_rd_columns : std::max(1, d.angular_tx.size() / 2);
    d.rd_angular_rx = cfg.rx_rd_columns > 0 ? cfg.rx_rd_columns : d.angular_rx.size();
    d.rd_polar_tx =
        cfg.tx_rd_columns_polar > 0 ? cfg.tx_rd_columns_polar : std::max(1, d.polar_tx.size() / 4);
    d.rd_polar_rx = cfg.rx_rd_columns_polar > 0 ? cfg.rx_rd_columns_polar : d.polar_rx.size();
    return d;
}

long long nest_swm_full(const SystemConfig& cfg, const DictionarySet& dicts) {
    return 1LL * cfg.rx_subarrays * cfg.tx_subarrays * dicts.polar_rx.size() *
           dicts.polar_tx.size();
}
long long nest_swm_rd(const SystemConfig& cfg, const DictionarySet& dicts) {
    return 1LL * cfg.tx_subarrays * dicts.polar_rx.size() * dicts.polar_tx.size() +
           1LL * (cfg.rx_subarrays - 1) * cfg.tx_subarrays * dicts.rd_polar_rx *
               dicts.rd_polar_tx;
}
long long nest_hspwm_full(const SystemConfig& cfg, const DictionarySet& dicts) {
    return 1LL * cfg.rx_subarrays * cfg.tx_subarrays * dicts.angular_rx.size() *
           dicts.angular_tx.size();
}
long long nest_hspwm_rd(const SystemConfig& cfg, const DictionarySet& dicts) {
    return 1LL * cfg.tx_subarrays * dicts.angular_rx.size() * dicts.angular_tx.size() +
           1LL * (cfg.rx_subarrays - 1) * cfg.tx_subarrays * dicts.rd_angular_rx *
               dicts.rd_angular_tx;
}
long long nest_pwm_full(const SystemConfig& cfg, const DictionarySet& dicts) {
    return nest_hspwm_full(cfg, dicts);
}
long long nest_pwm_rd(const SystemConfig& cfg, const DictionarySet& dicts) {
    return 1LL * dicts.angular_rx.size() * dicts.angular_tx.size();
}

EstimateResult estimate_full(const SystemConfig& cfg, const MeasurementSet& meas,
                             const DictionarySet& dicts, WaveModel model, int iterations,
                             const std::string& method_name) {
    const auto t0 = clock_type::now();
    const bool polar = model == WaveModel::swm;
    const Dictionary& tx_dict = polar ? dicts.polar_tx : dicts.angular_tx;
    const Dictionary& rx_dict = polar ? dicts.polar_rx : dicts.angular_rx;
    const int iters = resolve_iterations(cfg, iterations);

    const SensingMatrix sensing = assemble_sensing(meas.codebooks.beamformer,
                                                   meas.codebooks.combiner, tx_dict, rx_dict,
                                                   meas.transmit_power);
    EstimateResult out;
    out.method = method_name;
    out.pairs.resize(static_cast<std::size_t>(cfg.rx_subarrays) * cfg.tx_subarrays);
    for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
            const SompResult r = somp(meas.stacked(qr, qt), sensing, iters);
            out.rank_deficient |= r.rank_deficient;
            out.pairs[pair_index(cfg, qr, qt)] = make_pair_estimate(r, tx_dict, rx_dict);
        }
    out.reconstructed = reconstruct_channel(cfg, out.pairs);
    out.n_est = polar ? nest_swm_full(cfg, dicts) : nest_hspwm_full(cfg, dicts);
    out.tx_pilots_used = cfg.tx_pilots * cfg.tx_subarrays;
    out.rx_pilots_used = cfg.rx_pilots;
    out.wallclock_seconds = seconds_since(t0);
    return out;
}

namespace {

EstimateResult estimate_rd_chain(const SystemConfig& cfg, const MeasurementSet& meas,
                                 const DictionarySet& dicts, bool polar, int iterations,
                                 const std::string& method_name) {
    const auto t0 = clock_type::now();
    const Dictionary& tx_dict = polar ? dicts.polar_tx : dicts.angular_tx;
    const Dictionary& rx_dict = polar ? dicts.polar_rx : dicts.angular_rx;
    const Dictionary& tx_ovs = polar ? dicts.polar_tx_ovs : dicts.angular_tx_ovs;
    const Dictionary& rx_ovs = polar ? dicts.polar_rx_ovs : dicts.angular_rx_ovs;
    const int tx_budget = polar ? dicts.rd_polar_tx : dicts.rd_angular_tx;
    const int rx_budget = polar ? dicts.rd_polar_rx : dicts.rd_angular_rx;
    const int iters = resolve_iterations(cfg, iterations);

    const SensingMatrix full_sensing = assemble_sensing(meas.codebooks.beamformer,
                                                        meas.codebooks.combiner, tx_dict, rx_dict,
                                                        meas.transmit_power);
    EstimateResult out;
    out.method = method_name;
    out.pairs.resize(static_cast<std::size_t>(cfg.rx_subarrays) * cfg.tx_subarrays);
    long long rd_overhead = 0;

    for (int qt = 0; qt < cfg.tx_subarrays; ++qt) {
        // the reference Rx SA always searches the full dictionary; the chain
        // over the remaining Rx SAs restarts at every Tx SA
        const SompResult ref = somp(meas.stacked(0, qt), full_sensing, iters);
        out.rank_deficient |= ref.rank_deficient;
        out.pairs[pair_index(cfg, 0, qt)] = make_pair_estimate(ref, tx_dict, rx_dict);

        const SaPairEstimate* previous = &out.pairs[pair_index(cfg, 0, qt)];
        for (int qr = 1; qr < cfg.rx_subarrays; ++qr) {
            if (previous->support.empty()) {
                // nothing to reduce around; fall back to the full search
                const SompResult r = somp(meas.stacked(qr, qt), full_sensing, iters);
                out.rank_deficient |= r.rank_deficient;
                out.pairs[pair_index(cfg, qr, qt)] = make_pair_estimate(r, tx_dict, rx_dict);
                previous = &out.pairs[pair_index(cfg, qr, qt)];
                continue;
            }
            const SideReferences refs = side_references(*previous, /*dominant_only=*/!polar);
            Dictionary tx_rd, rx_rd;
            if (polar) {
                tx_rd = reduce_with_oversampled(refs.tx, tx_ovs, tx_budget);
                rx_rd = reduce_with_oversampled(refs.rx, rx_ovs, rx_budget);
                rd_overhead += 1LL * cfg.oversampling * tx_dict.size() * cfg.pursuit_paths +
                               1LL * cfg.oversampling * rx_dict.size() * cfg.pursuit_paths;
            } else {
                tx_rd = reduce_clustered_with_oversampled(refs.tx, tx_ovs, tx_budget);
                rx_rd = reduce_clustered_with_oversampled(refs.rx, rx_ovs, rx_budget);
                // L_dom replaces L̂ in the construction cost
                rd_overhead += 1LL * cfg.oversampling * tx_dict.size() * refs.tx.cols() +
                               1LL * cfg.oversampling * rx_dict.size() * refs.rx.cols();
            }
            const SensingMatrix rd_sensing = assemble_sensing(meas.codebooks.beamformer,
                                                              meas.codebooks.combiner, tx_rd,
                                                              rx_rd, meas.transmit_power);
            const SompResult r = somp(meas.stacked(qr, qt), rd_sensing, iters);
            out.rank_deficient |= r.rank_deficient;
            out.pairs[pair_index(cfg, qr, qt)] = make_pair_estimate(r, tx_rd, rx_rd);
            previous = &out.pairs[pair_index(cfg, qr, qt)];
        }
    }
    out.reconstructed = reconstruct_channel(cfg, out.pairs);
    out.n_est = polar ? nest_swm_rd(cfg, dicts) : nest_hspwm_rd(cfg, dicts);
    out.rd_overhead = rd_overhead;
    out.tx_pilots_used = cfg.tx_pilots * cfg.tx_subarrays;
    out.rx_pilots_used = cfg.rx_pilots;
    out.wallclock_seconds = seconds_since(t0);
    return out;
}

} // namespace

EstimateResult estimate_swm_rd(const SystemConfig& cfg, const MeasurementSet& meas,
                               const DictionarySet& dicts, int iterations) {
    EstimateResult out = estimate_rd_chain(cfg, meas, dicts, /*polar=*/true, iterations, "swm-rd");
    out.branch = EstimationBranch::swm_rd;
    return out;
}

EstimateResult estimate_hspwm_rd(const SystemConfig& cfg, const MeasurementSet& meas,
                                 const DictionarySet& dicts, int iterations) {
    EstimateResult out =
        estimate_rd_chain(cfg, meas, dicts, /*polar=*/false, iterations, "hspwm-rd");
    out.branch = EstimationBranch::hspwm_rd;
    return out;
}

EstimateResult estimate_pwm_rd(const SystemConfig& cfg, const MeasurementSet& meas,
                               const DictionarySet& dicts, int iterations) {
    const auto t0 = clock_type::now();
    const int iters = resolve_iterations(cfg, iterations);
    const SensingMatrix sensing = assemble_sensing(meas.codebooks.beamformer,
                                                   meas.codebooks.combiner, dicts.angular_tx,
                                                   dicts.angular_rx, meas.transmit_power);
    EstimateResult out;
    out.method = "pwm-rd";
    out.branch = EstimationBranch::pwm_rd;
    const SompResult r = somp(meas.stacked(0, 0), sensing, iters);
    out.rank_deficient = r.rank_deficient;
    const SaPairEstimate ref = make_pair_estimate(r, dicts.angular_tx, dicts.angular_rx);
    out.pairs.assign(static_cast<std::size_t>(cfg.rx_subarrays) * cfg.tx_subarrays, ref);
    out.reconstructed = reconstruct_channel(cfg, out.pairs);
    out.n_est = nest_pwm_rd(cfg, dicts);
    out.stop_flag = true; // only the reference Tx SA transmits pilots
    out.tx_pilots_used = cfg.tx_pilots;
    out.rx_pilots_used = cfg.rx_pilots;
    out.wallclock_seconds = seconds_since(t0);
    return out;
}

double online_metric(const MeasurementSet& meas) {
    std::vector<VectorXcd> per_sa(meas.rx_subarrays);
    for (int qr = 0; qr < meas.rx_subarrays; ++qr) per_sa[qr] = meas.reference_column(qr);
    return model_select_metric(per_sa);
}

EstimateResult cross_field_estimate(const SystemConfig& cfg, const MeasurementSet& meas,
                                    const DictionarySet& dicts, const Thresholds& thresholds,
                                    int iterations) {
    if (!std::isfinite(thresholds.near_intermediate) || !std::isfinite(thresholds.intermediate_far))
        throw std::invalid_argument("cross_field_estimate: thresholds not calibrated");
    if (thresholds.intermediate_far < 0 ||
        thresholds.intermediate_far > thresholds.near_intermediate)
        throw std::invalid_argument("cross_field_estimate: need 0 <= γ_H-P <= γ_S-H");

    const double eta = online_metric(meas);
    EstimateResult out;
    if (eta >= thresholds.near_intermediate) {
        out = estimate_swm_rd(cfg, meas, dicts, iterations);
    } else if (eta >= thresholds.intermediate_far) {
        out = estimate_hspwm_rd(cfg, meas, dicts, iterations);
    } else {
        out = estimate_pwm_rd(cfg, meas, dicts, iterations);
    }
    out.method = "cross-field-rd";
    out.metric = eta;
    out.branch_valid = true;
    // continue flag for SWM/HSPWM, stop flag for PWM (already set there)
    return out;
}

EstimateResult hybrid_field_baseline(const SystemConfig& cfg, const MeasurementSet& meas,
                                     const DictionarySet& dicts, HybridOrder order,
                                     int iterations) {
    const auto t0 = clock_type::now();
    const int iters = resolve_iterations(cfg, iterations);
    const int first_iters = iters / 2;           // floor
    const int second_iters = iters - first_iters; // ceil

    const bool far_first = order == HybridOrder::far_then_near;
    const Dictionary& tx1 = far_first ? dicts.angular_tx : dicts.polar_tx;
    const Dictionary& rx1 = far_first ? dicts.angular_rx : dicts.polar_rx;
    const Dictionary& tx2 = far_first ? dicts.polar_tx : dicts.angular_tx;
    const Dictionary& rx2 = far_first ? dicts.polar_rx : dicts.angular_rx;

    const SensingMatrix s1 = assemble_sensing(meas.codebooks.beamformer, meas.codebooks.combiner,
                                              tx1, rx1, meas.transmit_power);
    const SensingMatrix s2 = assemble_sensing(meas.codebooks.beamformer, meas.codebooks.combiner,
                                              tx2, rx2, meas.transmit_power);

    EstimateResult out;
    out.method = far_first ? "hybrid-ff-nf" : "hybrid-nf-ff";
    out.pairs.resize(static_cast<std::size_t>(cfg.rx_subarrays) * cfg.tx_subarrays);
    for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
            const MatrixXcd y = meas.stacked(qr, qt);
            const SompResult r1 = somp(y, s1, first_iters);
            const SompResult r2 = somp(r1.residual, s2, second_iters);
            out.rank_deficient |= r1.rank_deficient || r2.rank_deficient;

            const SaPairEstimate p1 = make_pair_estimate(r1, tx1, rx1);
            const SaPairEstimate p2 = make_pair_estimate(r2, tx2, rx2);
            SaPairEstimate merged;
            const int n1 = static_cast<int>(p1.support.size());
            const int n2 = static_cast<int>(p2.support.size());
            merged.support = p1.support;
            for (int g : p2.support) merged.support.push_back(g + static_cast<int>(s1.cols()));
            merged.coefficients.resize(n1 + n2, cfg.subcarriers);
            merged.coefficients.topRows(n1) = p1.coefficients;
            merged.coefficients.bottomRows(n2) = p2.coefficients;
            merged.tx_atoms.resize(cfg.tx_elements, n1 + n2);
            merged.tx_atoms << p1.tx_atoms, p2.tx_atoms;
            merged.rx_atoms.resize(cfg.rx_elements, n1 + n2);
            merged.rx_atoms << p1.rx_atoms, p2.rx_atoms;
            merged.tx_grid = p1.tx_grid;
            merged.tx_grid.insert(merged.tx_grid.end(), p2.tx_grid.begin(), p2.tx_grid.end());
            merged.rx_grid = p1.rx_grid;
            merged.rx_grid.insert(merged.rx_grid.end(), p2.rx_grid.begin(), p2.rx_grid.end());
            merged.tx_indices = p1.tx_indices;
            merged.tx_indices.insert(merged.tx_indices.end(), p2.tx_indices.begin(),
                                     p2.tx_indices.end());
            merged.rx_indices = p1.rx_indices;
            merged.rx_indices.insert(merged.rx_indices.end(), p2.rx_indices.begin(),
                                     p2.rx_indices.end());
            out.pairs[pair_index(cfg, qr, qt)] = std::move(merged);
        }
    out.reconstructed = reconstruct_channel(cfg, out.pairs);
    out.n_est = (nest_swm_full(cfg, dicts) + nest_hspwm_full(cfg, dicts)) / 2;
    out.tx_pilots_used = cfg.tx_pilots * cfg.tx_subarrays;
    out.rx_pilots_used = cfg.rx_pilots;
    out.wallclock_seconds = seconds_since(t0);
    return out;
}

EstimateResult oracle_ls(const SystemConfig& cfg, const MeasurementSet& meas,
                         const ArrayGeometry& geometry, const PathSet& paths, WaveModel model) {
    const auto t0 = clock_type::now();
    const double lambda = cfg.carrier_wavelength();
    const int n_paths = paths.size();

    EstimateResult out;
    out.method = "oracle-ls";
    out.pairs.resize(static_cast<std::size_t>(cfg.rx_subarrays) * cfg.tx_subarrays);

    // PWM uses the reference-pair parameters everywhere
    std::vector<PathView> reference(n_paths);
    for (int l = 0; l < n_paths; ++l)
        reference[l] = path_view(paths.paths[l], geometry, geometry.tx_subarray_center(0),
                                 geometry.rx_subarray_center(0));

    const double scale = std::sqrt(meas.transmit_power);
    for (int qt = 0; qt < cfg.tx_subarrays; ++qt)
        for (int qr = 0; qr < cfg.rx_subarrays; ++qr) {
            SaPairEstimate pe;
            pe.tx_atoms.resize(cfg.tx_elements, n_paths);
            pe.rx_atoms.resize(cfg.rx_elements, n_paths);
            pe.tx_grid.resize(n_paths);
            pe.rx_grid.resize(n_paths);
            pe.support.resize(n_paths);
            pe.tx_indices.resize(n_paths);
            pe.rx_indices.resize(n_paths);
            for (int l = 0; l < n_paths; ++l) {
                const PathView v =
                    model == WaveModel::pwm
                        ? reference[l]
                        : path_view(paths.paths[l], geometry, geometry.tx_subarray_center(qt),
                                    geometry.rx_subarray_center(qr));
                if (model == WaveModel::swm) {
                    pe.tx_atoms.col(l) = near_field_arv(v.aod, v.tx_distance, cfg.tx_elements,
                                                        cfg.element_spacing_tx(), lambda);
                    pe.rx_atoms.col(l) = near_field_arv(v.aoa, v.rx_distance, cfg.rx_elements,
                                                        cfg.element_spacing_rx(), lambda);
                } else {
                    pe.tx_atoms.col(l) =
                        far_field_arv(v.aod, cfg.tx_elements, cfg.element_spacing_tx(), lambda);
                    pe.rx_atoms.col(l) =
                        far_field_arv(v.aoa, cfg.rx_elements, cfg.element_spacing_rx(), lambda);
                }
                pe.tx_grid[l] = GridPoint{0.0, v.aod, v.tx_distance};
                pe.rx_grid[l] = GridPoint{0.0, v.aoa, v.rx_distance};
                pe.support[l] = l;
                pe.tx_indices[l] = l;
                pe.rx_indices[l] = l;
            }
            // measurement-domain atoms (Zᵀ a_T) ⊗ (Cᴴ a_R), scaled by √P_T
            MatrixXcd sensed(static_cast<Eigen::Index>(cfg.tx_pilots) * cfg.rx_pilots, n_paths);
            for (int l = 0; l < n_paths; ++l) {
                const VectorXcd zt = meas.codebooks.beamformer.transpose() * pe.tx_atoms.col(l);
                const VectorXcd cr = meas.codebooks.combiner.adjoint() * pe.rx_atoms.col(l);
                for (int t = 0; t < cfg.tx_pilots; ++t)
                    sensed.col(l).segment(static_cast<Eigen::Index>(t) * cfg.rx_pilots,
                                          cfg.rx_pilots) = scale * zt[t] * cr;
            }
            Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(sensed);
            out.rank_deficient |= cod.rank() < sensed.cols();
            pe.coefficients = cod.solve(meas.stacked(qr, qt));
            out.pairs[pair_index(cfg, qr, qt)] = std::move(pe);
        }
    out.reconstructed = reconstruct_channel(cfg, out.pairs);
    out.n_est = 0; // not a dictionary search; no closed-form counter applies
    out.tx_pilots_used = cfg.tx_pilots * cfg.tx_subarrays;
    out.rx_pilots_used = cfg.rx_pilots;
    out.wallclock_seconds = seconds_since(t0);
    return out;
}

} // namespace crossfield
