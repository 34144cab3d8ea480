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

#include "crossfield/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crossfield {

namespace {

void write_frames(const std::string& path, const std::vector<MatrixXcd>& frames) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (const MatrixXcd& m : frames)
        out.write(reinterpret_cast<const char*>(m.data()),
                  static_cast<std::streamsize>(sizeof(cxd) * m.size()));
}

} // namespace

void dump_matrices(const std::string& path_stem, const std::vector<MatrixXcd>& frames,
                   const std::string& kind, std::uint64_t seed, const std::string& model_tag) {
    write_frames(path_stem + ".bin", frames);
    nlohmann::json side;
    side["schema"] = "crossfield-arrays-v1";
    side["kind"] = kind;
    side["dtype"] = "complex128";
    side["order"] = "column-major";
    side["seed"] = seed;
    side["model"] = model_tag;
    nlohmann::json dims = nlohmann::json::array();
    for (const MatrixXcd& m : frames) dims.push_back({m.rows(), m.cols()});
    side["frames"] = dims;
    std::ofstream out(path_stem + ".json");
    if (!out) throw std::runtime_error("cannot write '" + path_stem + ".json'");
    out << side.dump(2) << "\n";
}

std::vector<MatrixXcd> load_matrices(const std::string& path_stem) {
    std::ifstream meta(path_stem + ".json");
    if (!meta) throw std::runtime_error("cannot open '" + path_stem + ".json'");
    nlohmann::json side = nlohmann::json::parse(meta);
    std::ifstream in(path_stem + ".bin", std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path_stem + ".bin'");
    std::vector<MatrixXcd> frames;
    for (const auto& dim : side.at("frames")) {
        MatrixXcd m(dim[0].get<Eigen::Index>(), dim[1].get<Eigen::Index>());
        in.read(reinterpret_cast<char*>(m.data()),
                static_cast<std::streamsize>(sizeof(cxd) * m.size()));
        if (!in) throw std::runtime_error("truncated binary payload in '" + path_stem + ".bin'");
        frames.push_back(std::move(m));
    }
    return frames;
}

void dump_dictionary(const std::string& path_stem, const Dictionary& dict) {
    write_frames(path_stem + ".bin", {dict.atoms});
    nlohmann::json side;
    side["schema"] = "crossfield-dictionary-v1";
    side["dtype"] = "complex128";
    side["order"] = "column-major";
    side["rows"] = dict.atoms.rows();
    side["cols"] = dict.atoms.cols();
    side["kind"] = dict.kind == DictionaryKind::angular  ? "angular"
                   : dict.kind == DictionaryKind::polar ? "polar"
                                                        : "reduced";
    nlohmann::json grid = nlohmann::json::array();
    for (const GridPoint& g : dict.grid) {
        nlohmann::json p;
        p["spatial_angle"] = g.spatial_angle;
        p["angle"] = g.angle;
        if (g.far_field())
            p["distance"] = nullptr;
        else
            p["distance"] = g.distance;
        grid.push_back(std::move(p));
    }
    side["grid"] = std::move(grid);
    if (!dict.parent_indices.empty()) side["parent_indices"] = dict.parent_indices;
    std::ofstream out(path_stem + ".json");
    if (!out) throw std::runtime_error("cannot write '" + path_stem + ".json'");
    out << side.dump(2) << "\n";
}

void dump_measurements(const std::string& path_stem, const MeasurementSet& meas) {
    std::vector<MatrixXcd> frames = meas.observations;
    frames.push_back(meas.codebooks.beamformer);
    frames.push_back(meas.codebooks.combiner);
    write_frames(path_stem + ".bin", frames);
    nlohmann::json side;
    side["schema"] = "crossfield-measurements-v1";
    side["dtype"] = "complex128";
    side["order"] = "column-major";
    side["rx_subarrays"] = meas.rx_subarrays;
    side["tx_subarrays"] = meas.tx_subarrays;
    side["subcarriers"] = meas.subcarriers;
    side["transmit_power_w"] = meas.transmit_power;
    side["snr_db"] = meas.snr_db;
    side["noise_seed"] = meas.noise_seed;
    side["codebook_id"] = meas.codebooks.id;
    nlohmann::json dims = nlohmann::json::array();
    for (const MatrixXcd& m : frames) dims.push_back({m.rows(), m.cols()});
    side["frames"] = dims;
    side["layout"] = "observations[(q_r + Q_R*q_t)*K + k], then Z, then C";
    std::ofstream out(path_stem + ".json");
    if (!out) throw std::runtime_error("cannot write '" + path_stem + ".json'");
    out << side.dump(2) << "\n";
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) {
        delete impl_;
        throw std::runtime_error("cannot write '" + path + "'");
    }
    row(header);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) impl_->out << ",";
        impl_->out << cells[i];
    }
    impl_->out << "\n";
}

std::string CsvWriter::num(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

} // namespace crossfield
