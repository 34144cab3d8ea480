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

#ifndef CROSSFIELD_IO_HPP
#define CROSSFIELD_IO_HPP

#include "crossfield/dictionary.hpp"
#include "crossfield/sounding.hpp"

#include <string>
#include <vector>

namespace crossfield {

/// Binary export of complex matrices: raw column-major complex128 frames
/// concatenated in `path`.bin plus a JSON sidecar `path`.json describing
/// dtype, order, per-frame dimensions and caller metadata.
void dump_matrices(const std::string& path_stem, const std::vector<MatrixXcd>& frames,
                   const std::string& kind, std::uint64_t seed, const std::string& model_tag);

std::vector<MatrixXcd> load_matrices(const std::string& path_stem);

/// Dictionary export: atoms as one binary frame, grid metadata in the
/// sidecar.
void dump_dictionary(const std::string& path_stem, const Dictionary& dict);

void dump_measurements(const std::string& path_stem, const MeasurementSet& meas);

/// Minimal CSV writer; values are rendered with enough digits to round-trip.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    void row(const std::vector<std::string>& cells);
    static std::string num(double v);

  private:
    struct Impl;
    Impl* impl_;
};

} // namespace crossfield

#endif
