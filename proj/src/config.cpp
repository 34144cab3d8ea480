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

#include "crossfield/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crossfield {

double AbsorptionModel::coefficient(double frequency) const {
    switch (mode) {
    case Mode::disabled:
        return 0.0;
    case Mode::constant_value:
        return std::max(0.0, constant);
    case Mode::table: {
        if (samples.empty()) return 0.0;
        if (frequency <= samples.front().first) return std::max(0.0, samples.front().second);
        if (frequency >= samples.back().first) return std::max(0.0, samples.back().second);
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (frequency <= samples[i].first) {
                const auto& [f0, k0] = samples[i - 1];
                const auto& [f1, k1] = samples[i];
                const double t = (frequency - f0) / (f1 - f0);
                return std::max(0.0, k0 + t * (k1 - k0));
            }
        }
        return std::max(0.0, samples.back().second);
    }
    }
    return 0.0;
}

AbsorptionModel AbsorptionModel::constant_model(double value) {
    AbsorptionModel m;
    m.mode = Mode::constant_value;
    m.constant = value;
    return m;
}

AbsorptionModel AbsorptionModel::table_model(std::vector<std::pair<double, double>> samples) {
    AbsorptionModel m;
    m.mode = Mode::table;
    std::sort(samples.begin(), samples.end());
    m.samples = std::move(samples);
    return m;
}

double SystemConfig::subcarrier_frequency(int k) const {
    if (k < 1 || k > subcarriers) throw std::invalid_argument("subcarrier index out of range");
    return carrier_frequency +
           bandwidth / subcarriers * (k - (subcarriers - 1) / 2.0);
}

double SystemConfig::element_spacing_tx() const {
    return tx_element_spacing > 0 ? tx_element_spacing : carrier_wavelength() / 2.0;
}
double SystemConfig::element_spacing_rx() const {
    return rx_element_spacing > 0 ? rx_element_spacing : carrier_wavelength() / 2.0;
}
double SystemConfig::subarray_spacing_tx() const {
    return tx_subarray_spacing > 0 ? tx_subarray_spacing : tx_elements * element_spacing_tx();
}
double SystemConfig::subarray_spacing_rx() const {
    return rx_subarray_spacing > 0 ? rx_subarray_spacing : rx_elements * element_spacing_rx();
}

double SystemConfig::coherence_time_symbols() const {
    if (coherence_symbols > 0) return coherence_symbols;
    return 2.0 * rx_subarrays * tx_subarrays * static_cast<double>(rx_elements) * tx_elements;
}

std::vector<std::string> SystemConfig::validate() const {
    std::vector<std::string> errors;
    auto bad = [&](const std::string& msg) { errors.push_back(msg); };

    if (carrier_frequency <= 0) bad("carrier frequency must be positive");
    if (bandwidth < 0) bad("bandwidth must be non-negative");
    if (subcarriers < 1) bad("at least one subcarrier required");
    if (tx_subarrays < 1 || rx_subarrays < 1) bad("subarray counts must be >= 1");
    if (tx_elements < 1 || rx_elements < 1) bad("element counts must be >= 1");
    if (element_spacing_tx() <= 0 || element_spacing_rx() <= 0) bad("element spacing must be positive");
    if (subarray_spacing_tx() <= 0 || subarray_spacing_rx() <= 0) bad("subarray spacing must be positive");
    // adjacent subarrays must not overlap
    if (tx_subarrays > 1 && subarray_spacing_tx() < tx_elements * element_spacing_tx())
        bad("tx subarrays overlap: spacing < elements * element spacing");
    if (rx_subarrays > 1 && subarray_spacing_rx() < rx_elements * element_spacing_rx())
        bad("rx subarrays overlap: spacing < elements * element spacing");
    if (tx_phase_bits < 1 || rx_phase_bits < 1) bad("phase shifter bits must be >= 1");
    if (tx_pilots < 1 || rx_pilots < 1) bad("pilot counts must be >= 1");
    if (noise_power < 0) bad("noise power must be non-negative");
    if (transmit_power <= 0) bad("transmit power must be positive");
    if (path_count < 1) bad("path count must be >= 1");
    if (pursuit_paths < 0) bad("pursuit iteration count must be >= 0");
    if (polar_coherence <= 0) bad("polar coherence parameter must be positive");
    if (!(polar_min_distance > 0) || !(polar_max_distance > polar_min_distance))
        bad("polar distances must satisfy 0 < d_min < d_max");
    if (oversampling < 1) bad("oversampling factor must be >= 1");
    if (streams < 1 || streams > std::min(tx_subarrays, rx_subarrays))
        bad("stream count must be in [1, min(Q_T, Q_R)]");
    return errors;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': cannot parse number '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config key '" + key + "': trailing junk in '" + v + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    double d = parse_double(key, v);
    if (d != std::floor(d)) throw std::invalid_argument("config key '" + key + "': expected integer");
    return static_cast<int>(d);
}

std::vector<std::pair<double, double>> parse_table(const std::string& key, const std::string& v) {
    // "f1:k1,f2:k2,..."
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("config key '" + key + "': expected f:value pairs");
        out.emplace_back(parse_double(key, trim(item.substr(0, colon))),
                         parse_double(key, trim(item.substr(colon + 1))));
    }
    if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty table");
    return out;
}

} // namespace

SystemConfig parse_config(const std::string& text) {
    SystemConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "carrier_frequency_hz") cfg.carrier_frequency = parse_double(key, value);
        else if (key == "bandwidth_hz") cfg.bandwidth = parse_double(key, value);
        else if (key == "subcarriers") cfg.subcarriers = parse_int(key, value);
        else if (key == "tx_subarrays") cfg.tx_subarrays = parse_int(key, value);
        else if (key == "rx_subarrays") cfg.rx_subarrays = parse_int(key, value);
        else if (key == "tx_elements") cfg.tx_elements = parse_int(key, value);
        else if (key == "rx_elements") cfg.rx_elements = parse_int(key, value);
        else if (key == "tx_element_spacing_m") cfg.tx_element_spacing = parse_double(key, value);
        else if (key == "rx_element_spacing_m") cfg.rx_element_spacing = parse_double(key, value);
        else if (key == "tx_subarray_spacing_m") cfg.tx_subarray_spacing = parse_double(key, value);
        else if (key == "rx_subarray_spacing_m") cfg.rx_subarray_spacing = parse_double(key, value);
        else if (key == "tx_phase_bits") cfg.tx_phase_bits = parse_int(key, value);
        else if (key == "rx_phase_bits") cfg.rx_phase_bits = parse_int(key, value);
        else if (key == "tx_pilots") cfg.tx_pilots = parse_int(key, value);
        else if (key == "rx_pilots") cfg.rx_pilots = parse_int(key, value);
        else if (key == "transmit_power_w") cfg.transmit_power = parse_double(key, value);
        else if (key == "noise_power_w") cfg.noise_power = parse_double(key, value);
        else if (key == "noise_power_dbm") cfg.noise_power = dbm_to_watt(parse_double(key, value));
        else if (key == "path_count") cfg.path_count = parse_int(key, value);
        else if (key == "pursuit_paths") cfg.pursuit_paths = parse_int(key, value);
        else if (key == "path_loss_exponent") cfg.path_loss_exponent = parse_double(key, value);
        else if (key == "refractive_index_real") cfg.refractive_index.real(parse_double(key, value));
        else if (key == "refractive_index_imag") cfg.refractive_index.imag(parse_double(key, value));
        else if (key == "roughness_m") cfg.roughness = parse_double(key, value);
        else if (key == "absorption_mode") {
            if (value == "disabled") cfg.absorption.mode = AbsorptionModel::Mode::disabled;
            else if (value == "constant") cfg.absorption.mode = AbsorptionModel::Mode::constant_value;
            else if (value == "table") cfg.absorption.mode = AbsorptionModel::Mode::table;
            else throw std::invalid_argument("absorption_mode: unknown mode '" + value + "'");
        } else if (key == "absorption_constant") cfg.absorption.constant = parse_double(key, value);
        else if (key == "absorption_table") cfg.absorption.samples = parse_table(key, value);
        else if (key == "tx_angular_grid") cfg.tx_angular_grid = parse_int(key, value);
        else if (key == "rx_angular_grid") cfg.rx_angular_grid = parse_int(key, value);
        else if (key == "polar_coherence") cfg.polar_coherence = parse_double(key, value);
        else if (key == "polar_min_distance_m") cfg.polar_min_distance = parse_double(key, value);
        else if (key == "polar_max_distance_m") cfg.polar_max_distance = parse_double(key, value);
        else if (key == "oversampling") cfg.oversampling = parse_int(key, value);
        else if (key == "tx_rd_columns") cfg.tx_rd_columns = parse_int(key, value);
        else if (key == "rx_rd_columns") cfg.rx_rd_columns = parse_int(key, value);
        else if (key == "tx_rd_columns_polar") cfg.tx_rd_columns_polar = parse_int(key, value);
        else if (key == "rx_rd_columns_polar") cfg.rx_rd_columns_polar = parse_int(key, value);
        else if (key == "streams") cfg.streams = parse_int(key, value);
        else if (key == "coherence_symbols") cfg.coherence_symbols = parse_double(key, value);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    std::sort(cfg.absorption.samples.begin(), cfg.absorption.samples.end());
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const SystemConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "carrier_frequency_hz = " << cfg.carrier_frequency << "\n";
    out << "bandwidth_hz = " << cfg.bandwidth << "\n";
    out << "subcarriers = " << cfg.subcarriers << "\n";
    out << "tx_subarrays = " << cfg.tx_subarrays << "\n";
    out << "rx_subarrays = " << cfg.rx_subarrays << "\n";
    out << "tx_elements = " << cfg.tx_elements << "\n";
    out << "rx_elements = " << cfg.rx_elements << "\n";
    out << "tx_element_spacing_m = " << cfg.element_spacing_tx() << "\n";
    out << "rx_element_spacing_m = " << cfg.element_spacing_rx() << "\n";
    out << "tx_subarray_spacing_m = " << cfg.subarray_spacing_tx() << "\n";
    out << "rx_subarray_spacing_m = " << cfg.subarray_spacing_rx() << "\n";
    out << "tx_phase_bits = " << cfg.tx_phase_bits << "\n";
    out << "rx_phase_bits = " << cfg.rx_phase_bits << "\n";
    out << "tx_pilots = " << cfg.tx_pilots << "\n";
    out << "rx_pilots = " << cfg.rx_pilots << "\n";
    out << "transmit_power_w = " << cfg.transmit_power << "\n";
    out << "noise_power_w = " << cfg.noise_power << "\n";
    out << "path_count = " << cfg.path_count << "\n";
    out << "pursuit_paths = " << cfg.pursuit_paths << "\n";
    out << "path_loss_exponent = " << cfg.path_loss_exponent << "\n";
    out << "refractive_index_real = " << cfg.refractive_index.real() << "\n";
    out << "refractive_index_imag = " << cfg.refractive_index.imag() << "\n";
    out << "roughness_m = " << cfg.roughness << "\n";
    switch (cfg.absorption.mode) {
    case AbsorptionModel::Mode::disabled: out << "absorption_mode = disabled\n"; break;
    case AbsorptionModel::Mode::constant_value:
        out << "absorption_mode = constant\n";
        out << "absorption_constant = " << cfg.absorption.constant << "\n";
        break;
    case AbsorptionModel::Mode::table: {
        out << "absorption_mode = table\n";
        out << "absorption_table = ";
        for (std::size_t i = 0; i < cfg.absorption.samples.size(); ++i) {
            if (i) out << ",";
            out << cfg.absorption.samples[i].first << ":" << cfg.absorption.samples[i].second;
        }
        out << "\n";
        break;
    }
    }
    out << "tx_angular_grid = " << cfg.angular_grid_tx() << "\n";
    out << "rx_angular_grid = " << cfg.angular_grid_rx() << "\n";
    out << "polar_coherence = " << cfg.polar_coherence << "\n";
    out << "polar_min_distance_m = " << cfg.polar_min_distance << "\n";
    out << "polar_max_distance_m = " << cfg.polar_max_distance << "\n";
    out << "oversampling = " << cfg.oversampling << "\n";
    out << "tx_rd_columns = " << cfg.tx_rd_columns << "\n";
    out << "rx_rd_columns = " << cfg.rx_rd_columns << "\n";
    out << "tx_rd_columns_polar = " << cfg.tx_rd_columns_polar << "\n";
    out << "rx_rd_columns_polar = " << cfg.rx_rd_columns_polar << "\n";
    out << "streams = " << cfg.streams << "\n";
    out << "coherence_symbols = " << cfg.coherence_time_symbols() << "\n";
    return out.str();
}

} // namespace crossfield
