// Copyright 2026 The qsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmc/protocol.hpp"

namespace qsmc {

/// A malformed or incomplete configuration document.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flat `key = value` document. Blank lines and text after `#` are ignored;
/// duplicate keys are an error.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream &in, const std::string &source = "<config>");
    static KeyValueConfig load(const std::string &path);

    bool has(const std::string &key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string> &values() const { return values_; }

    std::string get_string(const std::string &key) const;
    double get_double(const std::string &key) const;
    std::uint64_t get_uint(const std::string &key) const;
    bool get_bool(const std::string &key) const;

    /// Throws ConfigError naming the first key not in `allowed`.
    void reject_unknown(const std::set<std::string> &allowed) const;
    /// Throws ConfigError naming the first missing key of `required`.
    void require(const std::vector<std::string> &required) const;

private:
    std::string source_;
    std::map<std::string, std::string> values_;
};

/// Keys accepted by protocol_config_from. Required: p0, eps, class.
const std::set<std::string> &protocol_config_keys();

/// Builds and validates a ProtocolConfig. `class` is xy, x or y; `hold` is
/// none, constant, uniform_noise or random_family; `family` is bangbang,
/// uniform_noise, sinusoid or co_rotating; `initial` is 0, 1 or plus; `K` sets
/// the sigma_y gain.
ProtocolConfig protocol_config_from(const KeyValueConfig &kv);

/// Parses xy, x or y into the class and axis they select.
std::pair<UncertaintyClass, Axis> parse_uncertainty_class(const std::string &text);
PureState parse_initial_state(const std::string &text);

struct ChartSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 720;
    int height = 440;
    /// Fixed y range; data range when unset.
    std::optional<std::pair<double, double>> y_range;
};

/// Standalone SVG line chart with one <polyline> per series, axes with end
/// labels, and a legend.
void write_svg_chart(std::ostream &out, const std::vector<ChartSeries> &series,
                     const ChartOptions &opts);

}  // namespace qsmc
