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

#include "qsmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace qsmc {
namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream &in, const std::string &source) {
    KeyValueConfig kv;
    kv.source_ = source;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        auto eq = line.find('=');
        std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
        if (!kv.values_.emplace(key, value).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
    }
    return kv;
}

KeyValueConfig KeyValueConfig::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in, path);
}

std::string KeyValueConfig::get_string(const std::string &key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(source_ + ": missing key '" + key + "'");
    return it->second;
}

double KeyValueConfig::get_double(const std::string &key) const {
    std::string v = get_string(key);
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != v.size() || !std::isfinite(d)) {
        throw ConfigError(source_ + ": '" + key + "' must be a number, got '" + v + "'");
    }
    return d;
}

std::uint64_t KeyValueConfig::get_uint(const std::string &key) const {
    std::string v = get_string(key);
    std::size_t used = 0;
    unsigned long long u = 0;
    try {
        if (!v.empty() && v[0] != '-') u = std::stoull(v, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != v.size()) {
        throw ConfigError(source_ + ": '" + key + "' must be a non-negative integer, got '" + v + "'");
    }
    return u;
}

bool KeyValueConfig::get_bool(const std::string &key) const {
    std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(source_ + ": '" + key + "' must be true or false, got '" + v + "'");
}

void KeyValueConfig::reject_unknown(const std::set<std::string> &allowed) const {
    for (const auto &[key, value] : values_) {
        if (!allowed.count(key)) throw ConfigError(source_ + ": unknown key '" + key + "'");
    }
}

void KeyValueConfig::require(const std::vector<std::string> &required) const {
    for (const std::string &key : required) {
        if (!has(key)) throw ConfigError(source_ + ": missing required key '" + key + "'");
    }
}

const std::set<std::string> &protocol_config_keys() {
    static const std::set<std::string> keys = {
        "p0",      "eps",        "class",    "hold",     "family",   "resample_step",
        "K",       "kx",         "ky",       "kz",       "terminal_p", "max_time",
        "dt",      "n_cycles",   "n_trials", "seed",     "initial",  "period",
        "noisy_drives"};
    return keys;
}

std::pair<UncertaintyClass, Axis> parse_uncertainty_class(const std::string &text) {
    if (text == "xy") return {UncertaintyClass::general_xy, Axis::xy};
    if (text == "x") return {UncertaintyClass::single_axis, Axis::x};
    if (text == "y") return {UncertaintyClass::single_axis, Axis::y};
    throw ConfigError("uncertainty class must be xy, x or y, got '" + text + "'");
}

PureState parse_initial_state(const std::string &text) {
    if (text == "0") return PureState::zero();
    if (text == "1") return PureState::one();
    if (text == "plus" || text == "+") return PureState::plus();
    throw ConfigError("initial state must be 0, 1 or plus, got '" + text + "'");
}

ProtocolConfig protocol_config_from(const KeyValueConfig &kv) {
    kv.reject_unknown(protocol_config_keys());
    kv.require({"p0", "eps", "class"});
    if (kv.has("K") && kv.has("ky")) throw ConfigError("give either K or ky, not both");

    ProtocolConfig cfg;
    try {
        cfg.smc = SlidingModeConfig(kv.get_double("p0"), kv.get_double("eps"));
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    std::tie(cfg.uncertainty_class, cfg.axis) = parse_uncertainty_class(kv.get_string("class"));

    if (kv.has("hold")) {
        std::string h = kv.get_string("hold");
        if (h == "none") cfg.hold = HoldNoise::none;
        else if (h == "constant") cfg.hold = HoldNoise::constant;
        else if (h == "uniform_noise") cfg.hold = HoldNoise::uniform_noise;
        else if (h == "random_family") cfg.hold = HoldNoise::random_family;
        else throw ConfigError("hold must be none, constant, uniform_noise or random_family");
    }
    if (kv.has("family")) {
        std::string f = kv.get_string("family");
        if (f == "bangbang") cfg.family = WaveformFamily::bangbang;
        else if (f == "uniform_noise") cfg.family = WaveformFamily::uniform_noise;
        else if (f == "sinusoid") cfg.family = WaveformFamily::sinusoid;
        else if (f == "co_rotating") cfg.family = WaveformFamily::co_rotating;
        else throw ConfigError("family must be bangbang, uniform_noise, sinusoid or co_rotating");
    }
    if (kv.has("resample_step")) cfg.resample_step = kv.get_double("resample_step");
    if (kv.has("K")) cfg.lyapunov.ky = kv.get_double("K");
    if (kv.has("kx")) cfg.lyapunov.kx = kv.get_double("kx");
    if (kv.has("ky")) cfg.lyapunov.ky = kv.get_double("ky");
    if (kv.has("kz")) cfg.lyapunov.kz = kv.get_double("kz");
    if (kv.has("terminal_p")) cfg.lyapunov.terminal_p = kv.get_double("terminal_p");
    if (kv.has("max_time")) cfg.lyapunov.max_time = kv.get_double("max_time");
    if (kv.has("dt")) cfg.integrator.dt = kv.get_double("dt");
    if (kv.has("n_cycles")) cfg.n_cycles = kv.get_uint("n_cycles");
    if (kv.has("n_trials")) cfg.n_trials = kv.get_uint("n_trials");
    if (kv.has("seed")) cfg.seed = kv.get_uint("seed");
    if (kv.has("initial")) cfg.initial = parse_initial_state(kv.get_string("initial"));
    if (kv.has("period")) cfg.period = kv.get_double("period");
    if (kv.has("noisy_drives")) cfg.noisy_drives = kv.get_bool("noisy_drives");

    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

void write_svg_chart(std::ostream &out, const std::vector<ChartSeries> &series,
                     const ChartOptions &opts) {
    const double left = 70, right = 20, top = 40, bottom = 55;
    const double pw = opts.width - left - right;
    const double ph = opts.height - top - bottom;

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const ChartSeries &s : series) {
        if (s.x.size() != s.y.size()) throw std::invalid_argument("chart series x/y size mismatch");
        for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
        for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
    if (opts.y_range) std::tie(y0, y1) = *opts.y_range;
    if (!std::isfinite(x0)) x0 = 0, x1 = 1;
    if (!std::isfinite(y0)) y0 = 0, y1 = 1;
    if (x1 - x0 <= 0) x1 = x0 + 1;
    if (y1 - y0 <= 0) {
        double pad = std::max(std::abs(y0) * 0.05, 1e-12);
        y0 -= pad;
        y1 += pad;
    }
    auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return top + (1.0 - (v - y0) / (y1 - y0)) * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << opts.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << xml_escape(opts.title) << "</text>\n";
    out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
        << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    auto label = [&](double x, double y, const std::string &anchor, const std::string &text,
                     const char *extra = "") {
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" text-anchor=\"" << anchor
            << "\" font-family=\"sans-serif\" font-size=\"11\"" << extra << ">" << xml_escape(text)
            << "</text>\n";
    };
    label(left, top + ph + 16, "start", fmt(x0));
    label(left + pw, top + ph + 16, "end", fmt(x1));
    label(left - 6, top + ph, "end", fmt(y0));
    label(left - 6, top + 10, "end", fmt(y1));
    label(left + pw / 2, opts.height - 14.0, "middle", opts.x_label);
    out << "<text transform=\"translate(18," << fmt(top + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(opts.y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const ChartSeries &s = series[i];
        const char *color = kPalette[i % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (k) out << ' ';
            out << fmt(px(s.x[k])) << ',' << fmt(py(s.y[k]));
        }
        out << "\"><title>" << xml_escape(s.name) << "</title></polyline>\n";
        double ly = top + 14 + 16.0 * static_cast<double>(i);
        out << "<line x1=\"" << fmt(left + pw - 130) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
            << fmt(left + pw - 110) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        label(left + pw - 105, ly, "start", s.name);
    }
    out << "</svg>\n";
}

}  // namespace qsmc
