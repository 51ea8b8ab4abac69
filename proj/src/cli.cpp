// Copyright 2026 the backscatter-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "absim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "absim/analysis.hpp"
#include "absim/selftest.hpp"
#include "absim/version.hpp"

namespace absim::cli {

namespace {

using mc::ConfigError;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": not an unsigned integer: '" + v + "'");
  }
  return out;
}

std::vector<double> parse_value_list(const std::string& key,
                                     const std::string& value) {
  std::vector<double> out;
  for (const std::string& part : split(value, ',')) {
    out.push_back(parse_double(key, part));
  }
  return out;
}

std::vector<mc::Detector> parse_detector_list(const std::string& value) {
  std::vector<mc::Detector> out;
  for (const std::string& part : split(value, ',')) {
    const std::string name = trim(part);
    const auto d = mc::parse_detector(name);
    if (!d) {
      throw ConfigError(
          "detectors: unknown detector '" + name +
          "' (valid: secomc, secomc_genie, nocomc, baseline)");
    }
    out.push_back(*d);
  }
  return out;
}

}  // namespace

std::string format_shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_sci6(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 5);
  (void)ec;
  return std::string(buf, ptr);
}

FileConfig parse_config_text(const std::string& text) {
  // Stage 1: raw key/value pairs with duplicate detection.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::size_t hash = raw_line.find('#');
    const std::string line =
        trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
    if (line.empty()) {
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(key + ": duplicate key");
    }
    pairs.emplace_back(key, value);
  }

  // Stage 2: interpret keys. gamma/ps reconciliation happens after the loop
  // because it depends on nw.
  FileConfig fc;
  mc::ExperimentConfig& ex = fc.experiment;
  std::optional<double> gamma_db;
  std::optional<double> gamma_linear;
  std::optional<double> ps;
  std::complex<double> h_st{0.0, 0.0};
  std::complex<double> h_sr{0.0, 0.0};
  std::complex<double> h_tr{0.0, 0.0};
  double eta = 0.5;
  bool fixed_requested = false;

  for (const auto& [key, value] : pairs) {
    if (key == "n") {
      ex.link.N = static_cast<int>(parse_int(key, value));
    } else if (key == "k") {
      ex.link.K = static_cast<int>(parse_int(key, value));
    } else if (key == "t") {
      ex.link.T = static_cast<int>(parse_int(key, value));
    } else if (key == "prior_of_one") {
      ex.link.prior_of_one = parse_double(key, value);
    } else if (key == "gamma_db") {
      gamma_db = parse_double(key, value);
    } else if (key == "gamma_linear") {
      gamma_linear = parse_double(key, value);
    } else if (key == "ps") {
      ps = parse_double(key, value);
    } else if (key == "nw") {
      ex.noise.Nw = parse_double(key, value);
    } else if (key == "source") {
      const std::string v = trim(value);
      if (v == "gaussian") {
        ex.source.kind = SourceKind::complex_gaussian;
      } else if (v == "psk") {
        ex.source.kind = SourceKind::constant_modulus;
      } else {
        throw ConfigError("source: expected 'gaussian' or 'psk', got '" + v +
                          "'");
      }
    } else if (key == "modulation_order") {
      ex.source.modulation_order = static_cast<int>(parse_int(key, value));
    } else if (key == "channel") {
      const std::string v = trim(value);
      if (v == "rayleigh") {
        ex.channel_mode = mc::ChannelMode::rayleigh_random;
      } else if (v == "rcd") {
        ex.channel_mode = mc::ChannelMode::fixed_rcd;
      } else if (v == "fixed") {
        ex.channel_mode = mc::ChannelMode::fixed_channels;
        fixed_requested = true;
      } else {
        throw ConfigError("channel: expected 'rayleigh', 'rcd' or 'fixed', got '" +
                          v + "'");
      }
    } else if (key == "rcd") {
      ex.rcd_value = parse_double(key, value);
    } else if (key == "branch") {
      const std::string v = trim(value);
      if (v == "h0_stronger") {
        ex.rcd_branch = RcdBranch::h0_stronger;
      } else if (v == "h1_stronger") {
        ex.rcd_branch = RcdBranch::h1_stronger;
      } else {
        throw ConfigError(
            "branch: expected 'h0_stronger' or 'h1_stronger', got '" + v + "'");
      }
    } else if (key == "h_st_re") {
      h_st.real(parse_double(key, value));
      fixed_requested = true;
    } else if (key == "h_st_im") {
      h_st.imag(parse_double(key, value));
      fixed_requested = true;
    } else if (key == "h_sr_re") {
      h_sr.real(parse_double(key, value));
      fixed_requested = true;
    } else if (key == "h_sr_im") {
      h_sr.imag(parse_double(key, value));
      fixed_requested = true;
    } else if (key == "h_tr_re") {
      h_tr.real(parse_double(key, value));
      fixed_requested = true;
    } else if (key == "h_tr_im") {
      h_tr.imag(parse_double(key, value));
      fixed_requested = true;
    } else if (key == "eta") {
      eta = parse_double(key, value);
      fixed_requested = true;
    } else if (key == "detectors") {
      ex.detectors = parse_detector_list(value);
    } else if (key == "blocks") {
      ex.blocks = parse_int(key, value);
    } else if (key == "seed") {
      ex.seed = parse_uint(key, value);
    } else if (key == "axis") {
      const auto a = mc::parse_axis(trim(value));
      if (!a) {
        throw ConfigError("axis: unknown axis '" + trim(value) +
                          "' (valid: N, T, gamma_db, rcd, prior)");
      }
      fc.axis = *a;
    } else if (key == "values") {
      fc.values = parse_value_list(key, value);
    } else if (key == "version" || key == "timestamp" || key == "output") {
      // Manifest bookkeeping keys; accepted so a manifest re-runs verbatim.
    } else {
      throw ConfigError(key + ": unknown configuration key");
    }
  }

  if (fixed_requested) {
    // fixed_channel validates eta; channel gain errors surface here with
    // the config vocabulary rather than deep in the library.
    try {
      ex.fixed = fixed_channel(h_st, h_sr, h_tr, eta);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("eta: ") + e.what());
    }
  }

  // gamma/ps reconciliation at fixed nw: explicit gamma wins, then ps;
  // whichever side is missing is derived so the validate() invariant
  // ps = gamma * nw holds by construction.
  if (gamma_linear) {
    ex.link.gamma = *gamma_linear;
  } else if (gamma_db) {
    // The command-line boundary: decibels become linear SNR here.
    ex.link.gamma = std::pow(10.0, *gamma_db / 10.0);
  }
  if (ps) {
    ex.source.Ps = *ps;
    if (!gamma_linear && !gamma_db && ex.noise.Nw > 0.0) {
      ex.link.gamma = ex.source.Ps / ex.noise.Nw;
    }
  } else if ((gamma_linear || gamma_db) && ex.noise.Nw > 0.0) {
    ex.source.Ps = ex.link.gamma * ex.noise.Nw;
  }
  return fc;
}

FileConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("config: cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

std::string render_config_body(const FileConfig& fc) {
  const mc::ExperimentConfig& ex = fc.experiment;
  std::ostringstream out;
  out << "seed = " << ex.seed << "\n";
  out << "blocks = " << ex.blocks << "\n";
  out << "n = " << ex.link.N << "\n";
  out << "k = " << ex.link.K << "\n";
  out << "t = " << ex.link.T << "\n";
  out << "prior_of_one = " << format_shortest(ex.link.prior_of_one) << "\n";
  if (ex.noise.Nw > 0.0 && ex.link.gamma > 0.0) {
    out << "gamma_linear = " << format_shortest(ex.link.gamma) << "\n";
  }
  out << "ps = " << format_shortest(ex.source.Ps) << "\n";
  out << "nw = " << format_shortest(ex.noise.Nw) << "\n";
  out << "source = "
      << (ex.source.kind == SourceKind::complex_gaussian ? "gaussian" : "psk")
      << "\n";
  if (ex.source.kind == SourceKind::constant_modulus) {
    out << "modulation_order = " << ex.source.modulation_order << "\n";
  }
  switch (ex.channel_mode) {
    case mc::ChannelMode::rayleigh_random:
      out << "channel = rayleigh\n";
      break;
    case mc::ChannelMode::fixed_rcd:
      out << "channel = rcd\n";
      out << "rcd = " << format_shortest(ex.rcd_value) << "\n";
      out << "branch = "
          << (ex.rcd_branch == RcdBranch::h0_stronger ? "h0_stronger"
                                                      : "h1_stronger")
          << "\n";
      break;
    case mc::ChannelMode::fixed_channels:
      out << "channel = fixed\n";
      out << "h_st_re = " << format_shortest(ex.fixed.h_st.real()) << "\n";
      out << "h_st_im = " << format_shortest(ex.fixed.h_st.imag()) << "\n";
      out << "h_sr_re = " << format_shortest(ex.fixed.h_sr.real()) << "\n";
      out << "h_sr_im = " << format_shortest(ex.fixed.h_sr.imag()) << "\n";
      out << "h_tr_re = " << format_shortest(ex.fixed.h_tr.real()) << "\n";
      out << "h_tr_im = " << format_shortest(ex.fixed.h_tr.imag()) << "\n";
      out << "eta = " << format_shortest(ex.fixed.eta) << "\n";
      break;
  }
  out << "detectors = ";
  for (std::size_t i = 0; i < ex.detectors.size(); ++i) {
    out << (i ? "," : "") << mc::to_string(ex.detectors[i]);
  }
  out << "\n";
  if (fc.axis) {
    out << "axis = " << mc::to_string(*fc.axis) << "\n";
  }
  if (!fc.values.empty()) {
    out << "values = ";
    for (std::size_t i = 0; i < fc.values.size(); ++i) {
      out << (i ? "," : "") << format_shortest(fc.values[i]);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string render_manifest(const FileConfig& cfg, const std::string& out_csv,
                            const std::string& timestamp) {
  std::ostringstream out;
  out << "# run manifest; re-runnable as a sweep config\n";
  out << "version = " << kVersion << "\n";
  out << "timestamp = " << timestamp << "\n";
  out << "output = " << out_csv << "\n";
  out << render_config_body(cfg);
  return out.str();
}

std::string render_csv(const std::vector<mc::SweepRow>& rows) {
  std::ostringstream out;
  out << "axis,detector,ber_sim,ci95,ber_exact,ber_approx,ber_floor,errors,"
         "trials\n";
  for (const mc::SweepRow& row : rows) {
    out << format_shortest(row.axis_value) << ',' << mc::to_string(row.detector)
        << ',' << format_sci6(row.sim.ber) << ','
        << format_sci6(row.sim.half_width_95) << ','
        << (row.analytic.exact ? format_sci6(*row.analytic.exact) : "") << ','
        << (row.analytic.approx ? format_sci6(*row.analytic.approx) : "")
        << ','
        << (row.analytic.floor ? format_sci6(*row.analytic.floor) : "") << ','
        << row.sim.errors << ',' << row.sim.trials << "\n";
  }
  return out.str();
}

namespace {

struct PlotSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;  // (axis value, ber > 0)
};

std::string fixed2(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  (void)ec;
  return std::string(buf, ptr);
}

const char* detector_color(mc::Detector d) {
  switch (d) {
    case mc::Detector::secomc:
      return "#1f77b4";
    case mc::Detector::secomc_genie:
      return "#2ca02c";
    case mc::Detector::nocomc:
      return "#d62728";
    case mc::Detector::baseline:
      return "#9467bd";
  }
  return "#000000";
}

}  // namespace

std::string render_svg(const std::vector<mc::SweepRow>& rows,
                       mc::SweepAxis axis) {
  std::vector<PlotSeries> series;
  for (mc::Detector d : mc::kAllDetectors) {
    PlotSeries sim;
    sim.label = mc::to_string(d);
    sim.color = detector_color(d);
    PlotSeries exact;
    exact.label = std::string(mc::to_string(d)) + " exact";
    exact.color = detector_color(d);
    exact.dashed = true;
    for (const mc::SweepRow& row : rows) {
      if (row.detector != d) {
        continue;
      }
      if (row.sim.ber > 0.0) {
        sim.points.emplace_back(row.axis_value, row.sim.ber);
      }
      if (row.analytic.exact && *row.analytic.exact > 0.0) {
        exact.points.emplace_back(row.axis_value, *row.analytic.exact);
      }
    }
    if (!sim.points.empty()) {
      series.push_back(std::move(sim));
    }
    if (!exact.points.empty()) {
      series.push_back(std::move(exact));
    }
  }

  double x_min = 0.0, x_max = 1.0, ly_min = -1.0, ly_max = 0.0;
  bool first = true;
  for (const PlotSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      const double ly = std::log10(y);
      if (first) {
        x_min = x_max = x;
        ly_min = ly_max = ly;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        ly_min = std::min(ly_min, ly);
        ly_max = std::max(ly_max, ly);
      }
    }
  }
  ly_min = std::floor(ly_min);
  ly_max = std::ceil(ly_max);
  if (ly_max <= ly_min) {
    ly_max = ly_min + 1.0;
  }
  if (x_max <= x_min) {
    x_max = x_min + 1.0;
  }

  const double width = 720.0, height = 480.0;
  const double left = 70.0, right = 190.0, top = 30.0, bottom = 50.0;
  const double pw = width - left - right, ph = height - top - bottom;
  const auto px = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * pw;
  };
  const auto py = [&](double y) {
    return top + (ly_max - std::log10(y)) / (ly_max - ly_min) * ph;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  // Frame and decade grid.
  out << "<rect x=\"" << fixed2(left) << "\" y=\"" << fixed2(top)
      << "\" width=\"" << fixed2(pw) << "\" height=\"" << fixed2(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = ly_min; d <= ly_max + 0.5; d += 1.0) {
    const double y = top + (ly_max - d) / (ly_max - ly_min) * ph;
    out << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(y)
        << "\" x2=\"" << fixed2(left + pw) << "\" y2=\"" << fixed2(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(y + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  // X ticks at the distinct axis values.
  std::vector<double> xticks;
  for (const PlotSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      (void)y;
      if (std::find(xticks.begin(), xticks.end(), x) == xticks.end()) {
        xticks.push_back(x);
      }
    }
  }
  std::sort(xticks.begin(), xticks.end());
  for (double x : xticks) {
    out << "<line x1=\"" << fixed2(px(x)) << "\" y1=\"" << fixed2(top + ph)
        << "\" x2=\"" << fixed2(px(x)) << "\" y2=\"" << fixed2(top + ph + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed2(px(x)) << "\" y=\"" << fixed2(top + ph + 20)
        << "\" text-anchor=\"middle\">" << format_shortest(x) << "</text>\n";
  }
  out << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\""
      << fixed2(height - 12) << "\" text-anchor=\"middle\">"
      << mc::to_string(axis) << "</text>\n";
  out << "<text transform=\"translate(16," << fixed2(top + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">BER</text>\n";

  // Series polylines, markers, legend.
  double legend_y = top + 10.0;
  for (const PlotSeries& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (const auto& [x, y] : s.points) {
      out << fixed2(px(x)) << ',' << fixed2(py(y)) << ' ';
    }
    out << "\"/>\n";
    if (!s.dashed) {
      for (const auto& [x, y] : s.points) {
        out << "<circle cx=\"" << fixed2(px(x)) << "\" cy=\"" << fixed2(py(y))
            << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      }
    }
    out << "<line x1=\"" << fixed2(left + pw + 14) << "\" y1=\""
        << fixed2(legend_y - 4) << "\" x2=\"" << fixed2(left + pw + 38)
        << "\" y2=\"" << fixed2(legend_y - 4) << "\" stroke=\"" << s.color
        << "\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    out << "<text x=\"" << fixed2(left + pw + 44) << "\" y=\""
        << fixed2(legend_y) << "\">" << s.label << "</text>\n";
    legend_y += 18.0;
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

namespace {

// Writes through a temp file plus rename so readers never observe a partial
// file and interrupted runs leave no output at the final path.
bool write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return false;
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return false;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

std::string utc_timestamp_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int resolve_threads(int flag_value, bool flag_given) {
  if (flag_given) {
    if (flag_value < 1) {
      throw ConfigError("--threads: must be >= 1");
    }
    return flag_value;
  }
  if (const char* env = std::getenv("BACKSCATTER_SIM_THREADS")) {
    const std::string s(env);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
      throw ConfigError("BACKSCATTER_SIM_THREADS: must be an integer >= 1");
    }
    return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct SweepArgs {
  std::string config_path;
  std::string out_stem;
  std::string axis;
  std::string values;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  bool threads_given = false;
  bool plot = false;
};

int cmd_sweep(const SweepArgs& args) {
  FileConfig fc = load_config_file(args.config_path);
  if (!args.axis.empty()) {
    const auto a = mc::parse_axis(args.axis);
    if (!a) {
      throw ConfigError("--axis: unknown axis '" + args.axis +
                        "' (valid: N, T, gamma_db, rcd, prior)");
    }
    fc.axis = *a;
  }
  if (!args.values.empty()) {
    fc.values = parse_value_list("--values", args.values);
  }
  if (args.seed_given) {
    fc.experiment.seed = args.seed;
  }
  if (!fc.axis) {
    throw ConfigError("axis: required (config key 'axis' or flag --axis)");
  }
  if (fc.values.empty()) {
    throw ConfigError("values: required (config key 'values' or flag --values)");
  }
  const int threads = resolve_threads(args.threads, args.threads_given);

  // Pre-flight: every sweep point must validate before anything is written,
  // so a malformed config leaves no partial outputs.
  for (double v : fc.values) {
    mc::apply_axis(fc.experiment, *fc.axis, v).validate();
  }

  const std::string csv_path = args.out_stem + ".csv";
  const std::string manifest_path = args.out_stem + ".manifest";
  if (!write_file_atomic(
          manifest_path,
          render_manifest(fc, csv_path, utc_timestamp_now()))) {
    std::cerr << "error: cannot write " << manifest_path << "\n";
    return 2;
  }
  const std::vector<mc::SweepRow> rows =
      mc::sweep(fc.experiment, *fc.axis, fc.values, threads);
  if (!write_file_atomic(csv_path, render_csv(rows))) {
    std::cerr << "error: cannot write " << csv_path << "\n";
    return 2;
  }
  if (args.plot) {
    const std::string svg_path = args.out_stem + ".svg";
    if (!write_file_atomic(svg_path, render_svg(rows, *fc.axis))) {
      std::cerr << "error: cannot write " << svg_path << "\n";
      return 2;
    }
  }
  return 0;
}

struct AnalyticArgs {
  std::string formula;
  std::optional<double> sigma0, sigma1, h0sq, h1sq, gamma_db, p;
  std::optional<int> n;
};

double require(const std::optional<double>& v, const char* flag) {
  if (!v) {
    throw ConfigError(std::string(flag) + ": required for this formula");
  }
  return *v;
}

int require_n(const std::optional<int>& v) {
  if (!v) {
    throw ConfigError("--n: required for this formula");
  }
  return *v;
}

const char* const kFormulaNames[] = {
    "secomc-exact",       "secomc-approx",      "secomc-clt-floor",
    "secomc-exact-floor", "secomc-det-approx",  "secomc-det-highsnr",
    "baseline-approx",    "nocomc-compose",     "nocomc-exact",
    "nocomc-approx",      "nocomc-clt-floor",   "nocomc-exact-floor",
    "nocomc-det-approx",  "nocomc-det-highsnr",
};

double eval_formula(const AnalyticArgs& a) {
  using namespace absim::analysis;
  const auto gamma = [&] {
    // The command-line boundary: decibels become linear SNR here.
    return std::pow(10.0, require(a.gamma_db, "--gamma-db") / 10.0);
  };
  const std::string& f = a.formula;
  if (f == "secomc-exact") {
    return ber_secomc_gaussian_exact(
        VarPair(require(a.sigma0, "--sigma0"), require(a.sigma1, "--sigma1")),
        require_n(a.n));
  }
  if (f == "nocomc-exact") {
    return ber_nocomc_gaussian_exact(
        VarPair(require(a.sigma0, "--sigma0"), require(a.sigma1, "--sigma1")),
        require_n(a.n));
  }
  if (f == "secomc-approx") {
    return ber_secomc_gaussian_approx(require(a.h0sq, "--h0sq"),
                                      require(a.h1sq, "--h1sq"), gamma(),
                                      require_n(a.n));
  }
  if (f == "nocomc-approx") {
    return ber_nocomc_gaussian_approx(require(a.h0sq, "--h0sq"),
                                      require(a.h1sq, "--h1sq"), gamma(),
                                      require_n(a.n));
  }
  if (f == "secomc-clt-floor") {
    return ber_secomc_gaussian_floor(require(a.h0sq, "--h0sq"),
                                     require(a.h1sq, "--h1sq"),
                                     require_n(a.n));
  }
  if (f == "nocomc-clt-floor") {
    return ber_nocomc_gaussian_floor(require(a.h0sq, "--h0sq"),
                                     require(a.h1sq, "--h1sq"),
                                     require_n(a.n));
  }
  if (f == "secomc-exact-floor") {
    return ber_secomc_gaussian_exact_floor(require(a.h0sq, "--h0sq"),
                                           require(a.h1sq, "--h1sq"),
                                           require_n(a.n));
  }
  if (f == "nocomc-exact-floor") {
    return ber_nocomc_gaussian_exact_floor(require(a.h0sq, "--h0sq"),
                                           require(a.h1sq, "--h1sq"),
                                           require_n(a.n));
  }
  if (f == "baseline-approx") {
    return ber_baseline_gaussian_approx(require(a.h0sq, "--h0sq"),
                                        require(a.h1sq, "--h1sq"), gamma(),
                                        require_n(a.n));
  }
  if (f == "secomc-det-approx") {
    return ber_secomc_deterministic_approx(require(a.h0sq, "--h0sq"),
                                           require(a.h1sq, "--h1sq"), gamma(),
                                           require_n(a.n));
  }
  if (f == "nocomc-det-approx") {
    return ber_nocomc_deterministic_approx(require(a.h0sq, "--h0sq"),
                                           require(a.h1sq, "--h1sq"), gamma(),
                                           require_n(a.n));
  }
  if (f == "secomc-det-highsnr") {
    return ber_secomc_deterministic_highsnr(require(a.h0sq, "--h0sq"),
                                            require(a.h1sq, "--h1sq"),
                                            gamma(), require_n(a.n));
  }
  if (f == "nocomc-det-highsnr") {
    return ber_nocomc_deterministic_highsnr(require(a.h0sq, "--h0sq"),
                                            require(a.h1sq, "--h1sq"),
                                            gamma(), require_n(a.n));
  }
  if (f == "nocomc-compose") {
    return ber_nocomc_from_secomc(require(a.p, "--p"));
  }
  std::string names;
  for (const char* name : kFormulaNames) {
    names += std::string(names.empty() ? "" : ", ") + name;
  }
  throw ConfigError("formula: unknown '" + f + "' (valid: " + names + ")");
}

int cmd_analytic(const AnalyticArgs& args) {
  std::cout << format_shortest(eval_formula(args)) << "\n";
  return 0;
}

}  // namespace

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"ambient backscatter link-level BER simulator"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a parameter sweep and write CSV + manifest");
  sweep->add_option("config", sweep_args.config_path, "experiment config file")
      ->required();
  sweep->add_option("--out", sweep_args.out_stem,
                    "output stem (writes <out>.csv and <out>.manifest)")
      ->required();
  sweep->add_option("--axis", sweep_args.axis,
                    "sweep axis: N, T, gamma_db, rcd, prior");
  sweep->add_option("--values", sweep_args.values,
                    "comma-separated axis values");
  CLI::Option* seed_opt =
      sweep->add_option("--seed", sweep_args.seed, "experiment seed override");
  CLI::Option* threads_opt = sweep->add_option(
      "--threads", sweep_args.threads,
      "worker cap (default: BACKSCATTER_SIM_THREADS or hardware)");
  sweep->add_flag("--plot", sweep_args.plot, "also write <out>.svg");

  AnalyticArgs an;
  CLI::App* analytic = app.add_subcommand(
      "analytic", "print one closed-form BER value");
  analytic->add_option("formula,--formula", an.formula, "formula name");
  analytic->add_option("--sigma0", an.sigma0, "per-sample variance, h0 side");
  analytic->add_option("--sigma1", an.sigma1, "per-sample variance, h1 side");
  analytic->add_option("--h0sq", an.h0sq, "|h0|^2");
  analytic->add_option("--h1sq", an.h1sq, "|h1|^2");
  analytic->add_option("--gamma-db", an.gamma_db, "SNR in dB");
  analytic->add_option("--n", an.n, "samples per half-interval");
  analytic->add_option("--p", an.p, "Manchester-detector BER to compose");

  CLI::App* selftest_cmd = app.add_subcommand(
      "selftest", "run the built-in fast acceptance subset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) {
      sweep_args.seed_given = seed_opt->count() > 0;
      sweep_args.threads_given = threads_opt->count() > 0;
      return cmd_sweep(sweep_args);
    }
    if (analytic->parsed()) {
      if (an.formula.empty()) {
        throw ConfigError("formula: required (positional or --formula)");
      }
      return cmd_analytic(an);
    }
    if (selftest_cmd->parsed()) {
      return absim::selftest::run_and_print(std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace absim::cli
