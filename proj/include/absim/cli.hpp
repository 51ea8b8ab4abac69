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
//
// Command-line front end: flat key=value experiment configs, sweep
// execution, CSV/manifest/SVG emission. Exposed as a library (main_entry
// instead of main) so tests can drive the full command surface in-process.
//
// Exit codes: 0 success, 1 malformed configuration or invocation (the
// message names the offending key), 2 I/O failure, 3 selftest failure.

#ifndef ABSIM_CLI_HPP
#define ABSIM_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include "absim/montecarlo.hpp"

namespace absim::cli {

// A parsed configuration file: the experiment itself plus the optional
// sweep directives (axis/values), which command-line flags may override.
// Manifests parse with the same function; their extra bookkeeping keys
// (version, timestamp, output) are accepted and ignored, which is what
// makes a manifest directly re-runnable.
struct FileConfig {
  mc::ExperimentConfig experiment;
  std::optional<mc::SweepAxis> axis;
  std::vector<double> values;
};

// Grammar: one `key = value` per line, `#` starts a comment, blank lines
// ignored. Unknown or duplicated keys throw mc::ConfigError naming the key.
FileConfig parse_config_text(const std::string& text);

// Reads and parses a config file. An unreadable path is a malformed-config
// error (exit 1 at the command level), not an I/O error: nothing has been
// written yet and the contract is "no partial output files".
FileConfig load_config_file(const std::string& path);

// Locale-independent float formatting (std::to_chars): shortest
// round-trip form, and scientific with 6 significant digits for CSV cells.
std::string format_shortest(double value);
std::string format_sci6(double value);

// CSV table for sweep rows; header
// axis,detector,ber_sim,ci95,ber_exact,ber_approx,ber_floor,errors,trials.
// Analytic cells are empty where no formula applies. Raw counts let
// downstream tooling re-derive confidence intervals exactly.
std::string render_csv(const std::vector<mc::SweepRow>& rows);

// Manifest: the full config snapshot in config grammar (so it re-runs
// as-is) plus version, timestamp, and output keys.
std::string render_manifest(const FileConfig& cfg, const std::string& out_csv,
                            const std::string& timestamp);

// Self-contained SVG plot: BER (log10 scale) against the axis, one
// polyline per detector for the simulated points, dashed for the exact
// analytic curve where present. Zero-BER points cannot be drawn on a log
// axis and are skipped.
std::string render_svg(const std::vector<mc::SweepRow>& rows,
                       mc::SweepAxis axis);

// Full command surface; argv[0] is the program name as usual.
int main_entry(int argc, const char* const* argv);

}  // namespace absim::cli

#endif  // ABSIM_CLI_HPP
