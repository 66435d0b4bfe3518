#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "spectail/laws.hpp"
#include "spectail/models.hpp"

namespace spectail {

enum class Command {
  Spectrum,
  Tail,
  Distribution,
  PointProcess,
  SpikeSweep,
  Rate,
  CouplingCheck,
};

enum class OutputFormat { Csv, Jsonl };

// One experiment run. Fields irrelevant to the chosen command keep their
// defaults; render_config emits exactly the keys the command accepts, so
// parse(render(c)) == c on every valid config.
struct RunConfig {
  Command command = Command::Tail;
  ModelKind model = ModelKind::H;
  std::size_t N = 1000;
  double alpha = 0.5;
  PotentialLaw law = pareto_law(1.0, 2.0);
  double beta_ens = 1.0;                  // GBeta ensemble parameter
  double lambda = 3.0;                    // tail threshold
  std::uint64_t trials = 10000;
  std::uint64_t draws = 100;              // coupling-check repetitions
  double scale_power = 0.0;               // distribution: value = N^p * lambda_1
  std::size_t top_d = 16;                 // pointprocess depth
  double threshold = 1.0;                 // pointprocess truncation
  std::vector<std::pair<double, double>> intervals = {
      {1.0, 2.0}, {2.0, 4.0}, {4.0, std::numeric_limits<double>::infinity()}};
  std::vector<double> grid;               // rate lambdas / spike-sweep Ms
  std::uint64_t seed = 0;
  unsigned workers = 0;                   // 0 = hardware concurrency
  std::string out;                        // empty = <command>.<format extension>
  OutputFormat format = OutputFormat::Csv;
};

bool operator==(const RunConfig& a, const RunConfig& b);
inline bool operator!=(const RunConfig& a, const RunConfig& b) { return !(a == b); }

std::string command_name(Command command);
Command parse_command(const std::string& name);
std::string model_name(ModelKind kind);
ModelKind parse_model(const std::string& name);  // case-insensitive
std::string format_name(OutputFormat format);
OutputFormat parse_format(const std::string& name);

// Grid syntax: "lo:step:hi" (inclusive arithmetic progression) or a comma
// list "a,b,c". Rendered canonically as the comma list.
std::vector<double> parse_grid(const std::string& text);
std::string render_grid(const std::vector<double>& grid);

// Interval syntax: "(c,d) (c,d) ..." with optional commas between pairs;
// d may be "inf". Each pair must satisfy 0 < c < d.
std::vector<std::pair<double, double>> parse_intervals(const std::string& text);
std::string render_intervals(const std::vector<std::pair<double, double>>& intervals);

// Config document: one [command] section followed by key = value lines;
// '#' starts a comment. Unknown keys, keys foreign to the command, duplicate
// keys, and domain violations are errors carrying the line number and key.
RunConfig parse_config(const std::string& text);

// Canonical document: section header plus the command's keys in a fixed
// order, floats at 17 significant digits. Empty `out` and empty `grid` are
// omitted (they mean "default").
std::string render_config(const RunConfig& config);

// The key/value pairs render_config writes, in order; reused by the run
// manifest so the echoed config matches the file format exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

// Keys the command's section accepts, in canonical order.
std::vector<std::string> config_keys(Command command);

// Parse one value with the config-file grammar and store it. Rejects keys
// the config's command does not accept. CLI flag overrides route through
// this so flags and files cannot drift apart.
void apply_key(RunConfig& config, const std::string& key, const std::string& value);

// Domain checks shared by parse_config and the CLI (ranges, cross-field
// requirements). Throws std::invalid_argument on the first violation.
void validate_config(const RunConfig& config);

}  // namespace spectail
