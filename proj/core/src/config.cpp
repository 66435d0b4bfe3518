#include "spectail/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "format_util.hpp"

namespace spectail {

namespace {

using detail::fmt17;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double to_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t.empty()) fail(what + ": empty number");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) fail(what + ": not a number: '" + t + "'");
  if (!std::isfinite(v)) fail(what + ": must be finite: '" + t + "'");
  return v;
}

std::uint64_t to_u64(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  if (t.empty() || t[0] == '-' || t[0] == '+') {
    fail(what + ": expected an unsigned integer: '" + t + "'");
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) {
    fail(what + ": expected an unsigned integer: '" + t + "'");
  }
  return static_cast<std::uint64_t>(v);
}

const std::vector<std::string>& keys_for(Command command) {
  static const std::vector<std::string> spectrum = {
      "model", "N", "alpha", "law", "beta_ens", "seed", "out", "format"};
  static const std::vector<std::string> tail = {
      "model", "N",       "alpha", "law",     "beta_ens", "lambda",
      "trials", "seed",   "workers", "out",   "format"};
  static const std::vector<std::string> distribution = {
      "model",  "N",    "alpha",   "law", "beta_ens", "trials",
      "scale_power", "seed", "workers", "out", "format"};
  static const std::vector<std::string> pointprocess = {
      "model", "N",         "alpha",     "law",  "beta_ens", "trials", "top_d",
      "threshold", "intervals", "seed", "workers", "out",    "format"};
  static const std::vector<std::string> sweep = {"model", "N",   "grid",
                                                 "seed",  "out", "format"};
  static const std::vector<std::string> rate = {"law", "grid", "out", "format"};
  static const std::vector<std::string> coupling = {
      "N", "alpha", "law", "draws", "seed", "workers", "out", "format"};
  switch (command) {
    case Command::Spectrum: return spectrum;
    case Command::Tail: return tail;
    case Command::Distribution: return distribution;
    case Command::PointProcess: return pointprocess;
    case Command::SpikeSweep: return sweep;
    case Command::Rate: return rate;
    case Command::CouplingCheck: return coupling;
  }
  fail("keys_for: unknown command");
}

void assign_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "model") {
    c.model = parse_model(value);
  } else if (key == "N") {
    c.N = static_cast<std::size_t>(to_u64(value, key));
  } else if (key == "alpha") {
    c.alpha = to_double(value, key);
  } else if (key == "law") {
    c.law = parse_law(value);
  } else if (key == "beta_ens") {
    c.beta_ens = to_double(value, key);
  } else if (key == "lambda") {
    c.lambda = to_double(value, key);
  } else if (key == "trials") {
    c.trials = to_u64(value, key);
  } else if (key == "draws") {
    c.draws = to_u64(value, key);
  } else if (key == "scale_power") {
    c.scale_power = to_double(value, key);
  } else if (key == "top_d") {
    c.top_d = static_cast<std::size_t>(to_u64(value, key));
  } else if (key == "threshold") {
    c.threshold = to_double(value, key);
  } else if (key == "intervals") {
    c.intervals = parse_intervals(value);
  } else if (key == "grid") {
    c.grid = parse_grid(value);
  } else if (key == "seed") {
    c.seed = to_u64(value, key);
  } else if (key == "workers") {
    c.workers = static_cast<unsigned>(to_u64(value, key));
  } else if (key == "out") {
    c.out = trim(value);
  } else if (key == "format") {
    c.format = parse_format(value);
  } else {
    fail("unhandled key '" + key + "'");
  }
}

std::string value_of(const RunConfig& c, const std::string& key) {
  if (key == "model") return model_name(c.model);
  if (key == "N") return std::to_string(c.N);
  if (key == "alpha") return fmt17(c.alpha);
  if (key == "law") return render_law(c.law);
  if (key == "beta_ens") return fmt17(c.beta_ens);
  if (key == "lambda") return fmt17(c.lambda);
  if (key == "trials") return std::to_string(c.trials);
  if (key == "draws") return std::to_string(c.draws);
  if (key == "scale_power") return fmt17(c.scale_power);
  if (key == "top_d") return std::to_string(c.top_d);
  if (key == "threshold") return fmt17(c.threshold);
  if (key == "intervals") return render_intervals(c.intervals);
  if (key == "grid") return render_grid(c.grid);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "workers") return std::to_string(c.workers);
  if (key == "out") return c.out;
  if (key == "format") return format_name(c.format);
  fail("value_of: unhandled key '" + key + "'");
}

void validate(const RunConfig& c) {
  auto bad = [](const std::string& key, const std::string& why) {
    fail("invalid value for '" + key + "': " + why);
  };
  if (c.N < 2) bad("N", "must be >= 2");
  if (!(c.alpha >= 0.0)) bad("alpha", "must be >= 0");
  if (!(c.beta_ens > 0.0)) bad("beta_ens", "must be > 0");
  if (c.trials == 0) bad("trials", "must be >= 1");
  if (c.draws == 0) bad("draws", "must be >= 1");
  if (c.top_d == 0) bad("top_d", "must be >= 1");
  if (c.command == Command::PointProcess && c.top_d > c.N) {
    bad("top_d", "must not exceed N");
  }
  for (const auto& [lo, hi] : c.intervals) {
    if (!(lo > 0.0) || !(hi > lo)) bad("intervals", "need 0 < c < d in every pair");
  }
  if (c.command == Command::SpikeSweep) {
    if (c.model == ModelKind::GBeta) bad("model", "spike-sweep supports H and G");
    for (double m : c.grid) {
      if (!(m > 0.0)) bad("grid", "spike magnitudes must be > 0");
    }
  }
  if (c.command == Command::Rate) {
    if (right_tail(c.law).kind == LawKind::Constant) {
      bad("law", "rate needs a law with a nondegenerate right tail");
    }
    for (double x : c.grid) {
      if (!(x > 2.0)) bad("grid", "rate lambdas must exceed 2");
    }
  }
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.command == b.command && a.model == b.model && a.N == b.N &&
         a.alpha == b.alpha && a.law == b.law && a.beta_ens == b.beta_ens &&
         a.lambda == b.lambda && a.trials == b.trials && a.draws == b.draws &&
         a.scale_power == b.scale_power && a.top_d == b.top_d &&
         a.threshold == b.threshold && a.intervals == b.intervals &&
         a.grid == b.grid && a.seed == b.seed && a.workers == b.workers &&
         a.out == b.out && a.format == b.format;
}

std::string command_name(Command command) {
  switch (command) {
    case Command::Spectrum: return "spectrum";
    case Command::Tail: return "tail";
    case Command::Distribution: return "distribution";
    case Command::PointProcess: return "pointprocess";
    case Command::SpikeSweep: return "spike-sweep";
    case Command::Rate: return "rate";
    case Command::CouplingCheck: return "coupling-check";
  }
  fail("command_name: unknown command");
}

Command parse_command(const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "spectrum") return Command::Spectrum;
  if (n == "tail") return Command::Tail;
  if (n == "distribution") return Command::Distribution;
  if (n == "pointprocess") return Command::PointProcess;
  if (n == "spike-sweep") return Command::SpikeSweep;
  if (n == "rate") return Command::Rate;
  if (n == "coupling-check") return Command::CouplingCheck;
  fail("unknown command '" + trim(name) +
       "' (expected spectrum, tail, distribution, pointprocess, spike-sweep, "
       "rate, or coupling-check)");
}

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::H: return "H";
    case ModelKind::G: return "G";
    case ModelKind::GBeta: return "GBeta";
  }
  fail("model_name: unknown model");
}

ModelKind parse_model(const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "h") return ModelKind::H;
  if (n == "g") return ModelKind::G;
  if (n == "gbeta") return ModelKind::GBeta;
  fail("unknown model '" + trim(name) + "' (expected H, G, or GBeta)");
}

std::string format_name(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "jsonl";
}

OutputFormat parse_format(const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "csv") return OutputFormat::Csv;
  if (n == "jsonl") return OutputFormat::Jsonl;
  fail("unknown format '" + trim(name) + "' (expected csv or jsonl)");
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) fail("grid: empty specification");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    std::istringstream in(t);
    std::string lo_s, step_s, hi_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, step_s, ':') ||
        !std::getline(in, hi_s) || hi_s.find(':') != std::string::npos) {
      fail("grid: range form is lo:step:hi, got '" + t + "'");
    }
    const double lo = to_double(lo_s, "grid");
    const double step = to_double(step_s, "grid");
    const double hi = to_double(hi_s, "grid");
    if (!(step > 0.0)) fail("grid: step must be > 0");
    if (hi < lo) fail("grid: hi must be >= lo");
    const double count_f = std::floor((hi - lo) / step + 1e-9) + 1.0;
    if (count_f > 1e6) fail("grid: more than 1e6 points");
    const std::size_t count = static_cast<std::size_t>(count_f);
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(lo + step * k);
  } else {
    std::istringstream in(t);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(to_double(item, "grid"));
    if (out.empty()) fail("grid: empty list");
  }
  return out;
}

std::string render_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ",";
    out += fmt17(grid[i]);
  }
  return out;
}

std::vector<std::pair<double, double>> parse_intervals(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  const std::string t = trim(text);
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < t.size() &&
           (std::isspace(static_cast<unsigned char>(t[i])) || t[i] == ',')) {
      ++i;
    }
  };
  skip_sep();
  while (i < t.size()) {
    if (t[i] != '(') fail("intervals: expected '(' in '" + t + "'");
    const std::size_t close = t.find(')', i);
    if (close == std::string::npos) fail("intervals: missing ')' in '" + t + "'");
    const std::string body = t.substr(i + 1, close - i - 1);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) fail("intervals: expected '(c,d)' in '" + t + "'");
    const std::string c_s = trim(body.substr(0, comma));
    const std::string d_s = trim(body.substr(comma + 1));
    const double c = to_double(c_s, "intervals");
    double d;
    const std::string dl = lower(d_s);
    if (dl == "inf" || dl == "+inf" || dl == "infinity") {
      d = std::numeric_limits<double>::infinity();
    } else {
      d = to_double(d_s, "intervals");
    }
    if (!(c > 0.0) || !(d > c)) {
      fail("intervals: need 0 < c < d, got (" + c_s + "," + d_s + ")");
    }
    out.emplace_back(c, d);
    i = close + 1;
    skip_sep();
  }
  if (out.empty()) fail("intervals: empty list");
  return out;
}

std::string render_intervals(const std::vector<std::pair<double, double>>& intervals) {
  std::string out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i) out += " ";
    out += "(" + fmt17(intervals[i].first) + ",";
    out += std::isinf(intervals[i].second) ? "inf" : fmt17(intervals[i].second);
    out += ")";
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  bool section_seen = false;
  std::set<std::string> keys_seen;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto fail_line = [&](const std::string& msg) -> void {
    fail("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_line("malformed section header '" + line + "'");
      if (section_seen) fail_line("more than one command section");
      try {
        config.command = parse_command(line.substr(1, line.size() - 2));
      } catch (const std::invalid_argument& e) {
        fail_line(e.what());
      }
      section_seen = true;
      continue;
    }

    if (!section_seen) fail_line("key outside a [command] section");
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail_line("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line("empty key");

    const std::vector<std::string>& allowed = keys_for(config.command);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail_line("unknown key '" + key + "' for command '" +
                command_name(config.command) + "'");
    }
    if (!keys_seen.insert(key).second) fail_line("duplicate key '" + key + "'");
    try {
      assign_key(config, key, value);
    } catch (const std::invalid_argument& e) {
      fail_line("key '" + key + "': " + e.what());
    }
  }

  if (!section_seen) fail("missing [command] section");
  validate(config);
  return config;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (const std::string& key : keys_for(config.command)) {
    if (key == "out" && config.out.empty()) continue;
    if (key == "grid" && config.grid.empty()) continue;
    entries.emplace_back(key, value_of(config, key));
  }
  return entries;
}

std::string render_config(const RunConfig& config) {
  std::string out = "[" + command_name(config.command) + "]\n";
  for (const auto& [key, value] : config_entries(config)) {
    out += key + " = " + value + "\n";
  }
  return out;
}

std::vector<std::string> config_keys(Command command) { return keys_for(command); }

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
  const std::vector<std::string>& keys = keys_for(config.command);
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    fail("key '" + key + "' does not apply to command '" +
         command_name(config.command) + "'");
  }
  assign_key(config, key, value);
}

void validate_config(const RunConfig& config) { validate(config); }

}  // namespace spectail
