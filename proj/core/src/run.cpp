#include "spectail/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <variant>

#include "json.hpp"

#include "format_util.hpp"
#include "spectail/experiments.hpp"
#include "spectail/run.hpp"

namespace spectail {

namespace {

using detail::fmt17;

constexpr const char* kVersion = "0.1.0";  // matches the CMake project version

using Cell = std::variant<double, std::uint64_t, std::string, bool>;

struct Table {
  std::string name;     // schema suffix: spectail.<name>.v1
  std::string streams;  // stream-id discipline recorded in the header
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

std::string cell_csv(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return fmt17(*d);
  if (const std::uint64_t* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  if (const bool* b = std::get_if<bool>(&cell)) return *b ? "1" : "0";
  return std::get<std::string>(cell);
}

std::string cell_json(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    return std::isfinite(*d) ? fmt17(*d) : "null";  // JSON has no nan/inf
  }
  if (const std::uint64_t* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  if (const bool* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  return json_quote(std::get<std::string>(cell));
}

std::string render_csv(const Table& table, std::uint64_t seed) {
  std::string out = "# schema=spectail." + table.name + ".v1 seed=" +
                    std::to_string(seed) + " streams=" + table.streams + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ",";
    out += table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += cell_csv(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string render_jsonl(const Table& table, std::uint64_t seed) {
  std::string out = "{\"schema\":\"spectail." + table.name + ".v1\",\"seed\":" +
                    std::to_string(seed) + ",\"streams\":" + json_quote(table.streams) +
                    "}\n";
  for (const auto& row : table.rows) {
    out += "{";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += json_quote(table.columns[i]) + ":" + cell_json(row[i]);
    }
    out += "}\n";
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << text;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move output into place at '" + path + "'");
  }
}

ModelSpec make_spec(const RunConfig& config) {
  ModelSpec spec;
  spec.kind = config.model;
  spec.N = config.N;
  spec.alpha = config.alpha;
  spec.law = config.law;
  spec.beta_ens = config.beta_ens;
  spec.seed = RandomStream(config.seed, 0);
  return spec;
}

std::string extension(OutputFormat format) {
  return format == OutputFormat::Csv ? ".csv" : ".jsonl";
}

// "pp.csv" -> "pp.poisson.csv"; unknown extensions just get ".poisson"
// appended.
std::string poisson_path_for(const std::string& data_path, OutputFormat format) {
  const std::string ext = extension(format);
  if (data_path.size() > ext.size() &&
      data_path.compare(data_path.size() - ext.size(), ext.size(), ext) == 0) {
    return data_path.substr(0, data_path.size() - ext.size()) + ".poisson" + ext;
  }
  return data_path + ".poisson";
}

Table spectrum_table(const RunConfig& config) {
  std::vector<double> values;  // ascending
  switch (config.model) {
    case ModelKind::H:
      values = dense_eigenvalues(build_H(make_spec(config)), config.N);
      break;
    case ModelKind::GBeta: {
      RandomStream stream(config.seed, 0);
      values = dense_eigenvalues(build_G_beta(config.N, config.beta_ens, stream),
                                 config.N);
      break;
    }
    case ModelKind::G: {
      if (config.N > 2000) {
        throw std::invalid_argument("spectrum: model G needs N <= 2000 (dense path)");
      }
      values = dense_eigenvalues(build_G_dense(make_spec(config)), config.N);
      break;
    }
  }
  Table t;
  t.name = "spectrum";
  t.streams = "single";
  t.columns = {"rank", "value"};
  for (std::size_t j = 0; j < values.size(); ++j) {
    t.rows.push_back({static_cast<std::uint64_t>(j + 1), values[values.size() - 1 - j]});
  }
  return t;
}

Table tail_table(const RunConfig& config) {
  const TailReport r =
      mc_tail(make_spec(config), config.lambda, config.trials, config.workers);
  Table t;
  t.name = "tail";
  t.streams = "per-trial";
  t.columns = {"lambda", "trials", "hits",   "p_hat", "ci_low",
               "ci_high", "theory", "regime"};
  t.rows.push_back({r.lambda, r.trials, r.hits, r.p_hat, r.ci_low, r.ci_high,
                    r.theory, regime_name(r.regime.kind)});
  return t;
}

Table distribution_table(const RunConfig& config) {
  const std::vector<double> values = mc_distribution(
      make_spec(config), config.trials, config.scale_power, config.workers);
  Table t;
  t.name = "distribution";
  t.streams = "per-trial";
  t.columns = {"trial", "value"};
  for (std::size_t i = 0; i < values.size(); ++i) {
    t.rows.push_back({static_cast<std::uint64_t>(i), values[i]});
  }
  return t;
}

Table rate_table(const RunConfig& config) {
  std::vector<double> grid = config.grid;
  if (grid.empty()) {
    for (int k = 21; k <= 50; ++k) grid.push_back(k / 10.0);
  }
  const RightTail rt = right_tail(config.law);
  if (rt.kind == LawKind::Constant) {
    throw std::invalid_argument("rate: law must have a nondegenerate right tail");
  }
  Table t;
  t.name = "rate";
  t.streams = "unused";
  t.columns = {"lambda", "rate_H", "rate_G", "f_lambda"};
  for (double lambda : grid) {
    t.rows.push_back({lambda, rate_H(lambda, rt.C, rt.beta),
                      rate_G(lambda, rt.C, rt.beta), f_of_lambda(lambda)});
  }
  return t;
}

Table sweep_table(const RunConfig& config) {
  std::vector<double> grid = config.grid;
  if (grid.empty()) {
    for (int k = 1; k <= 8; ++k) grid.push_back(0.5 * k);
  }
  const std::vector<SpikeSweepRow> rows =
      planted_spike_sweep(config.N, grid, config.model, config.seed);
  Table t;
  t.name = "spike-sweep";
  t.streams = config.model == ModelKind::G ? "per-grid-index" : "unused";
  t.columns = {"M", "predicted", "computed", "abs_err"};
  for (const SpikeSweepRow& r : rows) {
    t.rows.push_back({r.M, r.predicted, r.computed, r.abs_err});
  }
  return t;
}

Table coupling_table(const RunConfig& config) {
  ModelSpec spec = make_spec(config);
  spec.kind = ModelKind::H;  // the bound is an H-model statement
  const std::vector<CouplingReport> reports =
      mc_coupling_check(spec, config.draws, config.workers);
  Table t;
  t.name = "coupling-check";
  t.streams = "per-draw";
  t.columns = {"draw", "d2_spectral", "hw_bound", "ok"};
  for (std::size_t d = 0; d < reports.size(); ++d) {
    t.rows.push_back({static_cast<std::uint64_t>(d), reports[d].d2_spectral,
                      reports[d].hw_bound, reports[d].ok});
  }
  return t;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();

  Table table;
  bool have_poisson = false;
  Table poisson;

  switch (config.command) {
    case Command::Spectrum:
      table = spectrum_table(config);
      break;
    case Command::Tail:
      table = tail_table(config);
      break;
    case Command::Distribution:
      table = distribution_table(config);
      break;
    case Command::PointProcess: {
      const std::vector<PointProcessSample> samples =
          mc_point_process(make_spec(config), config.trials, config.top_d,
                           config.threshold, config.workers);
      table.name = "pointprocess";
      table.streams = "per-trial";
      table.columns = {"trial", "rank", "value"};
      for (std::size_t t = 0; t < samples.size(); ++t) {
        for (std::size_t r = 0; r < samples[t].points.size(); ++r) {
          table.rows.push_back({static_cast<std::uint64_t>(t),
                                static_cast<std::uint64_t>(r + 1),
                                samples[t].points[r]});
        }
      }
      const RegimeLabel regime = classify_regime(config.law, config.alpha);
      if (!config.intervals.empty() &&
          (regime.kind == RegimeKind::Critical ||
           regime.kind == RegimeKind::RandomnessDominating)) {
        const std::vector<PoissonIntervalFit> fits =
            poisson_fit_test(samples, config.intervals, regime);
        poisson.name = "pointprocess-poisson";
        poisson.streams = "per-trial";
        poisson.columns = {"c", "d", "expected", "mean", "variance", "chi2_p"};
        for (const PoissonIntervalFit& f : fits) {
          poisson.rows.push_back({f.c, f.d, f.expected, f.mean, f.variance, f.chi2_p});
        }
        have_poisson = true;
      }
      break;
    }
    case Command::SpikeSweep:
      table = sweep_table(config);
      break;
    case Command::Rate:
      table = rate_table(config);
      break;
    case Command::CouplingCheck:
      table = coupling_table(config);
      break;
  }

  const std::string data_path =
      config.out.empty() ? command_name(config.command) + extension(config.format)
                         : config.out;

  RunResult result;
  const bool csv = config.format == OutputFormat::Csv;
  write_text_atomic(data_path, csv ? render_csv(table, config.seed)
                                   : render_jsonl(table, config.seed));
  result.files.push_back(data_path);
  if (have_poisson) {
    const std::string pp = poisson_path_for(data_path, config.format);
    write_text_atomic(pp, csv ? render_csv(poisson, config.seed)
                              : render_jsonl(poisson, config.seed));
    result.files.push_back(pp);
  }

  const auto t1 = std::chrono::steady_clock::now();
  result.wall_time_s = std::chrono::duration<double>(t1 - t0).count();

  nlohmann::json manifest;
  manifest["schema"] = "spectail.manifest.v1";
  manifest["version"] = kVersion;
  manifest["command"] = command_name(config.command);
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : config_entries(config)) cfg[key] = value;
  manifest["config"] = cfg;
  manifest["outputs"] = result.files;
  manifest["wall_time_s"] = result.wall_time_s;

  const std::string manifest_path = data_path + ".manifest.json";
  write_text_atomic(manifest_path, manifest.dump(2) + "\n");
  result.files.push_back(manifest_path);
  return result;
}

}  // namespace spectail
