// Command-line front end. Every flag shares its name and value grammar with
// the config-file key of the same command, so `--config file` plus overrides
// and a pure-flag invocation cannot drift apart.

#include <cstdio>
#include <deque>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spectail/config.hpp"
#include "spectail/run.hpp"

namespace {

std::string command_help(spectail::Command command) {
  switch (command) {
    case spectail::Command::Spectrum:
      return "full spectrum of one sampled matrix, top eigenvalue first";
    case spectail::Command::Tail:
      return "Monte Carlo upper-tail probability of the top eigenvalue";
    case spectail::Command::Distribution:
      return "per-trial top eigenvalues, optionally rescaled by N^p";
    case spectail::Command::PointProcess:
      return "top-d eigenvalues per trial plus Poisson interval fits";
    case spectail::Command::SpikeSweep:
      return "planted-spike prediction vs computed top eigenvalue over M";
    case spectail::Command::Rate:
      return "large-deviation rate functions on a lambda grid";
    case spectail::Command::CouplingCheck:
      return "spectral distance to the free operator against its bound";
  }
  return "";
}

std::string key_help(const std::string& key) {
  if (key == "model") return "model family: H, G, or Gbeta";
  if (key == "N") return "matrix size";
  if (key == "alpha") return "disorder decay exponent";
  if (key == "law") {
    return "potential law: pareto(C,beta), weibull(C,beta), constant(v), "
           "signed(law)";
  }
  if (key == "beta_ens") return "Gbeta ensemble parameter";
  if (key == "lambda") return "tail threshold";
  if (key == "trials") return "Monte Carlo trials";
  if (key == "draws") return "independent draws";
  if (key == "scale_power") return "report N^p * (top eigenvalue)";
  if (key == "top_d") return "eigenvalues kept per trial";
  if (key == "threshold") return "point-process truncation level";
  if (key == "intervals") return "interval list \"(c,d) (c,d)\", d may be inf";
  if (key == "grid") return "grid \"lo:step:hi\" or comma list";
  if (key == "seed") return "master seed";
  if (key == "workers") return "worker threads, 0 = all cores";
  if (key == "out") return "output path (default <command>.<ext>)";
  if (key == "format") return "csv or jsonl";
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SubState {
  spectail::Command command;
  CLI::App* sub = nullptr;
  std::string config_path;
  std::map<std::string, std::string> values;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eigenvalue statistics of random tridiagonal operators with decaying "
      "diagonal disorder"};
  app.require_subcommand(1);

  const spectail::Command commands[] = {
      spectail::Command::Spectrum,      spectail::Command::Tail,
      spectail::Command::Distribution,  spectail::Command::PointProcess,
      spectail::Command::SpikeSweep,    spectail::Command::Rate,
      spectail::Command::CouplingCheck,
  };

  // deque: option callbacks hold references into each SubState, so elements
  // must never relocate.
  std::deque<SubState> subs;
  for (spectail::Command command : commands) {
    subs.push_back(SubState{command, nullptr, "", {}});
    SubState& state = subs.back();
    const std::string name = spectail::command_name(command);
    state.sub = app.add_subcommand(name, command_help(command));
    state.sub->add_option("--config", state.config_path,
                          "config file with a [" + name + "] section; flags "
                          "override its keys");
    for (const std::string& key : spectail::config_keys(command)) {
      state.sub->add_option("--" + key, state.values[key], key_help(key));
    }
  }

  CLI11_PARSE(app, argc, argv);

  for (SubState& state : subs) {
    if (!state.sub->parsed()) continue;
    try {
      spectail::RunConfig config;
      config.command = state.command;
      if (state.sub->count("--config") > 0) {
        config = spectail::parse_config(read_file(state.config_path));
        if (config.command != state.command) {
          throw std::invalid_argument(
              "config file is for command '" +
              spectail::command_name(config.command) + "', not '" +
              spectail::command_name(state.command) + "'");
        }
      }
      for (const std::string& key : spectail::config_keys(state.command)) {
        if (state.sub->count("--" + key) > 0) {
          spectail::apply_key(config, key, state.values[key]);
        }
      }
      spectail::validate_config(config);
      const spectail::RunResult result = spectail::run(config);
      for (const std::string& file : result.files) {
        std::printf("%s\n", file.c_str());
      }
      return 0;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "spectail: error: %s\n", e.what());
      return 1;
    }
  }
  return 0;
}
