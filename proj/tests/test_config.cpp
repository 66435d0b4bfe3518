#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "spectail/config.hpp"

using namespace spectail;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal tail config echoes its values") {
  const RunConfig c = parse_config(
      "[tail]\n"
      "model = H\n"
      "N = 1000\n"
      "alpha = 0.5\n"
      "law = pareto(1,2)\n"
      "lambda = 3\n"
      "trials = 10000\n"
      "seed = 1\n");
  CHECK(c.command == Command::Tail);
  CHECK(c.model == ModelKind::H);
  CHECK(c.N == 1000);
  CHECK(c.alpha == 0.5);
  CHECK(c.law == pareto_law(1.0, 2.0));
  CHECK(c.lambda == 3.0);
  CHECK(c.trials == 10000);
  CHECK(c.seed == 1);
  CHECK(c.workers == 0);                    // untouched default
  CHECK(c.format == OutputFormat::Csv);
}

TEST_CASE("domain violations name the key") {
  const std::string msg = error_of("[tail]\nlaw = pareto(1,-2)\n");
  CHECK(msg.find("law") != std::string::npos);
  CHECK(error_of("[tail]\nN = 1\n").find("N") != std::string::npos);
  CHECK(error_of("[tail]\nalpha = -0.5\n").find("alpha") != std::string::npos);
  CHECK(error_of("[pointprocess]\nN = 10\ntop_d = 11\n").find("top_d") !=
        std::string::npos);
}

TEST_CASE("every command round-trips through its rendered document") {
  std::vector<RunConfig> cases;

  RunConfig tail;
  tail.command = Command::Tail;
  tail.model = ModelKind::G;
  tail.N = 512;
  tail.alpha = 0.75;
  tail.law = signed_law(weibull_law(0.5, 3.0));
  tail.lambda = 2.25;
  tail.trials = 777;
  tail.seed = 99;
  tail.workers = 4;
  tail.format = OutputFormat::Jsonl;
  cases.push_back(tail);

  RunConfig spectrum;
  spectrum.command = Command::Spectrum;
  spectrum.model = ModelKind::GBeta;
  spectrum.N = 300;
  spectrum.beta_ens = 2.0;
  spectrum.out = "spec.csv";
  cases.push_back(spectrum);

  RunConfig dist;
  dist.command = Command::Distribution;
  dist.scale_power = -0.5;
  dist.trials = 123;
  cases.push_back(dist);

  RunConfig pp;
  pp.command = Command::PointProcess;
  pp.N = 4000;
  pp.alpha = 1.0;
  pp.law = pareto_law(1.0, 0.5);
  pp.top_d = 24;
  pp.threshold = 0.5;
  pp.intervals = {{1.0, 2.0}, {2.0, std::numeric_limits<double>::infinity()}};
  cases.push_back(pp);

  RunConfig sweep;
  sweep.command = Command::SpikeSweep;
  sweep.N = 2000;
  sweep.grid = {0.5, 1.0, 1.5, 2.0, 4.0};
  cases.push_back(sweep);

  RunConfig rate;
  rate.command = Command::Rate;
  rate.law = pareto_law(2.0, 1.5);
  rate.grid = {2.1, 2.5, 3.0};
  rate.format = OutputFormat::Jsonl;
  cases.push_back(rate);

  RunConfig coupling;
  coupling.command = Command::CouplingCheck;
  coupling.N = 500;
  coupling.alpha = 0.5;
  coupling.law = pareto_law(1.0, 3.0);
  coupling.draws = 100;
  cases.push_back(coupling);

  for (const RunConfig& c : cases) {
    CAPTURE(command_name(c.command));
    const RunConfig back = parse_config(render_config(c));
    CHECK(back == c);
  }
}

TEST_CASE("document structure errors carry line numbers") {
  CHECK(error_of("model = H\n").find("section") != std::string::npos);
  CHECK(error_of("[tail]\n[rate]\n").find("section") != std::string::npos);
  CHECK(error_of("[warp]\n").find("warp") != std::string::npos);
  CHECK(error_of("[tail]\nN = 10\nN = 12\n").find("duplicate") != std::string::npos);
  CHECK(error_of("[tail]\nwidgets = 3\n").find("widgets") != std::string::npos);
  // A key that exists, but belongs to a different command.
  CHECK(error_of("[spectrum]\nlambda = 3\n").find("lambda") != std::string::npos);
  CHECK(error_of("[tail]\nN = ten\n").find("line 2") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored") {
  const RunConfig c = parse_config(
      "# leading comment\n"
      "\n"
      "[rate]\n"
      "law = pareto(1,2)   # trailing comment\n"
      "grid = 2.5,3\n");
  CHECK(c.command == Command::Rate);
  CHECK(c.law == pareto_law(1.0, 2.0));
  REQUIRE(c.grid.size() == 2);
}

TEST_CASE("grid grammar") {
  const std::vector<double> g = parse_grid("2.1:0.2:2.9");
  REQUIRE(g.size() == 5);
  CHECK(g[0] == doctest::Approx(2.1));
  CHECK(g[4] == doctest::Approx(2.9));
  const std::vector<double> list = parse_grid("1, 2.5, 4");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == 2.5);
  CHECK_THROWS_AS(parse_grid("2:0:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("5:1:4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
  const std::vector<double> back = parse_grid(render_grid(g));
  REQUIRE(back.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[i] == g[i]);
}

TEST_CASE("interval grammar") {
  const auto iv = parse_intervals("(1,2) (2,4) (4,inf)");
  REQUIRE(iv.size() == 3);
  CHECK(iv[2].second == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(parse_intervals("(2,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_intervals("(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_intervals("(1,2"), std::invalid_argument);
  const auto back = parse_intervals(render_intervals(iv));
  REQUIRE(back.size() == 3);
  CHECK(back[0] == iv[0]);
  CHECK(back[2].second == iv[2].second);
}

TEST_CASE("name tables round-trip") {
  for (Command c : {Command::Spectrum, Command::Tail, Command::Distribution,
                    Command::PointProcess, Command::SpikeSweep, Command::Rate,
                    Command::CouplingCheck}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  for (ModelKind m : {ModelKind::H, ModelKind::G, ModelKind::GBeta}) {
    CHECK(parse_model(model_name(m)) == m);
  }
  CHECK(parse_model("gbeta") == ModelKind::GBeta);
  for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Jsonl}) {
    CHECK(parse_format(format_name(f)) == f);
  }
  CHECK_THROWS_AS(parse_command("scan"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("W"), std::invalid_argument);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("apply_key honors the command's key set") {
  RunConfig c;
  c.command = Command::Rate;
  apply_key(c, "grid", "2.5,3.5");
  CHECK(c.grid.size() == 2);
  CHECK_THROWS_AS(apply_key(c, "lambda", "3"), std::invalid_argument);
  CHECK_THROWS_AS(apply_key(c, "trials", "nine"), std::invalid_argument);
}

TEST_CASE("validate_config rejects cross-field violations") {
  RunConfig sweep;
  sweep.command = Command::SpikeSweep;
  sweep.model = ModelKind::GBeta;
  sweep.grid = {1.0};
  CHECK_THROWS_AS(validate_config(sweep), std::invalid_argument);

  RunConfig rate;
  rate.command = Command::Rate;
  rate.law = constant_law(0.0);
  CHECK_THROWS_AS(validate_config(rate), std::invalid_argument);

  RunConfig sweep_neg;
  sweep_neg.command = Command::SpikeSweep;
  sweep_neg.grid = {-1.0};
  CHECK_THROWS_AS(validate_config(sweep_neg), std::invalid_argument);
}

}  // TEST_SUITE
