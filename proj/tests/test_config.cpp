#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "decompound/config.hpp"
#include "decompound/errors.hpp"

using namespace decompound;

namespace {

const char* kMixedConfig = R"(# the two-time mixture study
[model]
type = additive
jump = mixture(0.3:N(-3.5,1), 0.7:N(3.5,1))
noise = N(0,1)
J = 100000
seed = 7

[estimator]
t1 = 0.5
t2 = 1
m = 2
)";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("the mixture study config parses and round-trips") {
  const RunConfig cfg = parse_config(kMixedConfig);
  CHECK(cfg.model == ModelKind::Additive);
  CHECK(cfg.channels == 100000);
  CHECK(cfg.fourier.t1 == 0.5);
  CHECK(cfg.fourier.t2 == 1.0);
  CHECK(cfg.fourier.m == 2.0);
  CHECK(cfg.seed == 7);
  CHECK(cfg.estimator == EstimatorKind::Fourier);
  CHECK(cfg.fourier.x_grid.front() == doctest::Approx(-10.0));
  CHECK(cfg.fourier.x_grid.back() == doctest::Approx(10.0));

  const RunConfig again = parse_config(serialize_config(cfg));
  CHECK(again == cfg);
}

TEST_CASE("times accept both list and grid forms") {
  const RunConfig cfg = parse_config(R"(
[model]
type = additive
jump = N(0,1)
J = 10
times = grid(0.5,0.5,4)
)");
  REQUIRE(cfg.times.size() == 4);
  CHECK(cfg.times[0] == 0.5);
  CHECK(cfg.times[3] == 2.0);
  // sampling-grid structure: times[i] = (i+1) delta
  for (std::size_t i = 0; i < cfg.times.size(); ++i)
    CHECK(std::abs(cfg.times[i] - (static_cast<double>(i) + 1.0) * cfg.times[0]) <= 1e-12);
  CHECK_THROWS_AS(parse_config("[model]\ntype = additive\njump = N(0,1)\n"
                               "times = grid(0.5,0.5)\n"),
                  ParseError);
}

TEST_CASE("a multiplicative config selects the mellin estimator") {
  const RunConfig cfg = parse_config(R"(
[model]
type = multiplicative
jump = beta(200,30)
lambda = 1
delta = 1
n = 5000
[estimator]
adaptive = true
kappa = 1
alpha = 0.9
)");
  CHECK(cfg.estimator == EstimatorKind::Mellin);
  CHECK(cfg.mellin.x_grid.front() == doctest::Approx(0.002));
  CHECK(cfg.adaptive);
  const RunConfig again = parse_config(serialize_config(cfg));
  CHECK(again == cfg);
}

TEST_CASE("validation failures carry a reason") {
  CHECK_THROWS_WITH_AS(parse_config(R"(
[model]
type = additive
jump = N(0,1)
[estimator]
t1 = 0.5
t2 = 0.5
)"),
                       "t2 must exceed t1", ConfigError);
  CHECK_THROWS_AS(parse_config(""), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[model]\njump = N(0,1)\n"), "missing model type",
                       ConfigError);
}

TEST_CASE("unknown keys, bad sections and malformed lines are fatal") {
  CHECK_THROWS_AS(parse_config("[model]\ntype = additive\njump = N(0,1)\nfrobnicate = 3\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_config("[models]\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[model]\ntype additive\n"), ParseError);
  CHECK_THROWS_AS(parse_config("type = additive\n"), ParseError);
  try {
    parse_config("[model]\ntype = additive\njump = N(0,1)\nzzz = 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("the fourier pipeline rejects a non-unit intensity") {
  CHECK_THROWS_AS(parse_config(R"(
[model]
type = additive
jump = N(0,1)
lambda = 2
)"),
                  ConfigError);
}

TEST_CASE("mellin needs a positive jump law and a positive x grid") {
  CHECK_THROWS_AS(parse_config(R"(
[model]
type = multiplicative
jump = N(0,1)
n = 100
)"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"(
[model]
type = multiplicative
jump = beta(200,30)
n = 100
[estimator]
x_min = -1
x_max = 1
x_step = 0.01
)"),
                  ConfigError);
}

TEST_CASE("run: simulate writes a panel CSV with provenance") {
  RunConfig cfg = parse_config(R"(
[model]
type = additive
jump = gamma(2,1)
noise = N(0,1)
J = 7
times = 0.5,1
seed = 3
[output]
out = test_panel_out.csv
)");
  std::ostringstream summary;
  CHECK(run(cfg, Action::Simulate, summary) == 0);
  const std::string text = slurp("test_panel_out.csv");
  CHECK(text.rfind("# decompound-kit", 0) == 0);
  CHECK(text.find("seed=3") != std::string::npos);
  CHECK(text.find("channel,time,value") != std::string::npos);
  int rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  CHECK(rows == 2 + 7 * 2); // provenance + header + J*n data rows
  CHECK(summary.str().find("rows=14") != std::string::npos);

  // identical config, identical bytes
  std::ostringstream summary2;
  RunConfig cfg2 = cfg;
  cfg2.output.out = "test_panel_out2.csv";
  CHECK(run(cfg2, Action::Simulate, summary2) == 0);
  const std::string text2 = slurp("test_panel_out2.csv");
  CHECK(text2.substr(text2.find('\n')) == text.substr(text.find('\n')));
  std::remove("test_panel_out.csv");
  std::remove("test_panel_out2.csv");
}

TEST_CASE("run: adaptive fourier estimate reports m_hat and fills the grid") {
  RunConfig cfg = parse_config(R"(
[model]
type = additive
jump = mixture(0.3:N(-2,1), 0.7:N(2,1))
noise = N(0,1)
J = 2000
seed = 11
[estimator]
t1 = 0.5
t2 = 1
adaptive = true
x_min = -6
x_max = 6
x_step = 0.05
freq_step = 0.01
[output]
out = test_density_out.csv
)");
  std::ostringstream summary;
  CHECK(run(cfg, Action::EstimateFourier, summary) == 0);
  CHECK(summary.str().rfind("m_hat=", 0) == 0);
  const std::string text = slurp("test_density_out.csv");
  int rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  CHECK(rows == 2 + 241); // provenance + header + x grid length
  std::remove("test_density_out.csv");
}

TEST_CASE("run: mise sweep writes param,mise,stderr rows") {
  RunConfig cfg = parse_config(R"(
[model]
type = additive
jump = N(0,1)
noise = N(0,1)
J = 300
seed = 21
[estimator]
t1 = 0.5
t2 = 1
freq_step = 0.02
x_min = -6
x_max = 6
x_step = 0.05
[sweep]
parameter = m
values = 0.5,1.5
replicates = 4
[output]
out = test_sweep_out.csv
)");
  std::ostringstream summary;
  CHECK(run(cfg, Action::MiseSweep, summary) == 0);
  const std::string text = slurp("test_sweep_out.csv");
  CHECK(text.find("param,mise,stderr") != std::string::npos);
  int rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  CHECK(rows == 2 + 2);
  CHECK(summary.str().find("mise_range=[") != std::string::npos);
  std::remove("test_sweep_out.csv");
}

TEST_CASE("run: unwritable output exits with the io status") {
  RunConfig cfg = parse_config(R"(
[model]
type = additive
jump = N(0,1)
J = 5
times = 1
[output]
out = /nonexistent-dir/out.csv
)");
  std::ostringstream summary;
  CHECK(run(cfg, Action::Simulate, summary) == 3);
}

TEST_CASE("run: numeric failures exit with status 2") {
  RunConfig cfg = parse_config(R"(
[model]
type = additive
jump = N(0,1)
J = 5
times = 1
)");
  cfg.fourier.t2 = cfg.fourier.t1; // degenerate times slip past the parser
  std::ostringstream summary;
  CHECK(run(cfg, Action::EstimateFourier, summary) == 2);
}
