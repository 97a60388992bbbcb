#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gliders/cli.hpp"

using namespace gliders;
using namespace gliders::cli;
namespace fs = std::filesystem;

namespace {

const char* kReference = R"(# reference experiment
[entrytime]
rule = (-1, 0)
sampler = bernoulli
probabilities = 0.5, 0, 0.5
n = 2000
trials = 20000
xs = 0.25, 0.5, 1, 2, 4
seed = 1
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gliders-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("happy path") {
  const auto c = parse_config(kReference);
  CHECK(c.command == Command::entrytime);
  CHECK(c.rule == std::make_pair(-1, 0));
  CHECK(c.sampler.kind == "bernoulli");
  CHECK(c.sampler.probabilities == std::vector<double>{0.5, 0, 0.5});
  CHECK(c.n == 2000);
  CHECK(c.trials == 20000);
  CHECK(c.xs.size() == 5);
  CHECK(c.seed == 1);
  CHECK_FALSE(c.horizon.has_value());
}

TEST_CASE("round trip") {
  const auto c = parse_config(kReference);
  CHECK(parse_config(serialize_config(c)) == c);
  auto d = c;
  d.horizon = 9000;
  d.side = Side::minus;
  d.workers = 3;
  d.sampler.probabilities = {0.1, 0.7000000000000001, 0.2};
  CHECK(parse_config(serialize_config(d)) == d);
  CHECK(config_digest(c) == config_digest(parse_config(serialize_config(c))));
  CHECK(config_digest(c) != config_digest(d));
}

TEST_CASE("errors carry line numbers") {
  std::string t = kReference;
  CHECK(error_of(std::string(kReference).replace(t.find("trials = 20000"), 14, "trials = 0")) ==
        "line 7: trials must be >= 1");
  const std::string zero_speed = std::string(kReference).replace(t.find("(-1, 0)"), 7, "(0, 1)");
  CHECK(error_of(zero_speed).find("line 3: rule: v_minus must be < 0") == 0);
  CHECK(error_of(std::string(kReference) + "bogus = 1\n").find("line 10: unknown key 'bogus'") == 0);
  CHECK(error_of(std::string(kReference) + "n = 5\n").find("line 10: duplicate key 'n'") == 0);
  CHECK(error_of("command = entrytime\nrule = -1, 0\nn = x\n").find("line 3: n: expected an integer") == 0);
  CHECK(error_of("command = entrytime\nrule = -1, 0\n").find("missing required key 'sampler'") != std::string::npos);
  CHECK(error_of("rule = -1, 0\n").find("missing required key 'command'") != std::string::npos);
  CHECK(error_of("command = fly\n").find("unknown command") != std::string::npos);
  CHECK(error_of(std::string(kReference) + "horizon = 10\n").find("horizon must be at least ceil(n * max(xs)) = 8000") != std::string::npos);
  CHECK(error_of(std::string(kReference) + "side = plus\n").find("v_plus > 0") != std::string::npos);
  CHECK(error_of("[factor-check]\nfactor = nope\n").find("unknown factor") != std::string::npos);
  CHECK(error_of(std::string(kReference).replace(t.find("0.5, 0, 0.5"), 11, "0.5, 0.5")).find("sampler:") !=
        std::string::npos);
}

TEST_CASE("entrytime run writes the csv and is worker independent") {
  auto c = parse_config(kReference);
  c.n = 100;
  c.trials = 2000;
  c.out = scratch("entry1").string();
  std::ostringstream summary, log;
  REQUIRE(run(c, summary, log) == 0);
  const std::string one = slurp(fs::path(c.out) / "entrytime.csv");
  CHECK(one.find("\n1,") != std::string::npos);
  CHECK(one.find(",0.5,") != std::string::npos);  // theoretical at x = 1
  CHECK(summary.str().find("|diff|=") != std::string::npos);
  CHECK(log.str().find("config_digest=" + config_digest(c)) != std::string::npos);
  CHECK(log.str().find("wall_time=") != std::string::npos);

  c.workers = 8;
  c.out = scratch("entry8").string();
  REQUIRE(run(c, summary, log) == 0);
  CHECK(slurp(fs::path(c.out) / "entrytime.csv") == one);
}

TEST_CASE("other commands") {
  std::ostringstream summary, log;
  {
    auto c = parse_config("[simulate]\nrule = -1, 1\nsampler = bernoulli\nprobabilities = 0.5, 0, 0.5\nwidth = 200\nsteps = 80\n");
    c.out = scratch("sim").string();
    REQUIRE(run(c, summary, log) == 0);
    const std::string pgm = slurp(fs::path(c.out) / "diagram.pgm");
    CHECK(pgm.rfind("P5\n200 81\n255\n", 0) == 0);
    CHECK(fs::exists(fs::path(c.out) / "diagram.txt"));
  }
  {
    auto c = parse_config("[factor-entrytime]\nfactor = product\nsampler = bernoulli\nprobabilities = 0.5, 0.5\nn = 100\nxs = 1, 2\ntrials = 200\n");
    c.out = scratch("fe").string();
    REQUIRE(run(c, summary, log) == 0);
    CHECK(slurp(fs::path(c.out) / "factor-entrytime.csv").find(",factor_name\n") != std::string::npos);
  }
  {
    auto c = parse_config("[factor-check]\nfactor = traffic\nexhaustive_width = 8\nsamples = 20\ncheck_width = 100\n");
    c.out = scratch("fc").string();
    REQUIRE(run(c, summary, log) == 0);
    const std::string csv = slurp(fs::path(c.out) / "factor-check.csv");
    CHECK(csv.find("traffic,exhaustive,8,256,true,") != std::string::npos);
    CHECK(csv.find("traffic,random,100,20,true,") != std::string::npos);
  }
  {
    auto c = parse_config("[oracle]\nys = 1, 2\nzs = 3, 1\ntrials = 500\nwalk_steps = 1000\n");
    c.out = scratch("or").string();
    REQUIRE(run(c, summary, log) == 0);
    const std::string csv = slurp(fs::path(c.out) / "oracle.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  }
  {
    auto c = parse_config("[mix-diagnose]\nsampler = dirac\nword = 1, -1\nsample_length = 10000\nlag = 20\n");
    c.out = scratch("mix").string();
    REQUIRE(run(c, summary, log) == 0);
    CHECK(slurp(fs::path(c.out) / "mix-diagnose.csv").find("variance_zero") != std::string::npos);
  }
}

TEST_CASE("run reports failures through the exit status") {
  auto c = parse_config("[simulate]\nrule = -1, 1\nsampler = bernoulli\nprobabilities = 0.5, 0, 0.5\nwidth = 10\nsteps = 2\n");
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  c.out = (blocker / "sub").string();
  std::ostringstream summary, log;
  CHECK(run(c, summary, log) == 1);
  CHECK(log.str().find("error: ") != std::string::npos);
  fs::remove(blocker);
}
