#include <doctest.h>

#include <cmath>
#include <string>

#include <epm/config.hpp>

using namespace epm;

TEST_CASE("defaults validate and ini values land in the right fields") {
  std::string text = R"(
# comment
[eos]
gamma = 1.2
K = static
a = 2.0

[grid]
kind = radial
n = 512
extent = 32 ; trailing comment

[scheme]
cfl = 0.3
t_end = 0.25

[norms]
s = 2.6
delta = -1.2

[picard]
enabled = yes
T = 0.05
)";
  RunConfig cfg = parse_config_text(text);
  CHECK(cfg.k_static);
  CHECK(cfg.eos.K == doctest::Approx(2.0 * M_PI / 9.0));
  CHECK(cfg.eos.gamma == doctest::Approx(1.2));
  CHECK(cfg.a == doctest::Approx(2.0));
  CHECK(cfg.grid.kind == "radial");
  CHECK(cfg.grid.n == 512);
  CHECK(cfg.grid.extent == doctest::Approx(32.0));
  CHECK(cfg.scheme.cfl == doctest::Approx(0.3));
  CHECK(cfg.scheme.t_end == doctest::Approx(0.25));
  CHECK(cfg.picard_enabled);
  CHECK(cfg.picard.T == doctest::Approx(0.05));
  // picard inherits the resolved norms and scheme
  CHECK(cfg.picard.norms.s == doctest::Approx(2.6));
  CHECK(cfg.picard.scheme.cfl == doctest::Approx(0.3));
}

TEST_CASE("empty config gives the defaults") {
  RunConfig cfg = parse_config_text("");
  CHECK(cfg.grid.n == 1024);
  CHECK(cfg.norms.s == doctest::Approx(2.6));
  CHECK_FALSE(cfg.picard_enabled);
}

TEST_CASE("unknown keys and malformed lines are rejected with context") {
  auto expect_throw = [](const std::string& text, const std::string& needle) {
    bool threw = false;
    try {
      parse_config_text(text);
    } catch (const std::invalid_argument& e) {
      threw = true;
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    CHECK(threw);
  };
  expect_throw("[eos]\nspeed = 3\n", "unknown key 'speed'");
  expect_throw("[engine]\nx = 1\n", "unknown section [engine]");
  expect_throw("[eos]\ngamma 1.2\n", "line 2");
  expect_throw("[eos]\ngamma = fast\n", "expected a number");
  expect_throw("[grid]\nn = 1.5\n", "expected an integer");
  expect_throw("[picard]\nenabled = maybe\n", "expected true/false");
}

TEST_CASE("parameter windows are enforced with the bound in the message") {
  auto expect_throw = [](const std::string& text, const std::string& needle) {
    bool threw = false;
    try {
      parse_config_text(text);
    } catch (const std::invalid_argument& e) {
      threw = true;
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    CHECK(threw);
  };
  expect_throw("[eos]\ngamma = 1.8\n", "(1, 5/3)");
  expect_throw("[norms]\ndelta = -0.4\n", "delta < -1/2");
  expect_throw("[norms]\ndelta = -1.4\n", "<= delta");   // below -1.5 + 2/9
  expect_throw("[norms]\ns = 2.0\n", "5/2 < s");
  // non-integer 2/(gamma-1): the admissible s window shrinks
  expect_throw("[eos]\ngamma = 1.21\n[norms]\ns = 3.4\n", "2.5 < s <");
  expect_throw("[grid]\nkind = torus\n", "kind");
}

TEST_CASE("manifest records every resolved key") {
  RunConfig cfg = parse_config_text("[grid]\nn = 256\n");
  std::string j = run_manifest_json(cfg, "1.2.3");
  for (const char* key :
       {"\"version\"", "\"eos\"", "\"grid\"", "\"scheme\"", "\"norms\"",
        "\"picard\"", "\"output\"", "\"grid_hash\"", "\"gamma\"", "\"cfl\"",
        "\"shell_n\""})
    CHECK(j.find(key) != std::string::npos);
  CHECK(j.find("1.2.3") != std::string::npos);
  CHECK(j.find("256") != std::string::npos);
  // same config, same hash; different grid, different hash
  std::string j2 = run_manifest_json(cfg, "1.2.3");
  CHECK(j == j2);
}

TEST_CASE("grid config builds either geometry") {
  GridConfig g;
  g.kind = "box";
  g.n = 16;
  g.extent = 4.0;
  Geometry geom = g.make();
  CHECK(std::holds_alternative<BoxGrid>(geom));
  CHECK(std::get<BoxGrid>(geom).n == 16);
  g.kind = "radial";
  CHECK(std::holds_alternative<RadialGrid>(g.make()));
}
