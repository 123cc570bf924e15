#include <doctest.h>

#include <string>

#include "infoflow/config.hpp"
#include "infoflow/io.hpp"

using namespace infoflow;

namespace {

std::string error_of(const KeyValues& kv) {
  try {
    resolve_config(kv);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("key-value grammar") {
  const KeyValues kv = parse_key_values(
      "# comment\n"
      "\n"
      "  p_l0 = 0.4  \n"
      "phi.variant=constant\n"
      "out = some dir/with = sign\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv.at("p_l0") == "0.4");
  CHECK(kv.at("phi.variant") == "constant");
  CHECK(kv.at("out") == "some dir/with = sign");

  CHECK_THROWS_AS(parse_key_values("p_l0 0.4\n"), ConfigError);
  CHECK_THROWS_AS(parse_key_values("= 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_key_values("seed = 1\nseed = 2\n"), ConfigError);
}

TEST_CASE("defaults") {
  const RunConfig c = resolve_config({});
  CHECK(c.seed == 1);
  CHECK(c.model.e0 == 3);
  CHECK(c.model.phi.kind() == ResponseCurve::Kind::kSaturating);
  CHECK(c.model.phi.parameter() == 3.0);
  CHECK(c.method == FitMethod::kLeastSquares);
  CHECK(c.mode == IngestMode::kIncrements);

  // Saturation constant follows E0 unless given.
  const RunConfig d = resolve_config({{"E0", "15"}});
  CHECK(d.model.phi.parameter() == 15.0);
}

TEST_CASE("values are parsed into the run config") {
  const RunConfig c = resolve_config({{"p_l0", "0.5"},
                                      {"p_d0", "0.05"},
                                      {"p_r0", "0.1"},
                                      {"p_s", "0.2"},
                                      {"E0", "15"},
                                      {"T_max", "200"},
                                      {"phi.variant", "linear-capped"},
                                      {"phi.c", "7"},
                                      {"extended_reactions", "true"},
                                      {"p_ref0", "0.25"},
                                      {"seed", "18446744073709551615"},
                                      {"replicates", "100000"},
                                      {"horizon", "50"},
                                      {"max_agents", "9"},
                                      {"metric", "lifetime"},
                                      {"flow", "yes"},
                                      {"method", "mle"},
                                      {"enum", "false"},
                                      {"lifetime", "1"},
                                      {"mode", "finals"},
                                      {"bin_width", "2.5"}});
  CHECK(c.model.p_l0 == 0.5);
  CHECK(c.model.p_s == 0.2);
  CHECK(c.model.t_max == 200);
  CHECK(c.model.phi.kind() == ResponseCurve::Kind::kLinearCapped);
  CHECK(c.model.phi.parameter() == 7.0);
  CHECK(c.model.extended_reactions);
  CHECK(c.model.p_ref0 == 0.25);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.replicates == 100000);
  CHECK(c.horizon == 50);
  CHECK(c.max_agents == 9);
  CHECK(c.metric == Metric::kLifetime);
  CHECK(c.flow);
  CHECK(c.method == FitMethod::kMle);
  CHECK_FALSE(c.use_enum);
  CHECK(c.lifetime);
  CHECK(c.mode == IngestMode::kFinals);
  CHECK(c.bin_width == 2.5);
}

TEST_CASE("errors name the offending key") {
  CHECK(error_of({{"colour", "red"}}).find("colour") != std::string::npos);
  CHECK(error_of({{"p_l0", "1.5"}}).find("p_l0") != std::string::npos);
  CHECK(error_of({{"p_r0", "abc"}}).find("p_r0") != std::string::npos);
  CHECK(error_of({{"E0", "2.5"}}).find("E0") != std::string::npos);
  CHECK(error_of({{"seed", "-1"}}).find("seed") != std::string::npos);
  CHECK(error_of({{"metric", "shares"}}).find("metric") != std::string::npos);
  CHECK(error_of({{"method", "bayes"}}).find("method") != std::string::npos);
  CHECK(error_of({{"mode", "stream"}}).find("mode") != std::string::npos);
  CHECK(error_of({{"flow", "maybe"}}).find("flow") != std::string::npos);
  CHECK(error_of({{"phi.variant", "cubic"}}).find("phi.variant") != std::string::npos);
  CHECK(error_of({{"replicates", "0"}}).find("replicates") != std::string::npos);
  CHECK(error_of({{"max_agents", "0"}}).find("max_agents") != std::string::npos);
}

TEST_CASE("later sources win") {
  KeyValues kv = parse_key_values("seed = 5\nreplicates = 10\n");
  kv["seed"] = "9";  // a command-line flag
  const RunConfig c = resolve_config(kv);
  CHECK(c.seed == 9);
  CHECK(c.replicates == 10);
}

TEST_CASE("echo round-trips") {
  const RunConfig a = resolve_config({{"p_l0", "0.1"},
                                      {"p_r0", "0.7"},
                                      {"E0", "4"},
                                      {"phi.variant", "constant"},
                                      {"phi.a", "0.3"},
                                      {"p_ref0", "0.123456789012345"},
                                      {"seed", "77"},
                                      {"out", "results/x"},
                                      {"input", "a.csv"},
                                      {"hist", "h.csv"}});
  const std::string echo = echo_config(a);
  const RunConfig b = resolve_config(parse_key_values(echo));
  CHECK(echo_config(b) == echo);
  CHECK(b.model.p_ref0 == a.model.p_ref0);
  CHECK(b.model.phi.parameter() == 0.3);
  CHECK(b.seed == 77);

  const RunConfig d = resolve_config({});
  CHECK(echo_config(resolve_config(parse_key_values(echo_config(d)))) == echo_config(d));
}
