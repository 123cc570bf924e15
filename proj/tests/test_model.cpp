#include <doctest.h>

#include <random>
#include <stdexcept>

#include "infoflow/model.hpp"

using namespace infoflow;

namespace {

ModelParams flat(double p_l0, double p_r0, double p_d0 = 0.1) {
  ModelParams p;
  p.p_l0 = p_l0;
  p.p_d0 = p_d0;
  p.p_r0 = p_r0;
  p.phi = ResponseCurve::constant(1.0);
  return p;
}

ModelParams random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> variant(0, 2);
  std::uniform_real_distribution<double> c(0.1, 50.0);
  ModelParams p;
  p.p_l0 = u(gen);
  p.p_d0 = u(gen);
  p.p_r0 = u(gen);
  p.p_s = u(gen);
  p.e0 = 1 + static_cast<Energy>(gen() % 20);
  switch (variant(gen)) {
    case 0: p.phi = ResponseCurve::saturating(c(gen)); break;
    case 1: p.phi = ResponseCurve::linear_capped(c(gen)); break;
    default: p.phi = ResponseCurve::constant(u(gen)); break;
  }
  return p;
}

}  // namespace

TEST_CASE("phi_eval examples") {
  CHECK(ResponseCurve::saturating(1.0)(0) == 0.0);
  CHECK(ResponseCurve::saturating(5.0)(5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ResponseCurve::linear_capped(4.0)(10) == 1.0);
  CHECK(ResponseCurve::linear_capped(4.0)(0) == 0.0);
  CHECK(ResponseCurve::constant(0.25)(1000) == 0.25);
}

TEST_CASE("response curve construction rejects bad constants") {
  CHECK_THROWS_AS(ResponseCurve::saturating(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ResponseCurve::saturating(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ResponseCurve::linear_capped(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ResponseCurve::constant(1.5), std::invalid_argument);
  CHECK_THROWS_AS(ResponseCurve::constant(-0.1), std::invalid_argument);
}

TEST_CASE("response curves stay in [0,1] and are nondecreasing") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const ResponseCurve phi = random_params(gen).phi;
    double prev = phi(0);
    for (Energy e = 0; e <= 500; ++e) {
      const double v = phi(e);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
      REQUIRE(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("reaction_probs examples") {
  ModelParams p = flat(0.3, 0.2);
  auto r = reaction_probs(p, 7);
  CHECK(r.like == 0.3);
  CHECK(r.dislike == 0.1);
  CHECK(r.repost == 0.2);

  p.phi = ResponseCurve::saturating(5.0);
  r = reaction_probs(p, 5);
  CHECK(r.like == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(r.dislike == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(r.repost == doctest::Approx(0.10).epsilon(1e-15));

  r = reaction_probs(p, 0);
  CHECK(r.like == 0.0);
  CHECK(r.dislike == 0.0);
  CHECK(r.repost == 0.0);
}

TEST_CASE("step_distribution examples") {
  auto d = step_distribution(flat(0.5, 0.5), 3);
  REQUIRE(d.outcomes.size() == 4);
  for (const auto& o : d.outcomes) CHECK(o.probability == 0.25);

  d = step_distribution(flat(0.3, 0.2), 3);
  CHECK(d.probability(2) == doctest::Approx(0.06).epsilon(1e-14));
  CHECK(d.probability(1) == doctest::Approx(0.14).epsilon(1e-14));
  CHECK(d.probability(0) == doctest::Approx(0.24).epsilon(1e-14));
  CHECK(d.probability(-1) == doctest::Approx(0.56).epsilon(1e-14));

  d = step_distribution(flat(0.0, 0.0), 3);
  CHECK(d.probability(-1) == 1.0);
  CHECK(d.probability(0) == 0.0);
  CHECK(d.probability(1) == 0.0);
  CHECK(d.probability(2) == 0.0);
}

TEST_CASE("step_distribution rejects the absorbing state") {
  CHECK_THROWS_AS(step_distribution(flat(0.3, 0.2), 0), std::invalid_argument);
}

TEST_CASE("transition_prob examples") {
  const ModelParams p = flat(0.3, 0.2);
  CHECK(transition_prob(p, 0, 0) == 1.0);
  CHECK(transition_prob(p, 0, 1) == 0.0);
  CHECK(transition_prob(p, 3, 5) == doctest::Approx(0.06).epsilon(1e-14));
  CHECK(transition_prob(p, 3, 6) == 0.0);
  CHECK(transition_prob(p, 3, 1) == 0.0);
}

TEST_CASE("normalization over E = 1..1000") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p = random_params(gen);
    for (Energy e = 1; e <= 1000; ++e) {
      const auto d = step_distribution(p, e);
      REQUIRE(std::abs(d.total() - 1.0) <= 1e-12);
      for (const auto& o : d.outcomes) REQUIRE(o.probability >= 0.0);
    }
  }
}

TEST_CASE("kernel consistency and row sums") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p = random_params(gen);
    for (Energy i = 1; i <= 100; ++i) {
      const auto d = step_distribution(p, i);
      double row = 0.0;
      for (Energy j = 0; j <= i + 4; ++j) row += transition_prob(p, i, j);
      REQUIRE(std::abs(row - 1.0) <= 1e-12);
      for (int delta : kDefaultDeltas) {
        if (i + delta == 0) continue;
        REQUIRE(transition_prob(p, i, i + delta) == d.probability(delta));
      }
    }
    double row0 = 0.0;
    for (Energy j = 0; j <= 10; ++j) row0 += transition_prob(p, 0, j);
    CHECK(row0 == 1.0);
  }
}

TEST_CASE("less energy makes pure decay at least as likely") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelParams p = random_params(gen);
    double prev = step_distribution(p, 1).probability(-1);
    for (Energy e = 2; e <= 200; ++e) {
      const double cur = step_distribution(p, e).probability(-1);
      REQUIRE(cur <= prev + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("extended kernel: support, normalization, absorption") {
  ModelParams p = flat(0.3, 0.2, 0.1);
  p.extended_reactions = true;
  const auto d = step_distribution(p, 5);
  CHECK(d.min_delta() == -2);
  CHECK(d.outcomes.front().delta == 3);
  CHECK(std::abs(d.total() - 1.0) <= 1e-12);
  // +3 needs like, repost and reference without a dislike; -2 needs a lone dislike.
  CHECK(d.probability(3) == doctest::Approx(0.3 * 0.9 * 0.2 * 0.3).epsilon(1e-13));
  CHECK(d.probability(-2) == doctest::Approx(0.7 * 0.1 * 0.8 * 0.7).epsilon(1e-13));
  // From energy 1, delta -2 and -1 both absorb.
  CHECK(transition_prob(p, 1, 0) ==
        doctest::Approx(step_distribution(p, 1).probability(-1) +
                        step_distribution(p, 1).probability(-2))
            .epsilon(1e-14));
  double row = 0.0;
  for (Energy j = 0; j <= 6; ++j) row += transition_prob(p, 1, j);
  CHECK(std::abs(row - 1.0) <= 1e-12);
}

TEST_CASE("extended reference probability defaults to p_l0") {
  ModelParams p = flat(0.4, 0.2);
  CHECK(reaction_probs(p, 3).reference == 0.4);
  p.p_ref0 = 0.05;
  CHECK(reaction_probs(p, 3).reference == 0.05);
}

TEST_CASE("ModelParams validation names the key") {
  ModelParams p = flat(0.3, 0.2);
  p.p_l0 = 1.2;
  try {
    p.validate();
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("p_l0") != std::string::npos);
  }
  p = flat(0.3, 0.2);
  p.e0 = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = flat(0.3, 0.2);
  p.t_max = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
