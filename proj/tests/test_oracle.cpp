#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "erw/moments.hpp"
#include "erw/oracle.hpp"

using namespace erw;

namespace {
const std::vector<Rational>& p_grid() {
  static const std::vector<Rational> g = {Rational(0), Rational(1, 4), Rational(1, 2),
                                          Rational(3, 4), Rational(1)};
  return g;
}

Rational total_probability(const ExactDistribution& dist) {
  Rational sum = 0;
  for (const auto& [mask, prob] : dist.atoms) sum += prob;
  return sum;
}
}  // namespace

TEST_CASE("one-step law is Rademacher(q)", "[oracle]") {
  const WalkParams params(Rational(3, 4), Rational(1, 3));
  for (const auto mode : {OracleMode::history, OracleMode::generative}) {
    const auto dist = exact_distribution(1, params, mode);
    REQUIRE(dist.atoms.size() == 2);
    REQUIRE(dist.atoms.at(1) == Rational(1, 3));
    REQUIRE(dist.atoms.at(0) == Rational(2, 3));
  }
  // q = 1 prunes the zero-probability branch entirely
  const auto sure = exact_distribution(2, WalkParams(Rational(1, 2), Rational(1)),
                                       OracleMode::history);
  REQUIRE(sure.atoms.size() == 2);
  for (const auto& [mask, prob] : sure.atoms) REQUIRE((mask & 1u) == 1u);
}

TEST_CASE("symmetric parameters reduce to the simple symmetric walk", "[oracle]") {
  const WalkParams params(Rational(1, 2), Rational(1, 2));
  const auto dist = exact_distribution(2, params, OracleMode::generative);
  REQUIRE(dist.atoms.size() == 4);
  for (const auto& [mask, prob] : dist.atoms) REQUIRE(prob == Rational(1, 4));
}

TEST_CASE("mean displacement at n=3 evaluates the published polynomial", "[oracle]") {
  const auto dist = exact_distribution(3, WalkParams(Rational(3, 4), Rational(1)),
                                       OracleMode::history);
  REQUIRE(oracle_mean_s(dist, 3) == Rational(31, 16));  // 1 + 7/4 a + a^2/4 at a = 1/2
}

TEST_CASE("history and generative modes build identical distributions", "[oracle]") {
  for (const auto& p : p_grid()) {
    for (const auto& q : {Rational(1, 2), Rational(1)}) {
      const WalkParams params(p, q);
      for (std::size_t n = 1; n <= 6; ++n) {
        const auto h = exact_distribution(n, params, OracleMode::history);
        const auto g = exact_distribution(n, params, OracleMode::generative);
        REQUIRE(h.atoms == g.atoms);
        REQUIRE(total_probability(h) == 1);
        for (const auto& [mask, prob] : h.atoms) REQUIRE(prob > 0);
      }
    }
  }
}

TEST_CASE("oracle moments", "[oracle]") {
  const WalkParams params(Rational(3, 4), Rational(2, 5));
  const auto dist = exact_distribution(4, params, OracleMode::history);
  REQUIRE(oracle_mean_s(dist, 1) == params.beta());
  REQUIRE(oracle_mean_x(dist, 1) == params.beta());
  REQUIRE_THROWS_AS(oracle_mean_s(dist, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(oracle_mean_x(dist, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(oracle_product(dist, 2, 5), std::invalid_argument);

  // product 2 3 at p = 3/4 is 5/16 regardless of q
  for (const auto& q : {Rational(1, 2), Rational(1)}) {
    const auto d = exact_distribution(3, WalkParams(Rational(3, 4), q), OracleMode::generative);
    REQUIRE(oracle_product(d, 2, 3) == Rational(5, 16));
    REQUIRE(oracle_product(d, 2, 2) == 1);
  }

  const auto sym = exact_distribution(3, WalkParams(Rational(1, 2), Rational(1, 2)),
                                      OracleMode::history);
  REQUIRE(oracle_second_moment_s(sym, 3) == 3);
}

TEST_CASE("law of S_k from the atoms", "[oracle]") {
  const auto dist = exact_distribution(2, WalkParams(Rational(1, 2), Rational(1, 2)),
                                       OracleMode::history);
  const auto law = oracle_distribution_of_s(dist, 2);
  REQUIRE(law.size() == 3);
  REQUIRE(law.at(-2) == Rational(1, 4));
  REQUIRE(law.at(0) == Rational(1, 2));
  REQUIRE(law.at(2) == Rational(1, 4));
}

TEST_CASE("caps refuse oversized horizons unless overridden", "[oracle]") {
  const WalkParams params(Rational(3, 4), Rational(1, 2));
  REQUIRE_THROWS_AS(exact_distribution(17, params, OracleMode::history), resource_limit_error);
  REQUIRE_THROWS_AS(exact_distribution(9, params, OracleMode::generative), resource_limit_error);
  REQUIRE_THROWS_AS(exact_distribution(0, params, OracleMode::history), std::invalid_argument);
  // the override lifts the soft cap but not the hard one
  const auto gen = exact_distribution(9, params, OracleMode::generative, true);
  const auto hist = exact_distribution(9, params, OracleMode::history);
  REQUIRE(gen.atoms == hist.atoms);
  REQUIRE_THROWS_AS(exact_distribution(25, params, OracleMode::history, true),
                    resource_limit_error);
}

TEST_CASE("sign symmetry: flipping q mirrors every atom", "[oracle]") {
  for (const auto& p : p_grid()) {
    const auto direct = exact_distribution(6, WalkParams(p, Rational(1, 3)), OracleMode::history);
    const auto flipped =
        exact_distribution(6, WalkParams(p, Rational(2, 3)), OracleMode::history);
    std::map<std::uint32_t, Rational> mirrored;
    for (const auto& [mask, prob] : flipped.atoms) mirrored[~mask & 0x3fu] = prob;
    REQUIRE(mirrored == direct.atoms);
  }
}

TEST_CASE("products and second moments are q-independent", "[oracle]") {
  for (const auto& p : p_grid()) {
    const auto half = exact_distribution(7, WalkParams(p, Rational(1, 2)), OracleMode::history);
    const auto one = exact_distribution(7, WalkParams(p, Rational(1)), OracleMode::history);
    for (std::size_t b = 2; b <= 7; ++b) {
      for (std::size_t a = 1; a < b; ++a)
        REQUIRE(oracle_product(half, a, b) == oracle_product(one, a, b));
      REQUIRE(oracle_second_moment_s(half, b) == oracle_second_moment_s(one, b));
    }
  }
}

TEST_CASE("oracle means scale by beta", "[oracle]") {
  for (const auto& p : {Rational(1, 4), Rational(3, 4)}) {
    for (const auto& q : {Rational(1, 2), Rational(1, 3), Rational(1)}) {
      const Rational beta = 2 * q - 1;
      const auto scaled = exact_distribution(10, WalkParams(p, q), OracleMode::history);
      const auto unit = exact_distribution(10, WalkParams(p, Rational(1)), OracleMode::history);
      for (std::size_t k = 1; k <= 10; ++k)
        REQUIRE(oracle_mean_s(scaled, k) == beta * oracle_mean_s(unit, k));
    }
  }
}

TEST_CASE("oracle agrees with the beta-scaled mean recursions", "[oracle]") {
  const MeanSeries<Rational> means(14);
  for (const auto& p : p_grid()) {
    for (const auto& q : {Rational(1, 2), Rational(1)}) {
      const WalkParams params(p, q);
      const auto dist = exact_distribution(14, params, OracleMode::history);
      for (std::size_t k = 1; k <= 14; ++k) {
        REQUIRE(oracle_mean_x(dist, k) ==
                params.beta() * means.increment(k).evaluate(params.alpha()));
        REQUIRE(oracle_mean_s(dist, k) ==
                params.beta() * means.displacement(k).evaluate(params.alpha()));
      }
    }
  }
}

TEST_CASE("signs render in walk order", "[oracle]") {
  REQUIRE(signs_string(0b101u, 3) == "+-+");
  REQUIRE(signs_string(0u, 2) == "--");
}
