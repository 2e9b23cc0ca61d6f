#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "erw/moments.hpp"
#include "erw/montecarlo.hpp"

using namespace erw;

namespace {
constexpr std::uint64_t kSeed = 20250810;

bool summaries_identical(const std::vector<SimulationSummary>& a,
                         const std::vector<SimulationSummary>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].n != b[i].n || a[i].trials != b[i].trials ||
        a[i].sample_mean_s != b[i].sample_mean_s || a[i].sample_var_s != b[i].sample_var_s ||
        a[i].stderr_mean != b[i].stderr_mean || a[i].histogram != b[i].histogram)
      return false;
  }
  return true;
}
}  // namespace

TEST_CASE("degenerate walk has exact mean and zero variance", "[montecarlo]") {
  const WalkParams params(Rational(1), Rational(1));
  const auto rows = run_simulation(params, 20, 5000, kSeed, {10, 20});
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].n == 10);
  REQUIRE(rows[0].sample_mean_s == 10.0);
  REQUIRE(rows[0].sample_var_s == 0.0);
  REQUIRE(rows[1].sample_mean_s == 20.0);
  REQUIRE(rows[1].stderr_mean == 0.0);
}

TEST_CASE("identical seeds give bit-identical summaries across thread counts",
          "[montecarlo]") {
  const WalkParams params(Rational(3, 4), Rational(1, 2));
  SimulationOptions opt;
  opt.trials = 30000;
  opt.seed = kSeed;
  opt.checkpoints = {7, 25, 40};
  opt.histogram = true;
  opt.block_size = 1024;

  opt.threads = 1;
  const auto solo = run_simulation(params, 40, opt);
  opt.threads = 8;
  const auto pooled = run_simulation(params, 40, opt);
  REQUIRE(summaries_identical(solo, pooled));

  opt.threads = 3;  // uneven split exercises the block merge order
  const auto odd = run_simulation(params, 40, opt);
  REQUIRE(summaries_identical(solo, odd));
}

TEST_CASE("summary invariants: stderr, histogram support", "[montecarlo]") {
  const WalkParams params(Rational(2, 3), Rational(1, 4));
  SimulationOptions opt;
  opt.trials = 20000;
  opt.seed = kSeed + 1;
  opt.checkpoints = {5, 12};
  opt.histogram = true;
  const auto rows = run_simulation(params, 12, opt);
  for (const auto& row : rows) {
    REQUIRE(row.trials == opt.trials);
    REQUIRE(row.stderr_mean == std::sqrt(row.sample_var_s / static_cast<double>(row.trials)));
    std::uint64_t total = 0;
    for (const auto& [pos, count] : row.histogram) {
      total += count;
      REQUIRE(std::llabs(pos) <= static_cast<std::int64_t>(row.n));
      const bool same_parity = ((pos % 2 + 2) % 2) == (static_cast<std::int64_t>(row.n) % 2);
      REQUIRE(same_parity);
    }
    REQUIRE(total == opt.trials);
  }
}

TEST_CASE("empirical mean matches the exact engine within 5 standard errors",
          "[montecarlo][statistical]") {
  const WalkParams params(Rational(3, 4), Rational(1));
  const std::size_t n = 50;
  const auto rows = run_simulation(params, n, 200000, kSeed + 2, {n});
  const Rational exact = params.beta() * mean_displacement(n).evaluate(params.alpha());
  REQUIRE(std::abs(rows[0].sample_mean_s - to_double(exact)) <= 5.0 * rows[0].stderr_mean);
}

TEST_CASE("grid sweep: empirical mean and second moment track the exact tables",
          "[montecarlo][statistical]") {
  const std::size_t n = 50;
  const MomentTable table(n);
  for (const auto& p : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
    for (const auto& q : {Rational(1, 2), Rational(1)}) {
      const WalkParams params(p, q);
      SimulationOptions opt;
      opt.trials = 1000000;
      opt.seed = kSeed + 3;
      opt.checkpoints = {10, 25, 50};
      opt.histogram = true;
      const auto rows = run_simulation(params, n, opt);
      for (const auto& row : rows) {
        const double exact_mean =
            to_double(params.beta() * table.mean_s(row.n).evaluate(params.alpha()));
        REQUIRE(std::abs(row.sample_mean_s - exact_mean) <= 5.0 * row.stderr_mean + 1e-12);

        // delta-method check on the second moment, from the exact histogram
        const double exact_m2 = to_double(table.second_moment(row.n).evaluate(params.alpha()));
        double m2 = 0, m4 = 0;
        for (const auto& [pos, count] : row.histogram) {
          const double w = static_cast<double>(count) / static_cast<double>(row.trials);
          m2 += w * static_cast<double>(pos) * static_cast<double>(pos);
          m4 += w * std::pow(static_cast<double>(pos), 4.0);
        }
        const double se_m2 =
            std::sqrt(std::max(m4 - m2 * m2, 0.0) / static_cast<double>(row.trials));
        REQUIRE(std::abs(m2 - exact_m2) <= 5.0 * se_m2 + 1e-9);
      }
    }
  }
}

TEST_CASE("symmetric walk is diffusive", "[montecarlo][statistical]") {
  const WalkParams params(Rational(1, 2), Rational(1, 2));
  const std::size_t n = 100;
  const auto rows = run_simulation(params, n, 200000, kSeed + 4, {n});
  const double ratio = rows[0].sample_var_s / static_cast<double>(n);
  REQUIRE(ratio >= 0.95);
  REQUIRE(ratio <= 1.05);
}

TEST_CASE("argument validation", "[montecarlo]") {
  const WalkParams params(Rational(1, 2), Rational(1, 2));
  REQUIRE_THROWS_AS(run_simulation(params, 10, 0, kSeed, {5}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_simulation(params, 10, 100, kSeed, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_simulation(params, 10, 100, kSeed, {11}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_simulation(params, 10, 100, kSeed, {0}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_simulation(params, 10, 100, kSeed, {5, 5}), std::invalid_argument);
  REQUIRE_THROWS_AS(run_simulation(params, 10, 100, kSeed, {7, 5}), std::invalid_argument);
}
