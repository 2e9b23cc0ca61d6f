#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "erw/rational.hpp"
#include "erw/rng.hpp"

namespace erw {

using Step = std::int8_t;  // +1 or -1

/// Model parameters. alpha = 2p-1 and beta = 2q-1 are derived on
/// construction and can never drift from p and q.
class WalkParams {
 public:
  WalkParams(Rational p, Rational q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_ < 0 || p_ > 1) throw std::invalid_argument("p outside [0,1]");
    if (q_ < 0 || q_ > 1) throw std::invalid_argument("q outside [0,1]");
    alpha_ = 2 * p_ - 1;
    beta_ = 2 * q_ - 1;
  }

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }

 private:
  Rational p_, q_, alpha_, beta_;
};

/// One draw of the step lottery: die outcome y on {1..n}, memory pick k on
/// {1..y}, and the repeat/reverse sign.
struct StepLottery {
  std::uint32_t y;
  std::uint32_t k;
  Step sign;
};

struct Trajectory {
  std::vector<Step> steps;
  std::vector<std::int64_t> positions;  // positions[i] = steps[0] + ... + steps[i]

  static Trajectory from_steps(std::vector<Step> steps) {
    Trajectory t;
    t.positions.reserve(steps.size());
    std::int64_t s = 0;
    for (Step x : steps) t.positions.push_back(s += x);
    t.steps = std::move(steps);
    return t;
  }
};

namespace detail {
inline void check_history(std::span<const Step> history) {
  if (history.empty()) throw std::invalid_argument("history must be nonempty");
  for (Step x : history)
    if (x != 1 && x != -1) throw std::invalid_argument("history entries must be +1 or -1");
}
}  // namespace detail

/// P{X_{n+1} = +1 | X_1..X_n} = 1/2 + (alpha/2n) * sum_{r<=n} S_r/r, exact.
inline Rational conditional_plus_probability(std::span<const Step> history,
                                             const WalkParams& params) {
  detail::check_history(history);
  const std::size_t n = history.size();
  Rational harmonic_positions = 0;  // sum_{r<=n} S_r / r
  std::int64_t s = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    s += history[r - 1];
    harmonic_positions += Rational(s, r);
  }
  return Rational(1, 2) + params.alpha() * harmonic_positions / (2 * static_cast<int>(n));
}

/// Deterministic replay of an explicit lottery against a history.
inline Step lottery_step(std::span<const Step> history, const StepLottery& lot) {
  detail::check_history(history);
  if (lot.sign != 1 && lot.sign != -1) throw std::invalid_argument("lottery sign must be +1 or -1");
  if (lot.k < 1 || lot.k > lot.y || lot.y > history.size())
    throw std::invalid_argument("lottery must satisfy 1 <= k <= y <= n");
  return static_cast<Step>(lot.sign * history[lot.k - 1]);
}

/// Samples the next step by the generative law: Y uniform on {1..n}, K
/// uniform on {1..Y}, repeat with probability p. Draw order is fixed
/// (y, k, sign) so a (seed, trial, step)-keyed rng replays exactly.
inline Step sample_next_step(std::span<const Step> history, const WalkParams& params,
                             CounterRng& rng) {
  detail::check_history(history);
  StepLottery lot;
  lot.y = static_cast<std::uint32_t>(1 + rng.below(history.size()));
  lot.k = static_cast<std::uint32_t>(1 + rng.below(lot.y));
  BernoulliCutoff repeat(params.p());
  lot.sign = repeat.sample(rng) ? Step{1} : Step{-1};
  return lottery_step(history, lot);
}

/// Streaming sampler for one walk under the generative law; keeps the full
/// history because the lottery needs random access to X_K.
class TrajectorySampler {
 public:
  TrajectorySampler(const WalkParams& params, std::uint64_t seed, std::uint64_t trial)
      : repeat_(params.p()), first_right_(params.q()), seed_(seed), trial_(trial) {}

  /// Samples step number length()+1, appends it, and returns it.
  Step advance() {
    const std::uint64_t step_index = history_.size() + 1;
    CounterRng rng(seed_, trial_, step_index);
    Step next;
    if (history_.empty()) {
      next = first_right_.sample(rng) ? Step{1} : Step{-1};
    } else {
      const std::uint64_t y = 1 + rng.below(history_.size());
      const std::uint64_t k = 1 + rng.below(y);
      const Step sign = repeat_.sample(rng) ? Step{1} : Step{-1};
      next = static_cast<Step>(sign * history_[k - 1]);
    }
    history_.push_back(next);
    position_ += next;
    return next;
  }

  std::int64_t position() const { return position_; }
  std::size_t length() const { return history_.size(); }
  const std::vector<Step>& history() const { return history_; }

 private:
  BernoulliCutoff repeat_;
  BernoulliCutoff first_right_;
  std::vector<Step> history_;
  std::int64_t position_ = 0;
  std::uint64_t seed_;
  std::uint64_t trial_;
};

/// Length-n trajectory under the generative law; identical (params, n, seed,
/// trial) gives a bit-identical result.
inline Trajectory sample_trajectory(const WalkParams& params, std::size_t n, std::uint64_t seed,
                                    std::uint64_t trial = 0) {
  if (n == 0) throw std::invalid_argument("trajectory length must be >= 1");
  TrajectorySampler sampler(params, seed, trial);
  Trajectory t;
  t.steps.reserve(n);
  t.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.steps.push_back(sampler.advance());
    t.positions.push_back(sampler.position());
  }
  return t;
}

/// Alternative sampler driven by the closed-form conditional probability with
/// a running sum_{r} S_r/r accumulator; one uniform draw per step. Same law
/// as sample_trajectory but a distinct mechanism (used for cross-checks).
inline Trajectory sample_trajectory_closed_form(const WalkParams& params, std::size_t n,
                                                std::uint64_t seed, std::uint64_t trial = 0) {
  if (n == 0) throw std::invalid_argument("trajectory length must be >= 1");
  Trajectory t;
  t.steps.reserve(n);
  t.positions.reserve(n);
  Rational harmonic_positions = 0;
  std::int64_t s = 0;
  for (std::size_t m = 0; m < n; ++m) {
    CounterRng rng(seed, trial, m + 1);
    Rational plus_prob =
        m == 0 ? params.q()
               : Rational(1, 2) + params.alpha() * harmonic_positions / (2 * static_cast<int>(m));
    const Step next = BernoulliCutoff(plus_prob).sample(rng) ? Step{1} : Step{-1};
    t.steps.push_back(next);
    s += next;
    t.positions.push_back(s);
    harmonic_positions += Rational(s, m + 1);
  }
  return t;
}

}  // namespace erw
