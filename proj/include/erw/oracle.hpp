#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "erw/rational.hpp"
#include "erw/walk.hpp"

namespace erw {

enum class OracleMode { history, generative };

/// Exact joint law of (X_1, ..., X_n) at small horizon. Atoms are keyed by a
/// sign bitmask (bit i set means step i+1 equals +1) and only carry strictly
/// positive probabilities; they sum to exactly 1.
struct ExactDistribution {
  std::size_t n = 0;
  OracleMode mode = OracleMode::history;
  std::map<std::uint32_t, Rational> atoms;
};

/// Soft cost guards; exact_distribution refuses beyond them unless
/// override_cap is set. The hard cap protects the 32-bit atom keys.
inline constexpr std::size_t kHistoryModeCap = 16;
inline constexpr std::size_t kGenerativeModeCap = 8;
inline constexpr std::size_t kOracleHardCap = 24;

inline std::string signs_string(std::uint32_t mask, std::size_t n) {
  std::string s(n, '-');
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (1u << i)) s[i] = '+';
  return s;
}

namespace detail {

// Chain rule over the closed-form conditional step probabilities
// P(+1 | prefix of length m) = 1/2 + (alpha/2m) sum_{r<=m} S_r/r.
inline void history_mode_dfs(std::size_t depth, std::size_t n, std::uint32_t mask,
                             const Rational& prob, std::int64_t s,
                             const Rational& harmonic_positions, const WalkParams& params,
                             std::map<std::uint32_t, Rational>& atoms) {
  if (depth == n) {
    atoms[mask] += prob;
    return;
  }
  Rational plus = depth == 0 ? params.q()
                             : Rational(1, 2) + params.alpha() * harmonic_positions /
                                                    (2 * static_cast<int>(depth));
  Rational minus = 1 - plus;
  const auto next_index = static_cast<int>(depth) + 1;
  if (plus != 0) {
    history_mode_dfs(depth + 1, n, mask | (1u << depth), prob * plus, s + 1,
                     harmonic_positions + Rational(s + 1, next_index), params, atoms);
  }
  if (minus != 0) {
    history_mode_dfs(depth + 1, n, mask, prob * minus, s - 1,
                     harmonic_positions + Rational(s - 1, next_index), params, atoms);
  }
}

// Raw generative definition: branch over every lottery (Y, K, sign) at every
// step. Shares no step-law code with the history mode above.
inline std::map<std::uint32_t, Rational> generative_mode_enumerate(std::size_t n,
                                                                   const WalkParams& params) {
  std::map<std::uint32_t, Rational> level;
  if (params.q() != 0) level[1u] = params.q();
  if (params.q() != 1) level[0u] = 1 - params.q();
  const Rational repeat = params.p();
  const Rational reverse = 1 - params.p();
  for (std::size_t m = 1; m < n; ++m) {
    std::map<std::uint32_t, Rational> next;
    for (const auto& [mask, prob] : level) {
      for (std::size_t y = 1; y <= m; ++y) {
        const Rational lottery_weight = prob / Rational(m * y);
        for (std::size_t k = 1; k <= y; ++k) {
          const bool recalled_plus = (mask >> (k - 1)) & 1u;
          // sign = +1 branch
          if (repeat != 0) {
            std::uint32_t child = recalled_plus ? (mask | (1u << m)) : mask;
            next[child] += lottery_weight * repeat;
          }
          // sign = -1 branch
          if (reverse != 0) {
            std::uint32_t child = recalled_plus ? mask : (mask | (1u << m));
            next[child] += lottery_weight * reverse;
          }
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace detail

inline ExactDistribution exact_distribution(std::size_t n, const WalkParams& params,
                                            OracleMode mode, bool override_cap = false) {
  if (n == 0) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t cap = mode == OracleMode::history ? kHistoryModeCap : kGenerativeModeCap;
  if (n > kOracleHardCap)
    throw resource_limit_error("oracle horizon exceeds the hard cap of " +
                               std::to_string(kOracleHardCap));
  if (n > cap && !override_cap)
    throw resource_limit_error("oracle horizon " + std::to_string(n) + " exceeds the cap of " +
                               std::to_string(cap) + " (use the override to force)");

  ExactDistribution dist;
  dist.n = n;
  dist.mode = mode;
  if (mode == OracleMode::history) {
    detail::history_mode_dfs(0, n, 0u, Rational(1), 0, Rational(0), params, dist.atoms);
  } else {
    dist.atoms = detail::generative_mode_enumerate(n, params);
  }
  return dist;
}

namespace detail {
inline void check_index(const ExactDistribution& dist, std::size_t k, const char* what) {
  if (k == 0 || k > dist.n)
    throw std::invalid_argument(std::string(what) + " index out of range [1, n]");
}

inline int sign_at(std::uint32_t mask, std::size_t k) {  // 1-based
  return (mask >> (k - 1)) & 1u ? 1 : -1;
}

inline std::int64_t position_at(std::uint32_t mask, std::size_t k) {
  std::int64_t s = 0;
  for (std::size_t i = 1; i <= k; ++i) s += sign_at(mask, i);
  return s;
}
}  // namespace detail

inline Rational oracle_mean_x(const ExactDistribution& dist, std::size_t k) {
  detail::check_index(dist, k, "mean_x");
  Rational acc = 0;
  for (const auto& [mask, prob] : dist.atoms) acc += prob * detail::sign_at(mask, k);
  return acc;
}

inline Rational oracle_mean_s(const ExactDistribution& dist, std::size_t k) {
  detail::check_index(dist, k, "mean_s");
  Rational acc = 0;
  for (const auto& [mask, prob] : dist.atoms) acc += prob * detail::position_at(mask, k);
  return acc;
}

inline Rational oracle_product(const ExactDistribution& dist, std::size_t a, std::size_t b) {
  detail::check_index(dist, a, "product");
  detail::check_index(dist, b, "product");
  Rational acc = 0;
  for (const auto& [mask, prob] : dist.atoms)
    acc += prob * (detail::sign_at(mask, a) * detail::sign_at(mask, b));
  return acc;
}

inline Rational oracle_second_moment_s(const ExactDistribution& dist, std::size_t k) {
  detail::check_index(dist, k, "second_moment_s");
  Rational acc = 0;
  for (const auto& [mask, prob] : dist.atoms) {
    const std::int64_t s = detail::position_at(mask, k);
    acc += prob * (s * s);
  }
  return acc;
}

/// Exact law of the position S_k.
inline std::map<std::int64_t, Rational> oracle_distribution_of_s(const ExactDistribution& dist,
                                                                 std::size_t k) {
  detail::check_index(dist, k, "distribution_of_S");
  std::map<std::int64_t, Rational> law;
  for (const auto& [mask, prob] : dist.atoms) law[detail::position_at(mask, k)] += prob;
  return law;
}

}  // namespace erw
