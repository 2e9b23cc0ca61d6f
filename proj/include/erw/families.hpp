#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "erw/polynomial.hpp"
#include "erw/rational.hpp"

namespace erw {

/// Exponent vector (x_2, x_3, ..., x_n); entry t (0-based) is the exponent of
/// coordinate t+2, each in {0,1,2}. A vector for walk index n has length n-1.
using ExponentVector = std::vector<std::uint8_t>;

enum class FamilyKind { phi, theta, omega, psi };

/// The four constructions: the recursive block unions for Phi^j_n and
/// Theta^j_n, and their characterizations as unions over coordinate sums of
/// the C1-constrained sets Omega^j_{k,n} (last coordinate nonzero) and
/// Psi^j_{k,n} (unconstrained last coordinate).
enum class FamilyConstruction { phi_recursive, phi_c1, theta_recursive, psi_c1 };

struct IndexFamily {
  FamilyKind kind = FamilyKind::phi;
  std::size_t j = 0;
  std::size_t n = 0;
  std::vector<ExponentVector> members;  // lexicographic, no duplicates
};

/// Families are materialized only up to this walk index by default; their
/// sizes grow like n^{2j-1}. Streaming weight enumeration has no such cap.
inline constexpr std::size_t kDefaultMaterializeCap = 14;

namespace detail {

// Condition C1: every coordinate equal to 2 must be followed, to its right,
// by an even number of coordinates equal to 1. The DFS enforces it by
// tracking the parity of already-placed 1s while assigning right to left,
// pruning the moment a 2 would land on odd parity, and bounds the final
// coordinate sum to [sum_lo, sum_hi]. Calls emit(vector, sum, weight) at
// every surviving leaf.
template <class Emit>
void c1_enumerate(std::size_t n, bool last_nonzero, std::size_t sum_lo, std::size_t sum_hi,
                  Emit&& emit) {
  ExponentVector vec(n >= 2 ? n - 1 : 0, 0);
  auto rec = [&](auto&& self, std::size_t pos, bool parity_even, std::size_t sum,
                 const Rational& weight) -> void {
    if (pos == 1) {
      if (sum >= sum_lo && sum <= sum_hi) emit(vec, sum, weight);
      return;
    }
    if (sum > sum_hi) return;
    if (sum + 2 * (pos - 1) < sum_lo) return;
    for (std::uint8_t v = 0; v <= 2; ++v) {
      if (v == 2 && !parity_even) continue;
      if (v == 0 && last_nonzero && pos == n) continue;
      vec[pos - 2] = v;
      Rational w = weight;
      for (std::uint8_t e = 0; e < v; ++e) w /= static_cast<int>(pos);
      self(self, pos - 1, v == 1 ? !parity_even : parity_even, sum + v, w);
    }
    vec[pos - 2] = 0;
  };
  rec(rec, n >= 1 ? n : 1, true, 0, Rational(1));
}

using MemberSet = std::set<ExponentVector>;

inline ExponentVector with_suffix(const ExponentVector& base, const ExponentVector& suffix) {
  ExponentVector out = base;
  out.insert(out.end(), suffix.begin(), suffix.end());
  return out;
}

// Suffix patterns of the block B^{j-1}_{n-k} for suffix length k: the lone
// trailing 2, and a 1 at each earlier slot paired with a trailing 1.
inline std::vector<ExponentVector> phi_block_suffixes(std::size_t k) {
  std::vector<ExponentVector> out;
  ExponentVector two(k, 0);
  two[k - 1] = 2;
  out.push_back(std::move(two));
  for (std::size_t i = 0; i + 1 < k; ++i) {
    ExponentVector ones(k, 0);
    ones[i] = 1;
    ones[k - 1] = 1;
    out.push_back(std::move(ones));
  }
  return out;
}

// Lambda suffixes: (0) for the carried family, (2) for k=1, (1,0,...,0,1)
// for k>=2.
inline ExponentVector theta_suffix(std::size_t k) {
  ExponentVector s(k, 0);
  if (k == 1) {
    s[0] = 2;
  } else {
    s[0] = 1;
    s[k - 1] = 1;
  }
  return s;
}

class RecursiveBuilder {
 public:
  // Phi^1_n is the lone trailing 1, the lone trailing 2, and every pairing
  // of an earlier 1 with a trailing 1; Phi^j_n for j >= 2 is the union of
  // blocks B^{j-1}_{n-k} over 1 <= k <= n-j+1, with Phi^1_n minus the lone
  // trailing 1 joined in when j = 2. Base: Phi^1_1 holds the empty vector.
  const MemberSet& phi(std::size_t j, std::size_t n) {
    auto key = std::make_pair(j, n);
    if (auto it = phi_memo_.find(key); it != phi_memo_.end()) return it->second;
    MemberSet out;
    if (j >= 1 && j <= n) {
      if (n == 1) {
        out.insert(ExponentVector{});
      } else if (j == 1) {
        ExponentVector lone(n - 1, 0);
        lone[n - 2] = 1;
        out.insert(lone);
        lone[n - 2] = 2;
        out.insert(lone);
        for (std::size_t t = 0; t + 1 < n - 1; ++t) {
          ExponentVector pair(n - 1, 0);
          pair[t] = 1;
          pair[n - 2] = 1;
          out.insert(std::move(pair));
        }
      } else {
        for (std::size_t k = 1; k + j <= n + 1; ++k) {
          const MemberSet& base = phi(j - 1, n - k);
          for (const auto& suffix : phi_block_suffixes(k))
            for (const auto& member : base) out.insert(with_suffix(member, suffix));
        }
        if (j == 2) {
          ExponentVector lone(n - 1, 0);
          lone[n - 2] = 1;
          for (const auto& member : phi(1, n))
            if (member != lone) out.insert(member);
        }
      }
    }
    return phi_memo_.emplace(key, std::move(out)).first->second;
  }

  // Theta^j_n = Lambda^j_{n-1} u Lambda^{j-1}_{n-1} u ... u Lambda^{j-1}_{j-1}
  // with the degenerate tail Lambda^0_0 = {(0,...,0,1)} when j = 1.
  // Bases: Theta^0_n is the all-zero vector, Theta^1_1 the empty vector.
  const MemberSet& theta(std::size_t j, std::size_t n) {
    auto key = std::make_pair(j, n);
    if (auto it = theta_memo_.find(key); it != theta_memo_.end()) return it->second;
    MemberSet out;
    if (j == 0) {
      out.insert(ExponentVector(n - 1, 0));
    } else if (j <= n) {
      if (n == 1) {
        out.insert(ExponentVector{});
      } else {
        for (const auto& member : theta(j, n - 1))
          out.insert(with_suffix(member, ExponentVector{0}));
        for (std::size_t k = 1; k + j <= n + 1; ++k) {
          if (n - k >= 1) {
            const ExponentVector suffix = theta_suffix(k);
            for (const auto& member : theta(j - 1, n - k)) out.insert(with_suffix(member, suffix));
          } else {  // k = n, only reached when j = 1
            ExponentVector lone(n - 1, 0);
            lone[n - 2] = 1;
            out.insert(std::move(lone));
          }
        }
      }
    }
    return theta_memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::map<std::pair<std::size_t, std::size_t>, MemberSet> phi_memo_;
  std::map<std::pair<std::size_t, std::size_t>, MemberSet> theta_memo_;
};

inline std::vector<ExponentVector> to_sorted_members(const MemberSet& set) {
  return {set.begin(), set.end()};
}

inline void check_family_args(FamilyConstruction c, std::size_t j, std::size_t n,
                              std::size_t materialize_cap) {
  const bool is_phi = c == FamilyConstruction::phi_recursive || c == FamilyConstruction::phi_c1;
  if (n < 2) throw std::invalid_argument("family walk index n must be >= 2");
  if (is_phi && j < 1) throw std::invalid_argument("phi/omega families require j >= 1");
  if (j > n) throw std::invalid_argument("family power j must satisfy j <= n");
  if (n > materialize_cap)
    throw resource_limit_error("families are materialized only for n <= " +
                               std::to_string(materialize_cap) +
                               "; use streaming weights beyond");
}

}  // namespace detail

/// Weight 1/(2^{x_2} 3^{x_3} ... n^{x_n}) of one exponent vector.
inline Rational member_weight(const ExponentVector& member) {
  Rational w(1);
  for (std::size_t t = 0; t < member.size(); ++t)
    for (std::uint8_t e = 0; e < member[t]; ++e) w /= static_cast<int>(t + 2);
  return w;
}

inline IndexFamily build_family(FamilyConstruction construction, std::size_t j, std::size_t n,
                                std::size_t materialize_cap = kDefaultMaterializeCap) {
  detail::check_family_args(construction, j, n, materialize_cap);
  IndexFamily family;
  family.j = j;
  family.n = n;
  switch (construction) {
    case FamilyConstruction::phi_recursive: {
      family.kind = FamilyKind::phi;
      detail::RecursiveBuilder builder;
      family.members = detail::to_sorted_members(builder.phi(j, n));
      break;
    }
    case FamilyConstruction::theta_recursive: {
      family.kind = FamilyKind::theta;
      detail::RecursiveBuilder builder;
      family.members = detail::to_sorted_members(builder.theta(j, n));
      break;
    }
    case FamilyConstruction::phi_c1:
    case FamilyConstruction::psi_c1: {
      const bool last_nonzero = construction == FamilyConstruction::phi_c1;
      family.kind = last_nonzero ? FamilyKind::omega : FamilyKind::psi;
      if (j == 0) {
        family.members.push_back(ExponentVector(n - 1, 0));
        break;
      }
      const std::size_t lo = 2 * (j - 1);
      const std::size_t hi = 2 * j;
      detail::c1_enumerate(n, last_nonzero, lo, hi,
                           [&](const ExponentVector& v, std::size_t, const Rational&) {
                             family.members.push_back(v);
                           });
      std::sort(family.members.begin(), family.members.end());
      break;
    }
  }
  return family;
}

/// Single fixed-sum family Omega^j_{k,n} (xn != 0) or Psi^j_{k,n}.
inline IndexFamily build_fixed_sum_family(FamilyKind kind, std::size_t j, std::size_t k,
                                          std::size_t n,
                                          std::size_t materialize_cap = kDefaultMaterializeCap) {
  if (kind != FamilyKind::omega && kind != FamilyKind::psi)
    throw std::invalid_argument("fixed-sum families are omega or psi");
  detail::check_family_args(kind == FamilyKind::omega ? FamilyConstruction::phi_c1
                                                      : FamilyConstruction::psi_c1,
                            j, n, materialize_cap);
  if (k < (j >= 1 ? 2 * (j - 1) : 0) || k > 2 * j)
    throw std::invalid_argument("coordinate sum k must lie in [2(j-1), 2j]");
  IndexFamily family;
  family.kind = kind;
  family.j = j;
  family.n = n;
  detail::c1_enumerate(n, kind == FamilyKind::omega, k, k,
                       [&](const ExponentVector& v, std::size_t, const Rational&) {
                         family.members.push_back(v);
                       });
  std::sort(family.members.begin(), family.members.end());
  return family;
}

/// Sum over members of the weight 1/(2^{x_2} ... n^{x_n}), exact.
inline Rational family_weight(const IndexFamily& family) {
  Rational total(0);
  for (const auto& member : family.members) total += member_weight(member);
  return total;
}

/// Streaming C1 weights bucketed by coordinate sum: W[k] is the total weight
/// of C1 vectors of length n-1 with sum k (last coordinate nonzero for the
/// omega flavor). Never materializes the families.
inline std::vector<Rational> c1_weight_by_sum(std::size_t n, bool last_nonzero) {
  if (n < 1) throw std::invalid_argument("walk index must be >= 1");
  std::vector<Rational> buckets(n >= 2 ? 2 * (n - 1) + 1 : 1, Rational(0));
  detail::c1_enumerate(n, last_nonzero, 0, buckets.size() - 1,
                       [&](const ExponentVector&, std::size_t sum, const Rational& w) {
                         buckets[sum] += w;
                       });
  return buckets;
}

enum class ExplicitRoute { c1_streaming, recursive_families };

namespace detail {
// coefficient of alpha^j collects the sum buckets k in [2(j-1), 2j]
inline std::vector<Rational> coefficients_from_buckets(const std::vector<Rational>& buckets,
                                                       std::size_t n, bool with_constant_one) {
  std::vector<Rational> coeffs(n + 1, Rational(0));
  if (with_constant_one) coeffs[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t lo = 2 * (j - 1);
    for (std::size_t k = lo; k <= 2 * j; ++k)
      if (k < buckets.size()) coeffs[j] += buckets[k];
  }
  return coeffs;
}
}  // namespace detail

/// E(X_k)/beta from the index families: coefficient of alpha^j is the weight
/// of Phi^j_{k-1}.
inline AlphaPolynomial explicit_mean_increment(std::size_t k,
                                               ExplicitRoute route = ExplicitRoute::c1_streaming,
                                               std::size_t materialize_cap = kDefaultMaterializeCap) {
  if (k < 2) throw std::invalid_argument("explicit mean increments start at k = 2");
  const std::size_t n = k - 1;
  if (route == ExplicitRoute::c1_streaming) {
    return AlphaPolynomial(
        detail::coefficients_from_buckets(c1_weight_by_sum(n, true), n, false));
  }
  if (n > materialize_cap)
    throw resource_limit_error("recursive-family route is capped at n <= " +
                               std::to_string(materialize_cap));
  std::vector<Rational> coeffs(n + 1, Rational(0));
  detail::RecursiveBuilder builder;
  for (std::size_t j = 1; j <= n; ++j)
    for (const auto& member : builder.phi(j, n)) coeffs[j] += member_weight(member);
  return AlphaPolynomial(std::move(coeffs));
}

/// E(S_k)/beta from the index families: constant term 1, coefficient of
/// alpha^j the weight of Theta^j_{k-1}.
inline AlphaPolynomial explicit_mean_displacement(
    std::size_t k, ExplicitRoute route = ExplicitRoute::c1_streaming,
    std::size_t materialize_cap = kDefaultMaterializeCap) {
  if (k < 2) throw std::invalid_argument("explicit mean displacement starts at k = 2");
  const std::size_t n = k - 1;
  if (route == ExplicitRoute::c1_streaming) {
    return AlphaPolynomial(
        detail::coefficients_from_buckets(c1_weight_by_sum(n, false), n, true));
  }
  if (n > materialize_cap)
    throw resource_limit_error("recursive-family route is capped at n <= " +
                               std::to_string(materialize_cap));
  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[0] = 1;
  detail::RecursiveBuilder builder;
  for (std::size_t j = 1; j <= n; ++j)
    for (const auto& member : builder.theta(j, n)) coeffs[j] += member_weight(member);
  return AlphaPolynomial(std::move(coeffs));
}

enum class CardinalityKind { phi, theta };

/// The nested-sum cardinality formulas; empty sums evaluate to 0.
inline BigInt cardinality_formula(CardinalityKind kind, std::size_t j, std::size_t n) {
  if (j < 1) throw std::invalid_argument("cardinality formulas require j >= 1");
  if (n < 1) throw std::invalid_argument("cardinality formulas require n >= 1");
  const auto N = static_cast<std::int64_t>(n);
  if (kind == CardinalityKind::theta) {
    // t_1(n) = n(n+1)/2; t_j(n) = sum_{r=j-1}^{n-1} (n-r) t_{j-1}(r)
    std::vector<BigInt> prev(n + 1, BigInt(0));
    for (std::int64_t m = 1; m <= N; ++m) prev[m] = BigInt(m) * (m + 1) / 2;
    for (std::size_t level = 2; level <= j; ++level) {
      std::vector<BigInt> cur(n + 1, BigInt(0));
      for (std::int64_t m = 1; m <= N; ++m) {
        BigInt acc = 0;
        for (std::int64_t r = static_cast<std::int64_t>(level) - 1; r <= m - 1; ++r)
          acc += BigInt(m - r) * prev[r];
        cur[m] = acc;
      }
      prev = std::move(cur);
    }
    return prev[n];
  }
  // phi
  auto phi2 = [](std::int64_t m) {
    if (m < 2) return BigInt(0);
    BigInt acc = m - 1;
    for (std::int64_t r = 1; r <= m - 2; ++r) acc += BigInt(r) * (m - r);
    return acc;
  };
  if (j == 1) return BigInt(n);
  if (j == 2) return phi2(N);
  // |Phi^j_n| = sum_{r0=j-1}^{n-1} (n-r0) h_j(r0),
  // h_3(r) = |Phi^2_r|, h_j(r) = sum_{r'=j-2}^{r-1} (r-r') h_{j-1}(r')
  std::vector<BigInt> h(n + 1, BigInt(0));
  for (std::int64_t m = 0; m <= N; ++m) h[m] = phi2(m);  // level 3
  for (std::size_t level = 4; level <= j; ++level) {
    std::vector<BigInt> cur(n + 1, BigInt(0));
    for (std::int64_t m = 0; m <= N; ++m) {
      BigInt acc = 0;
      for (std::int64_t r = static_cast<std::int64_t>(level) - 2; r <= m - 1; ++r)
        acc += BigInt(m - r) * h[r];
      cur[m] = acc;
    }
    h = std::move(cur);
  }
  BigInt total = 0;
  for (std::int64_t r0 = static_cast<std::int64_t>(j) - 1; r0 <= N - 1; ++r0)
    total += BigInt(N - r0) * h[r0];
  return total;
}

}  // namespace erw
