#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "erw/polynomial.hpp"
#include "erw/rational.hpp"

namespace erw {

/// Beta-normalized mean series: increment(k) = E(X_k)/beta and
/// displacement(k) = E(S_k)/beta as polynomials in alpha, from the
/// recursions
///   E(X_{n+1}) = (alpha/n) sum_{r<=n} (1/r) sum_{k<=r} E(X_k)
///   E(S_{n+1}) = E(S_n) + (alpha/n) sum_{r<=n} E(S_r)/r
/// with running prefix-sum accumulators, so the whole table to N costs O(N)
/// polynomial operations. The beta factor is applied at presentation time
/// only; products and second moments carry no beta at all.
template <class Coeff>
class MeanSeries {
 public:
  using Poly = BasicAlphaPolynomial<Coeff>;

  explicit MeanSeries(std::size_t max_index) {
    if (max_index == 0) throw std::invalid_argument("mean series index must be >= 1");
    increments_.reserve(max_index);
    displacements_.reserve(max_index);
    increments_.push_back(Poly::constant(Coeff(1)));
    displacements_.push_back(Poly::constant(Coeff(1)));
    Poly increment_prefix = increments_.back();       // sum_{k<=r} E(X_k) at r = 1
    Poly increment_harmonic = increment_prefix;       // sum_{r} (1/r) sum_{k<=r} E(X_k)
    Poly displacement_harmonic = displacements_.back();  // sum_{r} E(S_r)/r
    for (std::size_t next = 2; next <= max_index; ++next) {
      const auto m = static_cast<int>(next - 1);
      increments_.push_back(increment_harmonic.shifted(1) / Coeff(m));
      displacements_.push_back(displacements_.back() + displacement_harmonic.shifted(1) / Coeff(m));
      if (next < max_index) {
        increment_prefix += increments_.back();
        increment_harmonic += increment_prefix / Coeff(static_cast<int>(next));
        displacement_harmonic += displacements_.back() / Coeff(static_cast<int>(next));
      }
    }
  }

  std::size_t max_index() const { return increments_.size(); }

  const Poly& increment(std::size_t k) const {
    check(k);
    return increments_[k - 1];
  }

  const Poly& displacement(std::size_t k) const {
    check(k);
    return displacements_[k - 1];
  }

 private:
  void check(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("moment index must be >= 1");
    if (k > increments_.size()) throw std::out_of_range("moment index beyond table capacity");
  }

  std::vector<Poly> increments_;
  std::vector<Poly> displacements_;
};

/// Which recursion fills the product table E(X_a X_b).
///
/// tower_recursion: derived from the conditional mean by iterated
/// expectation; for a < b,
///   E(X_a X_b) = (alpha/(b-1)) sum_{r<=b-1} (1/r) sum_{k<=r} E(X_a X_k),
/// base E(X_a^2) = 1. This is the route that matches the enumeration oracle.
///
/// paper_recursion: the published recursion
///   E(X_{m+1} X_{n+1}) = alpha^2 sum_{r<=n} sum_{l<=m} sum_{k<=r} sum_{j<=l}
///                        E(X_j X_k)/(mnrl),  m != n,
/// transcribed faithfully. It is stated only for indices >= 2; the E(X_1 X_b)
/// entries its inner sums require are not defined by it and are supplied here
/// by the tower recursion at a = 1. Its values disagree with the enumeration
/// oracle away from alpha in {-1, 0, 1} (the assumed independence of the
/// repeat sign from later steps fails); the disagreement is deliberate and
/// surfaced by the verification report rather than patched over.
enum class ProductSource { tower_recursion, paper_recursion };

/// Exact product-moment table E(X_a X_b) for 1 <= a, b <= max_index, plus the
/// mean series and second moments E(S_k^2) drawn from the same source.
/// Construction is O(N^2) polynomial operations via 2-D prefix sums; the
/// finished table is immutable.
class MomentTable {
 public:
  explicit MomentTable(std::size_t max_index,
                       ProductSource source = ProductSource::tower_recursion)
      : source_(source), n_(max_index), means_(max_index) {
    if (max_index == 0) throw std::invalid_argument("table capacity must be >= 1");
    build_products();
    build_second_moments();
  }

  std::size_t max_index() const { return n_; }
  ProductSource source() const { return source_; }

  /// E(X_k)/beta.
  const AlphaPolynomial& mean_x(std::size_t k) const { return means_.increment(k); }
  /// E(S_k)/beta.
  const AlphaPolynomial& mean_s(std::size_t k) const { return means_.displacement(k); }

  /// E(X_a X_b); symmetric in (a, b).
  const AlphaPolynomial& product(std::size_t a, std::size_t b) const {
    if (a == 0 || b == 0) throw std::invalid_argument("product indices must be >= 1");
    if (a > n_ || b > n_) throw std::out_of_range("product index beyond table capacity");
    return products_[slot(std::min(a, b), std::max(a, b))];
  }

  /// E(S_k^2) assembled from this table's products. For the paper source the
  /// first-step cross terms (the i = 0 outer terms of the published formula)
  /// vanish under the empty-sum convention, so only pairs with a >= 2 enter.
  const AlphaPolynomial& second_moment(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("moment index must be >= 1");
    if (k > n_) throw std::out_of_range("moment index beyond table capacity");
    return second_moments_[k];
  }

 private:
  // triangular storage, a <= b
  std::size_t slot(std::size_t a, std::size_t b) const { return b * (b - 1) / 2 + (a - 1); }

  void build_products() {
    const AlphaPolynomial one = AlphaPolynomial::constant(1);
    products_.assign(n_ * (n_ + 1) / 2, AlphaPolynomial{});
    products_[slot(1, 1)] = one;
    if (n_ == 1) return;

    // Per-row tower accumulators: row_prefix[a] = sum_{k<=r} E(X_a X_k),
    // row_harmonic[a] = sum_{r' <= r} row_prefix[a](r')/r', advanced in r.
    std::vector<AlphaPolynomial> row_prefix(n_ + 1), row_harmonic(n_ + 1);
    row_prefix[1] = one;
    row_harmonic[1] = one;

    // Paper-route 2-D prefixes over the symmetric table:
    //   P2(l, r) = sum_{j<=l} sum_{k<=r} E(X_j X_k)
    //   D(m, n)  = sum_{l<=m} sum_{r<=n} P2(l, r)/(l r)
    std::vector<std::vector<AlphaPolynomial>> p2, d;
    const bool paper = source_ == ProductSource::paper_recursion;
    if (paper) {
      p2.assign(n_ + 1, std::vector<AlphaPolynomial>(n_ + 1));
      d.assign(n_ + 1, std::vector<AlphaPolynomial>(n_ + 1));
      p2[1][1] = one;
      d[1][1] = one;
    }
    auto sym = [](const std::vector<std::vector<AlphaPolynomial>>& m, std::size_t l,
                  std::size_t r) -> const AlphaPolynomial& {
      static const AlphaPolynomial zero;
      if (l == 0 || r == 0) return zero;
      return l <= r ? m[l][r] : m[r][l];
    };

    for (std::size_t b = 2; b <= n_; ++b) {
      // column b entries
      products_[slot(1, b)] = row_harmonic[1].shifted(1) / Rational(static_cast<int>(b - 1));
      for (std::size_t a = 2; a < b; ++a) {
        if (paper) {
          products_[slot(a, b)] =
              sym(d, a - 1, b - 1).shifted(2) / Rational(static_cast<int>((a - 1) * (b - 1)));
        } else {
          products_[slot(a, b)] = row_harmonic[a].shifted(1) / Rational(static_cast<int>(b - 1));
        }
      }
      products_[slot(b, b)] = one;

      // advance existing rows to r = b
      for (std::size_t a = 1; a < b; ++a) {
        row_prefix[a] += products_[slot(a, b)];
        row_harmonic[a] += row_prefix[a] / Rational(static_cast<int>(b));
      }
      // fresh row b over r = 1..b
      for (std::size_t r = 1; r <= b; ++r) {
        row_prefix[b] += products_[slot(std::min(r, b), std::max(r, b))];
        row_harmonic[b] += row_prefix[b] / Rational(static_cast<int>(r));
      }
      if (paper) {
        for (std::size_t l = 1; l <= b; ++l)
          p2[std::min(l, b)][std::max(l, b)] =
              sym(p2, l - 1, b) + sym(p2, l, b - 1) - sym(p2, l - 1, b - 1) +
              products_[slot(std::min(l, b), std::max(l, b))];
        for (std::size_t l = 1; l <= b; ++l)
          d[std::min(l, b)][std::max(l, b)] =
              sym(d, l - 1, b) + sym(d, l, b - 1) - sym(d, l - 1, b - 1) +
              p2[std::min(l, b)][std::max(l, b)] / Rational(static_cast<int>(l * b));
      }
    }
  }

  void build_second_moments() {
    second_moments_.assign(n_ + 1, AlphaPolynomial{});
    const AlphaPolynomial one = AlphaPolynomial::constant(1);
    second_moments_[1] = one;
    const std::size_t first_row = source_ == ProductSource::paper_recursion ? 2 : 1;
    for (std::size_t k = 2; k <= n_; ++k) {
      AlphaPolynomial cross;
      for (std::size_t a = first_row; a < k; ++a) cross += products_[slot(a, k)];
      second_moments_[k] = second_moments_[k - 1] + one + cross * Rational(2);
    }
  }

  ProductSource source_;
  std::size_t n_;
  MeanSeries<Rational> means_;
  std::vector<AlphaPolynomial> products_;
  std::vector<AlphaPolynomial> second_moments_;
};

/// E(X_k)/beta; exact polynomial of degree k-1.
inline AlphaPolynomial mean_increment(std::size_t k) {
  if (k == 0) throw std::invalid_argument("moment index must be >= 1");
  return MeanSeries<Rational>(k).increment(k);
}

/// E(S_k)/beta; equals the partial sum of the increments.
inline AlphaPolynomial mean_displacement(std::size_t k) {
  if (k == 0) throw std::invalid_argument("moment index must be >= 1");
  return MeanSeries<Rational>(k).displacement(k);
}

/// E(X_a X_b) by the tower recursion (q-free, oracle-consistent).
inline AlphaPolynomial product_moment_tower(std::size_t a, std::size_t b) {
  if (a == 0 || b < a) throw std::invalid_argument("tower product requires 1 <= a <= b");
  return MomentTable(b, ProductSource::tower_recursion).product(a, b);
}

/// The published recursion's E(X_{m+1} X_{n+1}) for m, n >= 1 (see
/// ProductSource::paper_recursion for the caveats); returns 1 when m = n.
inline AlphaPolynomial product_moment_paper(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("the published product recursion requires m, n >= 1");
  if (m == n) return AlphaPolynomial::constant(1);
  const std::size_t cap = std::max(m, n) + 1;
  return MomentTable(cap, ProductSource::paper_recursion).product(m + 1, n + 1);
}

/// E(S_k^2) = k + 2 sum_{a<b<=k} E(X_a X_b) over the tower table.
inline AlphaPolynomial second_moment_displacement(std::size_t k) {
  if (k == 0) throw std::invalid_argument("moment index must be >= 1");
  return MomentTable(k, ProductSource::tower_recursion).second_moment(k);
}

/// The published second-moment formula with the empty-sum convention for its
/// i = 0 terms and inner products from the paper-recursion table.
inline AlphaPolynomial second_moment_paper_form(std::size_t k) {
  if (k < 2) throw std::invalid_argument("the published second-moment form requires k >= 2");
  return MomentTable(k, ProductSource::paper_recursion).second_moment(k);
}

}  // namespace erw
