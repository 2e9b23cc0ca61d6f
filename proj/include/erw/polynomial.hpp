#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "erw/rational.hpp"

namespace erw {

/// Dense univariate polynomial in the memory parameter alpha = 2p-1.
///
/// Canonical form: the coefficient list carries no trailing zeros; the zero
/// polynomial has an empty list. Coefficients are exact rationals by default
/// (AlphaPolynomial); a double-backed instantiation exists for large horizons
/// where exact coefficients are no longer practical.
template <class Coeff>
class BasicAlphaPolynomial {
 public:
  BasicAlphaPolynomial() = default;

  explicit BasicAlphaPolynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static BasicAlphaPolynomial constant(Coeff c) {
    return BasicAlphaPolynomial(std::vector<Coeff>{std::move(c)});
  }

  static BasicAlphaPolynomial monomial(std::size_t degree, Coeff c = Coeff(1)) {
    std::vector<Coeff> v(degree + 1, Coeff(0));
    v[degree] = std::move(c);
    return BasicAlphaPolynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }

  /// Degree of the zero polynomial is -1.
  std::ptrdiff_t degree() const {
    return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
  }

  /// Coefficient of alpha^j (zero beyond the stored range).
  Coeff coeff(std::size_t j) const {
    return j < coeffs_.size() ? coeffs_[j] : Coeff(0);
  }

  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  Coeff leading_coefficient() const {
    if (coeffs_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  Coeff evaluate(const Coeff& alpha) const {
    Coeff acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * alpha + coeffs_[i];
    return acc;
  }

  BasicAlphaPolynomial& operator+=(const BasicAlphaPolynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  BasicAlphaPolynomial& operator-=(const BasicAlphaPolynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  BasicAlphaPolynomial& operator*=(const Coeff& c) {
    if (c == Coeff(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  BasicAlphaPolynomial& operator/=(const Coeff& c) {
    if (c == Coeff(0)) throw std::invalid_argument("division by zero");
    for (auto& x : coeffs_) x /= c;
    return *this;
  }

  friend BasicAlphaPolynomial operator+(BasicAlphaPolynomial a, const BasicAlphaPolynomial& b) {
    a += b;
    return a;
  }
  friend BasicAlphaPolynomial operator-(BasicAlphaPolynomial a, const BasicAlphaPolynomial& b) {
    a -= b;
    return a;
  }
  friend BasicAlphaPolynomial operator*(BasicAlphaPolynomial a, const Coeff& c) {
    a *= c;
    return a;
  }
  friend BasicAlphaPolynomial operator/(BasicAlphaPolynomial a, const Coeff& c) {
    a /= c;
    return a;
  }

  BasicAlphaPolynomial operator-() const {
    BasicAlphaPolynomial r = *this;
    for (auto& x : r.coeffs_) x = -x;
    return r;
  }

  friend BasicAlphaPolynomial operator*(const BasicAlphaPolynomial& a,
                                        const BasicAlphaPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return BasicAlphaPolynomial(std::move(out));
  }

  /// Multiplication by alpha^k.
  BasicAlphaPolynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Coeff> out(coeffs_.size() + k, Coeff(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + k] = coeffs_[i];
    return BasicAlphaPolynomial(std::move(out));
  }

  friend bool operator==(const BasicAlphaPolynomial& a, const BasicAlphaPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const BasicAlphaPolynomial& a, const BasicAlphaPolynomial& b) {
    return !(a == b);
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Coeff(0)) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using AlphaPolynomial = BasicAlphaPolynomial<Rational>;
using FloatAlphaPolynomial = BasicAlphaPolynomial<double>;

inline double evaluate_double(const AlphaPolynomial& poly, double alpha) {
  double acc = 0.0;
  const auto& c = poly.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * alpha + to_double(c[i]);
  return acc;
}

inline std::ostream& operator<<(std::ostream& os, const BasicAlphaPolynomial<Rational>& poly);

inline std::string to_string(const AlphaPolynomial& poly) {
  if (poly.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = poly.coefficients();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    if (!first) os << " + ";
    os << format_rational(c[j]);
    if (j == 1) os << "*a";
    if (j > 1) os << "*a^" << j;
    first = false;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const BasicAlphaPolynomial<Rational>& poly) {
  return os << to_string(poly);
}

}  // namespace erw
