#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace erw {

/// Arbitrary-precision exact rational. Every exact quantity in the library
/// (probabilities, polynomial coefficients, moments) is one of these.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a request exceeds a module's cost guard (e.g. oracle horizon,
/// family materialization cap) and no override was given.
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical "num/den" rendering, denominator always explicit ("4/1", "-3/32").
inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "3/4", "-2", "0.75", ".5". Decimal literals convert to the exact
/// rational of the literal (0.1 -> 1/10), never to a binary float.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  };

  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) fail();
  std::string_view s = text.substr(begin, end - begin + 1);

  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail();

  auto digits_only = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) fail();
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail();
    if (!ip.empty() && !digits_only(ip)) fail();
    if (!fp.empty() && !digits_only(fp)) fail();
    BigInt n = ip.empty() ? BigInt(0) : BigInt{std::string(ip)};
    BigInt scale = 1;
    for (char c : fp) {
      n = n * 10 + (c - '0');
      scale *= 10;
    }
    value = Rational(n, scale);
  } else {
    if (!digits_only(s)) fail();
    value = Rational(BigInt(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace erw
