#include <catch2/catch_amalgamated.hpp>

#include "erw/rational.hpp"

using erw::parse_rational;
using erw::Rational;

TEST_CASE("fraction and integer literals parse exactly", "[rational]") {
  REQUIRE(parse_rational("3/4") == Rational(3, 4));
  REQUIRE(parse_rational("-1/3") == Rational(-1, 3));
  REQUIRE(parse_rational("2") == Rational(2));
  REQUIRE(parse_rational("+7/2") == Rational(7, 2));
  REQUIRE(parse_rational(" 5/8 ") == Rational(5, 8));
  REQUIRE(parse_rational("6/8") == Rational(3, 4));
}

TEST_CASE("decimal literals become the exact decimal rational", "[rational]") {
  REQUIRE(parse_rational("0.75") == Rational(3, 4));
  REQUIRE(parse_rational("0.1") == Rational(1, 10));  // not the binary double
  REQUIRE(parse_rational(".5") == Rational(1, 2));
  REQUIRE(parse_rational("-0.25") == Rational(-1, 4));
  REQUIRE(parse_rational("1.") == Rational(1));
}

TEST_CASE("malformed literals are rejected", "[rational]") {
  for (const char* bad : {"", "  ", "a", "1/0", "1/2/3", "1e3", "--2", "1.2.3", "/3"}) {
    REQUIRE_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("formatting always carries an explicit denominator", "[rational]") {
  REQUIRE(erw::format_rational(Rational(4)) == "4/1");
  REQUIRE(erw::format_rational(Rational(3, 32)) == "3/32");
  REQUIRE(erw::format_rational(Rational(-7, 2)) == "-7/2");
  REQUIRE(erw::format_rational(Rational(0)) == "0/1");
}

TEST_CASE("parse and format round-trip", "[rational]") {
  for (const char* text : {"3/4", "-11/18", "0/1", "241/576"}) {
    REQUIRE(erw::format_rational(parse_rational(text)) == text);
  }
}
