#include "doctest.h"
#include "gen.hpp"

using namespace cmloc;

namespace {
const std::vector<std::string> xy{"x", "y"};
}

TEST_CASE("parse and print") {
  Poly f = parse_poly("x^2 - y^3", xy);
  CHECK(f.coeff(Monomial({0, 3})) == kDefaultPrime - 1);
  CHECK(f.coeff(Monomial({2, 0})) == 1);
  CHECK(f.to_string(xy) == "x^2 - y^3");
  CHECK(parse_poly("0", xy).is_zero());
  Poly sq = parse_poly("(x+y)^2", xy);
  CHECK(sq == parse_poly("x^2 + 2*x*y + y^2", xy));
  CHECK(sq.to_string(xy) == "x^2 + 2*x*y + y^2");
  CHECK(parse_poly("-3*x + 5", xy, 7).to_string(xy) == "-2 - 3*x");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_poly("x y", xy);
    FAIL("juxtaposition accepted");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_poly("x + z", xy), ParseError);
  CHECK_THROWS_AS(parse_poly("(x + y", xy), ParseError);
  CHECK_THROWS_AS(parse_poly("x^", xy), ParseError);
  CHECK_THROWS_AS(parse_poly("", xy), ParseError);
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials_of_degree(2, 0).size() == 1);
  auto d2 = monomials_of_degree(2, 2);
  REQUIRE(d2.size() == 3);
  CHECK(d2[0] == Monomial({2, 0}));
  CHECK(d2[1] == Monomial({1, 1}));
  CHECK(d2[2] == Monomial({0, 2}));
  CHECK(monomials_of_degree(3, 2).size() == 6);
  auto below = monomials_below(3, 4);
  CHECK(below.size() == 20);
  CHECK(std::is_sorted(below.begin(), below.end(), DegLex{}));
}

TEST_CASE("initial forms") {
  CHECK(parse_poly("x^2 - y^3", xy).initial_form() == parse_poly("x^2", xy));
  CHECK(parse_poly("x + x^2", xy).initial_form() == parse_poly("x", xy));
  CHECK(parse_poly("x", xy) * parse_poly("y", xy) == parse_poly("x*y", xy));
  CHECK_THROWS(Poly(2, kDefaultPrime).initial_form());
}

TEST_CASE("lex remainder") {
  Poly g = parse_poly("x^2 - y^3", xy);
  Poly f = parse_poly("x^3 + y", xy);
  Poly r = lex_remainder(f, {g});
  CHECK(r == parse_poly("x*y^3 + y", xy));
  CHECK(lex_remainder(g * f, {g}).is_zero());
  CHECK(is_recognized_groebner({g}));
  CHECK(is_recognized_groebner({parse_poly("x*y", xy), parse_poly("x^2", xy)}));
  CHECK_FALSE(is_recognized_groebner({g, parse_poly("x*y", xy)}));
}

TEST_CASE("property: ring axioms and initial form multiplicativity") {
  const std::uint32_t p = 101;
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = gen::poly(3, p, 3, 3), b = gen::poly(3, p, 3, 3), c = gen::poly(3, p, 3, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    if (!a.is_zero() && !b.is_zero()) {
      CHECK((a * b).degree() == a.degree() + b.degree());
      Poly prod = a.initial_form() * b.initial_form();
      if (!prod.is_zero()) CHECK((a * b).initial_form() == prod);
    }
  }
}

TEST_CASE("property: print-parse round trip") {
  const std::uint32_t p = kDefaultPrime;
  const std::vector<std::string> xyz{"x", "y", "z"};
  for (int trial = 0; trial < 150; ++trial) {
    Poly a = gen::poly(3, p, 4, 4);
    std::string s = a.to_string(xyz);
    CHECK(parse_poly(s, xyz, p) == a);
    CHECK(parse_poly(s, xyz, p).to_string(xyz) == s);
  }
}
