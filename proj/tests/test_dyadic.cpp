#include <catch2/catch_amalgamated.hpp>

#include "granular/angle.hpp"
#include "granular/dyadic.hpp"

using granular::AngleBase;
using granular::BigInt;
using granular::Dyadic;
using granular::SymbolicAngle;

TEST_CASE("dyadic normal form") {
  CHECK(Dyadic(BigInt(4), 2) == Dyadic(1));
  CHECK(Dyadic(BigInt(6), 1) == Dyadic(3));
  CHECK(Dyadic(BigInt(-12), 3) == Dyadic(BigInt(-3), 1));

  Dyadic zero(BigInt(0), 7);
  CHECK(zero.is_zero());
  CHECK(zero.exp2() == 0);

  Dyadic half(BigInt(1), 1);
  CHECK(half.num() == 1);
  CHECK(half.exp2() == 1);
}

TEST_CASE("dyadic arithmetic is exact on a grid") {
  std::vector<Dyadic> grid;
  for (long long p = -9; p <= 9; ++p)
    for (unsigned k = 0; k <= 4; ++k) grid.emplace_back(BigInt(p), k);

  for (const auto& a : grid)
    for (const auto& b : grid) {
      CHECK((a + b) - b == a);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
    }
}

TEST_CASE("dyadic arithmetic values") {
  Dyadic half(BigInt(1), 1), quarter(BigInt(1), 2);
  CHECK(half + quarter == Dyadic(BigInt(3), 2));
  CHECK(half * Dyadic(BigInt(3), 2) == Dyadic(BigInt(3), 3));
  CHECK(-half == Dyadic(BigInt(-1), 1));
  CHECK(half - half == Dyadic(0));
}

TEST_CASE("dyadic ordering") {
  CHECK(Dyadic(BigInt(1), 1) < Dyadic(BigInt(3), 2));
  CHECK(Dyadic(BigInt(-1), 2) < Dyadic(0));
  CHECK(Dyadic(1) > Dyadic(BigInt(7), 3));
}

TEST_CASE("dyadic floor and mod") {
  CHECK(Dyadic(BigInt(7), 2).floor() == 1);
  CHECK(Dyadic(BigInt(-1), 2).floor() == -1);
  CHECK(Dyadic(5).floor() == 5);

  CHECK(Dyadic(BigInt(9), 1).mod_pow2(2) == Dyadic(BigInt(1), 1));
  CHECK(Dyadic(BigInt(-1), 2).mod_pow2(2) == Dyadic(BigInt(15), 2));
  CHECK(Dyadic(5).mod_pow2(2) == Dyadic(1));
  CHECK(Dyadic(BigInt(-3), 1).mod_pow2(1) == Dyadic(BigInt(1), 1));
}

TEST_CASE("dyadic strings") {
  CHECK(Dyadic(BigInt(3), 3).to_string() == "3/8");
  CHECK(Dyadic(BigInt(-1), 1).to_string() == "-1/2");
  CHECK(Dyadic(5).to_string() == "5");
  CHECK(Dyadic(0).to_string() == "0");
}

TEST_CASE("dyadic parse") {
  auto p = Dyadic::parse("3/8");
  REQUIRE(p.has_value());
  CHECK(*p == Dyadic(BigInt(3), 3));

  CHECK(Dyadic::parse("-1/2") == Dyadic(BigInt(-1), 1));
  CHECK(Dyadic::parse("7") == Dyadic(7));
  CHECK(Dyadic::parse("+3/8") == Dyadic(BigInt(3), 3));
  CHECK(Dyadic::parse("6/4") == Dyadic(BigInt(3), 1));

  CHECK_FALSE(Dyadic::parse("1/3").has_value());
  CHECK_FALSE(Dyadic::parse("1/0").has_value());
  CHECK_FALSE(Dyadic::parse("").has_value());
  CHECK_FALSE(Dyadic::parse("a/2").has_value());
  CHECK_FALSE(Dyadic::parse("1/-2").has_value());
}

TEST_CASE("angle normalization") {
  SymbolicAngle a(Dyadic(BigInt(9), 1));
  CHECK(granular::angle_normalize(a).coeff() == Dyadic(BigInt(1), 1));

  SymbolicAngle b(Dyadic(BigInt(-1), 2));
  CHECK(granular::angle_normalize(b).coeff() == Dyadic(BigInt(15), 2));

  SymbolicAngle c(AngleBase{"lam'"}, Dyadic(2));
  auto cn = granular::angle_normalize(c);
  CHECK(cn.base().label == "lam'");
  CHECK(cn.coeff() == Dyadic(2));
}

TEST_CASE("angle equality is mod 4 on the coefficient") {
  CHECK(SymbolicAngle(Dyadic(BigInt(9), 1)) ==
        SymbolicAngle(Dyadic(BigInt(1), 1)));
  CHECK(SymbolicAngle(Dyadic(0)) == SymbolicAngle(Dyadic(4)));
  CHECK_FALSE(SymbolicAngle(Dyadic(0)) == SymbolicAngle(Dyadic(2)));
  CHECK_FALSE(SymbolicAngle(AngleBase{"lam'"}, Dyadic(0)) ==
              SymbolicAngle(Dyadic(0)));
}

TEST_CASE("angle rendering") {
  CHECK(SymbolicAngle(Dyadic(0)).to_string() == "0");
  CHECK(SymbolicAngle(Dyadic(BigInt(1), 1)).to_string() == "pi/2");
  CHECK(SymbolicAngle(Dyadic(BigInt(3), 3)).to_string() == "3*pi/8");
  CHECK(SymbolicAngle(Dyadic(1)).to_string() == "pi");
  CHECK(SymbolicAngle(Dyadic(BigInt(-1), 2)).to_string() == "15*pi/4");
  CHECK(SymbolicAngle(AngleBase{"lam'"}, Dyadic(0)).to_string() == "lam'");
  CHECK(SymbolicAngle(AngleBase{"lam'"}, Dyadic(BigInt(1), 1)).to_string() ==
        "lam'+pi/2");
}
