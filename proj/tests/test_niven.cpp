#include <catch2/catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "granular/niven.hpp"

using granular::BigInt;
using granular::cos_rationality_class;
using granular::Dyadic;
using granular::sin_is_dyadic;

namespace {

using Float120 = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        120, boost::multiprecision::backends::digit_base_2>>;

Float120 to_float120(const Dyadic& d) {
  Float120 num(d.num().str());
  return ldexp(num, -static_cast<int>(d.exp2()));
}

} // namespace

TEST_CASE("cosine rationality at the classified points") {
  auto at = [](long long p, unsigned k) {
    return cos_rationality_class(Dyadic(BigInt(p), k));
  };
  CHECK(at(1, 1) == Dyadic(0));    // cos(pi/2)
  CHECK(at(1, 0) == Dyadic(-1));   // cos(pi)
  CHECK(at(0, 0) == Dyadic(1));
  CHECK(at(2, 0) == Dyadic(1));
  CHECK(at(3, 1) == Dyadic(0));    // cos(3*pi/2)
  CHECK(at(-5, 0) == Dyadic(-1));

  CHECK_FALSE(at(1, 2).has_value());  // cos(pi/4)
  CHECK_FALSE(at(3, 3).has_value());  // cos(3*pi/8)
  CHECK_FALSE(at(-1, 2).has_value());
}

TEST_CASE("deep dyadic multiples all have irrational cosine") {
  for (unsigned k = 2; k <= 10; ++k) {
    long long span = 1ll << (k + 2);  // several periods, both signs
    for (long long p = -span + 1; p < span; p += 2)
      CHECK_FALSE(cos_rationality_class(Dyadic(BigInt(p), k)).has_value());
  }
}

TEST_CASE("sin dyadicity examples") {
  CHECK_FALSE(sin_is_dyadic(Dyadic(BigInt(1), 1)));  // 2^2 - 1 = 3
  CHECK_FALSE(sin_is_dyadic(Dyadic(BigInt(3), 2)));  // 4^2 - 9 = 7
  CHECK(sin_is_dyadic(Dyadic(1)));
  CHECK(sin_is_dyadic(Dyadic(0)));
  CHECK_THROWS_AS(sin_is_dyadic(Dyadic(BigInt(-1), 1)), std::invalid_argument);
  CHECK_THROWS_AS(sin_is_dyadic(Dyadic(BigInt(3), 1)), std::invalid_argument);
}

TEST_CASE("no interior dyadic cosine has a dyadic sine") {
  for (unsigned k = 1; k <= 10; ++k)
    for (long long p = 1; p < (1ll << k); p += 2)
      CHECK_FALSE(sin_is_dyadic(Dyadic(BigInt(p), k)));
}

TEST_CASE("classification agrees with a 120-bit floating oracle") {
  const Float120 pi = boost::math::constants::pi<Float120>();
  const Float120 tight("1e-30");

  // sin_is_dyadic vs rationality-by-threshold: a dyadic with k <= 20 equals
  // its own rounding at 2^-20; the irrational square roots on this grid sit
  // far from every such value.
  for (unsigned k = 0; k <= 6; ++k) {
    for (long long p = 0; p <= (1ll << k); ++p) {
      Dyadic c(BigInt(p), k);
      Float120 cf = to_float120(c);
      Float120 s = sqrt(Float120(1) - cf * cf);
      Float120 scaled = ldexp(s, 20);
      Float120 nearest = ldexp(round(scaled), -20);
      bool near_dyadic = abs(s - nearest) < tight;
      CHECK(sin_is_dyadic(c) == near_dyadic);
    }
  }

  // cos_rationality_class: exact values match to 1e-30; irrational verdicts
  // sit visibly away from every rational value the classification can emit.
  for (unsigned k = 0; k <= 6; ++k) {
    for (long long p = -(1ll << (k + 2)); p <= (1ll << (k + 2)); ++p) {
      Dyadic q(BigInt(p), k);
      Float120 c = cos(to_float120(q) * pi);
      auto cls = cos_rationality_class(q);
      if (cls) {
        CHECK(abs(c - to_float120(*cls)) < tight);
      } else {
        for (double v : {-1.0, -0.5, 0.0, 0.5, 1.0})
          CHECK(abs(c - Float120(v)) > Float120("1e-6"));
      }
    }
  }
}
