#include <catch2/catch_amalgamated.hpp>

#include "granular/roots.hpp"
#include "granular/sequence.hpp"

using granular::BigInt;
using granular::BitSequence;
using granular::build_root;
using granular::compose;
using granular::correlation;
using granular::definable_grid;
using granular::Dyadic;
using granular::exponent_admissible;
using granular::family_point;
using granular::i_power;
using granular::random_sequence;
using granular::SignedPermutation;
using granular::SymbolicAngle;

namespace {

BitSequence seq(std::initializer_list<int> values) {
  std::vector<std::int8_t> e;
  for (int v : values) e.push_back(static_cast<std::int8_t>(v));
  return BitSequence(std::move(e));
}

// All admissible exponents at length 2^n: multiples of 2^{-(n-1)} in [0, 4).
std::vector<Dyadic> admissible_exponents(unsigned n) {
  std::vector<Dyadic> out;
  long long steps = 1ll << (n - 1);
  for (long long t = 0; t < 4 * steps; ++t)
    out.emplace_back(BigInt(t), n - 1);
  return out;
}

} // namespace

TEST_CASE("the pair rule negates every second element and swaps") {
  SignedPermutation op_i = build_root(0, 4);
  CHECK(op_i.apply(seq({1, 1, 1, 1})) == seq({-1, 1, -1, 1}));
  // symbolic check on all quadruplets: (a1,a2,a3,a4) -> (-a2,a1,-a4,a3)
  for (int mask = 0; mask < 16; ++mask) {
    int a1 = mask & 1 ? 1 : -1, a2 = mask & 2 ? 1 : -1;
    int a3 = mask & 4 ? 1 : -1, a4 = mask & 8 ? 1 : -1;
    CHECK(op_i.apply(seq({a1, a2, a3, a4})) == seq({-a2, a1, -a4, a3}));
  }
}

TEST_CASE("the half root acts on quadruplets") {
  SignedPermutation r = build_root(1, 4);
  for (int mask = 0; mask < 16; ++mask) {
    int a1 = mask & 1 ? 1 : -1, a2 = mask & 2 ? 1 : -1;
    int a3 = mask & 4 ? 1 : -1, a4 = mask & 8 ? 1 : -1;
    CHECK(r.apply(seq({a1, a2, a3, a4})) == seq({-a4, a3, a1, a2}));
  }
}

TEST_CASE("the quarter root acts on octuplets") {
  SignedPermutation r = build_root(2, 8);
  BitSequence x = random_sequence(3, 3);
  int a[9];
  for (int j = 1; j <= 8; ++j) a[j] = x[j - 1];
  CHECK(r.apply(x) ==
        seq({-a[8], a[7], a[5], a[6], a[1], a[2], a[3], a[4]}));
}

TEST_CASE("roots tile across longer sequences") {
  SignedPermutation r = build_root(1, 8);
  BitSequence x = random_sequence(9, 3);
  int a[9];
  for (int j = 1; j <= 8; ++j) a[j] = x[j - 1];
  CHECK(r.apply(x) ==
        seq({-a[4], a[3], a[1], a[2], -a[8], a[7], a[5], a[6]}));
  CHECK_THROWS_AS(build_root(3, 8), granular::not_representable_error);
}

TEST_CASE("i squares to negation") {
  for (unsigned n : {1u, 3u, 6u}) {
    std::size_t length = std::size_t(1) << n;
    SignedPermutation op_i = build_root(0, length);
    CHECK(compose(op_i, op_i) == SignedPermutation::negation(length));
  }
}

TEST_CASE("successive roots square into each other") {
  for (std::size_t length : {8u, 64u, 1024u}) {
    SignedPermutation half = build_root(1, length);
    SignedPermutation quarter = build_root(2, length);
    CHECK(compose(half, half) == build_root(0, length));
    CHECK(compose(quarter, quarter) == half);
  }
  // the whole chain at one length
  for (unsigned m = 1; m <= 5; ++m) {
    SignedPermutation r = build_root(m, 64);
    CHECK(compose(r, r) == build_root(m - 1, 64));
  }
}

TEST_CASE("composition against identity and inverses") {
  SignedPermutation r = build_root(1, 16);
  SignedPermutation id = SignedPermutation::identity(16);
  CHECK(compose(r, id) == r);
  CHECK(compose(id, r) == r);
  CHECK(compose(r, r.inverse()) == id);
  CHECK(compose(r.inverse(), r) == id);
}

TEST_CASE("composition is application order") {
  // compose(P, Q) applied to S equals P(Q(S))
  SignedPermutation p = build_root(1, 8);
  SignedPermutation q = build_root(2, 8);
  for (std::uint64_t s = 0; s < 10; ++s) {
    BitSequence x = random_sequence(s, 3);
    CHECK(compose(p, q).apply(x) == p.apply(q.apply(x)));
  }
}

TEST_CASE("integer powers of i") {
  std::size_t length = 8;
  SignedPermutation op_i = build_root(0, length);
  CHECK(i_power(Dyadic(0), length) == SignedPermutation::identity(length));
  CHECK(i_power(Dyadic(1), length) == op_i);
  CHECK(i_power(Dyadic(2), length) == SignedPermutation::negation(length));
  CHECK(i_power(Dyadic(3), length) ==
        compose(SignedPermutation::negation(length), op_i));
  CHECK(i_power(Dyadic(4), length) == SignedPermutation::identity(length));
  CHECK(i_power(Dyadic(-1), length) == i_power(Dyadic(3), length));
}

TEST_CASE("fractional powers compose from binary digits") {
  std::size_t length = 8;
  CHECK(i_power(Dyadic(BigInt(3), 2), length) ==
        compose(i_power(Dyadic(BigInt(1), 1), length),
                i_power(Dyadic(BigInt(1), 2), length)));
  CHECK(i_power(Dyadic(BigInt(1), 1), length) == build_root(1, length));
  CHECK(i_power(Dyadic(BigInt(1), 2), length) == build_root(2, length));
}

TEST_CASE("inadmissible exponents are refused, not truncated") {
  CHECK_THROWS_AS(i_power(Dyadic(BigInt(1), 3), 8),
                  granular::not_representable_error);
  CHECK_THROWS_AS(i_power(Dyadic(BigInt(1), 1), 2),
                  granular::not_representable_error);
  CHECK(exponent_admissible(Dyadic(BigInt(1), 2), 8));
  CHECK_FALSE(exponent_admissible(Dyadic(BigInt(1), 3), 8));
  // integer exponents are always admissible
  CHECK(exponent_admissible(Dyadic(7), 2));
}

TEST_CASE("exponent additivity, exhaustive at n = 5") {
  const unsigned n = 5;
  const std::size_t length = 1u << n;
  auto exps = admissible_exponents(n);
  std::vector<SignedPermutation> ops;
  ops.reserve(exps.size());
  for (const auto& a : exps) ops.push_back(i_power(a, length));
  for (std::size_t x = 0; x < exps.size(); ++x)
    for (std::size_t y = 0; y < exps.size(); ++y) {
      SignedPermutation sum = i_power(exps[x] + exps[y], length);
      REQUIRE(compose(ops[x], ops[y]) == sum);
    }
}

TEST_CASE("exponent additivity, randomized at n = 10") {
  const unsigned n = 10;
  const std::size_t length = 1u << n;
  granular::SplitMix64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    Dyadic a(BigInt(static_cast<long long>(rng.below(4ull << (n - 1)))),
             n - 1);
    Dyadic b(BigInt(static_cast<long long>(rng.below(4ull << (n - 1)))),
             n - 1);
    CHECK(compose(i_power(a, length), i_power(b, length)) ==
          i_power(a + b, length));
  }
}

TEST_CASE("root generators commute, exhaustive at n = 5") {
  const std::size_t length = 1u << 5;
  for (unsigned m1 = 0; m1 <= 4; ++m1)
    for (unsigned m2 = 0; m2 <= 4; ++m2) {
      SignedPermutation a = build_root(m1, length);
      SignedPermutation b = build_root(m2, length);
      CHECK(compose(a, b) == compose(b, a));
    }
}

TEST_CASE("doubling the exponent squares the operator") {
  const unsigned n = 5;
  const std::size_t length = 1u << n;
  for (const auto& a : admissible_exponents(n)) {
    SignedPermutation p = i_power(a, length);
    CHECK(compose(p, p) == i_power(a + a, length));
  }
}

TEST_CASE("signed permutations preserve correlation") {
  const unsigned n = 6;
  const std::size_t length = 1u << n;
  granular::SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Dyadic a(BigInt(static_cast<long long>(rng.below(4ull << (n - 1)))),
             n - 1);
    SignedPermutation p = i_power(a, length);
    BitSequence x = random_sequence(trial, n);
    BitSequence y = random_sequence(trial + 500, n);
    CHECK(correlation(p.apply(x), p.apply(y)) == correlation(x, y));
  }
}

TEST_CASE("family points") {
  BitSequence x = random_sequence(5, 3);
  SignedPermutation op_i = build_root(0, x.size());

  auto at_zero = family_point(x, SymbolicAngle(Dyadic(0)));
  REQUIRE(at_zero.has_value());
  CHECK(*at_zero == x);

  auto quarter = family_point(x, SymbolicAngle(Dyadic(BigInt(1), 1)));
  REQUIRE(quarter.has_value());
  CHECK(*quarter == op_i.apply(x));

  // pi/3 is not a dyadic multiple of pi; represented here as an angle with
  // a foreign base tag, it falls outside the family
  CHECK_FALSE(family_point(x, SymbolicAngle(granular::AngleBase{"pi/3"},
                                            Dyadic(0)))
                  .has_value());

  // too fine for this length
  CHECK_FALSE(
      family_point(x, SymbolicAngle(Dyadic(BigInt(1), 4))).has_value());
}

TEST_CASE("definable grid shape") {
  auto g1 = definable_grid(1);
  REQUIRE(g1.size() == 4);
  CHECK(g1[0] == SymbolicAngle(Dyadic(0)));
  CHECK(g1[1] == SymbolicAngle(Dyadic(BigInt(1), 1)));
  CHECK(g1[2] == SymbolicAngle(Dyadic(1)));
  CHECK(g1[3] == SymbolicAngle(Dyadic(BigInt(3), 1)));

  auto g2 = definable_grid(2);
  CHECK(g2.size() == 8);
  // spacing pi/4: consecutive coefficients differ by 1/4
  for (std::size_t t = 1; t < g2.size(); ++t)
    CHECK(g2[t].coeff() - g2[t - 1].coeff() == Dyadic(BigInt(1), 2));

  for (unsigned n = 1; n <= 8; ++n) {
    auto g = definable_grid(n);
    CHECK(g.size() == (std::size_t(1) << (n + 1)));
    CHECK(g[0] == SymbolicAngle(Dyadic(0)));
  }

  // every grid angle is admissible for its family
  BitSequence x = random_sequence(2, 3);
  for (const auto& lam : definable_grid(3))
    CHECK(family_point(x, lam).has_value());

  // the exponent range is configurable; half the range halves the count
  for (unsigned n = 1; n <= 6; ++n) {
    auto half_circle = definable_grid(n, SymbolicAngle{}, 2);
    CHECK(half_circle.size() == (std::size_t(1) << n));
    CHECK(half_circle.back().coeff() < Dyadic(1));
  }
}

TEST_CASE("grid intersection under symbolic equality") {
  auto base = definable_grid(3);
  auto offset = definable_grid(
      3, SymbolicAngle(granular::AngleBase{"lam'"}, Dyadic(0)));
  CHECK(granular::grid_intersection(base, offset).empty());
  CHECK(granular::grid_intersection(base, base).size() == base.size());

  // a base shifted by a representable dyadic angle overlaps partially
  auto shifted = definable_grid(3, SymbolicAngle(Dyadic(1)));
  CHECK_FALSE(granular::grid_intersection(base, shifted).empty());
}
