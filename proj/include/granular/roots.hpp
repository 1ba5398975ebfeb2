#ifndef GRANULAR_ROOTS_HPP
#define GRANULAR_ROOTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "granular/angle.hpp"
#include "granular/dyadic.hpp"
#include "granular/errors.hpp"
#include "granular/signed_permutation.hpp"

namespace granular {

namespace detail {

struct BlockPattern {
  std::vector<std::uint32_t> perm;
  std::vector<std::int8_t> signs;
};

// Pattern of i^{1/2^m} on one block of 2^{m+1} elements.  Base case maps a
// pair (a, b) to (-b, a); a block of size 2^{m+1} splits into halves
// (Lh, Rh) and maps to (i^{1/2^{m-1}}(Rh), Lh).
inline BlockPattern root_pattern(unsigned m) {
  if (m == 0) return {{1, 0}, {-1, 1}};
  BlockPattern sub = root_pattern(m - 1);
  std::size_t half = sub.perm.size();
  BlockPattern out;
  out.perm.resize(2 * half);
  out.signs.resize(2 * half);
  for (std::size_t t = 0; t < half; ++t) {
    out.perm[t] = static_cast<std::uint32_t>(half + sub.perm[t]);
    out.signs[t] = sub.signs[t];
  }
  for (std::size_t t = 0; t < half; ++t) {
    out.perm[half + t] = static_cast<std::uint32_t>(t);
    out.signs[half + t] = 1;
  }
  return out;
}

// Repeat a block pattern across the whole index range.
inline SignedPermutation tile(const BlockPattern& pattern, std::size_t length) {
  std::size_t block = pattern.perm.size();
  std::vector<std::uint32_t> p(length);
  std::vector<std::int8_t> sg(length);
  for (std::size_t base = 0; base < length; base += block) {
    for (std::size_t j = 0; j < block; ++j) {
      p[base + j] = static_cast<std::uint32_t>(base + pattern.perm[j]);
      sg[base + j] = pattern.signs[j];
    }
  }
  return SignedPermutation(std::move(p), std::move(sg));
}

inline void check_power_of_two(std::size_t length, const char* who) {
  if (length < 2 || (length & (length - 1)) != 0)
    throw std::invalid_argument(std::string(who) +
                                ": length must be a power of two, at least 2");
}

inline unsigned log2_size(std::size_t length) {
  unsigned n = 0;
  while ((std::size_t(1) << n) < length) ++n;
  return n;
}

} // namespace detail

/// The operator i^{1/2^m} acting blockwise on blocks of 2^{m+1} elements.
inline SignedPermutation build_root(unsigned m, std::size_t length) {
  detail::check_power_of_two(length, "build_root");
  std::size_t block = std::size_t(1) << (m + 1);
  if (block > length)
    throw not_representable_error("build_root: block size 2^" +
                                  std::to_string(m + 1) +
                                  " exceeds sequence length");
  return detail::tile(detail::root_pattern(m), length);
}

/// True when i^alpha exists at this length: alpha reduced mod 4 must have
/// denominator 2^k with k <= N-1 for length 2^N.
inline bool exponent_admissible(const Dyadic& alpha, std::size_t length) {
  detail::check_power_of_two(length, "exponent_admissible");
  unsigned n = detail::log2_size(length);
  return alpha.mod_pow2(2).exp2() <= n - 1;
}

/// i^alpha for dyadic alpha.  The integer part is a group power of i; each
/// set binary digit 1/2^m of the fractional part contributes one root.
/// Inadmissible exponents (denominator deeper than the length allows) throw
/// not_representable_error rather than being coarsened.
inline SignedPermutation i_power(const Dyadic& alpha, std::size_t length) {
  detail::check_power_of_two(length, "i_power");
  Dyadic a = alpha.mod_pow2(2);  // exponents of i repeat with period 4
  unsigned n = detail::log2_size(length);
  unsigned k = a.exp2();
  if (k > n - 1)
    throw not_representable_error(
        "i_power: exponent " + alpha.to_string() +
        " is not representable at length " + std::to_string(length));

  long long ipart = a.floor().convert_to<long long>();  // 0..3
  BigInt fnum = a.num() - (BigInt(ipart) << k);         // in [0, 2^k)

  SignedPermutation result = SignedPermutation::identity(length);
  switch (ipart) {
    case 0:
      break;
    case 1:
      result = build_root(0, length);
      break;
    case 2:
      result = SignedPermutation::negation(length);
      break;
    case 3:
      result = compose(SignedPermutation::negation(length),
                       build_root(0, length));
      break;
  }
  for (unsigned m = 1; m <= k; ++m)
    if (boost::multiprecision::bit_test(fnum, k - m))
      result = compose(result, build_root(m, length));
  return result;
}

/// S(lam) = i^{2(lam - base)/pi}(S) for angles in the family anchored at
/// `base`.  Nullopt when the angle lies outside the family (different base
/// tag) or is too fine for this length; definedness is the semantic payload.
inline std::optional<BitSequence> family_point(
    const BitSequence& s, const SymbolicAngle& lam,
    const SymbolicAngle& base = {}) {
  if (lam.base() != base.base()) return std::nullopt;
  Dyadic alpha = (Dyadic(2) * (lam.coeff() - base.coeff())).mod_pow2(2);
  if (!exponent_admissible(alpha, s.size())) return std::nullopt;
  return i_power(alpha, s.size()).apply(s);
}

/// The angles where a family of 2^n-element sequences is defined: base +
/// t*pi/2^n for exponents alpha = t/2^{n-1} covering [0, alpha_limit).
/// The default range alpha_limit = 4 spans one full circle of angles,
/// 2^{n+1} of them; the base angle is always the first entry.
inline std::vector<SymbolicAngle> definable_grid(unsigned n,
                                                 const SymbolicAngle& base = {},
                                                 unsigned alpha_limit = 4) {
  if (n < 1) throw std::invalid_argument("definable_grid: n must be >= 1");
  std::size_t count = std::size_t(alpha_limit) << (n - 1);
  std::vector<SymbolicAngle> grid;
  grid.reserve(count);
  for (std::size_t t = 0; t < count; ++t)
    grid.push_back(angle_normalize(
        SymbolicAngle(base.base(), base.coeff() + Dyadic(BigInt(t), n))));
  return grid;
}

/// Set intersection of two angle grids under symbolic equality.
inline std::vector<SymbolicAngle> grid_intersection(
    const std::vector<SymbolicAngle>& a, const std::vector<SymbolicAngle>& b) {
  auto key = [](const SymbolicAngle& x) {
    return x.base().label + "|" + x.coeff().mod_pow2(2).to_string();
  };
  std::unordered_set<std::string> right;
  for (const auto& y : b) right.insert(key(y));
  std::vector<SymbolicAngle> out;
  for (const auto& x : a)
    if (right.count(key(x))) out.push_back(x);
  return out;
}

} // namespace granular

#endif // GRANULAR_ROOTS_HPP
