#ifndef GRANULAR_NIVEN_HPP
#define GRANULAR_NIVEN_HPP

#include <optional>
#include <stdexcept>

#include "granular/dyadic.hpp"

namespace granular {

/// Exact rationality classification of cos(q*pi) for dyadic q.  The only
/// rational values attained are 1, -1 and 0, at q = 0, 1, 1/2 or 3/2 mod 2;
/// every other dyadic q gives an irrational cosine (the rational cases
/// cos = +-1/2 would need denominator 3, which no dyadic has).  Returns the
/// exact value when rational, nullopt when irrational.
inline std::optional<Dyadic> cos_rationality_class(const Dyadic& q) {
  Dyadic r = q.mod_pow2(1);  // q mod 2
  if (r.exp2() == 0) return Dyadic(r.num() == 0 ? 1 : -1);
  if (r.exp2() == 1) return Dyadic(0);
  return std::nullopt;
}

/// Exact test whether sqrt(1 - c^2) is a dyadic rational, for 0 <= c <= 1.
/// With c = p/2^k in normal form this is the question whether 4^k - p^2 is
/// a perfect square.  For 0 < c < 1 it never is: p odd makes 4^k - p^2
/// congruent to 3 or 7 mod 8.
inline bool sin_is_dyadic(const Dyadic& c) {
  if (c.sign() < 0 || c > Dyadic(1))
    throw std::invalid_argument("sin_is_dyadic: c must lie in [0, 1]");
  BigInt m = pow2(2 * c.exp2()) - c.num() * c.num();
  return is_perfect_square(m);
}

} // namespace granular

#endif // GRANULAR_NIVEN_HPP
