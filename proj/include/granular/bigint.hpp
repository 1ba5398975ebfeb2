#ifndef GRANULAR_BIGINT_HPP
#define GRANULAR_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace granular {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

/// floor(n / 2^s), exact for negative n as well.
inline BigInt floordiv_pow2(const BigInt& n, unsigned s) {
  if (n >= 0) return n >> s;
  BigInt m = -n;
  m += pow2(s) - 1;
  return -(m >> s);
}

/// Number of trailing zero bits of |n|; n must be nonzero.
inline unsigned trailing_zero_bits(const BigInt& n) {
  BigInt m = n < 0 ? BigInt(-n) : n;
  return boost::multiprecision::lsb(m);
}

inline BigInt isqrt(const BigInt& n) {
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  return r * r == n;
}

} // namespace granular

#endif // GRANULAR_BIGINT_HPP
