#ifndef GRANULAR_SEQUENCE_HPP
#define GRANULAR_SEQUENCE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "granular/bigint.hpp"
#include "granular/dyadic.hpp"

namespace granular {

/// Binary sequence of +-1 elements.  Length is a power of two, at least 2.
class BitSequence {
public:
  explicit BitSequence(std::vector<std::int8_t> elems)
      : elems_(std::move(elems)) {
    std::size_t n = elems_.size();
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument(
          "BitSequence: length must be a power of two, at least 2");
    for (std::int8_t v : elems_)
      if (v != 1 && v != -1)
        throw std::invalid_argument("BitSequence: elements must be +1 or -1");
  }

  static BitSequence from_pm_string(std::string_view text) {
    std::vector<std::int8_t> e;
    e.reserve(text.size());
    for (char c : text) {
      if (c == '+')
        e.push_back(1);
      else if (c == '-')
        e.push_back(-1);
      else
        throw std::invalid_argument(
            "BitSequence: expected only '+' and '-' characters");
    }
    return BitSequence(std::move(e));
  }

  std::size_t size() const noexcept { return elems_.size(); }

  /// N with size() == 2^N.
  unsigned exponent() const noexcept {
    unsigned n = 0;
    for (std::size_t l = elems_.size(); l > 1; l >>= 1) ++n;
    return n;
  }

  std::int8_t operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<std::int8_t>& elements() const noexcept { return elems_; }

  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;

  std::string to_pm_string() const {
    std::string s;
    s.reserve(elems_.size());
    for (std::int8_t v : elems_) s.push_back(v > 0 ? '+' : '-');
    return s;
  }

private:
  std::vector<std::int8_t> elems_;
};

inline BitSequence negate(const BitSequence& s) {
  std::vector<std::int8_t> e(s.elements());
  for (auto& v : e) v = static_cast<std::int8_t>(-v);
  return BitSequence(std::move(e));
}

/// (1/L) * sum_j S_j T_j, exact.  The denominator divides L.
inline Dyadic correlation(const BitSequence& s, const BitSequence& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("correlation: length mismatch");
  long long sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    sum += static_cast<int>(s[i]) * static_cast<int>(t[i]);
  return Dyadic(BigInt(sum), s.exponent());
}

/// splitmix64; the fixed increment and mixing constants are part of the
/// reproducibility contract.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

namespace detail {

// arctan(1/x) in fixed point at the given scale (truncating division;
// callers carry guard bits).
inline BigInt arctan_recip(unsigned x, const BigInt& scale) {
  BigInt sum = 0;
  BigInt power = scale / x;
  BigInt xsq = BigInt(x) * x;
  unsigned long long n = 0;
  while (power != 0) {
    BigInt term = power / (2 * n + 1);
    if (term == 0) break;
    if (n % 2 == 0)
      sum += term;
    else
      sum -= term;
    power /= xsq;
    ++n;
  }
  return sum;
}

inline constexpr unsigned kFracGuardBits = 128;

// First `count` bits of the fractional binary expansion of pi
// (Machin formula, fixed point).
inline std::vector<bool> pi_fraction_bits(std::size_t count) {
  unsigned b = static_cast<unsigned>(count) + kFracGuardBits;
  BigInt scale = pow2(b);
  BigInt pi = 16 * arctan_recip(5, scale) - 4 * arctan_recip(239, scale);
  BigInt frac = pi - 3 * scale;
  std::vector<bool> bits(count);
  for (std::size_t j = 0; j < count; ++j)
    bits[j] = boost::multiprecision::bit_test(frac, b - 1 - j);
  return bits;
}

// First `count` bits of the fractional binary expansion of sqrt(2).
inline std::vector<bool> sqrt2_fraction_bits(std::size_t count) {
  unsigned b = static_cast<unsigned>(count) + kFracGuardBits;
  BigInt two_scaled = BigInt(2) << (2 * b);
  BigInt root = isqrt(two_scaled);  // floor(sqrt(2) * 2^b)
  BigInt frac = root - pow2(b);
  std::vector<bool> bits(count);
  for (std::size_t j = 0; j < count; ++j)
    bits[j] = boost::multiprecision::bit_test(frac, b - 1 - j);
  return bits;
}

inline BitSequence bits_to_sequence(const std::vector<bool>& bits) {
  std::vector<std::int8_t> e(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) e[i] = bits[i] ? 1 : -1;
  return BitSequence(std::move(e));
}

} // namespace detail

enum class SeedKind { pi_digits, sqrt2_digits, generator };

struct SeedSource {
  SeedKind kind = SeedKind::generator;
  std::uint64_t seed = 0;
};

/// 2^n elements.  Digit sources map fractional bit b_j to +1 when set and
/// -1 when clear, starting at the first fractional bit.  The generator
/// source takes the top bit of successive splitmix64 outputs.
inline BitSequence seed_sequence(const SeedSource& source, unsigned n) {
  if (n < 1) throw std::invalid_argument("seed_sequence: n must be >= 1");
  std::size_t length = std::size_t(1) << n;
  switch (source.kind) {
    case SeedKind::pi_digits:
      return detail::bits_to_sequence(detail::pi_fraction_bits(length));
    case SeedKind::sqrt2_digits:
      return detail::bits_to_sequence(detail::sqrt2_fraction_bits(length));
    case SeedKind::generator: {
      SplitMix64 rng(source.seed);
      std::vector<std::int8_t> e(length);
      for (auto& v : e) v = (rng.next() >> 63) ? 1 : -1;
      return BitSequence(std::move(e));
    }
  }
  throw std::logic_error("seed_sequence: unknown source");
}

inline BitSequence random_sequence(std::uint64_t seed, unsigned n) {
  return seed_sequence({SeedKind::generator, seed}, n);
}

} // namespace granular

#endif // GRANULAR_SEQUENCE_HPP
