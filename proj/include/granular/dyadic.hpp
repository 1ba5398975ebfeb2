#ifndef GRANULAR_DYADIC_HPP
#define GRANULAR_DYADIC_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "granular/bigint.hpp"

namespace granular {

/// Exact rational of the form num / 2^k.  Normal form: num is odd whenever
/// k > 0, and num == 0 forces k == 0, so equality is structural.
class Dyadic {
public:
  Dyadic() = default;

  Dyadic(long long n) : num_(n) {}  // NOLINT: implicit by design

  Dyadic(BigInt num, unsigned k) : num_(std::move(num)), k_(k) { normalize(); }

  const BigInt& num() const noexcept { return num_; }
  unsigned exp2() const noexcept { return k_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return k_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Dyadic operator-() const {
    Dyadic r;
    r.num_ = -num_;
    r.k_ = k_;
    return r;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned k = std::max(a.k_, b.k_);
    BigInt n = (a.num_ << (k - a.k_)) + (b.num_ << (k - b.k_));
    return Dyadic(std::move(n), k);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.k_ + b.k_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.k_ == b.k_ && a.num_ == b.num_;
  }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    unsigned k = std::max(a.k_, b.k_);
    BigInt lhs = a.num_ << (k - a.k_);
    BigInt rhs = b.num_ << (k - b.k_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  BigInt floor() const { return floordiv_pow2(num_, k_); }

  /// Value reduced into [0, 2^s) by subtracting integer multiples of 2^s.
  Dyadic mod_pow2(unsigned s) const {
    BigInt q = floordiv_pow2(num_, k_ + s);
    return Dyadic(num_ - (q << (k_ + s)), k_);
  }

  Dyadic abs() const { return num_ < 0 ? -*this : *this; }

  /// Lossy; for reporting and numeric cross-checks only.
  double to_double() const {
    return std::ldexp(num_.convert_to<double>(), -static_cast<int>(k_));
  }

  /// "p" for integers, "p/q" with q = 2^k otherwise.
  std::string to_string() const {
    if (k_ == 0) return num_.str();
    return num_.str() + "/" + pow2(k_).str();
  }

  /// Accepts "p" or "p/q" with q a positive power of two.
  static std::optional<Dyadic> parse(std::string_view text);

private:
  void normalize() {
    if (num_ == 0) {
      k_ = 0;
      return;
    }
    if (k_ == 0) return;
    unsigned t = trailing_zero_bits(num_);
    unsigned s = t < k_ ? t : k_;
    if (s > 0) {
      num_ >>= s;
      k_ -= s;
    }
  }

  BigInt num_ = 0;
  unsigned k_ = 0;  // denominator exponent
};

inline std::optional<Dyadic> Dyadic::parse(std::string_view text) {
  auto parse_int = [](std::string_view s, BigInt& out) -> bool {
    if (s.empty()) return false;
    bool neg = s[0] == '-';
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') return false;
    out = BigInt(std::string(s.substr(i)));
    if (neg) out = -out;
    return true;
  };

  auto slash = text.find('/');
  BigInt p;
  if (slash == std::string_view::npos) {
    if (!parse_int(text, p)) return std::nullopt;
    return Dyadic(std::move(p), 0);
  }
  BigInt q;
  if (!parse_int(text.substr(0, slash), p)) return std::nullopt;
  if (!parse_int(text.substr(slash + 1), q)) return std::nullopt;
  if (q <= 0) return std::nullopt;
  // denominator must be a power of two
  unsigned k = boost::multiprecision::lsb(q);
  if (pow2(k) != q) return std::nullopt;
  return Dyadic(std::move(p), k);
}

} // namespace granular

#endif // GRANULAR_DYADIC_HPP
