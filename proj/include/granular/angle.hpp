#ifndef GRANULAR_ANGLE_HPP
#define GRANULAR_ANGLE_HPP

#include <string>
#include <utility>

#include "granular/dyadic.hpp"

namespace granular {

/// Base tag of a symbolic angle.  The empty label is the zero base; a named
/// label stands for an offset that is not a dyadic multiple of pi and is
/// never evaluated numerically.
struct AngleBase {
  std::string label;

  bool is_zero() const { return label.empty(); }

  friend bool operator==(const AngleBase&, const AngleBase&) = default;
};

/// Angle base + coeff*pi with an exact dyadic coefficient.  Coefficients are
/// canonical modulo 4 (exponents of i repeat with period 4 and angles enter
/// the algebra only through exponents).
class SymbolicAngle {
public:
  SymbolicAngle() = default;

  SymbolicAngle(AngleBase base, Dyadic coeff)
      : base_(std::move(base)), coeff_(std::move(coeff)) {}

  explicit SymbolicAngle(Dyadic coeff) : coeff_(std::move(coeff)) {}

  const AngleBase& base() const noexcept { return base_; }
  const Dyadic& coeff() const noexcept { return coeff_; }

  friend bool operator==(const SymbolicAngle& a, const SymbolicAngle& b) {
    return a.base_ == b.base_ &&
           a.coeff_.mod_pow2(2) == b.coeff_.mod_pow2(2);
  }

  std::string to_string() const;

private:
  AngleBase base_;
  Dyadic coeff_;
};

/// Canonical form: coefficient reduced into [0, 4).
inline SymbolicAngle angle_normalize(const SymbolicAngle& a) {
  return SymbolicAngle(a.base(), a.coeff().mod_pow2(2));
}

namespace detail {

// "0", "pi", "pi/4", "3*pi/8", "-pi/2", ...
inline std::string pi_multiple_string(const Dyadic& c) {
  if (c.is_zero()) return "0";
  std::string num;
  if (c.num() == 1)
    num = "pi";
  else if (c.num() == -1)
    num = "-pi";
  else
    num = c.num().str() + "*pi";
  if (c.exp2() == 0) return num;
  return num + "/" + pow2(c.exp2()).str();
}

} // namespace detail

inline std::string SymbolicAngle::to_string() const {
  Dyadic c = coeff_.mod_pow2(2);
  if (base_.is_zero()) return detail::pi_multiple_string(c);
  if (c.is_zero()) return base_.label;
  return base_.label + "+" + detail::pi_multiple_string(c);
}

} // namespace granular

#endif // GRANULAR_ANGLE_HPP
