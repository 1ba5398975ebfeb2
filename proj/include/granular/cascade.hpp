#ifndef GRANULAR_CASCADE_HPP
#define GRANULAR_CASCADE_HPP

#include <cmath>
#include <stdexcept>

namespace granular {

/// Inertial-range scaling inputs.  Kinetic energy per wavenumber falls as
/// k^{-5/3}, so the eddy turnover time falls as k^{-2/3}; both exponents
/// are fixed by the scaling and are not tunable.
struct CascadeParams {
  long double k_reference = 1.0L;    // largest scale of interest
  long double tau_reference = 1.0L;  // turnover time at k_reference

  static constexpr long double scaling_exponent = 2.0L / 3.0L;
  static constexpr long double spectrum_exponent = 5.0L / 3.0L;
};

namespace detail {

inline void check_cascade(const CascadeParams& p) {
  if (!(p.k_reference > 0.0L) || !(p.tau_reference > 0.0L))
    throw std::invalid_argument("cascade: parameters must be positive");
}

} // namespace detail

/// tau(k) = tau_L * (k/k_L)^{-2/3} for k >= k_L.
inline long double eddy_time(const CascadeParams& p, long double k) {
  detail::check_cascade(p);
  if (!(k >= p.k_reference))
    throw std::invalid_argument("eddy_time: k must be >= k_reference");
  return p.tau_reference *
         std::pow(k / p.k_reference, -CascadeParams::scaling_exponent);
}

/// Time for error to climb `octaves` octaves up to k_L: the partial sum
/// sum_{n=0}^{octaves-1} tau(2^n k_L) of a geometric series with ratio
/// 2^{-2/3}.
inline long double horizon_partial(const CascadeParams& p, unsigned octaves) {
  detail::check_cascade(p);
  if (octaves < 1)
    throw std::invalid_argument("horizon_partial: need at least one octave");
  long double sum = 0.0L;
  for (unsigned n = 0; n < octaves; ++n)
    sum += p.tau_reference *
           std::pow(2.0L, -CascadeParams::scaling_exponent *
                              static_cast<long double>(n));
  return sum;
}

/// The finite predictability horizon: tau_L / (1 - 2^{-2/3}), the supremum
/// of the partial sums.  Uncertainty of arbitrarily small scale reaches the
/// reference scale no later than this.
inline long double horizon_limit(const CascadeParams& p) {
  detail::check_cascade(p);
  long double ratio = std::pow(2.0L, -CascadeParams::scaling_exponent);
  return p.tau_reference / (1.0L - ratio);
}

/// Closed-form tail: limit - partial(octaves) = tau_L r^octaves / (1 - r).
inline long double horizon_remainder(const CascadeParams& p,
                                     unsigned octaves) {
  long double ratio = std::pow(2.0L, -CascadeParams::scaling_exponent);
  return p.tau_reference *
         std::pow(ratio, static_cast<long double>(octaves)) / (1.0L - ratio);
}

} // namespace granular

#endif // GRANULAR_CASCADE_HPP
