#ifndef GRANULAR_ERRORS_HPP
#define GRANULAR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace granular {

/// Requested object has no exact representation at the given granularity,
/// e.g. an exponent denominator too deep for the sequence length or a
/// fractional flip count.
class not_representable_error : public std::domain_error {
public:
  explicit not_representable_error(const std::string& what)
      : std::domain_error(what) {}
};

/// The stated inputs cannot coexist (cos and sin both dyadic strictly
/// inside (0,1)).
class contradiction_error : public std::logic_error {
public:
  explicit contradiction_error(const std::string& what)
      : std::logic_error(what) {}
};

/// A trajectory left the finite range of floating point arithmetic.
class divergence_error : public std::runtime_error {
public:
  divergence_error(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

} // namespace granular

#endif // GRANULAR_ERRORS_HPP
