#ifndef GRANULAR_SIGNED_PERMUTATION_HPP
#define GRANULAR_SIGNED_PERMUTATION_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "granular/sequence.hpp"

namespace granular {

/// Index permutation with per-position sign flips:
///   (P S)_j = signs[j] * S[perm[j]].
class SignedPermutation {
public:
  SignedPermutation(std::vector<std::uint32_t> perm,
                    std::vector<std::int8_t> signs)
      : perm_(std::move(perm)), signs_(std::move(signs)) {
    if (perm_.size() != signs_.size())
      throw std::invalid_argument("SignedPermutation: size mismatch");
    if (perm_.empty())
      throw std::invalid_argument("SignedPermutation: empty");
    std::vector<bool> seen(perm_.size(), false);
    for (std::uint32_t p : perm_) {
      if (p >= perm_.size() || seen[p])
        throw std::invalid_argument("SignedPermutation: not a bijection");
      seen[p] = true;
    }
    for (std::int8_t s : signs_)
      if (s != 1 && s != -1)
        throw std::invalid_argument("SignedPermutation: signs must be +-1");
  }

  static SignedPermutation identity(std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    return SignedPermutation(std::move(p), std::vector<std::int8_t>(n, 1));
  }

  /// Identity permutation with every sign flipped; the operator -1.
  static SignedPermutation negation(std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    return SignedPermutation(std::move(p), std::vector<std::int8_t>(n, -1));
  }

  std::size_t size() const noexcept { return perm_.size(); }
  const std::vector<std::uint32_t>& perm() const noexcept { return perm_; }
  const std::vector<std::int8_t>& signs() const noexcept { return signs_; }

  BitSequence apply(const BitSequence& s) const {
    if (s.size() != size())
      throw std::invalid_argument("SignedPermutation::apply: length mismatch");
    std::vector<std::int8_t> out(size());
    for (std::size_t j = 0; j < size(); ++j)
      out[j] = static_cast<std::int8_t>(signs_[j] * s[perm_[j]]);
    return BitSequence(std::move(out));
  }

  BitSequence operator()(const BitSequence& s) const { return apply(s); }

  SignedPermutation inverse() const {
    std::vector<std::uint32_t> p(size());
    std::vector<std::int8_t> sg(size());
    for (std::size_t j = 0; j < size(); ++j) {
      p[perm_[j]] = static_cast<std::uint32_t>(j);
      sg[perm_[j]] = signs_[j];
    }
    return SignedPermutation(std::move(p), std::move(sg));
  }

  friend bool operator==(const SignedPermutation&,
                         const SignedPermutation&) = default;

private:
  std::vector<std::uint32_t> perm_;
  std::vector<std::int8_t> signs_;
};

/// compose(P, Q) applies Q first: compose(P, Q)(S) = P(Q(S)).
inline SignedPermutation compose(const SignedPermutation& outer,
                                 const SignedPermutation& inner) {
  if (outer.size() != inner.size())
    throw std::invalid_argument("compose: length mismatch");
  std::size_t n = outer.size();
  std::vector<std::uint32_t> p(n);
  std::vector<std::int8_t> sg(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint32_t t = outer.perm()[j];
    p[j] = inner.perm()[t];
    sg[j] = static_cast<std::int8_t>(outer.signs()[j] * inner.signs()[t]);
  }
  return SignedPermutation(std::move(p), std::move(sg));
}

inline SignedPermutation operator*(const SignedPermutation& outer,
                                   const SignedPermutation& inner) {
  return compose(outer, inner);
}

} // namespace granular

#endif // GRANULAR_SIGNED_PERMUTATION_HPP
