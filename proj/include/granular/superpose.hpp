#ifndef GRANULAR_SUPERPOSE_HPP
#define GRANULAR_SUPERPOSE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "granular/dyadic.hpp"
#include "granular/errors.hpp"
#include "granular/niven.hpp"
#include "granular/roots.hpp"
#include "granular/sequence.hpp"

namespace granular {

inline constexpr std::uint64_t default_flip_seed = 0xa0761d6478bd642full;

/// Mixing recipe for a superposed sequence.  Exactly one of the two trig
/// components of the mixing angle can be an exact dyadic inside (0,1); both
/// may be recorded only at the boundary values.
struct SuperpositionSpec {
  std::optional<Dyadic> cos_value;
  std::optional<Dyadic> sin_value;
  std::uint64_t flip_seed = default_flip_seed;
};

namespace detail {

inline void check_unit_range(const Dyadic& v, const char* who) {
  if (v < Dyadic(-1) || v > Dyadic(1))
    throw std::invalid_argument(std::string(who) +
                                ": value must lie in [-1, 1]");
}

inline bool strictly_inside_unit(const Dyadic& v) {
  return v > Dyadic(0) && v < Dyadic(1);
}

// The d flip positions are the first d entries of a Fisher-Yates shuffle
// of 0..L-1 driven by splitmix64(seed).
inline std::vector<std::size_t> flip_positions(std::size_t length,
                                               std::size_t count,
                                               std::uint64_t seed) {
  std::vector<std::size_t> idx(length);
  for (std::size_t i = 0; i < length; ++i) idx[i] = i;
  SplitMix64 rng(seed);
  std::size_t upto = count < length ? count : length;
  for (std::size_t i = 0; i < upto; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(length - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

// Flip-count construction: returns a sequence whose correlation with
// `anchor` is exactly `target`, by flipping d = L(1 - target)/2 positions.
inline BitSequence flip_superpose(const BitSequence& anchor,
                                  const Dyadic& target, std::uint64_t seed) {
  check_unit_range(target, "superpose");
  std::size_t length = anchor.size();
  Dyadic flips = Dyadic(BigInt(length), 1) * (Dyadic(1) - target);
  if (!flips.is_integer())
    throw not_representable_error(
        "superpose: correlation " + target.to_string() +
        " is not realizable at length " + std::to_string(length) +
        " (fractional flip count " + flips.to_string() + ")");
  std::size_t d = flips.num().convert_to<std::size_t>();
  std::vector<std::int8_t> out(anchor.elements());
  for (std::size_t pos : flip_positions(length, d, seed))
    out[pos] = static_cast<std::int8_t>(-out[pos]);
  return BitSequence(std::move(out));
}

} // namespace detail

/// Rejects recipes claiming both trig components dyadic strictly inside
/// (0,1); if one of them is, the other is irrational.
inline void validate_spec(const SuperpositionSpec& spec) {
  if (spec.cos_value) detail::check_unit_range(*spec.cos_value, "superpose");
  if (spec.sin_value) detail::check_unit_range(*spec.sin_value, "superpose");
  if (spec.cos_value && spec.sin_value &&
      detail::strictly_inside_unit(spec.cos_value->abs()) &&
      detail::strictly_inside_unit(spec.sin_value->abs()))
    throw contradiction_error(
        "superpose: cos and sin cannot both be dyadic strictly inside (0,1)");
  if (!spec.cos_value && !spec.sin_value)
    throw std::invalid_argument("superpose: no trig component recorded");
}

/// The sequence cos(l')S + sin(l')i(S), realized exactly: on the cos branch
/// the result's correlation with S is cos l'; on the sin branch its
/// correlation with i(S) is sin l'.  Zero-cos and zero-sin recipes resolve
/// to the base family members i(S) and S themselves.
inline BitSequence superpose(const BitSequence& s,
                             const SuperpositionSpec& spec) {
  validate_spec(spec);
  SignedPermutation op_i = build_root(0, s.size());
  if (spec.cos_value) {
    if (spec.cos_value->is_zero()) return op_i.apply(s);
    return detail::flip_superpose(s, *spec.cos_value, spec.flip_seed);
  }
  if (spec.sin_value->is_zero()) return s;
  return detail::flip_superpose(op_i.apply(s), *spec.sin_value,
                                spec.flip_seed);
}

/// Point of the offset family: S'(lam) = i^{2(lam - base)/pi}(S').
inline std::optional<BitSequence> offset_family_point(
    const BitSequence& sp, const SymbolicAngle& family_base,
    const SymbolicAngle& lam) {
  return family_point(sp, lam, family_base);
}

/// Why the base family and an offset family with correlation c share no
/// definable angle.  `steps` is the audit chain; `disjoint` is the verdict.
struct Certificate {
  Dyadic cos_value;
  bool disjoint = false;
  std::vector<std::string> steps;
};

/// Disjointness proof for dyadic c = cos l' in [0, 1].  Interior values give
/// disjoint families; the boundary values 0 and 1 mean l' is a quarter turn
/// or zero, where the two families coincide.
inline Certificate disjointness_certificate(const Dyadic& c) {
  if (c.sign() < 0 || c > Dyadic(1))
    throw std::invalid_argument(
        "disjointness_certificate: c must lie in [0, 1]");
  Certificate cert;
  cert.cos_value = c;
  if (c.is_zero() || c == Dyadic(1)) {
    cert.disjoint = false;
    cert.steps = {
        "cos l' = " + c.to_string() + " puts l' at " +
            std::string(c.is_zero() ? "pi/2" : "0") +
            ", a dyadic multiple of pi",
        "the offset family is then the base family itself; nothing is "
        "disjoint"};
    return cert;
  }
  // Reductio: a shared definable angle would force l' onto the dyadic grid,
  // where the cosine is irrational except at the few classified values.
  std::vector<Dyadic> attained_values;
  for (long long t : {0, 1, 2, 3}) {
    Dyadic q(BigInt(t), 1);  // representatives of q mod 2 with rational cos
    if (auto v = cos_rationality_class(q))
      if (std::find(attained_values.begin(), attained_values.end(), *v) ==
          attained_values.end())
        attained_values.push_back(*v);
  }
  bool c_is_attained = false;
  std::string attained;
  for (const Dyadic& v : attained_values) {
    attained += (attained.empty() ? "" : ", ") + v.to_string();
    if (v == c) c_is_attained = true;
  }
  cert.disjoint = !c_is_attained;
  cert.steps.push_back(
      "suppose some angle were definable in both the base family and the "
      "offset family");
  cert.steps.push_back(
      "both offsets from that angle are dyadic multiples of pi, so l' itself "
      "is a dyadic multiple of pi: l' = q*pi with dyadic q");
  cert.steps.push_back(
      "the only rational values of cos(q*pi) over dyadic q are {" + attained +
      "}; every other dyadic q gives an irrational cosine");
  cert.steps.push_back("cos l' = " + c.to_string() +
                       " is rational, being a correlation of two finite +-1 "
                       "sequences, and is not among the attained values");
  cert.steps.push_back(
      "contradiction; no angle is definable in both families");
  return cert;
}

} // namespace granular

#endif // GRANULAR_SUPERPOSE_HPP
