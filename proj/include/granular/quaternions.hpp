#ifndef GRANULAR_QUATERNIONS_HPP
#define GRANULAR_QUATERNIONS_HPP

#include <cstddef>
#include <vector>

#include "granular/errors.hpp"
#include "granular/roots.hpp"
#include "granular/signed_permutation.hpp"
#include "granular/superpose.hpp"

namespace granular {

/// The three quaternion units acting blockwise on quadruplets:
///   I: (a1,a2,a3,a4) -> (-a2,  a1,  a4, -a3)
///   J: (a1,a2,a3,a4) -> (-a3, -a4,  a1,  a2)
///   K: (a1,a2,a3,a4) -> (-a4,  a3, -a2,  a1)
struct QuaternionOps {
  SignedPermutation i_op;
  SignedPermutation j_op;
  SignedPermutation k_op;
};

inline QuaternionOps quaternion_ops(std::size_t length) {
  detail::check_power_of_two(length, "quaternion_ops");
  if (length % 4 != 0)
    throw std::invalid_argument(
        "quaternion_ops: length must be divisible by 4");
  detail::BlockPattern pi{{1, 0, 3, 2}, {-1, 1, 1, -1}};
  detail::BlockPattern pj{{2, 3, 0, 1}, {-1, -1, 1, 1}};
  detail::BlockPattern pk{{3, 2, 1, 0}, {-1, 1, -1, 1}};
  return {detail::tile(pi, length), detail::tile(pj, length),
          detail::tile(pk, length)};
}

/// The square roots of -1 acting blockwise on 2^level-tuplets; there are
/// 2^level - 1 of them and each squares to the negation operator.
struct RootSet {
  unsigned level = 1;
  std::vector<SignedPermutation> ops;
};

namespace detail {

inline BlockPattern pattern_inverse(const BlockPattern& p) {
  BlockPattern out;
  out.perm.resize(p.perm.size());
  out.signs.resize(p.signs.size());
  for (std::size_t j = 0; j < p.perm.size(); ++j) {
    out.perm[p.perm[j]] = static_cast<std::uint32_t>(j);
    out.signs[p.perm[j]] = p.signs[j];
  }
  return out;
}

// Self-similar generation step.  On a block split into halves (Lh, Rh),
// each root P of the previous level yields two new roots and the halves
// swap once on their own:
//   D_P = (P(Lh), P^{-1}(Rh))     block diagonal
//   B   = (-Rh, Lh)               the bare half swap
//   T_P = (P(Rh), P(Lh))          swap conjugated by P
// Level 2 applied to the pair rule reproduces I, J, K exactly, in that
// order.
inline std::vector<BlockPattern> root_patterns(unsigned level) {
  std::vector<BlockPattern> out;
  if (level == 1) {
    out.push_back({{1, 0}, {-1, 1}});
    return out;
  }
  std::vector<BlockPattern> prev = root_patterns(level - 1);
  std::size_t half = std::size_t(1) << (level - 1);
  auto fresh = [half] {
    BlockPattern p;
    p.perm.resize(2 * half);
    p.signs.resize(2 * half);
    return p;
  };
  for (const BlockPattern& p : prev) {
    BlockPattern inv = pattern_inverse(p);
    BlockPattern d = fresh();
    for (std::size_t t = 0; t < half; ++t) {
      d.perm[t] = p.perm[t];
      d.signs[t] = p.signs[t];
      d.perm[half + t] = static_cast<std::uint32_t>(half + inv.perm[t]);
      d.signs[half + t] = inv.signs[t];
    }
    out.push_back(std::move(d));
  }
  {
    BlockPattern b = fresh();
    for (std::size_t t = 0; t < half; ++t) {
      b.perm[t] = static_cast<std::uint32_t>(half + t);
      b.signs[t] = -1;
      b.perm[half + t] = static_cast<std::uint32_t>(t);
      b.signs[half + t] = 1;
    }
    out.push_back(std::move(b));
  }
  for (const BlockPattern& p : prev) {
    BlockPattern t_op = fresh();
    for (std::size_t t = 0; t < half; ++t) {
      t_op.perm[t] = static_cast<std::uint32_t>(half + p.perm[t]);
      t_op.signs[t] = p.signs[t];
      t_op.perm[half + t] = p.perm[t];
      t_op.signs[half + t] = p.signs[t];
    }
    out.push_back(std::move(t_op));
  }
  return out;
}

} // namespace detail

inline RootSet generate_roots(unsigned level, std::size_t length) {
  if (level < 1) throw std::invalid_argument("generate_roots: level >= 1");
  detail::check_power_of_two(length, "generate_roots");
  std::size_t block = std::size_t(1) << level;
  if (block > length)
    throw not_representable_error(
        "generate_roots: block size exceeds sequence length");
  RootSet set;
  set.level = level;
  SignedPermutation neg = SignedPermutation::negation(length);
  for (const auto& p : detail::root_patterns(level)) {
    SignedPermutation op = detail::tile(p, length);
    if (compose(op, op) != neg)
      throw std::logic_error("generate_roots: member does not square to -1");
    set.ops.push_back(std::move(op));
  }
  return set;
}

/// Quaternionic mixing cos(th)I(S) + sin(th)J(S): on the cos branch the
/// result's correlation with I(S) is cos th exactly, on the sin branch its
/// correlation with J(S) is sin th exactly.
inline BitSequence quat_superpose(const BitSequence& s,
                                  const SuperpositionSpec& spec) {
  validate_spec(spec);
  QuaternionOps q = quaternion_ops(s.size());
  if (spec.cos_value) {
    if (spec.cos_value->is_zero()) return q.j_op.apply(s);
    return detail::flip_superpose(q.i_op.apply(s), *spec.cos_value,
                                  spec.flip_seed);
  }
  if (spec.sin_value->is_zero()) return q.i_op.apply(s);
  return detail::flip_superpose(q.j_op.apply(s), *spec.sin_value,
                                spec.flip_seed);
}

} // namespace granular

#endif // GRANULAR_QUATERNIONS_HPP
