#ifndef GRANULAR_EPR_HPP
#define GRANULAR_EPR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "granular/angle.hpp"
#include "granular/roots.hpp"
#include "granular/sequence.hpp"
#include "granular/superpose.hpp"

namespace granular {

/// An entangled pair: a base-family sequence on the left and an offset
/// family member on the right whose correlation with the left is exactly
/// the recorded cosine.  When that cosine is 0 or +-1 the offset collapses
/// onto the base family and the two grids merge.
struct PairModel {
  BitSequence left;
  BitSequence right;
  SymbolicAngle left_base;
  SymbolicAngle right_base;
  Dyadic cos_value;
  std::uint64_t flip_seed;
  Certificate certificate;
};

inline PairModel make_pair_model(const BitSequence& s, const Dyadic& c,
                                 std::uint64_t flip_seed = default_flip_seed,
                                 const std::string& offset_label = "lam'") {
  detail::check_unit_range(c, "make_pair_model");
  SuperpositionSpec spec;
  spec.cos_value = c;
  spec.flip_seed = flip_seed;
  BitSequence right = superpose(s, spec);

  SymbolicAngle right_base;
  bool boundary = c.is_zero() || c == Dyadic(1) || c == Dyadic(-1);
  if (boundary) {
    // l' is an exact quarter-turn multiple; same family, shifted base.
    Dyadic q = c == Dyadic(1) ? Dyadic(0)
                              : (c.is_zero() ? Dyadic(BigInt(1), 1) : Dyadic(1));
    right_base = SymbolicAngle(q);
  } else {
    right_base = SymbolicAngle(AngleBase{offset_label}, Dyadic(0));
  }
  Certificate cert = disjointness_certificate(c.abs());
  return PairModel{s,          std::move(right), SymbolicAngle{},
                   right_base, c,                flip_seed,
                   std::move(cert)};
}

/// Membership in a family's definable grid: same base tag, offset a dyadic
/// multiple of pi/2^n within one circle of the base.
inline bool angle_in_grid(const SymbolicAngle& lam, const SymbolicAngle& base,
                          unsigned n) {
  if (lam.base() != base.base()) return false;
  Dyadic diff = (lam.coeff() - base.coeff()).mod_pow2(2);
  if (diff.exp2() > n) return false;       // finer than pi/2^n
  return diff < Dyadic(2);                 // within [base, base + 2*pi)
}

struct CorrelationTable {
  std::vector<SymbolicAngle> left_angles;
  std::vector<SymbolicAngle> right_angles;
  // cells[i][j]: exact correlation, or nullopt for Undefined
  std::vector<std::vector<std::optional<Dyadic>>> cells;
};

/// Exact correlations between S(left angle) and S'(right angle).  A cell is
/// Undefined (not an error) whenever either angle lies outside its own
/// family's grid.
inline CorrelationTable pair_correlation_table(
    const PairModel& model, const std::vector<SymbolicAngle>& left_angles,
    const std::vector<SymbolicAngle>& right_angles) {
  unsigned n = model.left.exponent();
  CorrelationTable table;
  table.left_angles = left_angles;
  table.right_angles = right_angles;

  std::vector<std::optional<BitSequence>> lefts;
  for (const auto& la : left_angles)
    lefts.push_back(angle_in_grid(la, model.left_base, n)
                        ? family_point(model.left, la, model.left_base)
                        : std::nullopt);
  std::vector<std::optional<BitSequence>> rights;
  for (const auto& ra : right_angles)
    rights.push_back(angle_in_grid(ra, model.right_base, n)
                         ? family_point(model.right, ra, model.right_base)
                         : std::nullopt);

  for (const auto& ls : lefts) {
    std::vector<std::optional<Dyadic>> row;
    for (const auto& rs : rights) {
      if (ls && rs)
        row.emplace_back(correlation(*ls, *rs));
      else
        row.emplace_back(std::nullopt);
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

enum class PairSide { left, right };

struct CounterfactualResult {
  std::optional<BitSequence> state;  // Defined(state) or Undefined
  std::string reason;
  std::optional<Certificate> certificate;  // attached to Undefined verdicts
};

/// What the queried side's sequence is at the given angle.  Defined only
/// for angles in that side's own grid; asking for the other family's
/// directions is answered Undefined, with the disjointness chain attached.
inline CounterfactualResult counterfactual_query(const PairModel& model,
                                                 PairSide side,
                                                 const SymbolicAngle& angle) {
  const BitSequence& seq = side == PairSide::left ? model.left : model.right;
  const SymbolicAngle& base =
      side == PairSide::left ? model.left_base : model.right_base;
  unsigned n = seq.exponent();
  if (angle_in_grid(angle, base, n)) {
    auto state = family_point(seq, angle, base);
    if (state) return {std::move(state), "defined", std::nullopt};
  }
  std::string reason =
      "undefined: angle " + angle.to_string() + " is not in the " +
      (side == PairSide::left ? std::string("left") : std::string("right")) +
      " family's definable grid";
  return {std::nullopt, std::move(reason), model.certificate};
}

struct ScanRow {
  Dyadic target;
  std::optional<Dyadic> achieved;  // nullopt when not representable
  std::string status;
};

/// Sweeps superposition targets and reports the realized correlation with
/// the base sequence.  Inadmissible targets are flagged, not dropped.
inline std::vector<ScanRow> interference_scan(const BitSequence& s,
                                              const std::vector<Dyadic>& grid,
                                              std::uint64_t flip_seed =
                                                  default_flip_seed) {
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (const Dyadic& c : grid) {
    ScanRow row;
    row.target = c;
    if (c < Dyadic(-1) || c > Dyadic(1)) {
      row.status = "out of range";
      rows.push_back(std::move(row));
      continue;
    }
    SuperpositionSpec spec;
    spec.cos_value = c;
    spec.flip_seed = flip_seed;
    try {
      BitSequence sp = superpose(s, spec);
      row.achieved = correlation(s, sp);
      row.status = "ok";
    } catch (const not_representable_error&) {
      row.status = "not representable at length " + std::to_string(s.size());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Evenly spaced dyadic targets t/2^k covering [-1, 1] inclusive.
inline std::vector<Dyadic> dyadic_scan_grid(unsigned k) {
  std::vector<Dyadic> grid;
  long long steps = 1ll << k;
  for (long long t = -steps; t <= steps; ++t)
    grid.emplace_back(BigInt(t), k);
  return grid;
}

} // namespace granular

#endif // GRANULAR_EPR_HPP
