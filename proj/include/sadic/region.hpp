#pragma once

// Exactly measurable regions: unions of p-adic cylinders (residue classes
// mod p^N in Z_p^d) and rational interval lists on the real line. These are
// the substrates on which sublevel-set measures are computed exactly.

#include <sadic/rational.hpp>

#include <functional>
#include <vector>

namespace sadic {

/// A union of residue classes mod p^N inside Z_p^d. Haar measure is
/// #residues / p^{N d}, exact.
class CylinderRegion {
 public:
  CylinderRegion(long p, int level, int dim, std::vector<IntVec> residues);

  /// All of Z_p^d (one residue class at level 0).
  static CylinderRegion full(long p, int dim = 1);

  /// The single cylinder rep + p^level Z_p^d.
  static CylinderRegion cylinder(long p, int level, IntVec rep);

  long p() const { return p_; }
  int level() const { return level_; }
  int dim() const { return dim_; }
  const std::vector<IntVec>& residues() const { return residues_; }
  Int modulus() const { return powInt(Int(p_), static_cast<unsigned long>(level_)); }

  Rat measure() const;
  bool contains(const IntVec& x) const;  // x taken mod p^level

  /// Visits every residue representative at refinement level L >= level.
  void forEachResidueAtLevel(int L, const std::function<void(const IntVec&)>& fn) const;

  /// Number of residues at refinement level L.
  Int residueCountAtLevel(int L) const;

 private:
  long p_;
  int level_;
  int dim_;
  std::vector<IntVec> residues_;  // entries reduced mod p^level, sorted
};

/// A finite union of closed rational intervals on R.
struct IntervalRegion {
  std::vector<std::pair<Rat, Rat>> intervals;  // [a, b], a <= b

  Rat measure() const;
};

}  // namespace sadic
