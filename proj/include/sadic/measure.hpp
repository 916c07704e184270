#pragma once

// Measures at cylinder resolution: Haar and self-similar masses on Z_p^d,
// the Federer doubling report, similarity dimension, and the friendly
// predicates (Federer / nonplanar / decaying) checked at a stated
// resolution.

#include <sadic/goodfn.hpp>
#include <sadic/region.hpp>

#include <map>
#include <memory>

namespace sadic {

/// An affine contracting similitude x -> a x + b on Q_p^1 with |a|_p < 1.
struct Similitude {
  Rat a, b;
  Rat contractionRate(long p) const;  // |a|_p
};

struct SimilitudeFamily {
  long p = 0;
  std::vector<Similitude> maps;

  /// Open-set condition witness Z_p at cylinder resolution: the images of
  /// Z_p are pairwise disjoint cylinders.
  bool openSetCondition() const;
};

/// A measure on Z_p^d queryable by cylinder: either Haar or the
/// self-similar measure of a similitude family (weights rho_i^s, s the
/// similarity dimension; masses exact rationals by construction for
/// equal-rate families).
class CylinderMeasure {
 public:
  static CylinderMeasure haar(long p, int dim);

  /// Self-similar measure with explicit rational weights summing to 1.
  static CylinderMeasure selfSimilar(SimilitudeFamily fam, std::vector<Rat> weights);

  long p() const { return p_; }
  int dim() const { return dim_; }

  /// Mass of the cylinder rep + p^level Z_p^d, exact.
  Rat mass(int level, const IntVec& rep) const;

  bool inSupport(int level, const IntVec& rep) const { return mass(level, rep) > 0; }

  /// Support residues at a level.
  std::vector<IntVec> supportAtLevel(int level) const;

 private:
  CylinderMeasure() = default;
  long p_ = 0;
  int dim_ = 1;
  bool haar_ = true;
  SimilitudeFamily fam_;
  std::vector<Rat> weights_;
  mutable std::map<std::pair<int, Int>, Rat> cache_;
};

struct FedererReport {
  Rat supRatio;       // sup over sampled (x, r) of mu(B(x, c r))/mu(B(x, r))
  long samples = 0;
  bool exact = true;  // ratios are exact at cylinder scales
};

/// Empirical D_mu(c) over all support centers and radii p^{-j},
/// j = 1..maxLevel, with c = p^t. Exact cylinder-mass ratios.
FedererReport federerRatio(const CylinderMeasure& mu, int t, int maxLevel);

/// The unique s >= 0 with sum rho_i^s = 1, bisected to 1e-12 (0 for a
/// single map).
double similarityDimension(const std::vector<double>& rates);

struct FriendlyReport {
  Rat federerBound;     // empirical D_mu(p) at the working resolution
  bool nonplanar;       // no proper affine subspace carries a sampled cylinder
  double decayingC;     // empirical C with alpha = 1 on sampled affine maps
  bool decayingPass;    // all sampled affine sublevel ratios finite
  int resolution;
};

/// The friendly triple at resolution N: Federer ratio, nonplanarity of the
/// support (exact rational affine-span test on support residues), and a
/// decaying report from sublevel measures of sampled affine functions.
FriendlyReport friendlyReport(const CylinderMeasure& mu, int resolution,
                              const std::vector<std::vector<Rat>>& affineSample);

}  // namespace sadic
