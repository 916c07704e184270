#pragma once

// Covering geometry of X = R^{d0} x F_1^{d1} x ... : ball splitting counts
// at ultrametric places, the Haar doubling bound D_lambda(c), and the
// Besicovitch multiplicity bound N_X.

#include <sadic/power_product.hpp>

#include <vector>

namespace sadic {

/// Shape of the product space X = R^{d0} x prod_i F_i^{d_i}.
struct SpaceSpec {
  int d0 = 0;                                  // archimedean dimension
  std::vector<std::pair<long, int>> ultra;     // (p_i, d_i), d_i >= 1

  bool purelyUltrametric() const { return d0 == 0; }
  int totalDim() const;
};

/// A ball of radius c*r in F (residue field size p) splits into at most
/// p^{floor(log_p c) + 1} balls of radius r.
Int ballSplitCount(long p, const Rat& c);

/// Haar doubling bound D_lambda(c) <= c^{d0} * prod (c p_i)^{d_i}, exact.
PowerProduct haarDoublingBound(const SpaceSpec& spec, const Rat& c);

/// Besicovitch multiplicity bound N_X. Ultrametric spaces give exactly 1;
/// with a real factor the product bound M * D_{R^{d0}}(8) * prod D_i(8)
/// applies, with interval constants for d0 = 1 and conservative
/// volume-packing constants for d0 >= 2.
Int besicovitchBound(const SpaceSpec& spec);

struct CoveringConstants {
  std::vector<std::pair<long, Int>> ballSplit;  // per finite place at scale c
  PowerProduct dLambda;                         // D_lambda(c) bound
  Int nX;                                       // Besicovitch bound
};

/// All three closed-form bounds at scale c >= 1.
CoveringConstants coveringConstants(const SpaceSpec& spec, const Rat& c);

}  // namespace sadic
