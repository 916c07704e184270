#pragma once

// Certified shortest-content search specialized to lattices of the shape
// g_{s,t} u_y D^{n+1} (diagonal p-power and e^{-t} scalings composed with a
// unipotent row). Finite-place data stays exact; the archimedean diagonal is
// floating with declared slack. The search is complete: for a coefficient
// vector with gcd 1 every finite-place norm is >= 1, so candidates below a
// content target live in an explicit box, stratified by the valuation
// profile of the top coordinate.

#include <sadic/place.hpp>
#include <sadic/power_product.hpp>

#include <optional>

namespace sadic {

struct UyLattice {
  std::vector<long> primes;      // finite places p_1..p_k of S
  int n = 0;                     // y in Q_S^n; lattice dimension n+1
  std::vector<long> s;           // exponents s_j >= 0, one per prime
  std::vector<double> t;         // diagonal exponents t_0..t_n at infinity
  std::vector<RatVec> yFinite;   // y^{(p_j)}, p_j-integral entries
  std::optional<RatVec> yArch;   // archimedean block too (the inf-in-S mode)

  int m() const { return n + 1; }
};

struct UyDeltaResult {
  double logCSqMin = 0;   // log of the minimal content squared found
  IntVec witness;         // coefficient vector (q_0, q)
  bool found = false;     // any candidate at or below the cutoff
  bool certified = false; // the box scan was complete
  long candidates = 0;
};

/// Scans all primitive coefficient vectors whose content can be below
/// exp(logTarget) and returns the minimum found. With minimize=true the
/// cutoff is initialized from the basis vectors, yielding certified delta.
UyDeltaResult uyDeltaScan(const UyLattice& L, double logTarget, bool minimize,
                          long budget = 20'000'000);

/// log c(g u q)^2 for one coefficient vector, finite part exact.
double uyLogContentSq(const UyLattice& L, const IntVec& qt);

/// Decision helper: -1 / 0 / +1 as log value is below / within slack of /
/// above the threshold.
int compareWithSlack(double logValue, double logThreshold, double slack = 1e-9);

}  // namespace sadic
