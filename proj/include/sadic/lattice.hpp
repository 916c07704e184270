#pragma once

// Lattices g Z_S^m in Q_S^m: the shortest-content function delta with a
// certified enumeration backend, Minkowski point search, enumeration of all
// primitive submodules of small covolume, and Q_eps membership.

#include <sadic/sadic.hpp>
#include <sadic/smodule.hpp>

#include <optional>

namespace sadic {

/// A lattice g Z_S^m with exact rational g. S must contain the archimedean
/// place (the lattice theory lives there); finite-only Diophantine sets are
/// handled by adjoining it (S^+).
struct SLattice {
  PlaceSet S;
  int m = 0;
  SAdicMat g;

  static SLattice standard(const PlaceSet& S, int m);
  static SLattice fromDiagonalMatrix(const PlaceSet& S, const RatMat& g);

  bool unimodular() const;  // c(det g) == 1
};

struct SearchBudgetError : std::runtime_error {
  explicit SearchBudgetError(const std::string& m) : std::runtime_error(m) {}
};

struct DeltaResult {
  Rat deltaSq;              // min content squared over the searched set
  IntVec witness;           // primitive integer coefficient vector
  SAdicVec witnessVector;   // g * witness, the lattice point itself
  bool certified = false;   // search radius provably covered all candidates
};

/// delta(Lambda)^2 = min{ c(x)^2 : x in Lambda \ 0 }, exact and certified.
/// The minimum is attained on primitive integer coefficient vectors; the
/// certified search radius comes from per-place operator bounds on g^{-1}.
DeltaResult deltaExact(const SLattice& L, long budget = 4'000'000);

/// Certified decision delta(Lambda) >= eps. Returns true/false with a
/// witness on the false branch; throws SearchBudgetError if uncertifiable
/// within budget (the Uncertified outcome).
bool inQEps(const SLattice& L, const Rat& eps, IntVec* witnessOut = nullptr,
            long budget = 4'000'000);

struct PreconditionUnmetError : std::domain_error {
  explicit PreconditionUnmetError(const std::string& m) : std::domain_error(m) {}
};

/// Volume of the closed norm-ball of radius eps in an r-dimensional span
/// (the normalized product measure): V_r(lower bound) eps^r at the real
/// place, (p^floor(log_p eps))^r at each finite one. Returns a certified
/// lower bound (rational lower bounds for the unit-ball volumes).
Rat ballVolumeLower(const PlaceSet& S, int r, const Rat& eps);

/// Smallest radius (as a rational, slightly rounded up) whose ball volume
/// provably reaches 2^r cov(Delta).
Rat minkowskiRadius(const SModule& D);

/// A nonzero point of D whose per-place norms are all <= eps. Requires the
/// Minkowski volume precondition (checked with certified lower bounds).
SAdicVec minkowskiPoint(const SModule& D, const Rat& eps, long budget = 8'000'000);

/// Concrete constant A(S, m) for the small-covolume bound delta <= A rho^{1/m}
/// (rho <= 1), from the ball-volume computation behind the Minkowski lemma.
double minkowskiDeltaConstant(const PlaceSet& S, int m);

struct SmallSubmodule {
  SModule module;
  Rat covSqInImage;  // cov(g Delta)^2
};

struct EnumerationResult {
  std::vector<SmallSubmodule> modules;
  bool complete = false;
};

/// All primitive rank-r submodules Delta of Z_S^m with cov(g Delta) <= rho,
/// via the rank-one reduction in wedge-r coordinates. Exact and certified
/// when complete.
EnumerationResult enumerateSmallSubmodules(const SLattice& L, const Rat& rho, int r,
                                           long budget = 4'000'000);

/// Minimal covolume of a rank-r primitive submodule in the image of L.
Rat minCovSqOfRank(const SLattice& L, int r, long budget = 4'000'000);

}  // namespace sadic
