#pragma once

// Discrete Z_S-submodules of Q_S^m: rank and primitivity, Hermite-form
// saturation, and covolume as the content of the wedge of generators.

#include <sadic/exterior.hpp>
#include <sadic/place.hpp>
#include <sadic/sadic.hpp>

#include <vector>

namespace sadic {

/// Row-style Hermite normal form of an integer matrix (rows generate the
/// same row lattice); zero rows removed. Pivots are positive and entries
/// above each pivot are reduced.
IntMat hermiteNormalForm(const IntMat& A);

/// A basis (rows) of the integer kernel {v : M v^T = 0 componentwise as
/// rows... } of the Z-linear map given by the rows of M acting on Z^m by
/// v -> M v. The returned lattice is saturated.
IntMat kernelZ(const IntMat& M);

struct RankZeroError : std::domain_error {
  RankZeroError() : std::domain_error("covolume: rank-zero module") {}
};

struct NotSubmoduleError : std::domain_error {
  explicit NotSubmoduleError(const std::string& m) : std::domain_error(m) {}
};

/// A discrete Z_S-submodule of Q_S^m, given by r generators that are
/// linearly independent over Q_v at every place. Generators may differ per
/// place; submodules of Z_S^m are the diagonal ones with S-integral entries.
class SModule {
 public:
  /// Diagonal module: the same rational generator matrix (m x r columns) at
  /// every place.
  SModule(PlaceSet S, RatMat generators);

  /// General per-place generators, aligned with S.places().
  SModule(PlaceSet S, std::vector<RatMat> perPlace);

  const PlaceSet& placeSet() const { return S_; }
  int ambientDim() const { return m_; }
  int rank() const { return r_; }
  bool isDiagonal() const { return diagonal_; }
  const RatMat& generators(const Place& v) const;
  const RatMat& diagonalGenerators() const;

  /// Membership test for diagonal modules: x in the module iff the unique
  /// rational solution of A c = x has S-integral coordinates.
  bool contains(const RatVec& x) const;

  /// True iff every entry lies in Z_S after clearing a unit per generator.
  bool isSubmoduleOfStandard() const;

 private:
  PlaceSet S_;
  int m_, r_;
  bool diagonal_;
  std::vector<RatMat> gens_;  // one per place; all equal when diagonal_
};

/// The unique primitive module of equal rank containing D: the rational
/// span intersected with Z_S^m. Requires a diagonal submodule of Z_S^m.
SModule saturate(const SModule& D);

bool isPrimitive(const SModule& D);

/// cov(D)^2 = c(a_1 ^ ... ^ a_r)^2, exact. The covolume itself is the
/// square root; compare squares.
Rat covolumeSq(const SModule& D);

/// Covolume squared of the image g D for g exact.
Rat covolumeSq(const SModule& D, const SAdicMat& g);

/// Covolume as a double with exact square (convenience).
double covolume(const SModule& D);

/// Mixed-mode: covolume^2 of the image of a diagonal module under a matrix
/// whose archimedean component is floating; returns (value, relative error
/// bound) for the squared covolume.
std::pair<double, double> covolumeSqMixed(const SModule& D, const std::vector<RatMat>& gFinite,
                                          const MatrixXd& gArch);

/// Random-free helper: change generators by an r x r S-integral unimodular
/// matrix (covolume invariant).
SModule changeGenerators(const SModule& D, const RatMat& U);

}  // namespace sadic
