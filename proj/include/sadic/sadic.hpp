#pragma once

// Elements of Q_S, Q_S^m and GL(m, Q_S) as per-place components, with the
// normalized norms and the content function. Finite components are always
// exact rationals; the archimedean component is either exact (lattice and
// covolume paths) or floating (dynamics paths with e^{-t} entries). Each
// operation states which mode it accepts.

#include <sadic/place.hpp>
#include <sadic/power_product.hpp>

#include <vector>

namespace sadic {

/// An element of Q_S with exact rational components everywhere.
struct SAdicScalar {
  PlaceSet S;
  std::vector<Rat> comp;  // aligned with S.places()

  static SAdicScalar diagonal(const PlaceSet& S, const Rat& x);
  const Rat& at(const Place& v) const;
};

/// An element of Q_S^m, exact everywhere. arch is row 0 of comps when
/// S.hasArch(); finite components follow in S order.
struct SAdicVec {
  PlaceSet S;
  int m = 0;
  std::vector<RatVec> comp;  // aligned with S.places()

  static SAdicVec diagonal(const PlaceSet& S, const RatVec& x);
  const RatVec& at(const Place& v) const;
  RatVec& at(const Place& v);
};

/// An element of GL(m, Q_S) with exact entries.
struct SAdicMat {
  PlaceSet S;
  int m = 0;
  std::vector<RatMat> comp;  // aligned with S.places()

  static SAdicMat identity(const PlaceSet& S, int m);
  static SAdicMat diagonal(const PlaceSet& S, const RatMat& g);
  const RatMat& at(const Place& v) const;
  RatMat& at(const Place& v);

  SAdicVec apply(const SAdicVec& x) const;
  SAdicMat mul(const SAdicMat& o) const;
};

/// sup_i |x_i|_p, an exact power of p (0 for the zero vector).
Rat supNormP(const RatVec& x, long p);

/// Squared Euclidean norm, exact.
Rat euclidSqNorm(const RatVec& x);

/// Scalar content c(x) = prod_v |x^(v)|_v, exact.
Rat content(const SAdicScalar& x);

/// Scalar S-adic absolute value |x| = max_v |x^(v)|_v, exact.
Rat sAbs(const SAdicScalar& x);

/// Squared vector content: prod over finite v of sup-norm^2 times the
/// squared Euclidean norm at the archimedean place, exact. The content
/// itself is the square root (often irrational); compare squares.
Rat contentSq(const SAdicVec& x);

/// Squared S-adic norm ||x||^2 = (max_v ||x^(v)||_v)^2, exact.
Rat sNormSq(const SAdicVec& x);

struct BalanceResult {
  Rat unit;              // xi in Z_S^*, sign +1
  SAdicVec balanced;     // xi * x
  double achievedRatio;  // max_v ||xi x||_v / c(x)^{1/ell}
  bool windowEdge;       // minimizer sits on the exponent window boundary
};

/// Unit-balancing search: the S-unit xi = prod p_j^{e_j}, |e_j| <= window,
/// minimizing max_v ||xi x^{(v)}||_v. Exact comparisons; the reported ratio
/// is a floating-point convenience. Requires c(x) != 0.
BalanceResult balanceByUnits(const SAdicVec& x, long window);

struct ZeroContentError : std::domain_error {
  ZeroContentError() : std::domain_error("balance_by_units: content is zero") {}
};

}  // namespace sadic
