#pragma once

// Places of Q and normalized valuations. Finite-place absolute values are
// exact powers of p with |p|_p = 1/p; the archimedean one is the usual
// absolute value.

#include <sadic/rational.hpp>

#include <string>
#include <vector>

namespace sadic {

struct Place {
  long p = 0;  // 0 encodes the archimedean place

  bool isArch() const { return p == 0; }
  static Place arch() { return Place{0}; }
  static Place finite(long prime);

  friend bool operator==(const Place& a, const Place& b) { return a.p == b.p; }
};

std::string toString(const Place& v);

/// |x|_v, exact. Finite places return an exact power of p (or 0).
Rat valuation(const Rat& x, const Place& v);

/// An ordered set of distinct places. Finite places are kept sorted; the
/// archimedean place, when present, comes first in iteration order.
class PlaceSet {
 public:
  PlaceSet() = default;
  PlaceSet(bool hasArch, std::vector<long> primes);

  /// Parses strings like "inf,2,3" or "3,5".
  static PlaceSet parse(const std::string& s);

  bool hasArch() const { return hasArch_; }
  const std::vector<long>& primes() const { return primes_; }
  int ell() const { return static_cast<int>(primes_.size()) + (hasArch_ ? 1 : 0); }
  int iS() const { return hasArch_ ? 0 : 1; }
  int numFinite() const { return static_cast<int>(primes_.size()); }

  std::vector<Place> places() const;
  bool contains(const Place& v) const;

  /// S with the archimedean place adjoined (the S^+ of the finite-S theory).
  PlaceSet withArch() const { return PlaceSet(true, primes_); }

  std::string toString() const;

  friend bool operator==(const PlaceSet& a, const PlaceSet& b) {
    return a.hasArch_ == b.hasArch_ && a.primes_ == b.primes_;
  }

 private:
  bool hasArch_ = false;
  std::vector<long> primes_;
};

/// True iff x lies in Z_S (denominator supported on the finite places of S).
bool isSInteger(const Rat& x, const PlaceSet& S);

/// True iff x is an S-unit (numerator and denominator supported on S_f).
bool isSUnit(const Rat& x, const PlaceSet& S);

/// Strips all factors of the finite places of S from a nonzero rational;
/// the result u satisfies |u|_p = 1 for p in S_f and x = u * (S-unit).
Rat sUnitFreePart(const Rat& x, const PlaceSet& S);

}  // namespace sadic
