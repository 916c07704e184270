#pragma once

// Exact arithmetic with products of rational powers of positive rationals.
// Values of the form prod b_i^{e_i} (b_i in Q_{>0}, e_i in Q) are closed
// under multiplication and rational powers, and admit exact comparison by
// clearing exponent denominators. This is the bookkeeping device for all
// (C,alpha)-good inequalities and the log-space Dirichlet computations.

#include <sadic/rational.hpp>

#include <vector>

namespace sadic {

class PowerProduct {
 public:
  PowerProduct() = default;  // the value 1

  static PowerProduct one() { return PowerProduct(); }
  static PowerProduct of(Rat base, Rat exponent);
  static PowerProduct ofRat(const Rat& value) { return of(value, Rat(1)); }

  bool isOne() const { return terms_.empty(); }

  PowerProduct& mul(const PowerProduct& other);
  PowerProduct& mulRat(const Rat& value) { return mul(ofRat(value)); }
  PowerProduct& pow(const Rat& e);
  PowerProduct inverse() const;

  friend PowerProduct operator*(PowerProduct a, const PowerProduct& b) { return a.mul(b); }

  /// Exact three-way comparison: -1, 0, +1 as *this <,==,> other.
  int compare(const PowerProduct& other) const;
  int compare(const Rat& other) const { return compare(ofRat(other)); }

  bool operator<(const PowerProduct& o) const { return compare(o) < 0; }
  bool operator<=(const PowerProduct& o) const { return compare(o) <= 0; }
  bool operator>(const PowerProduct& o) const { return compare(o) > 0; }
  bool operator>=(const PowerProduct& o) const { return compare(o) >= 0; }

  /// Natural logarithm, accurate to ~1e-15 relative in the log.
  double log() const;
  double toDouble() const { return std::exp(log()); }

  /// The exact rational value when all cleared exponents are integral.
  std::optional<Rat> asRat() const;

  const std::vector<std::pair<Rat, Rat>>& terms() const { return terms_; }

 private:
  void normalize();
  std::vector<std::pair<Rat, Rat>> terms_;  // (base > 0, exponent != 0)
};

}  // namespace sadic
