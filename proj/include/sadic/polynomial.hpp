#pragma once

// Dense univariate and sparse multivariate polynomials over Q, with the
// exact evaluation, differentiation and divided-difference machinery the
// good-function calculus needs.

#include <sadic/rational.hpp>

#include <map>
#include <vector>

namespace sadic {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& a) { return Poly({a}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }
  static Poly monomial(int k, const Rat& a = Rat(1));

  bool isZero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const Rat& coeff(int k) const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat operator()(const Rat& x) const;
  double operator()(double x) const;

  Poly derivative() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& a) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Lagrange interpolant of given (distinct) nodes and values, degree < n.
  static Poly lagrange(const std::vector<Rat>& nodes, const std::vector<Rat>& values);

 private:
  void trim();
  std::vector<Rat> c_;  // c_[k] is the coefficient of x^k
};

struct CoincidentPointsError : std::domain_error {
  CoincidentPointsError() : std::domain_error("difference quotient: coincident points") {}
};

/// k-th difference quotient (divided difference) of f at k+1 pairwise
/// distinct points; symmetric in its arguments.
Rat diffQuotient(const std::function<Rat(const Rat&)>& f, std::vector<Rat> points);

/// Divided difference of a polynomial with repeated nodes allowed (the
/// continuous extension bar-Phi^k; Hermite table using exact derivatives).
Rat diffQuotientPoly(const Poly& f, std::vector<Rat> points);

/// Multivariate polynomials: exponent vector -> coefficient. Terms are kept
/// in graded-lex order of exponents.
class MultiPoly {
 public:
  using Expo = std::vector<int>;

  explicit MultiPoly(int nvars = 1) : n_(nvars) {}
  static MultiPoly constant(int nvars, const Rat& a);
  static MultiPoly variable(int nvars, int i);

  int nvars() const { return n_; }
  bool isZero() const { return t_.empty(); }
  bool isConstant() const;
  int totalDegree() const;

  void add(const Expo& e, const Rat& a);
  Rat coeff(const Expo& e) const;
  const std::map<Expo, Rat>& terms() const { return t_; }

  Rat operator()(const RatVec& x) const;
  MultiPoly partial(int i) const;  // d/dx_i

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rat& a) const;
  bool operator==(const MultiPoly& o) const { return n_ == o.n_ && t_ == o.t_; }

  /// The univariate image when nvars == 1.
  Poly toPoly() const;
  static MultiPoly fromPoly(const Poly& p);

 private:
  int n_;
  std::map<Expo, Rat> t_;
};

}  // namespace sadic
