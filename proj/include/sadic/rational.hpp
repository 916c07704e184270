#pragma once

// Exact scalar layer: arbitrary-precision rationals and integers (GMP),
// wired into Eigen dense types so all linear algebra over Q is exact.

#include <gmpxx.h>

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpq_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 60,
    MulCost = 60
  };
};

}  // namespace Eigen

namespace sadic {

using Rat = mpq_class;
using Int = mpz_class;

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline Int numerator(const Rat& q) { return q.get_num(); }
inline Int denominator(const Rat& q) { return q.get_den(); }

inline double toDouble(const Rat& q) { return q.get_d(); }
inline double toDouble(const Int& z) { return z.get_d(); }

inline Rat ratOf(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// p-adic valuation of a nonzero integer (number of factors p).
inline long valuationZ(const Int& z, long p) {
  if (z == 0) throw std::domain_error("valuationZ: zero argument");
  Int rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), Int(p).get_mpz_t()));
}

/// p-adic valuation of a nonzero rational.
inline long valuationQ(const Rat& q, long p) {
  return valuationZ(numerator(q), p) - valuationZ(denominator(q), p);
}

/// p^e as an exact rational, e of either sign.
inline Rat powRat(long p, long e) {
  Int pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e >= 0 ? e : -e));
  return e >= 0 ? Rat(pw) : Rat(1, pw);
}

inline Int powInt(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// floor(log_p(q)) for q > 0, i.e. the largest e with p^e <= q.
inline long floorLogP(const Rat& q, long p) {
  if (q <= 0) throw std::domain_error("floorLogP: nonpositive argument");
  long e = static_cast<long>(std::floor(std::log(q.get_d()) / std::log(double(p))));
  while (powRat(p, e) > q) --e;
  while (powRat(p, e + 1) <= q) ++e;
  return e;
}

/// Exact square root when q is a perfect square of a rational.
inline std::optional<Rat> exactSqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  Int n = numerator(q), d = denominator(q);
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rat(sn, sd);
  }
  return std::nullopt;
}

/// Largest integer H with H^2 <= q (q >= 0).
inline Int floorSqrt(const Rat& q) {
  if (q < 0) throw std::domain_error("floorSqrt: negative argument");
  Int h;
  mpz_sqrt(h.get_mpz_t(), Int(numerator(q) / denominator(q)).get_mpz_t());
  while (Rat(h * h) > q) h -= 1;
  while (Rat((h + 1) * (h + 1)) <= q) h += 1;
  return h;
}

inline bool isPrime(long p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(Int(p).get_mpz_t(), 32) != 0;
}

/// Parses "num/den" or "num"; throws std::invalid_argument on junk.
Rat parseRat(const std::string& s);
std::string formatRat(const Rat& q);

}  // namespace sadic
