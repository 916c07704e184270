#include <sadic/smodule.hpp>

#include <numeric>

namespace sadic {

namespace {
Int gcdInt(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

void extGcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
}  // namespace

IntMat hermiteNormalForm(const IntMat& A) {
  IntMat H = A;
  const int rows = static_cast<int>(H.rows());
  const int cols = static_cast<int>(H.cols());
  int pivotRow = 0;
  for (int c = 0; c < cols && pivotRow < rows; ++c) {
    // Clear the column below pivotRow with extended-gcd row operations.
    int nz = -1;
    for (int r = pivotRow; r < rows; ++r)
      if (H(r, c) != 0) {
        nz = r;
        break;
      }
    if (nz < 0) continue;
    if (nz != pivotRow) H.row(nz).swap(H.row(pivotRow));
    for (int r = pivotRow + 1; r < rows; ++r) {
      if (H(r, c) == 0) continue;
      Int g, x, y;
      extGcd(H(pivotRow, c), H(r, c), g, x, y);
      Int a = H(pivotRow, c) / g, b = H(r, c) / g;
      for (int j = 0; j < cols; ++j) {
        Int hp = H(pivotRow, j), hr = H(r, j);
        H(pivotRow, j) = x * hp + y * hr;
        H(r, j) = -b * hp + a * hr;
      }
    }
    if (H(pivotRow, c) < 0) H.row(pivotRow) = -H.row(pivotRow);
    // Reduce entries above the pivot.
    for (int r = 0; r < pivotRow; ++r) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H(r, c).get_mpz_t(), H(pivotRow, c).get_mpz_t());
      if (q != 0) H.row(r) -= H.row(pivotRow) * q;
    }
    ++pivotRow;
  }
  IntMat out(pivotRow, cols);
  for (int r = 0; r < pivotRow; ++r) out.row(r) = H.row(r);
  return out;
}

IntMat kernelZ(const IntMat& M) {
  // Row-reduce [M^T | I]; rows of the transform aligned with zero rows of
  // the reduced M^T form a saturated kernel basis.
  const int n = static_cast<int>(M.cols());   // ambient dimension
  const int k = static_cast<int>(M.rows());
  IntMat W(n, k + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) W(i, j) = M(j, i);
    for (int j = 0; j < n; ++j) W(i, k + j) = (i == j) ? 1 : 0;
  }
  // HNF restricted to the first k columns for pivoting.
  int pivotRow = 0;
  for (int c = 0; c < k && pivotRow < n; ++c) {
    int nz = -1;
    for (int r = pivotRow; r < n; ++r)
      if (W(r, c) != 0) {
        nz = r;
        break;
      }
    if (nz < 0) continue;
    if (nz != pivotRow) W.row(nz).swap(W.row(pivotRow));
    for (int r = pivotRow + 1; r < n; ++r) {
      if (W(r, c) == 0) continue;
      Int g, x, y;
      extGcd(W(pivotRow, c), W(r, c), g, x, y);
      Int a = W(pivotRow, c) / g, b = W(r, c) / g;
      for (int j = 0; j < k + n; ++j) {
        Int hp = W(pivotRow, j), hr = W(r, j);
        W(pivotRow, j) = x * hp + y * hr;
        W(r, j) = -b * hp + a * hr;
      }
    }
    ++pivotRow;
  }
  IntMat ker(n - pivotRow, n);
  for (int r = pivotRow; r < n; ++r)
    for (int j = 0; j < n; ++j) ker(r - pivotRow, j) = W(r, k + j);
  return ker;
}

SModule::SModule(PlaceSet S, RatMat generators)
    : S_(std::move(S)),
      m_(static_cast<int>(generators.rows())),
      r_(static_cast<int>(generators.cols())),
      diagonal_(true) {
  if (r_ > 0) {
    Eigen::FullPivLU<RatMat> lu(generators);
    lu.setThreshold(Rat(0));
    if (static_cast<int>(lu.rank()) != r_)
      throw std::invalid_argument("SModule: generators linearly dependent over Q");
  }
  gens_.assign(S_.ell(), generators);
}

SModule::SModule(PlaceSet S, std::vector<RatMat> perPlace) : S_(std::move(S)) {
  if (perPlace.empty() || static_cast<int>(perPlace.size()) != S_.ell())
    throw std::invalid_argument("SModule: one generator matrix per place required");
  m_ = static_cast<int>(perPlace[0].rows());
  r_ = static_cast<int>(perPlace[0].cols());
  diagonal_ = true;
  for (auto& g : perPlace) {
    if (static_cast<int>(g.rows()) != m_ || static_cast<int>(g.cols()) != r_)
      throw std::invalid_argument("SModule: per-place dimension mismatch");
    Eigen::FullPivLU<RatMat> lu(g);
    lu.setThreshold(Rat(0));
    if (static_cast<int>(lu.rank()) != r_)
      throw std::invalid_argument("SModule: generators dependent at a place");
    if (g != perPlace[0]) diagonal_ = false;
  }
  gens_ = std::move(perPlace);
}

const RatMat& SModule::generators(const Place& v) const {
  auto ps = S_.places();
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i] == v) return gens_[i];
  throw std::out_of_range("SModule::generators: place not in S");
}

const RatMat& SModule::diagonalGenerators() const {
  if (!diagonal_) throw std::logic_error("SModule: not a diagonal module");
  return gens_[0];
}

bool SModule::contains(const RatVec& x) const {
  const RatMat& A = diagonalGenerators();
  Eigen::FullPivLU<RatMat> lu(A);
  lu.setThreshold(Rat(0));
  RatVec c = lu.solve(x);
  RatVec resid = A * c - x;
  for (Eigen::Index i = 0; i < resid.size(); ++i)
    if (resid[i] != 0) return false;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!isSInteger(c[i], S_)) return false;
  return true;
}

bool SModule::isSubmoduleOfStandard() const {
  if (!diagonal_) return false;
  const RatMat& A = gens_[0];
  for (int j = 0; j < r_; ++j)
    for (int i = 0; i < m_; ++i)
      if (!isSInteger(A(i, j), S_)) return false;
  return true;
}

namespace {
// Scales column j by an S-unit so entries become coprime-to-S integers.
IntMat unitClearColumns(const RatMat& A, const PlaceSet& S) {
  const int m = static_cast<int>(A.rows()), r = static_cast<int>(A.cols());
  IntMat B(m, r);
  for (int j = 0; j < r; ++j) {
    Int den(1);
    for (int i = 0; i < m; ++i) {
      Int d;
      mpz_lcm(d.get_mpz_t(), den.get_mpz_t(), denominator(A(i, j)).get_mpz_t());
      den = d;
    }
    // den must be S-supported for a submodule of Z_S^m.
    Rat denR(den);
    if (!isSUnit(denR, S) && den != 1)
      throw NotSubmoduleError("saturate: generator denominators not supported on S");
    // Divide out the S-part of the gcd as well (another unit).
    IntVec col(m);
    Int g(0);
    for (int i = 0; i < m; ++i) {
      Rat e = A(i, j) * denR;
      col[i] = numerator(e);  // integral now
      g = gcdInt(g, col[i]);
    }
    Int sPart(1);
    if (g != 0) {
      for (long p : S.primes()) {
        Int rest;
        mpz_remove(rest.get_mpz_t(), g.get_mpz_t(), Int(p).get_mpz_t());
        sPart *= g / rest;
        g = rest;
      }
    }
    for (int i = 0; i < m; ++i) B(i, j) = col[i] / sPart;
  }
  return B;
}
}  // namespace

SModule saturate(const SModule& D) {
  if (!D.isDiagonal() || !D.isSubmoduleOfStandard())
    throw NotSubmoduleError("saturate: module is not a diagonal submodule of Z_S^m");
  const PlaceSet& S = D.placeSet();
  IntMat B = unitClearColumns(D.diagonalGenerators(), S);
  // Rows generate the Z-lattice; Z_S-saturation is the Z-saturation with
  // the primes of S inverted afterwards (they are units).
  IntMat rows = B.transpose();
  IntMat K = kernelZ(rows);    // (m - r) x m
  IntMat sat = kernelZ(K);     // r x m, saturated over Z
  RatMat out(D.ambientDim(), D.rank());
  for (int j = 0; j < D.rank(); ++j)
    for (int i = 0; i < D.ambientDim(); ++i) out(i, j) = Rat(sat(j, i));
  return SModule(S, out);
}

bool isPrimitive(const SModule& D) {
  SModule sat = saturate(D);
  // Same rank always; equal iff each saturated generator lies in D.
  for (int j = 0; j < sat.rank(); ++j) {
    RatVec col = sat.diagonalGenerators().col(j);
    if (!D.contains(col)) return false;
  }
  return true;
}

Rat covolumeSq(const SModule& D) {
  if (D.rank() == 0) throw RankZeroError();
  Rat c(1);
  auto ps = D.placeSet().places();
  for (size_t i = 0; i < ps.size(); ++i) {
    RatVec w = wedgeOfColumns(D.generators(ps[i]));
    if (ps[i].isArch()) {
      c *= euclidSqNorm(w);
    } else {
      Rat n = supNormP(w, ps[i].p);
      c *= n * n;
    }
  }
  return c;
}

Rat covolumeSq(const SModule& D, const SAdicMat& g) {
  if (D.rank() == 0) throw RankZeroError();
  if (!(g.S == D.placeSet())) throw std::invalid_argument("covolumeSq: place-set mismatch");
  Rat c(1);
  auto ps = D.placeSet().places();
  for (size_t i = 0; i < ps.size(); ++i) {
    RatVec w = wedgeOfColumns(g.at(ps[i]) * D.generators(ps[i]));
    if (ps[i].isArch()) {
      c *= euclidSqNorm(w);
    } else {
      Rat n = supNormP(w, ps[i].p);
      c *= n * n;
    }
  }
  return c;
}

double covolume(const SModule& D) { return std::sqrt(toDouble(covolumeSq(D))); }

std::pair<double, double> covolumeSqMixed(const SModule& D, const std::vector<RatMat>& gFinite,
                                          const MatrixXd& gArch) {
  if (D.rank() == 0) throw RankZeroError();
  const PlaceSet& S = D.placeSet();
  if (!S.hasArch()) throw std::invalid_argument("covolumeSqMixed: no archimedean place");
  Rat finPart(1);
  auto primes = S.primes();
  for (size_t i = 0; i < primes.size(); ++i) {
    RatVec w = wedgeOfColumns(gFinite[i] * D.generators(Place{primes[i]}));
    Rat n = supNormP(w, primes[i]);
    finPart *= n * n;
  }
  // Archimedean wedge in doubles with a propagated error bound.
  const RatMat& A = D.generators(Place::arch());
  MatrixXd Ad(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) Ad(i, j) = toDouble(A(i, j));
  MatrixXd B = gArch * Ad;
  const int m = static_cast<int>(B.rows()), r = static_cast<int>(B.cols());
  const auto& subs = indexSubsets(m, r);
  double sq = 0, sqErr = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& I : subs) {
    MatrixXd minor(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) minor(i, j) = B(I[i], j);
    double det = minor.determinant();
    // crude forward bound: r! * r^2 products of magnitude <= maxA^r
    double maxA = minor.cwiseAbs().maxCoeff();
    double fact = 1;
    for (int i = 2; i <= r; ++i) fact *= i;
    double errDet = fact * r * r * std::pow(std::max(maxA, 1.0), r) * eps * 8;
    sq += det * det;
    sqErr += 2 * std::abs(det) * errDet + errDet * errDet;
  }
  double fin = toDouble(finPart);
  return {sq * fin, (sqErr + sq * eps * 4) * fin};
}

SModule changeGenerators(const SModule& D, const RatMat& U) {
  std::vector<RatMat> gens;
  auto ps = D.placeSet().places();
  for (auto& v : ps) gens.push_back(D.generators(v) * U);
  return SModule(D.placeSet(), std::move(gens));
}

}  // namespace sadic
