#include <sadic/lattice.hpp>

#include <cmath>

namespace sadic {

namespace {

Rat detExactQ(const RatMat& A) {
  Eigen::FullPivLU<RatMat> lu(A);
  lu.setThreshold(Rat(0));
  if (static_cast<int>(lu.rank()) != A.rows()) return Rat(0);
  Rat det(1);
  for (Eigen::Index i = 0; i < A.rows(); ++i) det *= lu.matrixLU()(i, i);
  return lu.permutationP().determinant() * lu.permutationQ().determinant() * det;
}

/// max over rows of the sum of |entries| (operator norm for sup-norm).
Rat maxRowAbsSum(const RatMat& A) {
  Rat best(0);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Rat s(0);
    for (Eigen::Index j = 0; j < A.cols(); ++j) s += abs(A(i, j));
    if (s > best) best = s;
  }
  return best;
}

/// max |entry|_p (operator norm on (Q_p^n, sup)).
Rat maxEntryPNorm(const RatMat& A, long p) {
  Rat best(0);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Rat a = powRat(p, -valuationQ(A(i, j), p));
      if (a > best) best = a;
    }
  return best;
}

bool gcdIsOne(const IntVec& q) {
  Int g(0);
  for (Eigen::Index i = 0; i < q.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q[i].get_mpz_t());
  return g == 1;
}

Rat contentSqOfImage(const SAdicMat& g, const IntVec& q) {
  Rat c(1);
  auto ps = g.S.places();
  RatVec qr(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) qr[i] = Rat(q[i]);
  for (size_t i = 0; i < ps.size(); ++i) {
    RatVec img = g.comp[i] * qr;
    if (ps[i].isArch()) {
      c *= euclidSqNorm(img);
    } else {
      Rat n = supNormP(img, ps[i].p);
      c *= n * n;
    }
    if (c == 0) return c;
  }
  return c;
}

/// Enumerates integer vectors q with ||q||_inf <= H, gcd 1, first nonzero
/// coordinate positive. Returns false if the budget was exhausted.
bool forEachPrimitive(int m, const Int& H, long budget,
                      const std::function<void(const IntVec&)>& fn) {
  if (H < 1) return true;
  if (!H.fits_slong_p()) return false;
  long h = H.get_si();
  double total = 1;
  for (int i = 0; i < m; ++i) total *= (2.0 * static_cast<double>(h) + 1.0);
  if (total > static_cast<double>(budget)) return false;
  IntVec q = IntVec::Constant(m, Int(-h));
  while (true) {
    bool zero = true;
    int firstNz = -1;
    for (int i = 0; i < m && firstNz < 0; ++i)
      if (q[i] != 0) {
        zero = false;
        firstNz = i;
      }
    if (!zero && q[firstNz] > 0 && gcdIsOne(q)) fn(q);
    int i = 0;
    for (; i < m; ++i) {
      if (q[i] < h) {
        q[i] += 1;
        break;
      }
      q[i] = -h;
    }
    if (i == m) break;
  }
  return true;
}

/// Visits primitive vectors with ||q||_inf exactly k (up to sign), keeping
/// a running budget of visited candidates.
bool forEachPrimitiveShell(int m, long k, long& budget,
                           const std::function<void(const IntVec&)>& fn) {
  IntVec q = IntVec::Constant(m, Int(-k));
  while (true) {
    bool onShell = false;
    for (int i = 0; i < m && !onShell; ++i) {
      Int a = abs(q[i]);
      if (a == k) onShell = true;
    }
    if (onShell) {
      if (--budget < 0) return false;
      int firstNz = -1;
      for (int i = 0; i < m && firstNz < 0; ++i)
        if (q[i] != 0) firstNz = i;
      if (firstNz >= 0 && q[firstNz] > 0 && gcdIsOne(q)) fn(q);
    }
    int i = 0;
    for (; i < m; ++i) {
      if (q[i] < k) {
        q[i] += 1;
        break;
      }
      q[i] = -k;
    }
    if (i == m) break;
  }
  return true;
}

}  // namespace

SLattice SLattice::standard(const PlaceSet& S, int m) {
  return SLattice{S, m, SAdicMat::identity(S, m)};
}

SLattice SLattice::fromDiagonalMatrix(const PlaceSet& S, const RatMat& g) {
  return SLattice{S, static_cast<int>(g.rows()), SAdicMat::diagonal(S, g)};
}

bool SLattice::unimodular() const {
  Rat c(1);
  auto ps = S.places();
  for (size_t i = 0; i < ps.size(); ++i) {
    Rat d = detExactQ(g.comp[i]);
    if (d == 0) return false;
    c *= valuation(d, ps[i]);
  }
  return c == 1;
}

namespace {

/// ||q||_inf bound such that every primitive q with c(gq)^2 <= boundSq
/// satisfies ||q||_inf <= H: from c(gq) >= ||q||_inf / (R_inf prod_p R_p).
Int certifiedRadius(const SLattice& L, const Rat& boundSq) {
  auto ps = L.S.places();
  Rat factor(1);
  for (size_t i = 0; i < ps.size(); ++i) {
    RatMat inv = L.g.comp[i].inverse();
    factor *= ps[i].isArch() ? maxRowAbsSum(inv) : maxEntryPNorm(inv, ps[i].p);
  }
  return floorSqrt(boundSq * factor * factor);
}

/// Rescales each basis column by an S-unit so its per-place norms are near
/// the content^{1/ell} balance point (unit-balancing normalization). A
/// right-multiplication by a diagonal unit matrix: the lattice and all
/// contents are unchanged, but the certified search radius stays tame for
/// unit-skewed bases.
SLattice balanceColumns(const SLattice& L) {
  const auto& primes = L.S.primes();
  if (primes.empty()) return L;
  auto ps = L.S.places();
  SLattice out = L;
  const double ell = L.S.ell();
  for (int j = 0; j < L.m; ++j) {
    double logc = 0;
    std::vector<double> logNorm(ps.size(), 0);
    for (size_t i = 0; i < ps.size(); ++i) {
      RatVec col = L.g.comp[i].col(j);
      Rat nSq = ps[i].isArch() ? euclidSqNorm(col) : [&] {
        Rat n = supNormP(col, ps[i].p);
        return Rat(n * n);
      }();
      logNorm[i] = 0.5 * PowerProduct::ofRat(nSq).log();
      logc += logNorm[i];
    }
    Rat xi(1);
    for (size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].isArch()) continue;
      double lp = std::log(static_cast<double>(ps[i].p));
      long e = std::lround((logNorm[i] - logc / ell) / lp);
      xi *= powRat(ps[i].p, e);
    }
    if (xi != 1)
      for (size_t i = 0; i < ps.size(); ++i) out.g.comp[i].col(j) *= xi;
  }
  return out;
}

}  // namespace

DeltaResult deltaExact(const SLattice& Lin, long budget) {
  if (!Lin.S.hasArch())
    throw std::invalid_argument("deltaExact: S must contain the archimedean place");
  SLattice L = balanceColumns(Lin);
  DeltaResult res;
  // Initial bound from the basis columns (e_i are primitive).
  for (int j = 0; j < L.m; ++j) {
    IntVec e = IntVec::Zero(L.m);
    e[j] = 1;
    Rat c = contentSqOfImage(L.g, e);
    if (j == 0 || c < res.deltaSq) {
      res.deltaSq = c;
      res.witness = e;
    }
  }
  // Shell-wise search: the certified radius shrinks as the minimum improves.
  long left = budget;
  long k = 1;
  res.certified = true;
  while (true) {
    Int H = certifiedRadius(L, res.deltaSq);
    if (Int(k) > H) break;
    if (!forEachPrimitiveShell(L.m, k, left, [&](const IntVec& q) {
          Rat c = contentSqOfImage(L.g, q);
          if (c < res.deltaSq) {
            res.deltaSq = c;
            res.witness = q;
          }
        })) {
      res.certified = false;  // best-so-far, radius not exhausted
      break;
    }
    ++k;
  }
  RatVec qr(L.m);
  for (int i = 0; i < L.m; ++i) qr[i] = Rat(res.witness[i]);
  res.witnessVector = L.g.apply(SAdicVec::diagonal(L.S, qr));
  return res;
}

bool inQEps(const SLattice& Lin, const Rat& eps, IntVec* witnessOut, long budget) {
  SLattice L = balanceColumns(Lin);
  Rat epsSq = eps * eps;
  Int H = certifiedRadius(L, epsSq);
  bool found = false;
  IntVec wit;
  bool complete = forEachPrimitive(L.m, H, budget, [&](const IntVec& q) {
    if (found) return;
    if (contentSqOfImage(L.g, q) < epsSq) {
      found = true;
      wit = q;
    }
  });
  if (!complete)
    throw SearchBudgetError("inQEps: uncertified at eps=" + formatRat(eps));
  if (found && witnessOut) *witnessOut = wit;
  return !found;
}

namespace {
// Rational lower bounds for the unit-ball volumes V_r, r <= 8.
Rat unitBallVolumeLower(int r) {
  static const Rat piLo(314159, 100000);
  Rat v(1);
  // V_r = pi^{r/2} / Gamma(r/2 + 1); recursion V_r = V_{r-2} * 2 pi / r.
  Rat v0(1), v1(2);
  if (r == 0) return v0;
  if (r == 1) return v1;
  Rat prev2 = v0, prev1 = v1;
  for (int k = 2; k <= r; ++k) {
    Rat cur = prev2 * 2 * piLo / Rat(k);
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}
}  // namespace

Rat ballVolumeLower(const PlaceSet& S, int r, const Rat& eps) {
  if (!S.hasArch()) throw std::invalid_argument("ballVolumeLower: archimedean place required");
  Rat v = unitBallVolumeLower(r);
  for (int i = 0; i < r; ++i) v *= eps;
  for (long p : S.primes()) {
    long e = floorLogP(eps, p);
    Rat f = powRat(p, e);
    for (int i = 0; i < r; ++i) v *= f;
  }
  return v;
}

Rat minkowskiRadius(const SModule& D) {
  Rat covSq = covolumeSq(D);
  const int r = D.rank();
  Rat target = powRat(2, r) * powRat(2, r);  // (2^r cov)^2 threshold in squares
  // Find eps with ballVolumeLower(eps)^2 >= 2^{2r} covSq by doubling/halving
  // then refine with a few bisection steps; round up slightly.
  auto volSqOk = [&](const Rat& eps) {
    Rat v = ballVolumeLower(D.placeSet(), r, eps);
    return v * v >= target * covSq;
  };
  Rat lo(0), hi(1);
  while (!volSqOk(hi)) hi *= 2;
  lo = hi / 2;
  for (int it = 0; it < 40; ++it) {
    Rat mid = (lo + hi) / 2;
    if (volSqOk(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi * Rat(65, 64);
}

SAdicVec minkowskiPoint(const SModule& D, const Rat& eps, long budget) {
  const PlaceSet& S = D.placeSet();
  if (!S.hasArch()) throw std::invalid_argument("minkowskiPoint: archimedean place required");
  const int r = D.rank();
  Rat vol = ballVolumeLower(S, r, eps);
  Rat covSq = covolumeSq(D);
  if (vol * vol < powRat(2, 2 * r) * covSq)
    throw PreconditionUnmetError("minkowskiPoint: ball volume below 2^r cov(Delta)");

  // Coefficient search: x = A_v c with c in Z_S^r; per-place norm bounds
  // translate into bounds on a denominator-cleared integer coefficient box.
  auto ps = S.places();
  // Left inverse per place via r independent rows.
  Rat archBound(0);
  std::vector<std::pair<long, long>> finiteVal;  // (p, min valuation of c_i)
  for (auto& v : ps) {
    const RatMat& A = D.generators(v);
    // Greedy selection of r linearly independent rows.
    RatMat sq(r, r);
    int got = 0;
    for (int row = 0; row < D.ambientDim() && got < r; ++row) {
      sq.row(got) = A.row(row);
      Eigen::FullPivLU<RatMat> lu(RatMat(sq.topRows(got + 1)));
      lu.setThreshold(Rat(0));
      if (static_cast<int>(lu.rank()) == got + 1) ++got;
    }
    if (got < r) throw std::logic_error("minkowskiPoint: generators not of full rank");
    RatMat inv = sq.inverse();
    if (v.isArch()) {
      archBound = maxRowAbsSum(inv) * eps;
    } else {
      Rat b = maxEntryPNorm(inv, v.p) * eps;  // ||c||_p <= b
      long e = b == 0 ? 0 : floorLogP(b, v.p);
      finiteVal.emplace_back(v.p, -e);  // v_p(c_i) >= -e
    }
  }
  // c_i = z_i / Q with Q = prod p^{e_p}; |z_i| <= archBound * Q.
  Rat Q(1);
  for (auto& [p, minv] : finiteVal)
    if (minv < 0) Q *= powRat(p, -minv);
  Int zBound = floorSqrt(archBound * Q * archBound * Q);
  Rat epsSq = eps * eps;

  SAdicVec out{S, D.ambientDim(), {}};
  bool found = false;
  bool complete = forEachPrimitive(r, zBound, budget, [&](const IntVec& z) {
    if (found) return;
    RatVec c(r);
    for (int i = 0; i < r; ++i) c[i] = Rat(z[i]) / Q;
    // check per-place norms
    for (size_t pi = 0; pi < ps.size(); ++pi) {
      RatVec img = D.generators(ps[pi]) * c;
      if (ps[pi].isArch()) {
        if (euclidSqNorm(img) > epsSq) return;
      } else {
        if (supNormP(img, ps[pi].p) > eps) return;
      }
    }
    found = true;
    out.comp.clear();
    for (size_t pi = 0; pi < ps.size(); ++pi) out.comp.push_back(D.generators(ps[pi]) * c);
  });
  if (!complete) throw SearchBudgetError("minkowskiPoint: coefficient box exceeds budget");
  if (!found)
    throw SearchBudgetError("minkowskiPoint: no point found despite volume bound (bug)");
  return out;
}

double minkowskiDeltaConstant(const PlaceSet& S, int m) {
  // delta(Lambda) <= A rho^{1/m} whenever some submodule has cov <= rho <= 1:
  // radius eps with V_r eps^r prod_p (eps/p)^r >= 2^r rho gives a point of
  // norm <= eps, content <= eps^ell; maximize over r <= m.
  double pprod = 1;
  for (long p : S.primes()) pprod *= static_cast<double>(p);
  double best = 0;
  for (int r = 1; r <= m; ++r) {
    double vr = toDouble(unitBallVolumeLower(r));
    double a = 2.0 * pprod / std::pow(vr, 1.0 / r);
    best = std::max(best, a);
  }
  return best * (1 + 1e-12);
}

EnumerationResult enumerateSmallSubmodules(const SLattice& L, const Rat& rho, int r, long budget) {
  EnumerationResult out;
  const int m = L.m;
  if (r < 1 || r > m) throw std::invalid_argument("enumerateSmallSubmodules: bad rank");
  Rat rhoSq = rho * rho;
  if (r == m) {
    SModule full(L.S, RatMat::Identity(m, m));
    Rat c = covolumeSq(full, L.g);
    if (c <= rhoSq) out.modules.push_back({full, c});
    out.complete = true;
    return out;
  }
  // Rank-one reduction in wedge-r coordinates.
  const auto& subs = indexSubsets(m, r);
  const int M = static_cast<int>(subs.size());
  SAdicMat gr{L.S, M, {}};
  for (auto& comp : L.g.comp) gr.comp.push_back(compoundMatrix(comp, r));
  SLattice wedgeLat{L.S, M, gr};
  Int H = certifiedRadius(wedgeLat, rhoSq);
  std::vector<IntVec> hits;
  bool complete = forEachPrimitive(M, H, budget, [&](const IntVec& w) {
    if (contentSqOfImage(gr, w) <= rhoSq) hits.push_back(w);
  });
  if (!complete) {
    out.complete = false;
    return out;
  }
  for (const auto& w : hits) {
    RatVec wr(M);
    for (int i = 0; i < M; ++i) wr[i] = Rat(w[i]);
    if (!isDecomposable(wr, m, r)) continue;
    RatMat span = spanOfDecomposable(wr, m, r);
    // Saturation depends only on the Q-span, so integerize columns freely.
    for (int j = 0; j < r; ++j) {
      Int den(1);
      for (int i = 0; i < m; ++i) {
        Int l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), denominator(span(i, j)).get_mpz_t());
        den = l;
      }
      for (int i = 0; i < m; ++i) span(i, j) *= Rat(den);
    }
    SModule delta = saturate(SModule(L.S, span));
    out.modules.push_back({delta, covolumeSq(delta, L.g)});
  }
  out.complete = true;
  return out;
}

Rat minCovSqOfRank(const SLattice& L, int r, long budget) {
  const int m = L.m;
  if (r == m) {
    SModule full(L.S, RatMat::Identity(m, m));
    return covolumeSq(full, L.g);
  }
  const auto& subs = indexSubsets(m, r);
  const int M = static_cast<int>(subs.size());
  SAdicMat gr{L.S, M, {}};
  for (auto& comp : L.g.comp) gr.comp.push_back(compoundMatrix(comp, r));

  // Upper bound from coordinate submodules, then certified enumeration.
  Rat best(-1);
  for (int j = 0; j < M; ++j) {
    IntVec e = IntVec::Zero(M);
    e[j] = 1;
    Rat c = contentSqOfImage(gr, e);  // e_J is decomposable
    if (best < 0 || c < best) best = c;
  }
  SLattice wedgeLat{L.S, M, gr};
  Int H = certifiedRadius(wedgeLat, best);
  bool complete = forEachPrimitive(M, H, budget, [&](const IntVec& w) {
    Rat c = contentSqOfImage(gr, w);
    if (c < best) {
      RatVec wr(M);
      for (int i = 0; i < M; ++i) wr[i] = Rat(w[i]);
      if (isDecomposable(wr, m, r)) best = c;
    }
  });
  if (!complete) throw SearchBudgetError("minCovSqOfRank: budget exceeded");
  return best;
}

}  // namespace sadic
