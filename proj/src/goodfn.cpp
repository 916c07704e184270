#include <sadic/goodfn.hpp>
#include <sadic/place.hpp>

#include <map>

namespace sadic {

std::string toString(CertProvenance p) {
  switch (p) {
    case CertProvenance::PolyUltrametric: return "poly-ultrametric";
    case CertProvenance::ProductRule: return "product-rule";
    case CertProvenance::MultiVariable: return "multi-variable";
    case CertProvenance::CkPinched: return "ck-pinched";
    case CertProvenance::TopQuotient: return "top-quotient";
    case CertProvenance::Empirical: return "empirical";
  }
  return "?";
}

GoodCert goodCertUltrametricPoly(int d, int k) {
  if (d < 1 || k < 1) throw InvalidParamsError("goodCertUltrametricPoly: need d,k >= 1");
  // C = d * k^{(3k-1)/k}, alpha = 1/(dk).
  PowerProduct C = PowerProduct::ofRat(Rat(d));
  C.mul(PowerProduct::of(Rat(k), Rat(3 * k - 1, k)));
  return GoodCert{C, Rat(1, static_cast<long>(d) * k),
                  d == 1 ? CertProvenance::TopQuotient : CertProvenance::PolyUltrametric, ""};
}

GoodCert goodCertProduct(const GoodCert& cx, const GoodCert& cy) {
  const Rat &a = cx.alpha, &b = cy.alpha;
  if (a <= 0 || b <= 0) throw InvalidParamsError("goodCertProduct: alphas must be positive");
  Rat gamma = a * b / (a + b);
  // E = (a+b) * ((C/b)^b (D/a)^a)^{1/(a+b)}
  PowerProduct inner = cx.C;
  inner.mul(PowerProduct::of(Rat(1) / b, Rat(1)));
  inner.pow(b);
  PowerProduct right = cy.C;
  right.mul(PowerProduct::of(Rat(1) / a, Rat(1)));
  right.pow(a);
  inner.mul(right);
  inner.pow(Rat(1) / (a + b));
  PowerProduct E = PowerProduct::ofRat(a + b);
  E.mul(inner);
  return GoodCert{E, gamma, CertProvenance::ProductRule, ""};
}

GoodCert goodCertMulti(const GoodCert& c, int d) {
  if (d < 1) throw InvalidParamsError("goodCertMulti: need d >= 1");
  PowerProduct C = PowerProduct::ofRat(Rat(d));
  C.mul(c.C);
  return GoodCert{C, c.alpha / d, CertProvenance::MultiVariable, c.region};
}

GoodCert goodCertCk(int d, int k, const Rat& Ck, const Rat& a, const Rat& A) {
  if (d < 1 || k < 1 || Ck <= 0 || a <= 0 || A < a)
    throw InvalidParamsError("goodCertCk: need d,k >= 1, Ck > 0, 0 < a <= A");
  PowerProduct C = PowerProduct::ofRat(Rat(d) * Ck);
  C.mul(PowerProduct::of(A / a, Rat(1, k)));
  return GoodCert{C, Rat(1, static_cast<long>(d) * k), CertProvenance::CkPinched, ""};
}

namespace {

// f = p^{jmin} f0 with f0 p-integral and some coefficient a p-unit.
long minCoeffValuation(const MultiPoly& f, long p) {
  bool first = true;
  long jmin = 0;
  for (auto& [e, a] : f.terms()) {
    long v = valuationQ(a, p);
    if (first || v < jmin) jmin = v;
    first = false;
  }
  return jmin;
}

// Coefficients of p^{-jmin} f reduced mod p^M (requires M >= 1).
std::map<MultiPoly::Expo, Int> reduceCoeffsMod(const MultiPoly& f, long p, long jmin, const Int& M) {
  std::map<MultiPoly::Expo, Int> out;
  for (auto& [e, a] : f.terms()) {
    Rat scaled = a * powRat(p, -jmin);
    Int num = numerator(scaled) % M, den = denominator(scaled) % M;
    if (num < 0) num += M;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
      throw std::logic_error("reduceCoeffsMod: denominator not invertible");
    out[e] = (num * inv) % M;
  }
  return out;
}

Int evalMod(const std::map<MultiPoly::Expo, Int>& coeffs, const IntVec& x, const Int& M) {
  Int v(0);
  for (auto& [e, a] : coeffs) {
    Int term = a;
    for (int i = 0; i < static_cast<int>(e.size()); ++i)
      for (int k = 0; k < e[i]; ++k) term = (term * x[i]) % M;
    v = (v + term) % M;
  }
  return v;
}

constexpr long kResidueBudget = 40'000'000;

}  // namespace

Rat sublevelMeasureP(const MultiPoly& f, const CylinderRegion& B, long k) {
  if (f.isZero()) return B.measure();
  const long p = B.p();
  long kp = k - minCoeffValuation(f, p);  // |f| < p^{-k}  <=>  |f0| < p^{-kp}
  if (kp < 0) return B.measure();
  int L = std::max(B.level(), static_cast<int>(kp) + 1);
  Int M = powInt(Int(p), static_cast<unsigned long>(kp + 1));
  if (B.residueCountAtLevel(L) > kResidueBudget)
    throw std::runtime_error("sublevelMeasureP: residue budget exceeded");
  auto coeffs = reduceCoeffsMod(f, p, minCoeffValuation(f, p), M);
  Int count(0);
  B.forEachResidueAtLevel(L, [&](const IntVec& x) {
    if (evalMod(coeffs, x, M) == 0) count += 1;
  });
  Rat meas(count);
  meas /= Rat(powInt(Int(p), static_cast<unsigned long>(L * B.dim())));
  return meas;
}

namespace {

// Interval evaluation of a polynomial on [a,b] with exact endpoints.
std::pair<Rat, Rat> polyRange(const Poly& f, const Rat& a, const Rat& b) {
  Rat lo(0), hi(0);
  bool first = true;
  // Horner on intervals.
  for (int k = f.degree(); k >= 0; --k) {
    if (first) {
      lo = hi = f.coeff(k);
      first = false;
      continue;
    }
    Rat c1 = lo * a, c2 = lo * b, c3 = hi * a, c4 = hi * b;
    Rat nlo = std::min(std::min(c1, c2), std::min(c3, c4));
    Rat nhi = std::max(std::max(c1, c2), std::max(c3, c4));
    lo = nlo + f.coeff(k);
    hi = nhi + f.coeff(k);
  }
  if (f.isZero()) return {Rat(0), Rat(0)};
  return {lo, hi};
}

void archRecurse(const Poly& f, const Rat& a, const Rat& b, const Rat& eps, int depth, Rat& lo,
                 Rat& hi) {
  auto [flo, fhi] = polyRange(f, a, b);
  // definitely inside: |f| < eps on the whole cell
  if (fhi < eps && flo > -eps) {
    lo += b - a;
    hi += b - a;
    return;
  }
  // definitely outside: |f| >= eps on the whole cell
  if (flo >= eps || fhi <= -eps) return;
  if (depth == 0) {
    hi += b - a;  // undecided
    return;
  }
  Rat mid = (a + b) / 2;
  archRecurse(f, a, mid, eps, depth - 1, lo, hi);
  archRecurse(f, mid, b, eps, depth - 1, lo, hi);
}

}  // namespace

ArchMeasureBounds sublevelMeasureArch(const Poly& f, const Rat& a, const Rat& b, const Rat& eps,
                                      const Rat& gapTol, int maxDepth) {
  if (b < a) throw std::invalid_argument("sublevelMeasureArch: empty interval");
  Rat lo(0), hi(0);
  archRecurse(f, a, b, eps, maxDepth, lo, hi);
  if (hi - lo > gapTol)
    throw ResolutionTooCoarseError("sublevelMeasureArch: gap " + formatRat(hi - lo) +
                                   " exceeds tolerance at depth " + std::to_string(maxDepth));
  return ArchMeasureBounds{lo, hi};
}

Rat supNormOnRegionP(const MultiPoly& f, const CylinderRegion& B, int capLevel) {
  if (f.isZero()) return Rat(0);
  const long p = B.p();
  const long jmin = minCoeffValuation(f, p);
  for (int v = 0; v <= capLevel; ++v) {
    int L = std::max(B.level(), v + 1);
    if (B.residueCountAtLevel(L) > kResidueBudget)
      throw std::runtime_error("supNormOnRegionP: residue budget exceeded");
    Int M = powInt(Int(p), static_cast<unsigned long>(v + 1));
    auto coeffs = reduceCoeffsMod(f, p, jmin, M);
    bool found = false;
    B.forEachResidueAtLevel(L, [&](const IntVec& x) {
      if (!found && evalMod(coeffs, x, M) != 0) found = true;
    });
    if (found) return powRat(p, -(jmin + v));
  }
  throw std::runtime_error("supNormOnRegionP: valuation exceeds cap level " +
                           std::to_string(capLevel));
}

CheckGoodReport checkGoodP(const MultiPoly& f, const CylinderRegion& U, const GoodCert& cert,
                           int maxBallLevel, int maxEpsExp, const SupportFilter& support) {
  CheckGoodReport rep;
  const long p = U.p();
  for (int L = U.level(); L <= maxBallLevel; ++L) {
    U.forEachResidueAtLevel(L, [&](const IntVec& rep0) {
      if (support && !support(rep0, L)) return;
      CylinderRegion ball = CylinderRegion::cylinder(p, L, rep0);
      Rat supf = supNormOnRegionP(f, ball);
      Rat muB = ball.measure();
      ++rep.ballsChecked;
      for (int j = 1; j <= maxEpsExp; ++j) {
        Rat eps = powRat(p, -j);
        Rat muSub = sublevelMeasureP(f, ball, j);
        ++rep.comparisons;
        if (muSub == 0) continue;
        if (supf == 0) continue;  // ||f|| = 0: inequality vacuous
        // muSub <= C (eps/supf)^alpha muB, exactly.
        PowerProduct rhs = cert.C;
        rhs.mul(PowerProduct::of(eps / supf, cert.alpha));
        rhs.mulRat(muB);
        double ratio = std::exp(PowerProduct::ofRat(muSub).log() - rhs.log());
        if (ratio > rep.worstRatio) {
          rep.worstRatio = ratio;
          rep.worstCase = "ball level " + std::to_string(L) + " eps p^-" + std::to_string(j);
        }
        if (rhs.compare(muSub) < 0) rep.pass = false;
      }
    });
  }
  return rep;
}

ComponentCountResult componentCountP(const Poly& f, const CylinderRegion& V, long epsExp) {
  ComponentCountResult res;
  const long p = V.p();
  if (V.dim() != 1) throw std::invalid_argument("componentCountP: univariate regions only");
  MultiPoly fm = MultiPoly::fromPoly(f);
  const int k = f.degree();
  res.preconditionVerified = k >= 1;  // Phi^k f is the leading coefficient

  long jmin = minCoeffValuation(fm, p);
  long kp = epsExp - jmin;
  int L;
  std::vector<Int> inside;
  if (kp < 0) {
    // the whole region is sublevel
    L = V.level();
    V.forEachResidueAtLevel(L, [&](const IntVec& x) { inside.push_back(x[0]); });
  } else {
    L = std::max(V.level(), static_cast<int>(kp) + 1);
    Int M = powInt(Int(p), static_cast<unsigned long>(kp + 1));
    if (V.residueCountAtLevel(L) > kResidueBudget)
      throw std::runtime_error("componentCountP: residue budget exceeded");
    auto coeffs = reduceCoeffsMod(fm, p, jmin, M);
    V.forEachResidueAtLevel(L, [&](const IntVec& x) {
      if (evalMod(coeffs, x, M) == 0) inside.push_back(x[0]);
    });
  }

  // Merge full sibling groups bottom-up; what remains maximal is counted.
  std::sort(inside.begin(), inside.end());
  long count = 0;
  std::vector<Int> cur = std::move(inside);
  for (int lev = L; lev > V.level(); --lev) {
    Int mod = powInt(Int(p), static_cast<unsigned long>(lev - 1));
    std::map<Int, std::vector<Int>> groups;
    for (auto& r : cur) groups[r % mod].push_back(r);
    std::vector<Int> next;
    for (auto& [parent, members] : groups) {
      if (static_cast<long>(members.size()) == p)
        next.push_back(parent);  // full group: merge into the parent cylinder
      else
        count += static_cast<long>(members.size());  // maximal at this level
    }
    cur = std::move(next);
  }
  count += static_cast<long>(cur.size());
  res.count = count;
  res.boundHolds = res.preconditionVerified && count <= k;
  return res;
}

namespace {
void expoRecurse(int d, int remaining, MultiPoly::Expo& e, const std::function<void()>& fn,
                 int pos = 0) {
  if (pos == d) {
    fn();
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    e[pos] = v;
    expoRecurse(d, remaining - v, e, fn, pos + 1);
  }
  e[pos] = 0;
}

int rankOfVectors(const std::vector<RatVec>& vs, int n) {
  if (vs.empty()) return 0;
  RatMat M(n, static_cast<int>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = vs[j];
  Eigen::FullPivLU<RatMat> lu(M);
  lu.setThreshold(Rat(0));
  return static_cast<int>(lu.rank());
}
}  // namespace

std::optional<int> nondegeneracyOrder(const std::vector<MultiPoly>& f, const RatVec& x0, int kmax) {
  const int n = static_cast<int>(f.size());
  const int d = f.empty() ? 0 : f[0].nvars();
  std::vector<RatVec> derivs;
  for (int k = 1; k <= kmax; ++k) {
    MultiPoly::Expo e(d, 0);
    expoRecurse(d, k, e, [&] {
      int total = 0;
      for (int v : e) total += v;
      if (total != k) return;
      RatVec vec(n);
      for (int i = 0; i < n; ++i) {
        MultiPoly g = f[i];
        for (int j = 0; j < d; ++j)
          for (int c = 0; c < e[j]; ++c) g = g.partial(j);
        vec[i] = g(x0);
      }
      derivs.push_back(std::move(vec));
    });
    if (rankOfVectors(derivs, n) == n) return k;
  }
  return std::nullopt;
}

std::optional<int> nondegeneracyOrderSampled(const std::function<RatVec(const Rat&)>& f,
                                             const Rat& x0, int kmax, const Rat& spacing) {
  std::vector<RatVec> derivs;
  const int n = static_cast<int>(f(x0).size());
  Rat fact(1);
  for (int k = 1; k <= kmax; ++k) {
    fact *= Rat(k);
    std::vector<Rat> pts;
    for (int i = 0; i <= k; ++i) pts.push_back(x0 + spacing * Rat(i));
    RatVec vec(n);
    for (int i = 0; i < n; ++i) {
      auto fi = [&](const Rat& x) { return f(x)[i]; };
      vec[i] = fact * diffQuotient(fi, pts);
    }
    derivs.push_back(std::move(vec));
    if (rankOfVectors(derivs, n) == n) return k;
  }
  return std::nullopt;
}

DifferenceTable differenceTable(const std::function<Rat(const Rat&)>& f, int order,
                                std::vector<std::vector<Rat>> tuples) {
  DifferenceTable t;
  t.order = order;
  for (auto& tup : tuples) {
    if (static_cast<int>(tup.size()) != order + 1)
      throw std::invalid_argument("differenceTable: tuple size must be order + 1");
    Rat v = diffQuotient(f, tup);
    std::vector<Rat> rev(tup.rbegin(), tup.rend());
    if (diffQuotient(f, rev) != v)
      throw std::logic_error("differenceTable: symmetry violation");
    t.tuples.push_back(std::move(tup));
    t.values.push_back(std::move(v));
  }
  return t;
}

std::optional<bool> diffQuotientDominance(const std::function<Rat(const Rat&)>& f, long p,
                                          const std::vector<Rat>& x, const Rat& y) {
  const int k = static_cast<int>(x.size());
  if (k < 2) throw std::invalid_argument("diffQuotientDominance: need k >= 2");
  Place vp = Place::finite(p);
  auto A = [&](const Rat& q) { return valuation(q, vp); };
  auto phi = [&](std::vector<Rat> pts) { return diffQuotient(f, std::move(pts)); };

  // y no farther from x_k than any x_i
  for (int i = 0; i < k - 1; ++i)
    if (A(y - x[k - 1]) > A(x[i] - x[k - 1])) return std::nullopt;
  // quotient ordering along shifted windows, i = 2..k
  for (int i = 2; i <= k; ++i) {
    std::vector<Rat> hi(x.begin() + (i - 1), x.end());
    std::vector<Rat> lo(x.begin() + (i - 2), x.end() - 1);
    if (A(phi(hi)) < A(phi(lo))) return std::nullopt;
  }
  // top quotient dominates the y-substituted one
  std::vector<Rat> full(x.begin(), x.end());
  std::vector<Rat> swapped(x.begin(), x.end() - 1);
  swapped.push_back(y);
  if (A(phi(full)) < A(phi(swapped))) return std::nullopt;

  return A(f(y)) <= std::max(A(f(x[k - 1])), A(f(x[k - 2])));
}

}  // namespace sadic
