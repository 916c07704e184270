#include <sadic/uy_scanner.hpp>

#include <cmath>

namespace sadic {

namespace {

Int gcdAll(const IntVec& q) {
  Int g(0);
  for (Eigen::Index i = 0; i < q.size(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q[i].get_mpz_t());
  return g;
}

/// norm^2 at the j-th finite place: max(p^{s_j} |L_j(qt)|_p, max_i |q_i|_p)^2.
Rat finiteNormSq(const UyLattice& L, size_t j, const IntVec& qt) {
  const long p = L.primes[j];
  Rat lin(qt[0]);
  for (int i = 0; i < L.n; ++i) lin += Rat(qt[i + 1]) * L.yFinite[j][i];
  Rat nl = lin == 0 ? Rat(0) : powRat(p, -valuationQ(lin, p) + L.s[j]);
  for (int i = 0; i < L.n; ++i) {
    if (qt[i + 1] == 0) continue;
    Rat a = powRat(p, -valuationZ(qt[i + 1], p));
    if (a > nl) nl = a;
  }
  return nl * nl;
}

double logRat(const Rat& q) { return PowerProduct::ofRat(q).log(); }

}  // namespace

double uyLogContentSq(const UyLattice& L, const IntVec& qt) {
  long double archSq = 0;
  std::vector<long double> et(L.m());
  for (int i = 0; i < L.m(); ++i) et[i] = std::exp((long double)L.t[i]);
  long double c0 = (long double)toDouble(qt[0]);
  if (L.yArch) {
    for (int i = 0; i < L.n; ++i) c0 += (long double)toDouble(Rat(qt[i + 1]) * (*L.yArch)[i]);
  }
  archSq += (c0 / et[0]) * (c0 / et[0]);
  for (int i = 1; i < L.m(); ++i) {
    long double v = (long double)toDouble(qt[i]) / et[i];
    archSq += v * v;
  }
  double logFin = 0;
  for (size_t j = 0; j < L.primes.size(); ++j) logFin += logRat(finiteNormSq(L, j, qt));
  if (archSq == 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::log(archSq)) + logFin;
}

int compareWithSlack(double logValue, double logThreshold, double slack) {
  double margin = slack * std::max(1.0, std::abs(logThreshold)) + 4 * slack;
  if (logValue < logThreshold - margin) return -1;
  if (logValue > logThreshold + margin) return 1;
  return 0;
}

namespace {

/// One complete pass at a fixed cutoff (log of content^2). Profiles of the
/// finite-place valuations of the top coordinate are scanned outermost;
/// each contributes a small box of q together with CRT-lifted candidates
/// for q0 inside the archimedean window. boxCap truncates boxes for the
/// cheap presearch pass.
void scanPass(const UyLattice& L, double cutoff, long boxCap, long& budget,
              const std::function<void(const IntVec&)>& consider) {
  const int n = L.n;
  const size_t nf = L.primes.size();
  const double halfCutoff = cutoff / 2;

  std::vector<long> W(nf, 0);
  IntVec qt = IntVec::Zero(n + 1);
  while (true) {  // profile odometer
    double logPf = 0;
    for (size_t j = 0; j < nf; ++j) logPf += (L.s[j] - W[j]) * std::log((double)L.primes[j]);

    // per-profile box for the lower coordinates
    std::vector<long> bound(n, 0);
    for (int i = 1; i <= n; ++i) {
      double b = std::exp(L.t[i] + halfCutoff - logPf) * (1 + 1e-9);
      if (b > 2e18) throw std::runtime_error("uyDeltaScan: box bound overflow");
      bound[i - 1] = std::min(boxCap > 0 ? boxCap : (long)2e18, (long)std::floor(b));
    }

    Int mod(1);
    std::vector<Int> pW(nf);
    for (size_t j = 0; j < nf; ++j) {
      pW[j] = powInt(Int(L.primes[j]), static_cast<unsigned long>(W[j]));
      mod *= pW[j];
    }
    double q0Half = std::exp(L.t[0] + halfCutoff - logPf) * (1 + 1e-9) + 1e-12;
    if (boxCap > 0) q0Half = std::min(q0Half, (double)boxCap * toDouble(mod) + 2);

    // odometer over q in the per-profile box
    std::vector<long> q(n);
    for (int i = 0; i < n; ++i) q[i] = -bound[i];
    while (true) {
      for (int i = 0; i < n; ++i) qt[i + 1] = q[i];
      // CRT congruence for q0 across the profile moduli
      Int rem(0), curMod(1);
      bool feasible = true;
      for (size_t j = 0; j < nf && feasible; ++j) {
        if (W[j] == 0) continue;
        Rat lin(0);
        for (int i = 0; i < n; ++i) lin += Rat(qt[i + 1]) * L.yFinite[j][i];
        Int den = denominator(lin) % pW[j], num = numerator(lin) % pW[j];
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pW[j].get_mpz_t()) == 0) {
          feasible = false;
          break;
        }
        Int target = (-(num * inv)) % pW[j];
        if (target < 0) target += pW[j];
        Int g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), curMod.get_mpz_t(),
                   pW[j].get_mpz_t());
        Int newMod = curMod * pW[j];
        Int x = (rem * v % newMod) * pW[j] % newMod + (target * u % newMod) * curMod % newMod;
        x %= newMod;
        if (x < 0) x += newMod;
        rem = x;
        curMod = newMod;
      }
      if (feasible) {
        double center = 0;
        if (L.yArch) {
          Rat c(0);
          for (int i = 0; i < n; ++i) c -= Rat(qt[i + 1]) * (*L.yArch)[i];
          center = toDouble(c);
        }
        double lo = center - q0Half, hi = center + q0Half;
        Int kLo, kHi;
        {
          Rat loR = Rat(static_cast<long>(std::floor(lo)) - 1);
          Rat hiR = Rat(static_cast<long>(std::ceil(hi)) + 1);
          Rat kLoR = (loR - Rat(rem)) / Rat(curMod);
          Rat kHiR = (hiR - Rat(rem)) / Rat(curMod);
          mpz_fdiv_q(kLo.get_mpz_t(), numerator(kLoR).get_mpz_t(), denominator(kLoR).get_mpz_t());
          mpz_cdiv_q(kHi.get_mpz_t(), numerator(kHiR).get_mpz_t(), denominator(kHiR).get_mpz_t());
        }
        for (Int k = kLo; k <= kHi; k += 1) {
          if (--budget < 0) throw std::runtime_error("uyDeltaScan: search budget exceeded");
          qt[0] = rem + k * curMod;
          bool anyNz = qt[0] != 0;
          for (int i = 1; i <= n && !anyNz; ++i) anyNz = qt[i] != 0;
          if (!anyNz) continue;
          if (gcdAll(qt) != 1) continue;
          consider(qt);
        }
      }
      int i = 0;
      for (; i < n; ++i) {
        if (q[i] < bound[i]) {
          ++q[i];
          break;
        }
        q[i] = -bound[i];
      }
      if (i == n || n == 0) break;
    }

    size_t j = 0;
    for (; j < nf; ++j) {
      if (W[j] < L.s[j]) {
        ++W[j];
        break;
      }
      W[j] = 0;
    }
    if (j == nf) break;
  }
}

}  // namespace

UyDeltaResult uyDeltaScan(const UyLattice& L, double logTarget, bool minimize, long budget) {
  UyDeltaResult res;
  auto consider = [&](const IntVec& qt) {
    ++res.candidates;
    double lc = uyLogContentSq(L, qt);
    if (!res.found || lc < res.logCSqMin) {
      res.logCSqMin = lc;
      res.witness = qt;
      res.found = true;
    }
  };

  double cutoff = logTarget;
  if (minimize) {
    for (int i = 0; i < L.m(); ++i) {
      IntVec e = IntVec::Zero(L.m());
      e[i] = 1;
      consider(e);
    }
    // cheap presearch with truncated boxes to tighten the cutoff before the
    // complete pass
    long preBudget = std::min<long>(budget / 4, 200000);
    try {
      scanPass(L, res.logCSqMin + 1e-7, 3, preBudget, consider);
    } catch (const std::runtime_error&) {
      // presearch truncation is harmless; the full pass decides
    }
    cutoff = res.logCSqMin + 1e-7;
  }

  scanPass(L, cutoff, 0, budget, consider);
  res.certified = true;
  return res;
}

}  // namespace sadic
