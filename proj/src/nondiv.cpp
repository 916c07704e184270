#include <sadic/nondiv.hpp>

#include <cmath>
#include <thread>

namespace sadic {

bool PosetMap::isChain(const std::vector<int>& subset) const {
  for (size_t i = 0; i < subset.size(); ++i)
    for (size_t j = i + 1; j < subset.size(); ++j)
      if (!le[subset[i]][subset[j]] && !le[subset[j]][subset[i]]) return false;
  return true;
}

std::vector<int> PosetMap::comparableComplement(const std::vector<int>& chain) const {
  std::vector<int> out;
  for (int a = 0; a < size; ++a) {
    if (std::find(chain.begin(), chain.end(), a) != chain.end()) continue;
    bool cmp = true;
    for (int s : chain)
      if (!le[a][s] && !le[s][a]) {
        cmp = false;
        break;
      }
    if (cmp) out.push_back(a);
  }
  return out;
}

std::vector<std::vector<int>> PosetMap::allChains(long budget) const {
  std::vector<std::vector<int>> chains{{}};
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<long>(chains.size()) > budget) throw ChainBudgetError();
    for (int a = start; a < size; ++a) {
      bool ok = true;
      for (int s : cur)
        if (!le[a][s] && !le[s][a]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(a);
      chains.push_back(cur);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return chains;
}

std::vector<bool> markedSet(const PosetMap& poset, const std::vector<std::vector<Rat>>& psi,
                            const Rat& eps, const Rat& rho) {
  if (eps > rho) throw std::invalid_argument("markedSet: need eps <= rho");
  auto chains = poset.allChains();
  std::vector<std::vector<int>> complements;
  complements.reserve(chains.size());
  for (auto& ch : chains) complements.push_back(poset.comparableComplement(ch));

  std::vector<bool> marked(psi.size(), false);
  for (size_t z = 0; z < psi.size(); ++z) {
    const auto& vals = psi[z];
    for (size_t ci = 0; ci < chains.size() && !marked[z]; ++ci) {
      bool ok = true;
      for (int s : chains[ci]) {
        const Rat a = abs(vals[s]);
        if (a < eps || a > rho) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (int s : complements[ci])
        if (abs(vals[s]) < rho) {
          ok = false;
          break;
        }
      if (ok) marked[z] = true;
    }
  }
  return marked;
}

namespace {

/// Certified rho_vand: sup_{x in Z_p} |a_0 + sum a_i f_i(x)|_p >= rho ||a||_p
/// via the inverse norm of the interpolation matrix at x = 0..n.
Rat vandermondeRho(const std::vector<Poly>& f, long p) {
  const int n = static_cast<int>(f.size());
  RatMat M(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    M(k, 0) = 1;
    for (int i = 0; i < n; ++i) M(k, i + 1) = f[i](Rat(k));
  }
  Eigen::FullPivLU<RatMat> lu(M);
  lu.setThreshold(Rat(0));
  if (static_cast<int>(lu.rank()) != n + 1)
    throw ConditionIIError("condition (ii): interpolation points degenerate for the family");
  RatMat inv = M.inverse();
  Rat worst(0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (inv(i, j) == 0) continue;
      Rat a = powRat(p, -valuationQ(inv(i, j), p));
      if (a > worst) worst = a;
    }
  return Rat(1) / worst;
}

}  // namespace

NondivReport verifyNondivBound(const UyExperiment& exp) {
  NondivReport rep;
  const long p = exp.p;
  const int m = exp.n + 1;
  if (static_cast<int>(exp.f.size()) != exp.n)
    throw std::invalid_argument("verifyNondivBound: need n component polynomials");
  for (int j : exp.epsExps)
    if (powRat(p, -j) > exp.rho)
      throw std::invalid_argument("verifyNondivBound: eps > rho is out of contract");

  // Covering constants for X = Q_p (d = 1): N_X = 1, D_mu = D_lambda(3).
  SpaceSpec spec{0, {{p, 1}}};
  rep.nX = besicovitchBound(spec);
  rep.dMu = haarDoublingBound(spec, Rat(3));

  // Condition (ii) certificate: sup_x cov(h(x) Delta) >= rho_vand p^s e^{-t}
  // for every primitive Delta (all wedge coefficients reappear in the
  // 0-in-I block, and integer multivectors have content >= 1).
  double tTilde = 0;
  for (double ti : exp.t) tTilde += ti;
  Rat rhoVand = vandermondeRho(exp.f, p);
  rep.conditionIILogLower =
      PowerProduct::ofRat(rhoVand).log() + exp.s * std::log(static_cast<double>(p)) - tTilde;
  double logRho = PowerProduct::ofRat(exp.rho).log();
  if (compareWithSlack(rep.conditionIILogLower, logRho) < 0)
    throw ConditionIIError("condition (ii): certified lower bound below rho");

  // Grid scan.
  const Int mod = powInt(Int(p), static_cast<unsigned long>(exp.gridLevel));
  if (!mod.fits_slong_p()) throw std::invalid_argument("verifyNondivBound: grid too deep");
  const long npts = mod.get_si();
  rep.gridPoints = npts;

  const int nj = static_cast<int>(exp.epsExps.size());
  std::vector<long> countLo(nj, 0), countHi(nj, 0);

  int workers = std::max(1, exp.workers);
  std::vector<std::vector<long>> lo(workers, std::vector<long>(nj, 0)),
      hi(workers, std::vector<long>(nj, 0));
  auto work = [&](int w) {
    for (long x = w; x < npts; x += workers) {
      UyLattice L;
      L.primes = {p};
      L.n = exp.n;
      L.s = {exp.s};
      L.t = exp.t;
      RatVec y(exp.n);
      for (int i = 0; i < exp.n; ++i) y[i] = exp.f[i](Rat(x));
      L.yFinite = {y};
      auto res = uyDeltaScan(L, 0.0, true);
      for (int k = 0; k < nj; ++k) {
        double logEpsSq = -2.0 * exp.epsExps[k] * std::log(static_cast<double>(p));
        int cmp = compareWithSlack(res.logCSqMin, logEpsSq);
        if (cmp < 0) {
          ++lo[w][k];
          ++hi[w][k];
        } else if (cmp == 0) {
          ++hi[w][k];  // boundary: counted for the upper fraction only
        }
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  for (int w = 0; w < workers; ++w)
    for (int k = 0; k < nj; ++k) {
      countLo[k] += lo[w][k];
      countHi[k] += hi[w][k];
    }

  for (int k = 0; k < nj; ++k) {
    NondivRow row;
    row.epsExp = exp.epsExps[k];
    row.fractionLo = Rat(countLo[k]) / Rat(mod);
    row.fractionHi = Rat(countHi[k]) / Rat(mod);
    // rhs = m C (N_X D_mu^2)^m (eps/rho)^alpha
    PowerProduct rhs = PowerProduct::ofRat(Rat(m));
    rhs.mul(exp.cert.C);
    PowerProduct cov = PowerProduct::ofRat(Rat(rep.nX));
    PowerProduct dmu2 = rep.dMu;
    dmu2.pow(Rat(2));
    cov.mul(dmu2);
    cov.pow(Rat(m));
    rhs.mul(cov);
    rhs.mul(PowerProduct::of(powRat(p, -row.epsExp) / exp.rho, exp.cert.alpha));
    row.rhs = rhs.toDouble();
    row.pass = row.fractionHi == 0 || rhs.compare(row.fractionHi) >= 0;
    rep.rows.push_back(row);
  }
  return rep;
}

RatMat RegularMap::evalAt(int placeIdx, const Rat& x) const {
  RatMat g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = entries[placeIdx][i][j](x);
  return g;
}

SAdicMat RegularMap::evalAll(const std::vector<Rat>& x) const {
  SAdicMat g{S, m, {}};
  for (int v = 0; v < S.ell(); ++v) g.comp.push_back(evalAt(v, x[v]));
  return g;
}

void RegularMap::validateInverse() const {
  for (int v = 0; v < S.ell(); ++v) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Poly acc;
        for (int k = 0; k < m; ++k) acc = acc + entries[v][i][k] * invEntries[v][k][j];
        Poly expect = (i == j) ? Poly::constant(Rat(1)) : Poly();
        if (!(acc == expect))
          throw InvalidInputError("RegularMap: h * h^{-1} is not the identity");
      }
  }
}

namespace {

Poly polyDet(const std::vector<std::vector<Poly>>& M) {
  const int n = static_cast<int>(M.size());
  if (n == 1) return M[0][0];
  Poly det;
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (int i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = M[0][j] * polyDet(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// Wedge image coefficients of w under the compound of a polynomial matrix.
std::vector<Poly> polyCompoundApply(const std::vector<std::vector<Poly>>& h, int m, int r,
                                    const RatVec& w) {
  const auto& subs = indexSubsets(m, r);
  std::vector<Poly> out(subs.size());
  for (size_t a = 0; a < subs.size(); ++a) {
    Poly acc;
    for (size_t b = 0; b < subs.size(); ++b) {
      if (w[static_cast<Eigen::Index>(b)] == 0) continue;
      std::vector<std::vector<Poly>> minor(r, std::vector<Poly>(r));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) minor[i][j] = h[subs[a][i]][subs[b][j]];
      acc = acc + polyDet(minor) * w[static_cast<Eigen::Index>(b)];
    }
    out[a] = acc;
  }
  return out;
}

}  // namespace

DichotomyResult orbitDichotomy(const RegularMap& h, const std::vector<SLattice>& L,
                            const std::vector<std::vector<Rat>>& grid,
                            const std::vector<Rat>& epsSchedule, const GoodCert& cert) {
  if (L.empty()) throw InvalidInputError("orbitDichotomy: empty lattice list (tau undefined)");
  if (grid.empty()) throw InvalidInputError("orbitDichotomy: empty sample grid");
  h.validateInverse();
  const int m = h.m;

  // tau^2 = min over lattices and ranks of the minimal submodule covolume.
  Rat tauSq(-1);
  for (const auto& lat : L)
    for (int r = 1; r <= m; ++r) {
      Rat c = minCovSqOfRank(lat, r);
      if (tauSq < 0 || c < tauSq) tauSq = c;
    }

  // Case (i): some sample point carries h(x) Z_S^m into Q_tau.
  bool meets = false;
  for (const auto& x : grid) {
    SAdicMat hx = h.evalAll(x);
    SLattice moved{h.S, m, hx};
    DeltaResult d = deltaExact(moved);
    if (d.deltaSq >= tauSq) {
      meets = true;
      break;
    }
  }

  if (meets) {
    DichotomyCaseI out;
    out.tauSq = tauSq;
    out.alpha = cert.alpha;
    SpaceSpec spec{0, {}};
    // covering constants per finite place of S with one coordinate each;
    // archimedean coordinates contribute d0.
    auto ps = h.S.places();
    for (auto& v : ps) {
      if (v.isArch())
        spec.d0 += 1;
      else
        spec.ultra.emplace_back(v.p, 1);
    }
    Int nX = besicovitchBound(spec);
    PowerProduct dMu = haarDoublingBound(spec, Rat(3));
    double A = minkowskiDeltaConstant(h.S, m);
    PowerProduct c0 = PowerProduct::ofRat(Rat(m));
    c0.mul(cert.C);
    PowerProduct cov = PowerProduct::ofRat(Rat(nX));
    PowerProduct dmu2 = dMu;
    dmu2.pow(Rat(2));
    cov.mul(dmu2);
    cov.pow(Rat(m));
    c0.mul(cov);
    // (A^m / tau^m)^alpha with tau = sqrt(tauSq)
    PowerProduct tauPow = PowerProduct::of(tauSq, -cert.alpha * Rat(m) / 2);
    c0.mul(tauPow);
    double c0d = c0.toDouble() * std::pow(A, toDouble(cert.alpha) * m);
    out.c0 = c0d;
    for (const Rat& eps : epsSchedule) {
      long hits = 0;
      Rat epsSq = eps * eps;
      for (const auto& x : grid) {
        SAdicMat hx = h.evalAll(x);
        SLattice moved{h.S, m, hx};
        if (deltaExact(moved).deltaSq < epsSq) ++hits;
      }
      Rat fraction = Rat(hits) / Rat(static_cast<long>(grid.size()));
      double bound = c0d * std::exp(toDouble(cert.alpha) * PowerProduct::ofRat(eps).log());
      bool pass = toDouble(fraction) <= bound * (1 + 1e-12);
      out.table.emplace_back(eps, fraction, bound, pass);
    }
    return out;
  }

  // Case (ii): search primitive Delta with exactly constant span trajectory.
  // Candidates: submodules with small covolume in the image at the first
  // sample point (any globally-small trajectory must appear there).
  SAdicMat h0 = h.evalAll(grid.front());
  SLattice at0{h.S, m, h0};
  Rat tau = [&] {
    auto r = exactSqrt(tauSq);
    return r ? *r : Rat(floorSqrt(tauSq) + 1);
  }();
  for (int r = 1; r < m; ++r) {
    auto enumRes = enumerateSmallSubmodules(at0, tau, r);
    if (!enumRes.complete) continue;
    for (const auto& cand : enumRes.modules) {
      // Wedge coefficients of the trajectory per place; span constancy is
      // the vanishing of all cross products with the value at grid[0].
      bool constantSpan = true;
      bool literallyConstant = true;
      for (int v = 0; v < h.S.ell() && constantSpan; ++v) {
        RatVec wv = wedgeOfColumns(cand.module.diagonalGenerators());
        std::vector<Poly> F = polyCompoundApply(h.entries[v], m, r, wv);
        // value at the first sample point
        std::vector<Rat> F0(F.size());
        for (size_t i = 0; i < F.size(); ++i) F0[i] = F[i](grid.front()[v]);
        for (size_t i = 0; i < F.size() && constantSpan; ++i) {
          if (F[i].degree() > 0) literallyConstant = false;
          for (size_t j = i + 1; j < F.size(); ++j) {
            Poly cross = F[i] * F0[j] - F[j] * F0[i];
            if (!cross.isZero()) {
              constantSpan = false;
              break;
            }
          }
        }
      }
      if (constantSpan) return DichotomyCaseII{cand.module, literallyConstant};
    }
  }
  return DichotomyInconclusive{"no sample point met Q_tau and no constant-span candidate certified"};
}

}  // namespace sadic
