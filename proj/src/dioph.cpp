#include <sadic/dioph.hpp>

#include <cmath>
#include <thread>

namespace sadic {

YVector YVector::exact(const PlaceSet& S, std::vector<RatVec> comp) {
  YVector y;
  y.S = S;
  y.n = static_cast<int>(comp.at(0).size());
  y.comp = std::move(comp);
  y.tailVal.assign(y.comp.size(), kNoTail);
  return y;
}

const RatVec& YVector::at(const Place& v) const {
  auto ps = S.places();
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i] == v) return comp[i];
  throw std::out_of_range("YVector: place not in S");
}

YVector liouvilleVector(long p, int kMax) {
  Rat sum(0);
  unsigned long e = 1;
  for (int k = 0; k <= kMax; ++k) {
    sum += Rat(powInt(Int(p), e));
    e *= 4;
  }
  YVector y;
  y.S = PlaceSet(false, {p});
  y.n = 1;
  RatVec c(1);
  c[0] = sum;
  y.comp = {c};
  y.tailVal = {static_cast<long>(e)};  // 4^{kMax+1}
  return y;
}

SAdicMat uMatrix(const YVector& y, bool archMode) {
  PlaceSet latticeS = archMode ? y.S : y.S.withArch();
  if (archMode && !y.S.hasArch())
    throw std::invalid_argument("uMatrix: arch mode needs the archimedean place in S");
  const int m = y.n + 1;
  SAdicMat u{latticeS, m, {}};
  auto ps = latticeS.places();
  for (auto& v : ps) {
    RatMat block = RatMat::Identity(m, m);
    bool fill = !v.isArch() || archMode;
    if (fill) {
      const RatVec& yv = y.at(v);
      for (int i = 0; i < y.n; ++i) block(0, i + 1) = yv[i];
    }
    u.comp.push_back(block);
  }
  return u;
}

PlaceAbs dotAbsAt(const YVector& y, size_t placeIdx, const IntVec& qt) {
  auto ps = y.S.places();
  const Place v = ps[placeIdx];
  Rat dot(qt[0]);
  for (int i = 0; i < y.n; ++i) dot += Rat(qt[i + 1]) * y.comp[placeIdx][i];
  PlaceAbs out;
  long tail = y.tailVal[placeIdx];
  if (v.isArch()) {
    out.value = abs(dot);
    out.exact = true;
    return out;
  }
  // with a tail bound T, the value is exact iff v_p(exact part) < T
  if (dot == 0) {
    if (tail == YVector::kNoTail) {
      out.value = Rat(0);
      out.exact = true;
    } else {
      bool qZero = true;
      for (int i = 0; i < y.n; ++i) qZero = qZero && qt[i + 1] == 0;
      out.value = qZero ? Rat(0) : powRat(v.p, -tail);
      out.exact = qZero;
    }
    return out;
  }
  long val = valuationQ(dot, v.p);
  if (tail != YVector::kNoTail && val >= tail) {
    out.value = powRat(v.p, -tail);
    out.exact = false;
  } else {
    out.value = powRat(v.p, -val);
    out.exact = true;
  }
  return out;
}

Rat piPlus(const IntVec& v) {
  Rat out(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Int a = abs(v[i]);
    if (a > 1) out *= Rat(a);
  }
  return out;
}

namespace {

struct DotSummary {
  Rat sAbs;      // max_v
  Rat content;   // prod_v
  bool exact;
  bool zero;     // exactly zero at every place
};

DotSummary summarize(const YVector& y, const IntVec& qt) {
  DotSummary s{Rat(0), Rat(1), true, true};
  for (size_t i = 0; i < y.comp.size(); ++i) {
    PlaceAbs a = dotAbsAt(y, i, qt);
    s.exact = s.exact && a.exact;
    if (a.value > s.sAbs) s.sAbs = a.value;
    s.content *= a.value;
    if (a.value != 0 || !a.exact) s.zero = false;
  }
  return s;
}

Rat heightSq(const IntVec& qt, bool dropQ0) {
  Rat h(0);
  for (Eigen::Index i = dropQ0 ? 1 : 0; i < qt.size(); ++i) h += Rat(qt[i] * qt[i]);
  return h;
}

/// Exact test  value^ell <= height^{-(n+iS)(1+eps)}  (heights via squares).
bool vwaInequality(const Rat& sAbs, const Rat& hSq, int ell, int n, int iS, const Rat& eps) {
  if (sAbs == 0) return false;
  PowerProduct lhs = PowerProduct::of(sAbs, Rat(ell));
  PowerProduct rhs = PowerProduct::of(hSq, -Rat(n + iS) * (1 + eps) / 2);
  return lhs.compare(rhs) <= 0;
}

/// Exact multiplicative test: content <= Pi_+(q)^{-(1+eps)} |q0|_+^{-(iS+eps)}.
bool vwmaInequality(const Rat& content, const IntVec& qt, int iS, const Rat& eps) {
  if (content == 0) return false;
  IntVec q = qt.tail(qt.size() - 1);
  PowerProduct rhs = PowerProduct::of(piPlus(q), -(1 + eps));
  Int q0 = abs(qt[0]);
  if (q0 > 1) rhs.mul(PowerProduct::of(Rat(q0), -(Rat(iS) + eps)));
  return PowerProduct::ofRat(content).compare(rhs) <= 0;
}

long floorLogPP(const PowerProduct& cap, long p) {
  double est = cap.log() / std::log(static_cast<double>(p));
  long s = static_cast<long>(std::floor(est));
  if (s < 0) s = 0;
  auto le = [&](long e) {
    return PowerProduct::of(Rat(p), Rat(e)).compare(cap) <= 0;
  };
  while (!le(s) && s > 0) --s;
  while (le(s + 1)) ++s;
  return s;
}

}  // namespace

bool isVwaHit(const YVector& y, const IntVec& qt, const Rat& eps) {
  DotSummary s = summarize(y, qt);
  if (s.zero) return false;
  Rat h = heightSq(qt, y.S.hasArch());
  if (h == 0) return false;
  return vwaInequality(s.sAbs, h, y.S.ell(), y.n, y.S.iS(), eps);
}

bool isVwmaHit(const YVector& y, const IntVec& qt, const Rat& eps) {
  DotSummary s = summarize(y, qt);
  if (s.zero) return false;
  return vwmaInequality(s.content, qt, y.S.iS(), eps);
}

ScanResult diophScan(const YVector& y, ScanMode mode, long N, const Rat& eps, int workers) {
  ScanResult res;
  res.psiMin = Rat(-1);
  const bool arch = y.S.hasArch();
  const int n = y.n;
  const int iS = y.S.iS();
  const int ell = y.S.ell();

  auto process = [&](const IntVec& qt, ScanResult& acc) {
    ++acc.enumerated;
    DotSummary s = summarize(y, qt);
    if (s.zero) {
      acc.exactZeros.push_back(qt);
      return;
    }
    if (s.sAbs > 0 && (acc.psiMin < 0 || s.sAbs < acc.psiMin)) acc.psiMin = s.sAbs;
    Rat h = heightSq(qt, arch);
    bool hit = false;
    if (h > 0) {
      hit = mode == ScanMode::VWA ? vwaInequality(s.sAbs, h, ell, n, iS, eps)
                                  : vwmaInequality(s.content, qt, iS, eps);
    }
    if (hit) {
      ApproxWitness w;
      w.qt = qt;
      w.absValue = s.sAbs;
      w.contentValue = s.content;
      w.valueExact = s.exact;
      w.hit = true;
      double logH = 0.5 * PowerProduct::ofRat(h).log();
      w.exponent = logH > 0 && s.sAbs > 0
                       ? -ell * PowerProduct::ofRat(s.sAbs).log() / logH
                       : 0;
      acc.hits.push_back(std::move(w));
    }
  };

  const int dim = arch ? n : n + 1;
  std::vector<ScanResult> parts(std::max(1, workers));
  long total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= 2 * N + 1;
    if (total > 400'000'000) throw std::invalid_argument("diophScan: height budget");
  }
  int nw = std::max(1, workers);
  auto work = [&](int w) {
    ScanResult& acc = parts[w];
    acc.psiMin = Rat(-1);
    IntVec v = IntVec::Constant(dim, Int(-N));
    long index = 0;
    while (true) {
      bool zero = true;
      int firstNz = -1;
      for (int i = 0; i < dim && firstNz < 0; ++i)
        if (v[i] != 0) {
          zero = false;
          firstNz = i;
        }
      if (!zero && v[firstNz] > 0 && index % nw == w) {
        if (!arch) {
          process(v, acc);
        } else {
          // choose q0 near -y^(inf) . q; try the neighbors for the
          // multiplicative trade-off as well
          Rat dot(0);
          const RatVec& yi = y.at(Place::arch());
          for (int i = 0; i < n; ++i) dot += Rat(v[i]) * yi[i];
          Int q0base;
          Rat nd = -dot;
          mpz_fdiv_q(q0base.get_mpz_t(), numerator(nd).get_mpz_t(), denominator(nd).get_mpz_t());
          for (Int q0 = q0base - 1; q0 <= q0base + 2; q0 += 1) {
            IntVec qt(n + 1);
            qt[0] = q0;
            for (int i = 0; i < n; ++i) qt[i + 1] = v[i];
            process(qt, acc);
          }
        }
      }
      ++index;
      int i = 0;
      for (; i < dim; ++i) {
        if (v[i] < N) {
          v[i] += 1;
          break;
        }
        v[i] = -N;
      }
      if (i == dim) break;
    }
  };
  if (nw == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < nw; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& part : parts) {
    res.enumerated += part.enumerated;
    for (auto& h : part.hits) res.hits.push_back(h);
    for (auto& z : part.exactZeros) res.exactZeros.push_back(z);
    if (part.psiMin >= 0 && (res.psiMin < 0 || part.psiMin < res.psiMin))
      res.psiMin = part.psiMin;
  }
  std::sort(res.hits.begin(), res.hits.end(), [](const ApproxWitness& a, const ApproxWitness& b) {
    for (Eigen::Index i = 0; i < a.qt.size(); ++i) {
      if (a.qt[i] != b.qt[i]) return a.qt[i] < b.qt[i];
    }
    return false;
  });
  if (res.psiMin > 0)
    res.omegaHat = -ell * PowerProduct::ofRat(res.psiMin).log() / std::log(static_cast<double>(N));
  return res;
}

EmbedParams dirichletEmbed(const YVector& y, const IntVec& qt, const Rat& eps, bool archMode) {
  EmbedParams out;
  const int n = y.n;
  if (eps <= 0) throw std::invalid_argument("dirichletEmbed: eps must be positive");
  if (qt.size() != n + 1) throw std::invalid_argument("dirichletEmbed: witness size mismatch");
  DotSummary dot = summarize(y, qt);
  if (!dot.exact)
    throw PreconditionUnmetError("dirichletEmbed: |ytilde.qtilde| not exact (tail bound hit)");

  const std::vector<long>& primes = y.S.primes();
  auto ps = y.S.places();
  std::vector<size_t> finiteIdx;
  size_t archIdx = 0;
  for (size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].isArch())
      archIdx = i;
    else
      finiteIdx.push_back(i);
  }

  std::vector<PowerProduct> expT(n + 1);
  PowerProduct expTtilde;
  Rat gamma;
  double logBoundExponent = 0;  // gamma * (ttilde or t)

  if (!archMode) {
    if (y.S.hasArch())
      throw std::invalid_argument("dirichletEmbed: finite mode needs finite-only S");
    // multiplicative inequality: c <= Pi_+(qtilde)^{-(1+eps)}
    Rat pi = piPlus(qt);
    if (dot.content != 0 &&
        PowerProduct::ofRat(dot.content).compare(PowerProduct::of(pi, -(1 + eps))) > 0)
      throw PreconditionUnmetError(
          "dirichletEmbed: witness fails the multiplicative inequality");
    gamma = eps / (Rat(n + 1) * (1 + eps));
    for (int i = 0; i <= n; ++i) {
      Int qi = abs(qt[i]);
      PowerProduct e = PowerProduct::of(pi, eps / Rat(n + 1));
      if (qi > 1) e.mul(PowerProduct::ofRat(Rat(qi)));
      expT[i] = e;
      out.t.push_back(e.log());
    }
    expTtilde = PowerProduct::of(pi, 1 + eps);  // product of the t-defining equalities
    logBoundExponent = toDouble(gamma) * expTtilde.log();
  } else {
    if (!y.S.hasArch())
      throw std::invalid_argument("dirichletEmbed: arch mode needs the archimedean place");
    // multiplicative inequality and the q0 height gate
    IntVec q = qt.tail(n);
    Rat piQ = piPlus(q);
    PowerProduct rhs = PowerProduct::of(piQ, -(1 + eps));
    Int q0a = abs(qt[0]);
    if (q0a > 1) rhs.mul(PowerProduct::of(Rat(q0a), -eps));
    if (dot.content != 0 && PowerProduct::ofRat(dot.content).compare(rhs) > 0)
      throw PreconditionUnmetError(
          "dirichletEmbed: witness fails the multiplicative inequality");
    const RatVec& yArch = y.at(Place::arch());
    Rat yNorm(0);
    for (int i = 0; i < n; ++i) yNorm = std::max(yNorm, Rat(abs(yArch[i])));
    Rat lhs12(qt[0] * qt[0]);
    Rat bound12 = (1 + Rat(n) * yNorm) * (1 + Rat(n) * yNorm) * heightSq(qt, true);
    if (lhs12 > bound12)
      throw PreconditionUnmetError("dirichletEmbed: witness fails the q0 height gate");

    gamma = eps / (Rat(n + 1) + Rat(n) * eps);
    std::vector<PowerProduct> e(n + 1);
    PowerProduct expt = PowerProduct::of(piQ, 1 + Rat(n) * eps / Rat(n + 1));  // e^t
    PowerProduct expMinusGammaT = PowerProduct::of(piQ, -eps / Rat(n + 1));
    for (int i = 1; i <= n; ++i) {
      Int qi = abs(qt[i]);
      PowerProduct ei = PowerProduct::of(piQ, eps / Rat(n + 1));
      if (qi > 1) ei.mul(PowerProduct::ofRat(Rat(qi)));
      e[i] = ei;
    }
    // e^{-t_0} = min(e^t, e^{-gamma t} / |ytilde.qtilde|_inf)
    PlaceAbs archDot = dotAbsAt(y, archIdx, qt);
    PowerProduct expMinusT0 = expt;
    if (archDot.value != 0) {
      PowerProduct alt = expMinusGammaT;
      alt.mul(PowerProduct::of(Rat(1) / archDot.value, Rat(1)));
      if (alt.compare(expMinusT0) < 0) expMinusT0 = alt;
    }
    // t_0 window: -t <= t_0 <= t + ln(1 + 2n||y||)
    PowerProduct expT0 = expMinusT0.inverse();
    bool lowerOk = expMinusT0.compare(expt) <= 0;
    PowerProduct upperRhs = expt;
    upperRhs.mulRat(1 + 2 * Rat(n) * yNorm);
    bool upperOk = expT0.compare(upperRhs) <= 0;
    out.archT0Window = lowerOk && upperOk;

    e[0] = expT0;
    expTtilde = expT0;
    for (int i = 1; i <= n; ++i) expTtilde.mul(e[i]);
    for (int i = 0; i <= n; ++i) {
      expT[i] = e[i];
      out.t.push_back(e[i].log());
    }
    logBoundExponent = toDouble(gamma) * expt.log();  // gamma * t
  }

  // s_j from the inductive window rule, exactly in log space.
  PowerProduct quotient = expTtilde;
  const std::vector<long>& pr = primes;
  for (size_t j = 0; j < pr.size(); ++j) {
    PowerProduct cap = quotient;
    PlaceAbs dj = dotAbsAt(y, finiteIdx[j], qt);
    if (dj.value != 0) {
      PowerProduct alt = PowerProduct::of(Rat(1) / dj.value, Rat(1));
      if (alt.compare(cap) < 0) cap = alt;
    }
    long sj = floorLogPP(cap, pr[j]);
    out.s.push_back(sj);
    quotient.mul(PowerProduct::of(Rat(pr[j]), Rat(-sj)));
  }

  // exponent window: prod p^{s_j} <= e^{ttilde} < prod p^{s_j + 1}, exact.
  PowerProduct prodS;
  Rat prodP(1);
  for (size_t j = 0; j < pr.size(); ++j) {
    prodS.mul(PowerProduct::of(Rat(pr[j]), Rat(out.s[j])));
    prodP *= Rat(pr[j]);
  }
  PowerProduct upper = prodS;
  upper.mulRat(prodP);
  out.exponentWindowExact = prodS.compare(expTtilde) <= 0 && expTtilde.compare(upper) < 0;

  out.gamma = gamma;
  out.logDeltaBound = 0.5 * std::log(static_cast<double>(n + 1)) - logBoundExponent;

  // Independent delta verification through the certified scanner.
  UyLattice L;
  L.primes = pr;
  L.n = n;
  L.s = out.s;
  L.t = out.t;
  for (size_t j = 0; j < pr.size(); ++j) L.yFinite.push_back(y.comp[finiteIdx[j]]);
  if (archMode) L.yArch = y.at(Place::arch());
  UyDeltaResult d = uyDeltaScan(L, 0.0, true);
  out.logDeltaMeasured = d.logCSqMin / 2;
  out.deltaWitness = d.witness;
  out.margin = out.logDeltaBound - out.logDeltaMeasured;
  out.deltaVerified = compareWithSlack(out.logDeltaMeasured, out.logDeltaBound) <= 0;
  return out;
}

IntegerizedEmbed integerizeEmbed(const YVector& y, const EmbedParams& e) {
  IntegerizedEmbed out;
  const int n = y.n;
  double tSum = 0;
  for (double ti : e.t) {
    long fl = static_cast<long>(std::floor(ti + 1e-12));
    out.tInt.push_back(fl);
    tSum += static_cast<double>(fl);
  }
  // integer window: e^{-(n+1)} prod p^{s_j} <= e^{[ttilde]} < prod p^{s_j+1}
  double logProdS = 0, logProdNext = 0;
  const auto& primes = y.S.primes();
  for (size_t j = 0; j < primes.size(); ++j) {
    logProdS += e.s[j] * std::log(static_cast<double>(primes[j]));
    logProdNext += (e.s[j] + 1) * std::log(static_cast<double>(primes[j]));
  }
  out.integerWindowOk = compareWithSlack(logProdS - (n + 1), tSum) <= 0 &&
                    compareWithSlack(tSum, logProdNext) < 0;
  // The scaling by e^{t_i - [t_i]} inflates content by at most e.
  out.logDeltaBoundInflated =
      1.0 + 0.5 * std::log(static_cast<double>(n + 1)) - toDouble(e.gamma) * tSum;
  UyLattice L;
  L.primes = primes;
  L.n = n;
  L.s = e.s;
  for (long t : out.tInt) L.t.push_back(static_cast<double>(t));
  auto ps = y.S.places();
  for (size_t i = 0; i < ps.size(); ++i)
    if (!ps[i].isArch()) L.yFinite.push_back(y.comp[i]);
  if (y.S.hasArch()) L.yArch = y.at(Place::arch());
  UyDeltaResult d = uyDeltaScan(L, 0.0, true);
  out.logDeltaMeasured = d.logCSqMin / 2;
  out.deltaVerified = compareWithSlack(out.logDeltaMeasured, out.logDeltaBoundInflated) <= 0;
  return out;
}

SplitResult splitVwma(const YVector& y, const std::vector<ApproxWitness>& witnesses,
                      const Rat& eps) {
  if (!y.S.hasArch()) throw std::invalid_argument("splitVwma: arch mode only");
  SplitResult out;
  const int n = y.n;
  const RatVec& yArch = y.at(Place::arch());
  Rat yNorm(0);
  for (int i = 0; i < n; ++i) yNorm = std::max(yNorm, Rat(abs(yArch[i])));
  Rat factor = (1 + Rat(n) * yNorm);

  auto ps = y.S.places();
  for (const auto& w : witnesses) {
    Rat lhsSq(w.qt[0] * w.qt[0]);
    Rat rhsSq = factor * factor * heightSq(w.qt, true);
    if (lhsSq <= rhsSq) {
      out.lePart.push_back(w);
      continue;
    }
    out.gtPart.push_back(w);
    // finite-part transform chain: prod_{v in S_f} |ytilde.qtilde|_v
    //   <= (1 + n||y||) Pi_+(qtilde)^{-(1+eps)}
    Rat finProd(1);
    for (size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].isArch()) continue;
      finProd *= dotAbsAt(y, i, w.qt).value;
    }
    PowerProduct rhs = PowerProduct::of(piPlus(w.qt), -(1 + eps));
    rhs.mulRat(factor);
    if (finProd != 0 && PowerProduct::ofRat(finProd).compare(rhs) > 0)
      out.lemma124Verified = false;
  }
  return out;
}

RatVec uyWedgeClosedFormP(long p, long s, const RatVec& yP, const RatVec& w, int m, int r) {
  const auto& subs = indexSubsets(m, r);
  RatVec out = RatVec::Zero(static_cast<Eigen::Index>(subs.size()));
  Rat ps = powRat(p, -s);
  for (size_t k = 0; k < subs.size(); ++k) {
    const auto& I = subs[k];
    bool hasZero = !I.empty() && I[0] == 0;
    if (!hasZero) {
      out[static_cast<Eigen::Index>(k)] = w[static_cast<Eigen::Index>(k)];
      continue;
    }
    // coefficient of e_I with 0 in I: w_I plus signed cross terms from
    // J = I \ {0} u {i}, i not in I
    Rat acc = w[static_cast<Eigen::Index>(k)];
    for (int i = 1; i < m; ++i) {
      if (std::binary_search(I.begin(), I.end(), i)) continue;
      std::vector<int> J(I.begin() + 1, I.end());
      auto pos = std::lower_bound(J.begin(), J.end(), i);
      int posIdx = static_cast<int>(pos - J.begin());
      J.insert(pos, i);
      // u e_J contributes (-1)^{pos} f_i e_{I}: e_0 replaces e_i and moves
      // to the front across posIdx earlier entries
      int sign = (posIdx % 2 == 0) ? 1 : -1;
      acc += Rat(sign) * yP[i - 1] * w[subsetIndex(m, J)];
    }
    out[static_cast<Eigen::Index>(k)] = ps * acc;
  }
  return out;
}

}  // namespace sadic
