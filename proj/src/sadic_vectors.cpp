#include <sadic/sadic.hpp>

#include <cmath>

namespace sadic {

namespace {
int placeIndex(const PlaceSet& S, const Place& v) {
  auto ps = S.places();
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i] == v) return static_cast<int>(i);
  throw std::out_of_range("place " + toString(v) + " not in S=" + S.toString());
}
}  // namespace

SAdicScalar SAdicScalar::diagonal(const PlaceSet& S, const Rat& x) {
  SAdicScalar s{S, std::vector<Rat>(S.ell(), x)};
  return s;
}
const Rat& SAdicScalar::at(const Place& v) const { return comp[placeIndex(S, v)]; }

SAdicVec SAdicVec::diagonal(const PlaceSet& S, const RatVec& x) {
  SAdicVec out{S, static_cast<int>(x.size()), std::vector<RatVec>(S.ell(), x)};
  return out;
}
const RatVec& SAdicVec::at(const Place& v) const { return comp[placeIndex(S, v)]; }
RatVec& SAdicVec::at(const Place& v) { return comp[placeIndex(S, v)]; }

SAdicMat SAdicMat::identity(const PlaceSet& S, int m) {
  RatMat id = RatMat::Identity(m, m);
  return diagonal(S, id);
}
SAdicMat SAdicMat::diagonal(const PlaceSet& S, const RatMat& g) {
  SAdicMat out{S, static_cast<int>(g.rows()), std::vector<RatMat>(S.ell(), g)};
  return out;
}
const RatMat& SAdicMat::at(const Place& v) const { return comp[placeIndex(S, v)]; }
RatMat& SAdicMat::at(const Place& v) { return comp[placeIndex(S, v)]; }

SAdicVec SAdicMat::apply(const SAdicVec& x) const {
  if (!(S == x.S)) throw std::invalid_argument("SAdicMat::apply: place-set mismatch");
  SAdicVec out{S, m, {}};
  out.comp.reserve(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) out.comp.push_back(comp[i] * x.comp[i]);
  return out;
}

SAdicMat SAdicMat::mul(const SAdicMat& o) const {
  if (!(S == o.S)) throw std::invalid_argument("SAdicMat::mul: place-set mismatch");
  SAdicMat out{S, m, {}};
  out.comp.reserve(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) out.comp.push_back(comp[i] * o.comp[i]);
  return out;
}

Rat supNormP(const RatVec& x, long p) {
  Rat best(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rat a = powRat(p, -valuationQ(x[i], p));
    if (a > best) best = a;
  }
  return best;
}

Rat euclidSqNorm(const RatVec& x) {
  Rat s(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * x[i];
  return s;
}

Rat content(const SAdicScalar& x) {
  Rat c(1);
  auto ps = x.S.places();
  for (size_t i = 0; i < ps.size(); ++i) {
    c *= valuation(x.comp[i], ps[i]);
    if (c == 0) return c;
  }
  return c;
}

Rat sAbs(const SAdicScalar& x) {
  Rat best(0);
  auto ps = x.S.places();
  for (size_t i = 0; i < ps.size(); ++i) {
    Rat a = valuation(x.comp[i], ps[i]);
    if (a > best) best = a;
  }
  return best;
}

Rat contentSq(const SAdicVec& x) {
  Rat c(1);
  auto ps = x.S.places();
  for (size_t i = 0; i < ps.size(); ++i) {
    Rat n2;
    if (ps[i].isArch()) {
      n2 = euclidSqNorm(x.comp[i]);
    } else {
      Rat n = supNormP(x.comp[i], ps[i].p);
      n2 = n * n;
    }
    c *= n2;
    if (c == 0) return c;
  }
  return c;
}

Rat sNormSq(const SAdicVec& x) {
  Rat best(0);
  auto ps = x.S.places();
  for (size_t i = 0; i < ps.size(); ++i) {
    Rat n2;
    if (ps[i].isArch()) {
      n2 = euclidSqNorm(x.comp[i]);
    } else {
      Rat n = supNormP(x.comp[i], ps[i].p);
      n2 = n * n;
    }
    if (n2 > best) best = n2;
  }
  return best;
}

BalanceResult balanceByUnits(const SAdicVec& x, long window) {
  Rat cSq = contentSq(x);
  if (cSq == 0) throw ZeroContentError();
  const auto& primes = x.S.primes();
  const int nf = static_cast<int>(primes.size());

  // Exhaust xi = prod p_j^{e_j} over the window; comparisons on squared
  // norms are exact. No finite places means xi = 1.
  std::vector<long> e(nf, -window), best(nf, 0);
  Rat bestNormSq(-1);
  bool edge = false;
  bool done = false;
  while (!done) {
    Rat xi(1);
    for (int j = 0; j < nf; ++j) xi *= powRat(primes[j], e[j]);
    SAdicVec scaled = x;
    for (auto& c : scaled.comp) c *= xi;
    Rat nSq = sNormSq(scaled);
    if (bestNormSq < 0 || nSq < bestNormSq) {
      bestNormSq = nSq;
      best = e;
    }
    int j = 0;
    for (; j < nf; ++j) {
      if (e[j] < window) {
        ++e[j];
        break;
      }
      e[j] = -window;
    }
    if (j == nf) done = true;
  }
  for (int j = 0; j < nf; ++j)
    if (std::abs(best[j]) == window && window > 0) edge = true;

  Rat xi(1);
  for (int j = 0; j < nf; ++j) xi *= powRat(primes[j], best[j]);
  SAdicVec balanced = x;
  for (auto& c : balanced.comp) c *= xi;

  // ratio = ||xi x|| / c(x)^{1/ell}: report as double via exact logs.
  double ratio = std::exp(0.5 * PowerProduct::ofRat(bestNormSq).log() -
                          PowerProduct::ofRat(cSq).log() / (2.0 * x.S.ell()));
  return BalanceResult{xi, std::move(balanced), ratio, edge};
}

}  // namespace sadic
