#include <sadic/measure.hpp>

#include <cmath>

namespace sadic {

Rat Similitude::contractionRate(long p) const {
  if (a == 0) throw std::invalid_argument("Similitude: zero scale");
  return powRat(p, -valuationQ(a, p));
}

bool SimilitudeFamily::openSetCondition() const {
  // Images of Z_p under x -> a x + b are the cylinders b + a Z_p; with
  // p-integral data they are cylinders of level v_p(a); cylinders are
  // disjoint iff the representatives differ at the coarser level.
  for (size_t i = 0; i < maps.size(); ++i)
    for (size_t j = i + 1; j < maps.size(); ++j) {
      long ki = valuationQ(maps[i].a, p), kj = valuationQ(maps[j].a, p);
      long k = std::min(ki, kj);
      Rat diff = maps[i].b - maps[j].b;
      if (diff == 0) return false;
      if (valuationQ(diff, p) >= k) return false;
    }
  return true;
}

CylinderMeasure CylinderMeasure::haar(long p, int dim) {
  CylinderMeasure mu;
  mu.p_ = p;
  mu.dim_ = dim;
  mu.haar_ = true;
  return mu;
}

CylinderMeasure CylinderMeasure::selfSimilar(SimilitudeFamily fam, std::vector<Rat> weights) {
  if (fam.maps.size() != weights.size())
    throw std::invalid_argument("selfSimilar: one weight per map");
  Rat total(0);
  for (auto& w : weights) {
    if (w < 0) throw std::invalid_argument("selfSimilar: negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("selfSimilar: weights must sum to 1");
  if (!fam.openSetCondition())
    throw std::invalid_argument("selfSimilar: open set condition fails at cylinder resolution");
  CylinderMeasure mu;
  mu.p_ = fam.p;
  mu.dim_ = 1;
  mu.haar_ = false;
  mu.fam_ = std::move(fam);
  mu.weights_ = std::move(weights);
  return mu;
}

Rat CylinderMeasure::mass(int level, const IntVec& rep) const {
  if (level <= 0) return Rat(1);
  if (haar_) {
    Rat m(1);
    m /= Rat(powInt(Int(p_), static_cast<unsigned long>(level * dim_)));
    return m;
  }
  Int mod = powInt(Int(p_), static_cast<unsigned long>(level));
  Int c = rep[0] % mod;
  if (c < 0) c += mod;
  auto key = std::make_pair(level, c);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  // mu(C) = sum_i w_i mu(h_i^{-1} C); h^{-1}(c + p^L Z_p) is a cylinder of
  // level L - v_p(a) when (c - b)/a is p-integral, else empty.
  Rat total(0);
  for (size_t i = 0; i < fam_.maps.size(); ++i) {
    const auto& h = fam_.maps[i];
    long k = valuationQ(h.a, p_);
    Rat x = (Rat(c) - h.b) / h.a;
    if (x != 0 && valuationQ(x, p_) < 0) continue;  // preimage not in Z_p
    int subLevel = level - static_cast<int>(k);
    Rat sub;
    if (subLevel <= 0) {
      sub = Rat(1);
    } else {
      // reduce x mod p^{subLevel} to an integer representative
      Int sm = powInt(Int(p_), static_cast<unsigned long>(subLevel));
      Int num = numerator(x) % sm, den = denominator(x) % sm;
      Int inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), sm.get_mpz_t()) == 0) continue;
      Int rep2 = (num * inv) % sm;
      if (rep2 < 0) rep2 += sm;
      IntVec r(1);
      r[0] = rep2;
      sub = mass(subLevel, r);
    }
    total += weights_[i] * sub;
  }
  cache_.emplace(key, total);
  return total;
}

std::vector<IntVec> CylinderMeasure::supportAtLevel(int level) const {
  std::vector<IntVec> cur{IntVec::Zero(dim_)};
  for (int l = 0; l < level; ++l) {
    Int mod = powInt(Int(p_), static_cast<unsigned long>(l));
    std::vector<IntVec> next;
    for (const auto& rep : cur) {
      // children rep + mod * d over digit tuples d
      IntVec d = IntVec::Zero(dim_);
      while (true) {
        IntVec child = rep;
        for (int i = 0; i < dim_; ++i) child[i] += mod * d[i];
        if (mass(l + 1, child) > 0) next.push_back(child);
        int i = 0;
        for (; i < dim_; ++i) {
          d[i] += 1;
          if (d[i] < p_) break;
          d[i] = 0;
        }
        if (i == dim_) break;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

FedererReport federerRatio(const CylinderMeasure& mu, int t, int maxLevel) {
  if (t < 1) throw std::invalid_argument("federerRatio: scale exponent must be >= 1");
  FedererReport rep;
  rep.supRatio = Rat(0);
  auto centers = mu.supportAtLevel(maxLevel);
  for (const auto& x : centers) {
    for (int j = t; j <= maxLevel; ++j) {
      Rat denom = mu.mass(j, x);
      if (denom == 0) continue;  // excluded by support restriction
      Rat ratio = mu.mass(j - t, x) / denom;
      if (ratio > rep.supRatio) rep.supRatio = ratio;
      ++rep.samples;
    }
  }
  return rep;
}

double similarityDimension(const std::vector<double>& rates) {
  for (double r : rates)
    if (!(r > 0 && r < 1)) throw std::invalid_argument("similarityDimension: rates in (0,1)");
  if (rates.size() <= 1) return 0.0;
  auto g = [&](double s) {
    double v = 0;
    for (double r : rates) v += std::pow(r, s);
    return v - 1.0;
  };
  double lo = 0, hi = 1;
  while (g(hi) > 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double mid = (lo + hi) / 2;
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

namespace {
// True iff all points lie in a proper affine subspace of Q^dim.
bool affinePlanar(const std::vector<IntVec>& pts, int dim) {
  if (pts.size() <= 1) return true;  // a point is a proper subspace for dim >= 1
  RatMat diffs(dim, static_cast<int>(pts.size()) - 1);
  for (size_t k = 1; k < pts.size(); ++k)
    for (int i = 0; i < dim; ++i) diffs(i, static_cast<int>(k - 1)) = Rat(pts[k][i] - pts[0][i]);
  Eigen::FullPivLU<RatMat> lu(diffs);
  lu.setThreshold(Rat(0));
  return static_cast<int>(lu.rank()) < dim;
}
}  // namespace

FriendlyReport friendlyReport(const CylinderMeasure& mu, int resolution,
                              const std::vector<std::vector<Rat>>& affineSample) {
  FriendlyReport rep;
  rep.resolution = resolution;
  rep.federerBound = federerRatio(mu, 1, resolution).supRatio;

  // Nonplanarity at resolution: for each support cylinder at half depth,
  // the support points inside must not fit a proper affine subspace.
  rep.nonplanar = true;
  int coarse = resolution / 2;
  auto supportFine = mu.supportAtLevel(resolution);
  auto supportCoarse = mu.supportAtLevel(coarse);
  Int modC = powInt(Int(mu.p()), static_cast<unsigned long>(coarse));
  for (const auto& c : supportCoarse) {
    std::vector<IntVec> inside;
    for (const auto& x : supportFine) {
      bool in = true;
      for (int i = 0; i < mu.dim() && in; ++i) {
        Int d = (x[i] - c[i]) % modC;
        if (d != 0) in = false;
      }
      if (in) inside.push_back(x);
    }
    if (affinePlanar(inside, mu.dim())) rep.nonplanar = false;
  }

  // Decaying: empirical C at alpha = 1 over sampled affine functions and
  // support cylinders of level <= 2.
  rep.decayingC = 0;
  rep.decayingPass = true;
  const long p = mu.p();
  for (const auto& coeffs : affineSample) {
    if (static_cast<int>(coeffs.size()) != mu.dim() + 1)
      throw std::invalid_argument("friendlyReport: affine sample needs dim+1 coefficients");
    for (int L = 0; L <= 2; ++L) {
      for (const auto& c : mu.supportAtLevel(L)) {
        Rat muB(0);
        Rat supf(0);
        std::vector<std::pair<IntVec, Rat>> fine;
        Int modL = powInt(Int(p), static_cast<unsigned long>(L));
        for (const auto& x : supportFine) {
          bool in = true;
          for (int i = 0; i < mu.dim() && in; ++i)
            if ((x[i] - c[i]) % modL != 0) in = false;
          if (!in) continue;
          Rat fx = coeffs[0];
          for (int i = 0; i < mu.dim(); ++i) fx += coeffs[i + 1] * Rat(x[i]);
          Rat a = fx == 0 ? Rat(0) : powRat(p, -valuationQ(fx, p));
          Rat mss = mu.mass(resolution, x);
          muB += mss;
          if (a > supf) supf = a;
          fine.emplace_back(x, a);
        }
        if (muB == 0 || supf == 0) continue;
        for (int j = 1; j + 1 <= resolution; ++j) {
          Rat eps = powRat(p, -j);
          Rat muSub(0);
          for (auto& [x, a] : fine)
            if (a < eps) muSub += mu.mass(resolution, x);
          if (muSub == 0) continue;
          double cEmp = toDouble(muSub) * toDouble(supf) / (toDouble(eps) * toDouble(muB));
          rep.decayingC = std::max(rep.decayingC, cEmp);
        }
      }
    }
  }
  return rep;
}

}  // namespace sadic
