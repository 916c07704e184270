#include <sadic/region.hpp>

#include <algorithm>

namespace sadic {

namespace {
bool lexLess(const IntVec& a, const IntVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}
}  // namespace

CylinderRegion::CylinderRegion(long p, int level, int dim, std::vector<IntVec> residues)
    : p_(p), level_(level), dim_(dim), residues_(std::move(residues)) {
  if (!isPrime(p)) throw std::invalid_argument("CylinderRegion: p must be prime");
  if (level < 0 || dim < 1) throw std::invalid_argument("CylinderRegion: bad level/dim");
  Int mod = modulus();
  for (auto& r : residues_) {
    if (r.size() != dim_) throw std::invalid_argument("CylinderRegion: residue dimension mismatch");
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      Int v = r[i] % mod;
      if (v < 0) v += mod;
      r[i] = v;
    }
  }
  std::sort(residues_.begin(), residues_.end(), lexLess);
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
}

CylinderRegion CylinderRegion::full(long p, int dim) {
  return CylinderRegion(p, 0, dim, {IntVec::Zero(dim)});
}

CylinderRegion CylinderRegion::cylinder(long p, int level, IntVec rep) {
  const int dim = static_cast<int>(rep.size());
  return CylinderRegion(p, level, dim, {std::move(rep)});
}

Rat CylinderRegion::measure() const {
  Rat m(static_cast<long>(residues_.size()));
  m /= Rat(powInt(Int(p_), static_cast<unsigned long>(level_ * dim_)));
  return m;
}

bool CylinderRegion::contains(const IntVec& x) const {
  Int mod = modulus();
  IntVec r(dim_);
  for (int i = 0; i < dim_; ++i) {
    Int v = x[i] % mod;
    if (v < 0) v += mod;
    r[i] = v;
  }
  return std::binary_search(residues_.begin(), residues_.end(), r, lexLess);
}

void CylinderRegion::forEachResidueAtLevel(int L,
                                           const std::function<void(const IntVec&)>& fn) const {
  if (L < level_) throw std::invalid_argument("forEachResidueAtLevel: coarser than region level");
  Int mod = modulus();
  Int liftCount = powInt(Int(p_), static_cast<unsigned long>(L - level_));
  for (const auto& base : residues_) {
    // Enumerate base + mod * t, t in [0, p^{L-level})^dim, odometer order.
    IntVec t = IntVec::Zero(dim_);
    IntVec rep = base;
    while (true) {
      fn(rep);
      int i = 0;
      for (; i < dim_; ++i) {
        t[i] += 1;
        rep[i] += mod;
        if (t[i] < liftCount) break;
        t[i] = 0;
        rep[i] = base[i];
      }
      if (i == dim_) break;
    }
  }
}

Int CylinderRegion::residueCountAtLevel(int L) const {
  return Int(static_cast<long>(residues_.size())) *
         powInt(Int(p_), static_cast<unsigned long>((L - level_) * dim_));
}

Rat IntervalRegion::measure() const {
  Rat m(0);
  for (auto& [a, b] : intervals) m += b - a;
  return m;
}

}  // namespace sadic
