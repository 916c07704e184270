#include <sadic/exterior.hpp>

#include <map>
#include <stdexcept>

namespace sadic {

namespace {
Rat detExact(const RatMat& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 0) return Rat(1);
  if (n == 1) return A(0, 0);
  if (n == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  // Fraction-free-ish Gaussian elimination over Q is exact either way.
  RatMat M = A;
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      M.row(piv).swap(M.row(c));
      det = -det;
    }
    det *= M(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (M(r, c) == 0) continue;
      Rat factor = M(r, c) / M(c, c);
      for (int j = c; j < n; ++j) M(r, j) -= factor * M(c, j);
    }
  }
  return det;
}
}  // namespace

const std::vector<std::vector<int>>& indexSubsets(int m, int r) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  auto key = std::make_pair(m, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<int>> subs;
  std::vector<int> cur(r);
  std::function<void(int, int)> rec = [&](int start, int pos) {
    if (pos == r) {
      subs.push_back(cur);
      return;
    }
    for (int v = start; v <= m - (r - pos); ++v) {
      cur[pos] = v;
      rec(v + 1, pos + 1);
    }
  };
  if (r == 0)
    subs.push_back({});
  else
    rec(0, 0);
  return cache.emplace(key, std::move(subs)).first->second;
}

int subsetIndex(int m, const std::vector<int>& I) {
  const auto& subs = indexSubsets(m, static_cast<int>(I.size()));
  auto it = std::lower_bound(subs.begin(), subs.end(), I);
  if (it == subs.end() || *it != I) throw std::invalid_argument("subsetIndex: not a sorted subset");
  return static_cast<int>(it - subs.begin());
}

long binomial(int m, int r) {
  if (r < 0 || r > m) return 0;
  long b = 1;
  for (int i = 0; i < r; ++i) b = b * (m - i) / (i + 1);
  return b;
}

RatVec wedgeOfColumns(const RatMat& A) {
  const int m = static_cast<int>(A.rows());
  const int r = static_cast<int>(A.cols());
  const auto& subs = indexSubsets(m, r);
  RatVec w(static_cast<Eigen::Index>(subs.size()));
  for (size_t k = 0; k < subs.size(); ++k) {
    RatMat minor(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) minor(i, j) = A(subs[k][i], j);
    w[static_cast<Eigen::Index>(k)] = detExact(minor);
  }
  return w;
}

RatMat compoundMatrix(const RatMat& g, int r) {
  const int m = static_cast<int>(g.rows());
  const auto& subs = indexSubsets(m, r);
  const int M = static_cast<int>(subs.size());
  RatMat C(M, M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      RatMat minor(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) minor(i, j) = g(subs[a][i], subs[b][j]);
      C(a, b) = detExact(minor);
    }
  return C;
}

RatVec wedgeVector(const RatVec& v, const RatVec& w, int m, int r) {
  const auto& subsR = indexSubsets(m, r);
  const auto& subsR1 = indexSubsets(m, r + 1);
  RatVec out = RatVec::Zero(static_cast<Eigen::Index>(subsR1.size()));
  for (size_t k = 0; k < subsR.size(); ++k) {
    if (w[static_cast<Eigen::Index>(k)] == 0) continue;
    const auto& I = subsR[k];
    for (int i = 0; i < m; ++i) {
      if (std::binary_search(I.begin(), I.end(), i)) continue;
      std::vector<int> J = I;
      auto pos = std::lower_bound(J.begin(), J.end(), i);
      int sign = (static_cast<int>(pos - J.begin()) % 2 == 0) ? 1 : -1;
      J.insert(pos, i);
      int idx = subsetIndex(m, J);
      out[idx] += Rat(sign) * v[i] * w[static_cast<Eigen::Index>(k)];
    }
  }
  return out;
}

namespace {
RatMat annihilatorKernel(const RatVec& w, int m, int r) {
  // Matrix of v -> v ^ w acting Q^m -> wedge^{r+1}.
  const int rows = static_cast<int>(indexSubsets(m, r + 1).size());
  RatMat A(rows, m);
  for (int i = 0; i < m; ++i) {
    RatVec ei = RatVec::Zero(m);
    ei[i] = 1;
    A.col(i) = wedgeVector(ei, w, m, r);
  }
  Eigen::FullPivLU<RatMat> lu(A);
  lu.setThreshold(Rat(0));
  return lu.kernel();
}
}  // namespace

bool isDecomposable(const RatVec& w, int m, int r) {
  bool nonzero = false;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] != 0) nonzero = true;
  if (!nonzero) return false;
  if (r == 0 || r == 1 || r == m - 1 || r == m) return true;
  RatMat K = annihilatorKernel(w, m, r);
  return static_cast<int>(K.cols()) == r;
}

RatMat spanOfDecomposable(const RatVec& w, int m, int r) {
  RatMat K = annihilatorKernel(w, m, r);
  if (static_cast<int>(K.cols()) != r)
    throw std::invalid_argument("spanOfDecomposable: vector is not decomposable");
  return K;
}

}  // namespace sadic
