#pragma once

// Exterior powers of Q^m in the standard basis e_I: wedge coordinates of
// column families, compound-matrix action, decomposability tests and span
// reconstruction. All exact over Q.

#include <sadic/rational.hpp>

#include <vector>

namespace sadic {

/// All r-element subsets of {0..m-1} in lexicographic order.
const std::vector<std::vector<int>>& indexSubsets(int m, int r);

/// Position of a sorted subset in the lexicographic order.
int subsetIndex(int m, const std::vector<int>& I);

long binomial(int m, int r);

/// Wedge coordinates of the r columns of A (m x r): entry I is det A[I,:].
RatVec wedgeOfColumns(const RatMat& A);

/// r-th compound matrix: (C(m,r) x C(m,r)) with entries det g[I,J].
RatMat compoundMatrix(const RatMat& g, int r);

/// True iff w (in wedge-r coordinates over Q^m) is nonzero and decomposable;
/// the annihilator {v : v ^ w = 0} then has dimension exactly r.
bool isDecomposable(const RatVec& w, int m, int r);

/// Basis (as columns) of the annihilator span {v : v ^ w = 0} of a
/// decomposable w; its wedge re-produces w up to a scalar.
RatMat spanOfDecomposable(const RatVec& w, int m, int r);

/// Coordinates of v ^ w in wedge-(r+1), for v in Q^m and w in wedge-r.
RatVec wedgeVector(const RatVec& v, const RatVec& w, int m, int r);

}  // namespace sadic
