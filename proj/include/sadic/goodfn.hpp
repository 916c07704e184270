#pragma once

// (C,alpha)-good function calculus: certificates with exact constants,
// exact sublevel-set measures by residue counting, sup norms on cylinders,
// difference quotients, sublevel component counts and nondegeneracy orders.

#include <sadic/polynomial.hpp>
#include <sadic/power_product.hpp>
#include <sadic/region.hpp>

#include <functional>
#include <optional>

namespace sadic {

enum class CertProvenance {
  PolyUltrametric,  // polynomial with constant top difference quotient
  ProductRule,      // two-factor product-space composition
  MultiVariable,    // d-fold equal-factor composition
  CkPinched,        // real C^k with pinched top partials
  TopQuotient,      // one ultrametric variable, constant |Phi^k|
  Empirical
};

std::string toString(CertProvenance p);

/// A certified pair (C, alpha) for the sublevel inequality
/// mu(B^{f,eps}) <= C (eps/||f||)^alpha mu(B); C is kept in exact
/// power-product form so the inequality can be decided exactly.
struct GoodCert {
  PowerProduct C;
  Rat alpha;
  CertProvenance prov = CertProvenance::Empirical;
  std::string region;
};

struct InvalidParamsError : std::invalid_argument {
  explicit InvalidParamsError(const std::string& m) : std::invalid_argument(m) {}
};

/// (d k^{3-1/k}, 1/(dk)) for polynomials of degree <= k in d ultrametric
/// variables whose top difference quotient is a nonzero constant.
GoodCert goodCertUltrametricPoly(int d, int k);

/// Product-space composition: gamma = alpha beta/(alpha+beta).
GoodCert goodCertProduct(const GoodCert& cx, const GoodCert& cy);

/// d-fold composition with equal factors: (dC, alpha/d).
GoodCert goodCertMulti(const GoodCert& c, int d);

/// (d C_k (A/a)^{1/k}, 1/(dk)) for real C^k functions with k-th partials
/// pinched in [a, A]; C_k is supplied by the caller.
GoodCert goodCertCk(int d, int k, const Rat& Ck, const Rat& a, const Rat& A);

/// Exact Haar measure of {x in B : |f(x)|_p < p^{-k}} for f with rational
/// coefficients; k may be any integer. Values |f|_p are powers of p, so the
/// sublevel set is a union of cylinders and the count is exact.
Rat sublevelMeasureP(const MultiPoly& f, const CylinderRegion& B, long k);

struct ArchMeasureBounds {
  Rat lo, hi;
};

struct ResolutionTooCoarseError : std::runtime_error {
  explicit ResolutionTooCoarseError(const std::string& m) : std::runtime_error(m) {}
};

/// Two-sided bounds for lambda{x in [a,b] : |f(x)| < eps} by adaptive
/// bisection with exact interval evaluation; throws ResolutionTooCoarse if
/// the gap still exceeds gapTol at maxDepth.
ArchMeasureBounds sublevelMeasureArch(const Poly& f, const Rat& a, const Rat& b, const Rat& eps,
                                      const Rat& gapTol, int maxDepth = 24);

/// sup_{x in B} |f(x)|_p, exact (a power of p), or 0 for f == 0 on B.
/// Throws if the valuation exceeds capLevel everywhere (f vanishing deeper
/// than the search budget).
Rat supNormOnRegionP(const MultiPoly& f, const CylinderRegion& B, int capLevel = 48);

using SupportFilter = std::function<bool(const IntVec& rep, int level)>;

struct CheckGoodReport {
  bool pass = true;
  double worstRatio = 0;  // max of mu(B^{f,eps}) / (C (eps/||f||)^alpha mu(B))
  long ballsChecked = 0;
  long comparisons = 0;
  std::string worstCase;
};

/// Exhaustive sublevel-inequality check of f against cert over every ball of
/// level <= maxBallLevel inside U and every eps = p^{-j}, 1 <= j <=
/// maxEpsExp. Exact arithmetic throughout; the ratio is reported as a
/// floating-point diagnostic. An optional support filter restricts balls
/// and sup norms to supp(mu) for non-Haar measures.
CheckGoodReport checkGoodP(const MultiPoly& f, const CylinderRegion& U, const GoodCert& cert,
                           int maxBallLevel, int maxEpsExp,
                           const SupportFilter& support = nullptr);

struct ComponentCountResult {
  long count = 0;
  bool preconditionVerified = false;  // |Phi^k f| constant on distinct tuples
  bool boundHolds = false;            // count <= k, asserted only when verified
};

/// Number of maximal balls composing V^{f, p^{-epsExp}}, by exact residue
/// analysis in the p^N tree. The precondition is verified symbolically for
/// polynomials of exact degree k (the top difference quotient is the
/// leading coefficient).
ComponentCountResult componentCountP(const Poly& f, const CylinderRegion& V, long epsExp);

/// Smallest k <= kmax with span{partial_beta f(x0) : 1 <= |beta| <= k} =
/// Q^n, or nullopt. Exact for polynomial maps.
std::optional<int> nondegeneracyOrder(const std::vector<MultiPoly>& f, const RatVec& x0, int kmax);

/// Sampled-data variant for univariate maps: derivatives recovered from
/// difference quotients at distinct points near x0 (empirical; exact
/// arithmetic on the sampled values, but no smoothness proof).
std::optional<int> nondegeneracyOrderSampled(const std::function<RatVec(const Rat&)>& f,
                                             const Rat& x0, int kmax, const Rat& spacing);

/// A tabulated k-th difference quotient: evaluation tuples together with
/// the (symmetric) values of Phi^k f.
struct DifferenceTable {
  int order = 0;
  std::vector<std::vector<Rat>> tuples;  // each of size order + 1, distinct
  std::vector<Rat> values;
};

/// Builds the table and asserts symmetry on a shuffled copy of each tuple.
DifferenceTable differenceTable(const std::function<Rat(const Rat&)>& f, int order,
                                std::vector<std::vector<Rat>> tuples);

/// Dominance check with |.|_p: when y is at least as close to x_k as every
/// x_i and the difference quotients along the tuple are suitably ordered,
/// |f(y)| <= max(|f(x_k)|, |f(x_{k-1})|). Returns the conclusion when the
/// hypotheses hold, nullopt otherwise.
std::optional<bool> diffQuotientDominance(const std::function<Rat(const Rat&)>& f, long p,
                                      const std::vector<Rat>& x, const Rat& y);

}  // namespace sadic
