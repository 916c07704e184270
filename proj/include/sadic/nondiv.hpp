#pragma once

// Quantitative nondivergence: the marked-set combinatorics, empirical
// verification of the measure bound for covolume trajectories of
// g_{s,t} u_{f(x)} families, and the bounded-orbit/invariant-subspace
// dichotomy for polynomial maps.

#include <sadic/covering.hpp>
#include <sadic/goodfn.hpp>
#include <sadic/lattice.hpp>
#include <sadic/polynomial.hpp>
#include <sadic/uy_scanner.hpp>

#include <variant>

namespace sadic {

/// A finite poset together with sampled |psi| values (one per element per
/// grid point). Callers pass squared values consistently when the psi are
/// square roots (covolumes); the marking conditions are monotone.
struct PosetMap {
  int size = 0;
  std::vector<std::vector<bool>> le;  // le[a][b]: a <= b

  bool isChain(const std::vector<int>& subset) const;
  /// Elements outside the chain comparable with every chain element.
  std::vector<int> comparableComplement(const std::vector<int>& chain) const;
  /// All linearly ordered subsets, the empty one included.
  std::vector<std::vector<int>> allChains(long budget = 200000) const;
};

struct ChainBudgetError : std::runtime_error {
  ChainBudgetError() : std::runtime_error("marked_set: chain enumeration budget exceeded") {}
};

/// Marks each point: z is marked iff some chain S_z satisfies
/// eps <= |psi_s(z)| <= rho on S_z and |psi_s(z)| >= rho on the comparable
/// complement. Exact comparisons.
std::vector<bool> markedSet(const PosetMap& poset, const std::vector<std::vector<Rat>>& psi,
                            const Rat& eps, const Rat& rho);

/// An experiment h(x) = g_{s,t} u_{f(x)} over one finite place p (the
/// lattice lives over S+ = {p, inf}), f a tuple of polynomials in one
/// p-adic variable, sampled on the level-N cylinder grid of Z_p.
struct UyExperiment {
  long p = 3;
  int n = 2;
  std::vector<Poly> f;       // f_1..f_n
  long s = 0;                // finite-place contraction exponent
  std::vector<double> t;     // t_0..t_n
  int gridLevel = 4;
  std::vector<int> epsExps;  // eps = p^{-j}
  GoodCert cert;             // condition (i) certificate for the psi_Delta
  Rat rho = Rat(1, 3);       // condition (ii) threshold
  int workers = 1;
};

struct NondivRow {
  int epsExp;
  Rat fractionLo, fractionHi;  // exact grid fractions (slack-separated)
  double rhs;
  bool pass;  // fractionHi <= rhs, decided exactly
};

struct ConditionIIError : std::runtime_error {
  explicit ConditionIIError(const std::string& m) : std::runtime_error(m) {}
};

struct NondivReport {
  std::vector<NondivRow> rows;
  double conditionIILogLower;  // certified log lower bound for sup psi_Delta
  Int nX;
  PowerProduct dMu;
  long gridPoints = 0;
};

/// Exact grid fractions of {delta(h(x) D^m) < eps} against the
/// m C (N_X D_mu^2)^m (eps/rho)^alpha bound. Condition (ii) is certified
/// through the exterior lower bound sup psi_Delta >= rho_vand p^s e^{-t}
/// (valid uniformly over primitive Delta); failure raises ConditionIIError.
NondivReport verifyNondivBound(const UyExperiment& exp);

/// A polynomial map X -> GL(m, Q_S) given per place by polynomial matrix
/// entries in one variable, with polynomial inverse (regular map).
struct RegularMap {
  PlaceSet S;
  int m = 0;
  // entries[placeIdx][i][j]; places aligned with S.places()
  std::vector<std::vector<std::vector<Poly>>> entries;
  std::vector<std::vector<std::vector<Poly>>> invEntries;

  RatMat evalAt(int placeIdx, const Rat& x) const;
  SAdicMat evalAll(const std::vector<Rat>& x) const;  // one coordinate per place
  void validateInverse() const;                        // h h^{-1} == I as polynomials
};

struct DichotomyCaseI {
  Rat tauSq;     // tau^2, exact
  double c0;     // the assembled measure-bound constant
  Rat alpha;
  std::vector<std::tuple<Rat, Rat, double, bool>> table;  // (eps, fraction, bound, pass)
};

struct DichotomyCaseII {
  SModule invariant;       // primitive Delta with constant span trajectory
  bool literallyConstant;  // wedge image coefficients constant as polynomials
};

struct DichotomyInconclusive {
  std::string reason;
};

using DichotomyResult = std::variant<DichotomyCaseI, DichotomyCaseII, DichotomyInconclusive>;

struct InvalidInputError : std::invalid_argument {
  explicit InvalidInputError(const std::string& m) : std::invalid_argument(m) {}
};

/// Bounded-orbit / invariant-subspace dichotomy on a sample grid: either
/// some sample point
/// lands in Q_tau (tau = the minimal submodule covolume over the lattice
/// list) and the measure table is emitted, or a primitive Delta whose span
/// trajectory is exactly constant is produced (polynomial identity over the
/// wedge coefficients).
DichotomyResult orbitDichotomy(const RegularMap& h, const std::vector<SLattice>& L,
                            const std::vector<std::vector<Rat>>& grid,
                            const std::vector<Rat>& epsSchedule, const GoodCert& cert);

}  // namespace sadic
