#pragma once

// The Diophantine layer: VWA/VWMA scanners over integer vectors, the
// u_y / g_{s,t} constructors, the Dirichlet-to-dynamics embeddings (both
// the finite-S and the archimedean modes), and the VWMA split with its
// finite-part transform.

#include <sadic/lattice.hpp>
#include <sadic/sadic.hpp>
#include <sadic/uy_scanner.hpp>

#include <optional>

namespace sadic {

/// A target vector y in Q_S^n with exact rational per-place components.
/// Liouville-type vectors carry a per-place tail-valuation bound T: the
/// stored component is a partial sum and the true value differs by an
/// element of valuation >= T, so |y . q|_p stays exact whenever the exact
/// part has valuation < T.
struct YVector {
  PlaceSet S;
  int n = 1;
  std::vector<RatVec> comp;      // aligned with S.places()
  std::vector<long> tailVal;     // per place; kNoTail when the component is exact

  static constexpr long kNoTail = std::numeric_limits<long>::max();

  static YVector exact(const PlaceSet& S, std::vector<RatVec> comp);
  const RatVec& at(const Place& v) const;
};

/// y = sum_{k=0..kMax} p^{4^k} in Z_p as a 1-dimensional YVector with tail
/// valuation 4^{kMax+1}.
YVector liouvilleVector(long p, int kMax);

/// u_y: unipotent block (1 y; 0 I_n) at the finite places and the identity
/// at infinity (finite mode works in S^+ = S u {inf}), or the same block at
/// every place (arch mode). Exact.
SAdicMat uMatrix(const YVector& y, bool archMode);

/// |ytilde . qtilde|_v with tail accounting: exact == false means the value
/// is only the upper bound p^{-T}.
struct PlaceAbs {
  Rat value;
  bool exact = true;
};
PlaceAbs dotAbsAt(const YVector& y, size_t placeIdx, const IntVec& qt);

enum class ScanMode { VWA, VWMA };

struct ApproxWitness {
  IntVec qt;           // (q_0, q)
  Rat absValue;        // |ytilde.qtilde| = max_v, exact when valueExact
  Rat contentValue;    // c(ytilde.qtilde)
  bool valueExact = true;
  double exponent = 0;  // -ell log|.| / log height (height: ||qt|| or ||q||)
  bool hit = false;
};

struct ScanResult {
  std::vector<ApproxWitness> hits;  // all inequality solutions found
  std::vector<IntVec> exactZeros;   // rational resonances, excluded from stats
  double omegaHat = 0;              // -ell log(min |ytilde.qtilde|) / log N
  Rat psiMin;                       // the record value behind omegaHat
  long enumerated = 0;
};

/// Exhaustive scan over 0 < ||q||_inf <= N (arch mode derives candidate
/// q_0 from the real component). The additive and multiplicative
/// inequalities are decided exactly; omegaHat is the Dirichlet-normalized
/// record statistic at N,
/// which filters out the bounded-height artifacts of Dirichlet's theorem.
ScanResult diophScan(const YVector& y, ScanMode mode, long N, const Rat& eps, int workers = 1);

/// Exact single-witness inequality tests.
bool isVwaHit(const YVector& y, const IntVec& qt, const Rat& eps);
bool isVwmaHit(const YVector& y, const IntVec& qt, const Rat& eps);

struct EmbedParams {
  std::vector<long> s;
  std::vector<double> t;            // t_0..t_n
  Rat gamma;
  double logDeltaBound;             // log( sqrt(n+1) e^{-gamma ttilde/t} )
  double logDeltaMeasured;          // log delta from the certified scanner
  double margin;                    // logDeltaBound - logDeltaMeasured
  bool deltaVerified = false;       // measured <= bound within 1e-9 slack
  bool exponentWindowExact = false; // prod p^{s_j} <= e^t < prod p^{s_j+1}, exact
  bool archT0Window = true;         // -t <= t_0 <= t + ln(1+2n||y||), arch mode
  IntVec deltaWitness;
};

/// Turns a multiplicative witness at quality eps (satisfying the height
/// gate in arch mode) into exponents (s, t) with a certified small value
/// of delta(g_{s,t} u_y D^{n+1}). All exponent bookkeeping is exact in log
/// space; the delta check calls the independent scanner.
EmbedParams dirichletEmbed(const YVector& y, const IntVec& qt, const Rat& eps, bool archMode);

struct IntegerizedEmbed {
  std::vector<long> tInt;          // floor(t_i)
  bool integerWindowOk = false;    // e^{-(n+1)} prod p^{s_j} <= e^{[t]} < prod p^{s_j+1}
  double logDeltaBoundInflated;    // uniform-constant inflation of the bound
  double logDeltaMeasured;
  bool deltaVerified = false;
};

/// Integer-exponent variant of a finite-mode embedding: floors each t_i,
/// keeping the window up to a factor e^{n+1} and the delta bound up to e.
IntegerizedEmbed integerizeEmbed(const YVector& y, const EmbedParams& e);

struct SplitResult {
  std::vector<ApproxWitness> lePart, gtPart;  // by the q0 height gate
  bool lemma124Verified = true;  // finite-part chain for every gt witness
};

/// Partitions witnesses by the gate |q_0| <= (1 + n||y||) ||q|| and, for
/// each witness in the > part, verifies the finite-part transform
/// prod_{v in S_f} |ytilde.qtilde|_v <= (1 + n||y||) Pi_+(qtilde)^{-(1+eps)}
/// exactly.
SplitResult splitVwma(const YVector& y, const std::vector<ApproxWitness>& witnesses,
                      const Rat& eps);

/// Closed-form wedge image of (g_{s,t} u_y w) at a finite place, for
/// cross-checking the compound-matrix action. Exact.
RatVec uyWedgeClosedFormP(long p, long s, const RatVec& yP, const RatVec& w, int m, int r);

/// Pi_+ of an integer vector (product of max(|.|,1)).
Rat piPlus(const IntVec& v);

}  // namespace sadic
