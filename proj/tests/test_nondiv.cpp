#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sadic/nondiv.hpp>

#include <numeric>

using namespace sadic;

namespace {

Poly constPoly(long v) { return Poly::constant(Rat(v)); }
Poly xPoly() { return Poly::x(); }

/// All primitive rank-1 submodules of Z_S^2 with a generator in a small
/// integer box, plus the full module: the truncated inclusion poset.
struct SmallPoset {
  PosetMap poset;
  std::vector<SModule> modules;  // aligned with poset elements
};

SmallPoset buildPoset(const PlaceSet& S, long G) {
  SmallPoset out;
  std::vector<std::pair<long, long>> gens;
  for (long a = -G; a <= G; ++a)
    for (long b = -G; b <= G; ++b) {
      if (a == 0 && b == 0) continue;
      if (std::gcd(std::abs(a), std::abs(b)) != 1) continue;
      if (a < 0 || (a == 0 && b < 0)) continue;  // sign dedup
      gens.emplace_back(a, b);
    }
  for (auto& [a, b] : gens) {
    RatMat g(2, 1);
    g(0, 0) = Rat(a);
    g(1, 0) = Rat(b);
    out.modules.emplace_back(S, g);
  }
  out.modules.emplace_back(S, RatMat(RatMat::Identity(2, 2)));
  const int n = static_cast<int>(out.modules.size());
  out.poset.size = n;
  out.poset.le.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) out.poset.le[i][i] = true;
  for (int i = 0; i + 1 < n; ++i) out.poset.le[i][n - 1] = true;  // rank 1 < full
  return out;
}

}  // namespace

TEST_CASE("marked set base cases") {
  // empty poset: every point is marked
  PosetMap empty;
  empty.size = 0;
  std::vector<std::vector<Rat>> vals(5);
  auto marked = markedSet(empty, vals, Rat(1, 9), Rat(1, 3));
  for (bool m : marked) CHECK(m);

  // single element with |psi| >= rho everywhere: marked via the empty chain
  PosetMap one;
  one.size = 1;
  one.le = {{true}};
  std::vector<std::vector<Rat>> big{{Rat(2)}, {Rat(1)}};
  for (bool m : markedSet(one, big, Rat(1, 9), Rat(1, 3))) CHECK(m);

  // single element below eps at a point: unmarked there
  std::vector<std::vector<Rat>> small{{Rat(1, 27)}};
  auto res = markedSet(one, small, Rat(1, 9), Rat(1, 3));
  CHECK_FALSE(res[0]);

  CHECK_THROWS_AS(markedSet(one, big, Rat(1, 3), Rat(1, 9)), std::invalid_argument);
}

TEST_CASE("chains of the truncated inclusion poset") {
  PlaceSet S = PlaceSet::parse("inf,3");
  auto sp = buildPoset(S, 1);
  auto chains = sp.poset.allChains();
  // chains: empty, singletons, and each rank-1 with the full module
  const int n = sp.poset.size;
  CHECK(static_cast<int>(chains.size()) == 1 + n + (n - 1));
}

TEST_CASE("marked points satisfy the content lower bound") {
  PlaceSet S = PlaceSet::parse("inf,3");
  auto sp = buildPoset(S, 2);

  // trajectory h(z) = diag(1/9, 9) u_z at the finite place, identity at
  // infinity (a contracted shear; resonant z dip below rho)
  std::vector<Rat> grid;
  for (long z = 0; z < 81; ++z) grid.emplace_back(z);

  auto hAt = [&](const Rat& z) {
    SAdicMat h = SAdicMat::identity(S, 2);
    RatMat& hp = h.at(Place::finite(3));
    hp(0, 0) = Rat(1, 9);
    hp(0, 1) = Rat(9) * z / 9;  // (g u)_{01} = z/9... keep g*u exact:
    hp(0, 1) = z * Rat(1, 9);
    hp(1, 1) = Rat(9);
    return h;
  };
  std::vector<std::vector<Rat>> psiSq;
  for (const Rat& z : grid) {
    SAdicMat h = hAt(z);
    std::vector<Rat> row;
    for (auto& mod : sp.modules) row.push_back(covolumeSq(mod, h));
    psiSq.push_back(std::move(row));
  }

  Rat rho(1), eps(1, 3);
  auto marked = markedSet(sp.poset, psiSq, eps * eps, rho * rho);

  // exhaustive gamma check: every marked z has c(h(z) gamma) >= eps for all
  // gamma whose primitive part lies in the poset box
  int markedCount = 0;
  for (size_t zi = 0; zi < grid.size(); ++zi) {
    if (!marked[zi]) continue;
    ++markedCount;
    SAdicMat h = hAt(grid[zi]);
    for (long a = -4; a <= 4; ++a)
      for (long b = -4; b <= 4; ++b) {
        if (a == 0 && b == 0) continue;
        long g = std::gcd(std::abs(a), std::abs(b));
        if (g > 2) continue;  // primitive part must lie in the box
        if (std::max(std::abs(a), std::abs(b)) / g > 2) continue;
        RatVec q(2);
        q[0] = Rat(a);
        q[1] = Rat(b);
        SAdicVec x = h.apply(SAdicVec::diagonal(S, q));
        CHECK(contentSq(x) >= eps * eps);
      }
  }
  CHECK(markedCount > 0);
  CHECK(markedCount < static_cast<int>(grid.size()));  // some points are unmarked
}

TEST_CASE("unmarked-measure bound at grid resolution") {
  PlaceSet S = PlaceSet::parse("inf,3");
  auto sp = buildPoset(S, 2);
  std::vector<Rat> grid;
  for (long z = 0; z < 81; ++z) grid.emplace_back(z);
  std::vector<std::vector<Rat>> psiSq;
  for (const Rat& z : grid) {
    SAdicMat h = SAdicMat::identity(S, 2);
    RatMat& hp = h.at(Place::finite(3));
    hp(0, 0) = Rat(1, 9);
    hp(0, 1) = z * Rat(1, 9);
    hp(1, 1) = Rat(9);
    std::vector<Rat> row;
    for (auto& mod : sp.modules) row.push_back(covolumeSq(mod, h));
    psiSq.push_back(std::move(row));
  }
  Rat rho(1);
  for (int j = 1; j <= 4; ++j) {
    Rat eps = powRat(3, -j);
    auto marked = markedSet(sp.poset, psiSq, eps * eps, rho * rho);
    long unmarked = 0;
    for (bool m : marked)
      if (!m) ++unmarked;
    Rat fraction = Rat(unmarked) / Rat(static_cast<long>(grid.size()));
    // m C (N_X D_mu^2)^m (eps/rho)^alpha with C = 1, alpha = 1 (linear
    // trajectories), N_X = 1, D_mu = 9, m = 2
    Rat rhs = Rat(2) * Rat(1) * powRat(81, 2) * (eps / rho);
    CHECK(fraction <= rhs);
  }
}

TEST_CASE("verify_nondiv_bound: identity-like map has zero fractions") {
  UyExperiment exp;
  exp.p = 3;
  exp.n = 1;
  exp.f = {xPoly()};
  exp.s = 0;
  exp.t = {0.0, 0.0};
  exp.gridLevel = 2;
  exp.epsExps = {1, 2, 3};
  exp.rho = Rat(1, 3);
  exp.cert = goodCertUltrametricPoly(1, 1);
  auto rep = verifyNondivBound(exp);
  // s = 0, t = 0: delta(u_y D^2) = 1 everywhere, so no eps < 1 is hit
  for (auto& row : rep.rows) {
    CHECK(row.fractionHi == 0);
    CHECK(row.pass);
  }
}

TEST_CASE("verify_nondiv_bound: contracted Veronese family") {
  UyExperiment exp;
  exp.p = 3;
  exp.n = 2;
  exp.f = {xPoly(), Poly({Rat(0), Rat(0), Rat(1)})};
  exp.s = 6;
  exp.t = {3.0, 0.0, 3.0};
  exp.gridLevel = 4;
  exp.epsExps = {1, 2, 3, 4, 5, 6};
  exp.rho = Rat(1, 3);
  exp.cert = goodCertUltrametricPoly(1, 2);
  auto rep = verifyNondivBound(exp);
  REQUIRE(rep.rows.size() == 6);
  CHECK(rep.rows[0].fractionLo > 0);  // the experiment is non-vacuous
  for (size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].fractionHi <= rep.rows[i - 1].fractionHi);
  for (auto& row : rep.rows) CHECK(row.pass);
  CHECK(rep.nX == Int(1));
  CHECK(rep.dMu.compare(Rat(9)) == 0);
}

TEST_CASE("verify_nondiv_bound: eps above rho is out of contract") {
  UyExperiment exp;
  exp.p = 3;
  exp.n = 1;
  exp.f = {xPoly()};
  exp.s = 0;
  exp.t = {0.0, 0.0};
  exp.gridLevel = 1;
  exp.epsExps = {0};  // eps = 1 > rho
  exp.rho = Rat(1, 3);
  exp.cert = goodCertUltrametricPoly(1, 1);
  CHECK_THROWS_AS(verifyNondivBound(exp), std::invalid_argument);
}

TEST_CASE("dichotomy: identity map triggers case (i) with tau = 1") {
  PlaceSet S = PlaceSet::parse("inf");
  RegularMap h;
  h.S = S;
  h.m = 2;
  h.entries = {{{constPoly(1), constPoly(0)}, {constPoly(0), constPoly(1)}}};
  h.invEntries = h.entries;
  std::vector<std::vector<Rat>> grid{{Rat(0)}, {Rat(1, 2)}, {Rat(1)}};
  auto res = orbitDichotomy(h, {SLattice::standard(S, 2)}, grid,
                         {Rat(1, 2), Rat(1, 4)}, goodCertUltrametricPoly(1, 1));
  auto* c1 = std::get_if<DichotomyCaseI>(&res);
  REQUIRE(c1 != nullptr);
  CHECK(c1->tauSq == Rat(1));
  for (auto& [eps, fraction, bound, pass] : c1->table) {
    CHECK(fraction == 0);  // identity orbit never dips
    CHECK(pass);
  }
}

TEST_CASE("dichotomy: flag-fixing block-triangular map triggers case (ii)") {
  PlaceSet S = PlaceSet::parse("inf");
  RegularMap h;
  h.S = S;
  h.m = 2;
  // h(x) = [[1/2, x], [0, 2]], inverse [[2, -x], [0, 1/2]]
  h.entries = {{{Poly::constant(Rat(1, 2)), xPoly()}, {constPoly(0), constPoly(2)}}};
  h.invEntries = {{{constPoly(2), Poly({Rat(0), Rat(-1)})},
                   {constPoly(0), Poly::constant(Rat(1, 2))}}};
  std::vector<std::vector<Rat>> grid{{Rat(0)}, {Rat(1)}, {Rat(2)}, {Rat(-3)}};
  auto res = orbitDichotomy(h, {SLattice::standard(S, 2)}, grid, {Rat(1, 2)},
                         goodCertUltrametricPoly(1, 1));
  auto* c2 = std::get_if<DichotomyCaseII>(&res);
  REQUIRE(c2 != nullptr);
  CHECK(c2->literallyConstant);
  CHECK(c2->invariant.rank() == 1);
  // the invariant module is the e_1 axis
  RatVec e1(2);
  e1[0] = 1;
  e1[1] = 0;
  CHECK(c2->invariant.contains(e1));

  CHECK_THROWS_AS(orbitDichotomy(h, {}, grid, {Rat(1, 2)}, goodCertUltrametricPoly(1, 1)),
                  InvalidInputError);
}

TEST_CASE("regular map inverse validation") {
  PlaceSet S = PlaceSet::parse("inf");
  RegularMap h;
  h.S = S;
  h.m = 2;
  h.entries = {{{constPoly(1), xPoly()}, {constPoly(0), constPoly(1)}}};
  h.invEntries = {{{constPoly(1), xPoly()}, {constPoly(0), constPoly(1)}}};  // wrong sign
  CHECK_THROWS_AS(h.validateInverse(), InvalidInputError);
}
