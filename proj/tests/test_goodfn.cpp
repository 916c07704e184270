#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sadic/goodfn.hpp>
#include <sadic/place.hpp>

#include <random>

using namespace sadic;

namespace {

// Independent sublevel oracle: walk residues at a level strictly finer than
// needed and evaluate |f(x)|_p through exact rational valuations (a
// different code path from the modular counting in the library).
Rat oracleSublevel(const Poly& f, long p, const CylinderRegion& B, long j) {
  long minc = 0;
  bool first = true;
  for (int k = 0; k <= f.degree(); ++k) {
    if (f.coeff(k) == 0) continue;
    long v = valuationQ(f.coeff(k), p);
    if (first || v < minc) minc = v;
    first = false;
  }
  int L = std::max<int>(B.level(), static_cast<int>(j - minc) + 2);
  Int count(0), total(0);
  Rat eps = powRat(p, -j);
  Place vp = Place::finite(p);
  B.forEachResidueAtLevel(L, [&](const IntVec& x) {
    total += 1;
    if (valuation(f(Rat(x[0])), vp) < eps) count += 1;
  });
  return Rat(count) / Rat(total) * B.measure();
}

Poly fromCoeffs(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(std::move(v));
}

}  // namespace

TEST_CASE("sublevel measures: frozen oracle values") {
  // x^2 on Z_3 at eps = 3^{-2}: the residues mod 27 with x^2 = 0 mod 27 are
  // {0, 9, 18}, measure 1/9.
  Poly x2 = fromCoeffs({0, 0, 1});
  CHECK(sublevelMeasureP(MultiPoly::fromPoly(x2), CylinderRegion::full(3), 2) == Rat(1, 9));
  CHECK(oracleSublevel(x2, 3, CylinderRegion::full(3), 2) == Rat(1, 9));

  // x on Z_5 at eps = 5^{-1}: |x| < 1/5 forces v(x) >= 2, measure 1/25.
  Poly x1 = fromCoeffs({0, 1});
  CHECK(sublevelMeasureP(MultiPoly::fromPoly(x1), CylinderRegion::full(5), 1) == Rat(1, 25));
  CHECK(oracleSublevel(x1, 5, CylinderRegion::full(5), 1) == Rat(1, 25));

  // constant f != 0 and eps <= |f|: empty sublevel set.
  Poly c = fromCoeffs({9});
  CHECK(sublevelMeasureP(MultiPoly::fromPoly(c), CylinderRegion::full(3), 2) == 0);
  // |9|_3 = 1/9 < 3^{-1}: at eps = 3^{-1} the whole ball qualifies.
  CHECK(sublevelMeasureP(MultiPoly::fromPoly(c), CylinderRegion::full(3), 1) == Rat(1));
}

TEST_CASE("sublevel measure agrees with the valuation oracle on random polynomials") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (int it = 0; it < 60; ++it) {
    long p = (it % 2 == 0) ? 3 : 5;
    std::vector<Rat> cs;
    int deg = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i <= deg; ++i) cs.emplace_back(coeff(rng));
    Poly f(std::move(cs));
    if (f.isZero()) continue;
    long j = 1 + static_cast<long>(rng() % 3);
    CylinderRegion B = CylinderRegion::full(p);
    CHECK(sublevelMeasureP(MultiPoly::fromPoly(f), B, j) == oracleSublevel(f, p, B, j));
  }
}

TEST_CASE("good_cert closed forms") {
  auto prod = goodCertProduct(GoodCert{PowerProduct::ofRat(Rat(1)), Rat(1)},
                              GoodCert{PowerProduct::ofRat(Rat(1)), Rat(1)});
  CHECK(prod.alpha == Rat(1, 2));
  CHECK(prod.C.compare(Rat(2)) == 0);

  auto ultra = goodCertUltrametricPoly(1, 2);
  CHECK(ultra.alpha == Rat(1, 2));
  CHECK(ultra.C.toDouble() == doctest::Approx(std::pow(2.0, 2.5)));
  // exact check: C^2 = 2^5
  PowerProduct c2 = ultra.C;
  c2.pow(Rat(2));
  CHECK(c2.compare(Rat(32)) == 0);

  auto multi = goodCertMulti(GoodCert{PowerProduct::ofRat(Rat(2)), Rat(1, 2)}, 3);
  CHECK(multi.alpha == Rat(1, 6));
  CHECK(multi.C.compare(Rat(6)) == 0);

  auto ck = goodCertCk(1, 2, Rat(3), Rat(1), Rat(4));
  CHECK(ck.alpha == Rat(1, 2));
  CHECK(ck.C.compare(Rat(6)) == 0);  // 1*3*(4/1)^{1/2} = 6

  CHECK_THROWS_AS(goodCertUltrametricPoly(0, 2), InvalidParamsError);
  CHECK_THROWS_AS(goodCertCk(1, 1, Rat(-1), Rat(1), Rat(1)), InvalidParamsError);
}

TEST_CASE("check_good: monomials against the ultrametric certificate") {
  for (long p : {3L, 5L}) {
    for (int k = 1; k <= 3; ++k) {
      Poly f = Poly::monomial(k);
      auto rep = checkGoodP(MultiPoly::fromPoly(f), CylinderRegion::full(p),
                            goodCertUltrametricPoly(1, k), 2, 4);
      CHECK(rep.pass);
      CHECK(rep.worstRatio <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("check_good: |f| and unit multiples give identical reports") {
  // the definition only sees |f|; scaling by a 3-adic unit preserves the
  // sublevel grid, so the whole report coincides
  Poly f = fromCoeffs({-1, 0, 1});  // x^2 - 1
  auto cert = goodCertUltrametricPoly(1, 2);
  auto a = checkGoodP(MultiPoly::fromPoly(f), CylinderRegion::full(3), cert, 2, 3);
  auto b = checkGoodP(MultiPoly::fromPoly(f * Rat(-1)), CylinderRegion::full(3), cert, 2, 3);
  auto c = checkGoodP(MultiPoly::fromPoly(f * Rat(7, 5)), CylinderRegion::full(3), cert, 2, 3);
  CHECK(a.pass == b.pass);
  CHECK(a.worstRatio == doctest::Approx(b.worstRatio));
  CHECK(a.worstRatio == doctest::Approx(c.worstRatio));
  // non-unit scalars still satisfy the certificate, just on a shifted grid
  auto d = checkGoodP(MultiPoly::fromPoly(f * Rat(7, 3)), CylinderRegion::full(3), cert, 2, 3);
  CHECK(d.pass);
}

TEST_CASE("sup of a certified family stays within the certificate") {
  // max(|x|, |x^2 - 1|): sublevel sets intersect; the common weakened
  // certificate still bounds the measure.
  long p = 3;
  auto cert = goodCertUltrametricPoly(1, 2);
  Poly f1 = fromCoeffs({0, 1}), f2 = fromCoeffs({-1, 0, 1});
  for (int L = 0; L <= 2; ++L) {
    CylinderRegion U = CylinderRegion::full(p);
    U.forEachResidueAtLevel(L, [&](const IntVec& rep) {
      CylinderRegion ball = CylinderRegion::cylinder(p, L, rep);
      Rat supf = std::max(supNormOnRegionP(MultiPoly::fromPoly(f1), ball),
                          supNormOnRegionP(MultiPoly::fromPoly(f2), ball));
      if (supf == 0) return;
      for (int j = 1; j <= 4; ++j) {
        Rat eps = powRat(p, -j);
        int fine = std::max(L, j + 1);
        Int count(0), total(0);
        Place vp = Place::finite(p);
        ball.forEachResidueAtLevel(fine, [&](const IntVec& x) {
          total += 1;
          Rat a1 = valuation(f1(Rat(x[0])), vp);
          Rat a2 = valuation(f2(Rat(x[0])), vp);
          if (std::max(a1, a2) < eps) count += 1;
        });
        Rat mu = Rat(count) / Rat(total) * ball.measure();
        if (mu == 0) continue;
        PowerProduct rhs = cert.C;
        rhs.mul(PowerProduct::of(eps / supf, cert.alpha));
        rhs.mulRat(ball.measure());
        CHECK(rhs.compare(mu) >= 0);
      }
    });
  }
}

TEST_CASE("difference quotients") {
  auto sq = [](const Rat& x) { return Rat(x * x); };
  CHECK(diffQuotient(sq, {Rat(2), Rat(5)}) == Rat(7));  // a + b
  auto cube = [](const Rat& x) { return Rat(x * x * x); };
  CHECK(diffQuotient(cube, {Rat(1), Rat(2), Rat(4), Rat(9)}) == Rat(1));  // leading coeff
  CHECK_THROWS_AS(diffQuotient(sq, {Rat(1), Rat(1)}), CoincidentPointsError);

  // k! barPhi^k(x,..,x) = f^{(k)}(x): for x^3, 3! * barPhi^3 = 6
  Poly x3 = Poly::monomial(3);
  CHECK(Rat(6) * diffQuotientPoly(x3, {Rat(2), Rat(2), Rat(2), Rat(2)}) == Rat(6));
  // extended value at mixed points still gives the leading coefficient
  CHECK(diffQuotientPoly(x3, {Rat(1), Rat(1), Rat(2), Rat(3)}) == Rat(1));
}

TEST_CASE("Phi^k symmetry on random tuples") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> pick(-20, 20);
  Poly f = fromCoeffs({3, -2, 0, 5, 1});
  auto fn = [&](const Rat& x) { return f(x); };
  for (int it = 0; it < 50; ++it) {
    std::vector<Rat> pts;
    while (pts.size() < 4) {
      Rat c(pick(rng), 1 + static_cast<long>(rng() % 5));
      c.canonicalize();
      if (std::find(pts.begin(), pts.end(), c) == pts.end()) pts.push_back(c);
    }
    Rat base = diffQuotient(fn, pts);
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(pts.begin(), pts.end(), rng);
      CHECK(diffQuotient(fn, pts) == base);
    }
  }
}

TEST_CASE("Lagrange identity: Phi^k of (f - interpolant) vanishes") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> pick(-12, 12);
  for (int it = 0; it < 30; ++it) {
    Poly f = fromCoeffs({pick(rng), pick(rng), pick(rng), pick(rng), pick(rng)});
    std::vector<Rat> pts;
    while (pts.size() < 4) {
      Rat c(pick(rng));
      if (std::find(pts.begin(), pts.end(), c) == pts.end()) pts.push_back(c);
    }
    std::vector<Rat> vals;
    for (auto& x : pts) vals.push_back(f(x));
    Poly interp = Poly::lagrange(pts, vals);
    Poly diff = f - interp;
    auto fn = [&](const Rat& x) { return diff(x); };
    CHECK(diffQuotient(fn, pts) == 0);
    auto fi = [&](const Rat& x) { return interp(x); };
    auto ff = [&](const Rat& x) { return f(x); };
    CHECK(diffQuotient(ff, pts) == diffQuotient(fi, pts));
  }
}

TEST_CASE("ultrametric Taylor identity for polynomials") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> pick(-9, 9);
  for (int it = 0; it < 30; ++it) {
    Poly f = fromCoeffs({pick(rng), pick(rng), pick(rng), pick(rng)});
    const int k = 3;
    Rat y(pick(rng)), x(pick(rng));
    Poly q = Poly::constant(f(y));
    Poly d = f;
    Rat fact(1);
    for (int i = 1; i < k; ++i) {
      d = d.derivative();
      fact *= i;
      Poly shift = Poly::constant(Rat(1));
      for (int s = 0; s < i; ++s) shift = shift * Poly({-y, Rat(1)});
      q = q + shift * (d(y) / fact);
    }
    std::vector<Rat> rep(k + 1, y);
    rep[0] = x;
    Rat phik = diffQuotientPoly(f, rep);
    Rat pw(1);
    for (int s = 0; s < k; ++s) pw *= (x - y);
    CHECK(f(x) == q(x) + pw * phik);
  }
}

TEST_CASE("sublevel component counts: frozen instances") {
  auto r1 = componentCountP(fromCoeffs({0, 0, 1}), CylinderRegion::full(3), 2);
  CHECK(r1.count == 1);  // 9 Z_3
  CHECK(r1.preconditionVerified);
  CHECK(r1.boundHolds);

  auto r2 = componentCountP(fromCoeffs({0, -1, 1}), CylinderRegion::full(3), 1);
  CHECK(r2.count == 2);  // around 0 and around 1
  CHECK(r2.boundHolds);

  auto r3 = componentCountP(fromCoeffs({2, 3}), CylinderRegion::full(5), 2);
  CHECK(r3.count <= 1);
  CHECK(r3.boundHolds);
}

TEST_CASE("component count bound across the monic suite") {
  std::vector<Poly> suite{fromCoeffs({0, 1}), fromCoeffs({0, 0, 1}), fromCoeffs({0, 0, 0, 1}),
                          fromCoeffs({-1, 0, 1}), fromCoeffs({0, -1, 1})};
  for (long p : {3L, 5L})
    for (auto& f : suite)
      for (long j = 1; j <= 4; ++j) {
        auto r = componentCountP(f, CylinderRegion::full(p), j);
        CHECK(r.preconditionVerified);
        CHECK(r.count <= f.degree());
      }
}

TEST_CASE("nondegeneracy orders") {
  std::vector<MultiPoly> veronese{MultiPoly::variable(1, 0),
                                  MultiPoly::variable(1, 0) * MultiPoly::variable(1, 0)};
  RatVec zero(1);
  zero[0] = 0;
  CHECK(nondegeneracyOrder(veronese, zero, 5) == 2);
  RatVec two(1);
  two[0] = 2;
  CHECK(nondegeneracyOrder(veronese, two, 5) == 2);

  std::vector<MultiPoly> planar{MultiPoly::variable(1, 0), MultiPoly::variable(1, 0) * Rat(2)};
  CHECK_FALSE(nondegeneracyOrder(planar, zero, 6).has_value());

  MultiPoly x = MultiPoly::variable(1, 0);
  std::vector<MultiPoly> cubic{x, x * x * x};
  CHECK(nondegeneracyOrder(cubic, zero, 5) == 3);

  auto handle = [](const Rat& t) {
    RatVec v(2);
    v[0] = t;
    v[1] = t * t;
    return v;
  };
  CHECK(nondegeneracyOrderSampled(handle, Rat(0), 5, Rat(1, 3)) == 2);
}

TEST_CASE("difference-quotient dominance: hypotheses imply the conclusion") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> pick(-40, 40);
  long p = 3;
  Poly f = fromCoeffs({1, 4, -2, 1});
  auto fn = [&](const Rat& x) { return f(x); };
  int applied = 0;
  for (int it = 0; it < 4000 && applied < 60; ++it) {
    std::vector<Rat> pts;
    while (pts.size() < 3) {
      Rat c(pick(rng));
      if (std::find(pts.begin(), pts.end(), c) == pts.end()) pts.push_back(c);
    }
    Rat y(pick(rng));
    if (std::find(pts.begin(), pts.end(), y) != pts.end()) continue;
    auto res = diffQuotientDominance(fn, p, pts, y);
    if (res.has_value()) {
      ++applied;
      CHECK(*res);
    }
  }
  CHECK(applied > 0);
}

TEST_CASE("archimedean sublevel bounds") {
  Poly f = fromCoeffs({0, 1});  // x on [0, 1], eps = 1/4: measure 1/4
  auto b = sublevelMeasureArch(f, Rat(0), Rat(1), Rat(1, 4), Rat(1, 64));
  CHECK(b.lo <= Rat(1, 4));
  CHECK(b.hi >= Rat(1, 4));
  CHECK(b.hi - b.lo <= Rat(1, 64));
  CHECK_THROWS_AS(sublevelMeasureArch(f, Rat(0), Rat(1), Rat(1, 4), Rat(1, 1000000), 3),
                  ResolutionTooCoarseError);
}

TEST_CASE("sup norm on regions") {
  Poly x2 = fromCoeffs({0, 0, 1});
  CHECK(supNormOnRegionP(MultiPoly::fromPoly(x2), CylinderRegion::full(3)) == Rat(1));
  IntVec rep(1);
  rep[0] = 3;
  // ball 3 + 9 Z_3: x = 3(1 + 3t), sup |x^2| = 1/9
  CHECK(supNormOnRegionP(MultiPoly::fromPoly(x2), CylinderRegion::cylinder(3, 2, rep)) ==
        Rat(1, 9));
}

TEST_CASE("difference table asserts symmetry") {
  Poly f = fromCoeffs({1, 2, 0, 1});
  auto fn = [&](const Rat& x) { return f(x); };
  auto t = differenceTable(fn, 3, {{Rat(0), Rat(1), Rat(2), Rat(3)},
                                   {Rat(-1), Rat(4), Rat(7), Rat(2)}});
  CHECK(t.values[0] == Rat(1));  // leading coefficient
  CHECK(t.values[1] == Rat(1));
  CHECK_THROWS_AS(differenceTable(fn, 2, {{Rat(0), Rat(1)}}), std::invalid_argument);
}
