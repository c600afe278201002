#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fibration.hpp"
#include "oracles.hpp"
#include "seedgen.hpp"

using namespace fibretool;
using testsupport::raises;

namespace {

// product t_{n-2} t_{n-3} ... t_i of the half-turn table
ProjMatrix tailProduct(const TSData& ts, int from, int to) {
  ProjMatrix acc = ProjMatrix::identity();
  for (int j = from; j >= to; --j) acc = acc * ts.tAt(j);
  return acc;
}

} // namespace

TEST_CASE("hyperelliptic inputs decompose through one common half-turn") {
  Representation even = gFromR(symmetricHyperelliptic(6));
  TSData ts = tsDecompose(even);
  CHECK(ts.n == 6);
  for (int i = 2; i <= 5; ++i) {
    CHECK(distUpToSign(ts.tAt(i), ts.tAt(1)) < 1e-8);
    CHECK(std::abs(ts.tCenterAt(i).x - ts.tCenterAt(1).x) < 1e-8);
    CHECK(std::abs(ts.tCenterAt(i).y - ts.tCenterAt(1).y) < 1e-8);
  }
  UVTables uv = uvTables(ts);
  for (int i = 2; i <= 5; ++i)
    CHECK(distUpToSign(uv.hAt(i), ProjMatrix::identity()) < 1e-7);
  for (int i = 1; i <= 6; ++i) {
    CHECK(distUpToSign(uv.uAt(i), ProjMatrix::identity()) < 1e-7);
    CHECK(distUpToSign(uv.vAt(i), ProjMatrix::identity()) < 1e-7);
  }
  FibreCoordinates fc = fParams(ts, uv);
  for (int i = 1; i <= 4; ++i) CHECK(std::abs(fc.phiAt(i)) < 1e-7);
}

TEST_CASE("the half-turn table splits every generator and pins the shared entries") {
  Representation rep = deformedRep(SeedSpec(8, 5, 1.0));
  TSData ts = tsDecompose(rep);
  const int n = ts.n;

  for (int i = 1; i <= n - 1; ++i) {
    CHECK(std::abs(ts.tAt(i).trace()) < 1e-9);
    CHECK(std::abs(ts.sAt(i).trace()) < 1e-9);
    CHECK(distUpToSign(ts.tAt(i) * ts.sAt(i), rep.image(i)) <
          1e-8 * std::max(1.0, rep.image(i).supNorm()));
  }
  // stored verbatim: t_1 = t_{n-1} and s_n = t_{n-1}
  CHECK(supNormDist(ts.tAt(1), ts.tAt(n - 1)) == 0.0);
  CHECK(supNormDist(ts.sAt(n), ts.tAt(n - 1)) == 0.0);

  for (int i = 2; i <= n - 1; ++i) CHECK(ts.tCenterOnAxis[static_cast<size_t>(i) - 1]);
  CHECK(ts.s1CenterOnAxis);
}

TEST_CASE("translation tables satisfy their defining products and closed forms") {
  Representation rep = deformedRep(SeedSpec(8, 7, 0.8));
  TSData ts = tsDecompose(rep);
  UVTables uv = uvTables(ts);
  const int n = ts.n;

  // h_i = t_i t_{i-1}
  for (int i = 2; i <= n - 1; ++i)
    CHECK(distUpToSign(uv.hAt(i), ts.tAt(i) * ts.tAt(i - 1)) < 1e-12);

  // boundary entries are exact identities
  for (int i : {n, n - 1, n - 2}) CHECK(distUpToSign(uv.uAt(i), ProjMatrix::identity()) == 0.0);
  for (int i : {n, n - 1}) CHECK(distUpToSign(uv.vAt(i), ProjMatrix::identity()) == 0.0);

  // u_3 = h_6 h_4 and u_1 = h_6 h_4 h_2 at this size
  CHECK(distUpToSign(uv.uAt(3), uv.hAt(6) * uv.hAt(4)) < 1e-10);
  CHECK(distUpToSign(uv.uAt(1), uv.hAt(6) * uv.hAt(4) * uv.hAt(2)) < 1e-10);
  CHECK(distUpToSign(uv.vAt(1), uv.hAt(7) * uv.hAt(5) * uv.hAt(3)) < 1e-10);

  // u_1 v_1 collapses to the identity
  CHECK(distUpToSign(uv.uAt(1) * uv.vAt(1), ProjMatrix::identity()) < 1e-8);

  // closed forms: odd i gives u_i = t_{n-2} ... t_i, even i gives v_i = t_{n-1} ... t_i
  for (int i = 1; i <= n - 3; i += 2)
    CHECK(distUpToSign(uv.uAt(i), tailProduct(ts, n - 2, i)) < 1e-8);
  for (int i = 2; i <= n - 2; i += 2)
    CHECK(distUpToSign(uv.vAt(i), tailProduct(ts, n - 1, i)) < 1e-8);
}

TEST_CASE("conjugator lengths relate the two images and alternate to zero") {
  Representation rep = deformedRep(SeedSpec(8, 9, 1.0));
  TSData ts = tsDecompose(rep);
  UVTables uv = uvTables(ts);
  FibreCoordinates fc = fParams(ts, uv);
  const int n = ts.n;
  REQUIRE(static_cast<int>(fc.phi.size()) == n - 2);

  double alt = 0.0;
  for (int i = 1; i <= n - 2; ++i) alt += (i % 2 == 0 ? 1.0 : -1.0) * fc.phiAt(i);
  CHECK(std::abs(alt) < 1e-8);

  ProjMatrix toStd = normalizeTo(ts.axis);
  ProjMatrix fromStd = toStd.inverse();
  Representation push1 = pushforward(rep, 1);
  Representation push2 = pushforward(rep, 2);

  // the first conjugator is the full descending half-turn product
  CHECK(std::abs(vCoordinate(toStd * tailProduct(ts, n - 1, 2) * fromStd) - fc.phiAt(1)) < 1e-8);

  for (int i = 2; i <= n - 2; ++i) {
    // palindromic closed form: f_i = t_{n-1} .. t_{i+1} * t_i * t_{i+1} .. t_{n-2}
    ProjMatrix left = ProjMatrix::identity();
    for (int j = n - 1; j >= i + 1; --j) left = left * ts.tAt(j);
    ProjMatrix right = ProjMatrix::identity();
    for (int j = i + 1; j <= n - 2; ++j) right = right * ts.tAt(j);
    ProjMatrix f = left * ts.tAt(i) * right;
    CHECK(std::abs(vCoordinate(toStd * f * fromStd) - fc.phiAt(i)) < 1e-8);
  }

  // conjugating the first image by the translation of length phi_i gives the second
  for (int i = 1; i <= n - 2; ++i) {
    ProjMatrix trans = fromStd * translationAlong(fc.phiAt(i)) * toStd;
    CHECK(distUpToSign(trans * push1.image(i) * trans.inverse(), push2.image(i)) <
          1e-8 * std::max(1.0, push2.image(i).supNorm()));
  }
}

TEST_CASE("pushforwards are involution-family representations with the fixed area") {
  const double kPi = 3.14159265358979323846;
  Representation rep = deformedRep(SeedSpec(8, 11, 1.0));
  Representation push1 = pushforward(rep, 1);
  Representation push2 = pushforward(rep, 2);

  CHECK(push1.pres.kind == Kind::H);
  CHECK(relationResidual(push1) < 1e-6);
  CHECK(relationResidual(push2) < 1e-6);
  CHECK(std::abs(repArea(push1) - 4.0 * kPi) < 1e-5);
  CHECK(std::abs(repArea(push2) - 4.0 * kPi) < 1e-5);

  // the two images of the last generator coincide and reflect in the axis crossing
  CHECK(distUpToSign(push1.image(8), push2.image(8)) < 1e-9);
  auto crossing = intersectGeodesics(axisOf(rep.image(1)), axisOf(rep.image(7)));
  REQUIRE(crossing.has_value());
  CHECK(distUpToSign(push1.image(8), reflection(*crossing)) < 1e-8);

  // first images are reflections in points of the common axis
  TSData ts = tsDecompose(rep);
  ProjMatrix toStd = normalizeTo(ts.axis);
  for (const Representation* p : {&push1, &push2}) {
    InteriorPoint c = halfTurnCenter(p->image(1));
    InteriorPoint cs = apply(toStd, c);
    CHECK(std::abs(cs.x) < 1e-7 * std::max(1.0, cs.y));
  }

  // the even images of the first generator share repeller and attractor with the input
  for (const Representation* p : {&push1, &push2}) {
    ProjMatrix g1 = p->image(8) * p->image(1);
    Geodesic in = axisOf(rep.image(1));
    Geodesic out = axisOf(g1);
    CHECK(samePoint(in.src, out.src, 1e-7));
    CHECK(samePoint(in.dst, out.dst, 1e-7));
  }

  // hyperelliptic inputs are fixed points of both pushforwards
  Representation seed = symmetricHyperelliptic(6);
  Representation even = gFromR(seed);
  CHECK(testsupport::maxGenDist(pushforward(even, 1), seed) < 1e-8);
  CHECK(testsupport::maxGenDist(pushforward(even, 2), seed) < 1e-8);

  CHECK(raises([&] { pushforward(rep, 3); }, Err::InvalidInput));
}

TEST_CASE("decomposition rejects inputs outside its domain with named errors") {
  // wrong family
  Representation seed = symmetricHyperelliptic(6);
  CHECK(raises([&] { tsDecompose(seed); }, Err::InvalidInput));

  // broken defining relations
  Representation broken = gFromR(seed);
  broken.gens[2] = translationAlong(0.4);
  CHECK(raises([&] { tsDecompose(broken); }, Err::InvalidInput));

  // exact relations, but every generator translates along one common axis
  Representation sharedAxis;
  sharedAxis.pres = Presentation(Kind::G, 6);
  for (double phi : {1.0, 2.0, 2.0, 2.0, 1.0}) sharedAxis.gens.push_back(translationAlong(phi));
  REQUIRE(relationResidual(sharedAxis) < 1e-12);
  CHECK(raises([&] { tsDecompose(sharedAxis); }, Err::NotInMaximalComponent));

  // exact relations with a non-hyperbolic generator image: pair up involutions
  Representation doubled;
  doubled.pres = Presentation(Kind::H, 6);
  ProjMatrix a = reflection(InteriorPoint(0.0, 1.0));
  ProjMatrix b = reflection(InteriorPoint(1.0, 2.0));
  ProjMatrix c = reflection(InteriorPoint(-2.0, 0.5));
  doubled.gens = {a, b, b, a, c, c};
  REQUIRE(relationResidual(doubled) < 1e-12);
  CHECK(raises([&] { tsDecompose(gFromR(doubled)); }, Err::NotInMaximalComponent));
}
