// Solvers for the boundary-closure problems (chain-pair quadratic, closure
// cubic), conjugating-translation recovery, reconstruction of an even-family
// representation from its two involution-family images, and the fibre chart.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fibration.hpp"
#include "fibre.hpp"
#include "geom2.hpp"
#include "groups.hpp"
#include "invariants.hpp"
#include "oracles.hpp"
#include "seedgen.hpp"

using namespace fibretool;
using testsupport::maxGenDist;
using testsupport::raises;
using testsupport::Rng;

namespace {

// Images of infinity and zero under the half-turn about p: the half-turn
// matrix is [[-x, x^2+y^2], [-1, x]] / y, so infinity maps to x and zero
// maps to (x^2 + y^2) / x.
double halfTurnOfInf(const InteriorPoint& p) { return p.x; }
double halfTurnOfZero(const InteriorPoint& p) { return (p.x * p.x + p.y * p.y) / p.x; }

} // namespace

TEST_CASE("chain-pair solver reproduces the closed-form symmetric case") {
  ChainPairResult res = solveChainPair(ChainPairInput(1.0, 2.0, 1.0, 1.0));

  // With b3 = 1, e3 = 2, k2 = k3 = 1 the quadratic is 2u^2 + u - 1/2 = 0,
  // whose positive root is (sqrt(5) - 1) / 4.
  CHECK(std::abs(res.u - (std::sqrt(5.0) - 1.0) / 4.0) < 1e-14);
  CHECK(res.u == doctest::Approx(0.309016994374947).epsilon(1e-12));
  CHECK(res.p3.x == doctest::Approx(0.381966011250105).epsilon(1e-12));
  CHECK(res.p2.x == doctest::Approx(0.145898033750315).epsilon(1e-12));

  // Both centers sit on the unit-slope ray.
  CHECK(res.p3.y == doctest::Approx(res.p3.x).epsilon(1e-14));
  CHECK(res.p2.y == doctest::Approx(res.p2.x).epsilon(1e-14));

  // Reflecting the feet through p3 lands them where the half-turn about p2
  // sends infinity and zero.
  ProjMatrix r3 = reflection(res.p3);
  BoundaryPoint b2 = apply(r3, BoundaryPoint::at(1.0));
  BoundaryPoint e2 = apply(r3, BoundaryPoint::at(2.0));
  CHECK(samePoint(b2, BoundaryPoint::at(halfTurnOfInf(res.p2)), 1e-12));
  CHECK(samePoint(e2, BoundaryPoint::at(halfTurnOfZero(res.p2)), 1e-12));
}

TEST_CASE("chain-pair solver satisfies its postconditions on random input") {
  Rng rng(5150);
  for (int trial = 0; trial < 1000; ++trial) {
    double b3 = rng.uniform(0.05, 5.0);
    double e3 = b3 * (1.0 + rng.uniform(0.02, 8.0));
    double k2 = rng.uniform(0.15, 6.0);
    double k3 = rng.uniform(0.15, 6.0);
    ChainPairResult res = solveChainPair(ChainPairInput(b3, e3, k2, k3));

    // Root of the documented quadratic, and the only positive one: the
    // constant coefficient is negative while the leading one is positive,
    // so the companion root qc / (qa * u) has the opposite sign.
    double r = 1.0 - b3 / e3;
    double qa = 1.0 + k3 * k3;
    double qb = 1.0 + r * (k3 * k3 - k2 * k2);
    double qc = -r * k2 * k2;
    double scale = qa * res.u * res.u + std::abs(qb) * res.u + std::abs(qc);
    CHECK(std::abs(qa * res.u * res.u + qb * res.u + qc) < 1e-12 * scale);
    CHECK(res.u > 0.0);
    CHECK(qc / (qa * res.u) < 0.0);

    // Centers on their rays.
    CHECK(res.p2.x / res.p2.y == doctest::Approx(k2).epsilon(1e-12));
    CHECK(res.p3.x / res.p3.y == doctest::Approx(k3).epsilon(1e-12));

    // Chaining the two half-turns carries (b3, e3) to (infinity, 0).
    ProjMatrix r3 = reflection(res.p3);
    BoundaryPoint b2 = apply(r3, BoundaryPoint::at(b3));
    BoundaryPoint e2 = apply(r3, BoundaryPoint::at(e3));
    REQUIRE_FALSE(b2.isInf());
    REQUIRE_FALSE(e2.isInf());
    CHECK(samePoint(b2, BoundaryPoint::at(halfTurnOfInf(res.p2)), 1e-9));
    CHECK(samePoint(e2, BoundaryPoint::at(halfTurnOfZero(res.p2)), 1e-9));

    // The six boundary points stay in positive cyclic order.
    CHECK(isPositiveCycle({BoundaryPoint::inf(), BoundaryPoint::at(0.0), b2, e2,
                           BoundaryPoint::at(b3), BoundaryPoint::at(e3)}));
  }
}

TEST_CASE("chain-pair solver rejects out-of-domain boundary data") {
  CHECK(raises([] { ChainPairInput(0.0, 2.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ChainPairInput(-1.0, 2.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ChainPairInput(2.0, 2.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ChainPairInput(3.0, 2.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ChainPairInput(1.0, 2.0, 0.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ChainPairInput(1.0, 2.0, 1.0, -2.0); }, Err::DomainError));
  const double nan = std::nan("");
  CHECK(raises([&] { ChainPairInput(nan, 2.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([&] { ChainPairInput(1.0, 2.0, 1.0, nan); }, Err::DomainError));
}

TEST_CASE("closure solver reproduces the rational worked case") {
  // b = 1, e = 2, all slopes 1, v = 1 collapses the cubic to
  // 7w^2 - w - 8 = 0 with the enclosed root w = 8/7.
  ClosureConfig cfg(1.0, 2.0, 1.0, 1.0, 1.0, 1.0);
  double w = closureForward(cfg, 1.0);
  CHECK(std::abs(w - 8.0 / 7.0) < 1e-12);
  CHECK(std::abs(closureInvert(cfg, 8.0 / 7.0) - 1.0) < 1e-9);
}

TEST_CASE("closure config built from an exact gap matches the plain constructor") {
  ClosureConfig direct(1.0, 2.0, 0.7, 1.3, 2.1, 0.5);
  ClosureConfig viaGap = ClosureConfig::fromGap(1.0, 1.0, 0.7, 1.3, 2.1, 0.5);
  CHECK(direct.gap == viaGap.gap);
  for (double v : {0.1, 1.0, 7.5}) CHECK(closureForward(direct, v) == closureForward(viaGap, v));
}

TEST_CASE("closure forward map is increasing, dominates v, and zeroes the cubic") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    double b = rng.uniform(0.1, 3.0);
    double gap = std::exp(rng.uniform(std::log(1e-6), std::log(2.0)));
    double k2 = rng.uniform(0.2, 4.0);
    double k3 = rng.uniform(0.2, 4.0);
    double k4 = rng.uniform(0.2, 4.0);
    ClosureConfig cfg = ClosureConfig::fromGap(b, gap, k2, k3, k4, rng.uniform(0.1, 2.0));

    double c1 = (cfg.b / cfg.gap + 1.0) * (1.0 + k4 * k4);
    double c2 = (cfg.b / cfg.gap + 1.0) + k4 * k4;
    double c3 = 1.0 + k2 * k2 + k3 * k3;
    double c4 = k2 * k2 * k3 * k3;

    double prev = 0.0;
    for (int j = 0; j < 100; ++j) {
      double v = std::pow(10.0, -2.0 + 4.0 * j / 99.0);
      double w = closureForward(cfg, v);
      CHECK(w > v);
      if (j > 0) CHECK(w > prev);
      prev = w;

      double value = c1 * v * w * (w - v) + c2 * w * (w - v) + c3 * (v + 1.0) * (w - v) -
                     c4 * v * (v + 1.0);
      double scale = std::abs(c1 * v * w * w) + std::abs(c2 * w * w) +
                     std::abs(c3 * (v + 1.0) * w) + std::abs(c4 * v * (v + 1.0));
      CHECK(std::abs(value) < 1e-10 * scale);
    }

    // Inverting the forward value recovers the parameter.
    double v = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
    double back = closureInvert(cfg, closureForward(cfg, v));
    CHECK(std::abs(back - v) < 1e-9 * std::max(1.0, v));
  }
}

TEST_CASE("closure solver rejects bad parameters and unreachable targets") {
  ClosureConfig cfg(1.0, 2.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(raises([&] { closureForward(cfg, 0.0); }, Err::DomainError));
  CHECK(raises([&] { closureForward(cfg, -1.0); }, Err::DomainError));
  CHECK(raises([&] { closureInvert(cfg, 0.0); }, Err::DomainError));
  CHECK(raises([&] { closureInvert(cfg, -3.0); }, Err::DomainError));
  CHECK(raises([&] { closureInvert(cfg, 1e-300); }, Err::OutOfRange));
  CHECK(raises([&] { closureInvert(cfg, 1e300); }, Err::OutOfRange));

  CHECK(raises([] { ClosureConfig(0.0, 2.0, 1.0, 1.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ClosureConfig(2.0, 1.0, 1.0, 1.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ClosureConfig(1.0, 2.0, -1.0, 1.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ClosureConfig(1.0, 2.0, 1.0, 0.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ClosureConfig(1.0, 2.0, 1.0, 1.0, 1.0, 0.0); }, Err::DomainError));
  CHECK(raises([] { ClosureConfig::fromGap(1.0, 0.0, 1.0, 1.0, 1.0, 1.0); }, Err::DomainError));
  CHECK(raises([] { ClosureConfig::fromGap(0.0, 1.0, 1.0, 1.0, 1.0, 1.0); }, Err::DomainError));
}

TEST_CASE("conjugating translation length is recovered along any geodesic") {
  Geodesic vertical(BoundaryPoint::inf(), BoundaryPoint::at(0.0));

  // Equal half-turns need no translation.
  ProjMatrix h = reflection(InteriorPoint(1.0, 1.0));
  CHECK(std::abs(solveConjTranslation(h, h, vertical)) < 1e-12);

  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    double srcX = rng.uniform(-4.0, 4.0);
    double dstX = rng.uniform(-4.0, 4.0);
    if (std::abs(srcX - dstX) < 0.2) continue;
    Geodesic g(BoundaryPoint::at(srcX), BoundaryPoint::at(dstX));
    ProjMatrix fromStd = normalizeTo(g).inverse();

    // Two centers on one ray from the origin of the standard frame lie on a
    // common equidistant curve of g; the conjugating length is the log of
    // the ratio of their ray coordinates.
    double theta = rng.uniform(0.15, 3.141592653589793 - 0.15);
    double t1 = rng.uniform(0.2, 5.0);
    double t2 = rng.uniform(0.2, 5.0);
    InteriorPoint c1(t1 * std::cos(theta), t1 * std::sin(theta));
    InteriorPoint c2(t2 * std::cos(theta), t2 * std::sin(theta));
    ProjMatrix a = fromStd * reflection(c1) * fromStd.inverse();
    ProjMatrix c = fromStd * reflection(c2) * fromStd.inverse();

    double phi = solveConjTranslation(a, c, g);
    CHECK(std::abs(phi - std::log(t2 / t1)) < 1e-10);
  }
}

TEST_CASE("conjugating translation rejects centers on different equidistant curves") {
  Geodesic vertical(BoundaryPoint::inf(), BoundaryPoint::at(0.0));
  ProjMatrix a = reflection(InteriorPoint(1.0, 1.0));
  ProjMatrix c = reflection(InteriorPoint(-1.0, 1.0)); // mirrored across the axis
  CHECK(raises([&] { solveConjTranslation(a, c, vertical); }, Err::NotSameEquidistant));

  ProjMatrix d = reflection(InteriorPoint(2.0, 1.0)); // same side, different offset
  CHECK(raises([&] { solveConjTranslation(a, d, vertical); }, Err::NotSameEquidistant));
}

TEST_CASE("reconstruction round-trips the symmetric representations") {
  for (int n : {6, 8, 10}) {
    CAPTURE(n);
    Representation repG = gFromR(symmetricHyperelliptic(n));
    Representation push1 = pushforward(repG, 1);
    Representation push2 = pushforward(repG, 2);
    Representation back = reconstruct(push1, push2);
    CHECK(back.pres.kind == Kind::G);
    CHECK(back.pres.n == n);
    CHECK(maxGenDist(back, repG) < 1e-6);
  }
}

TEST_CASE("reconstruction round-trips deformed representations") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CAPTURE(seed);
    Representation repG = deformedRep(SeedSpec(8, seed, 1.0));
    Representation back = reconstruct(pushforward(repG, 1), pushforward(repG, 2));
    CHECK(maxGenDist(back, repG) < 1e-6);
    CHECK(relationResidual(back) < 1e-6);
  }
}

TEST_CASE("reconstruction from a doubled symmetric image recovers the seed") {
  // For the symmetric representation the two involution-family images agree,
  // so the pair (push1, push1) reconstructs the even-family seed itself.
  Representation repG = gFromR(symmetricHyperelliptic(8));
  Representation push1 = pushforward(repG, 1);
  Representation back = reconstruct(push1, push1);
  CHECK(maxGenDist(back, repG) < 1e-6);
}

TEST_CASE("reconstruction rejects structurally unsuitable input") {
  Representation repG = gFromR(symmetricHyperelliptic(6));
  Representation push1 = pushforward(repG, 1);
  Representation push2 = pushforward(repG, 2);

  // Even-family input in either slot.
  CHECK(raises([&] { reconstruct(repG, push2); }, Err::InvalidInput));
  CHECK(raises([&] { reconstruct(push1, repG); }, Err::InvalidInput));

  // Mismatched presentation sizes.
  Representation other = symmetricHyperelliptic(8);
  CHECK(raises([&] { reconstruct(push1, other); }, Err::InvalidInput));
}

TEST_CASE("reconstruction detects a moved base image") {
  Representation repG = gFromR(symmetricHyperelliptic(8));
  Representation push1 = pushforward(repG, 1);
  Representation push2 = pushforward(repG, 2);

  // A global conjugation keeps the relation residual at zero but moves the
  // image of the last generator, so the inputs share no common base.
  ProjMatrix m(1.0, 0.4, 0.0, 1.0);
  Representation moved = push2;
  for (ProjMatrix& g : moved.gens) g = m * g * m.inverse();
  CHECK(raises([&] { reconstruct(push1, moved); }, Err::MismatchedBase));
}

TEST_CASE("reconstruction detects a pair that shares only the base image") {
  Representation repG = gFromR(symmetricHyperelliptic(8));
  Representation push1 = pushforward(repG, 1);
  Representation push2 = pushforward(repG, 2);

  // Conjugating by a rotation about the center of the last image fixes that
  // image exactly but turns every other center off its required position.
  InteriorPoint c = halfTurnCenter(push2.image(8));
  double sy = std::sqrt(c.y);
  ProjMatrix s(1.0 / sy, -c.x / sy, 0.0, sy);
  double th = 0.3;
  ProjMatrix rot(std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
  ProjMatrix twist = s.inverse() * rot * s;
  Representation moved = push2;
  for (ProjMatrix& g : moved.gens) g = twist * g * twist.inverse();

  REQUIRE(distUpToSign(moved.image(8), push2.image(8)) < 1e-12);
  CHECK(raises([&] { reconstruct(push1, moved); }, Err::NotAFibrePair));
}

TEST_CASE("fibre chart at trivial dimension returns the unique member") {
  Representation repG = gFromR(symmetricHyperelliptic(6));
  Representation push1 = pushforward(repG, 1);
  Representation member = fibrePoint(push1, {});
  CHECK(member.pres.kind == Kind::G);
  CHECK(relationResidual(member) < 1e-6);
  CHECK(maxGenDist(pushforward(member, 1), push1) < 1e-6);
}

TEST_CASE("fibre chart produces distinct members over the same first image") {
  Representation repG = gFromR(symmetricHyperelliptic(8));
  Representation push1 = pushforward(repG, 1);

  Representation memberA = fibrePoint(push1, {0.3, -0.4});
  Representation memberB = fibrePoint(push1, {-0.5, 0.2});
  CHECK(maxGenDist(memberA, memberB) > 1e-3);

  for (const Representation* member : {&memberA, &memberB}) {
    CHECK(relationResidual(*member) < 1e-6);
    CHECK(maxGenDist(pushforward(*member, 1), push1) < 1e-5);
  }
}

TEST_CASE("fibre chart does not depend on the provisional closure choice") {
  Representation repG = gFromR(symmetricHyperelliptic(8));
  Representation push1 = pushforward(repG, 1);
  Representation memberA = fibrePoint(push1, {0.7, 0.1}, 1.0);
  Representation memberB = fibrePoint(push1, {0.7, 0.1}, 2.5);
  CHECK(maxGenDist(memberA, memberB) < 1e-6);
}

TEST_CASE("fibre chart validates its input") {
  Representation repG = gFromR(symmetricHyperelliptic(8));
  Representation push1 = pushforward(repG, 1);

  CHECK(raises([&] { fibrePoint(repG, {0.0, 0.0}); }, Err::InvalidInput));
  CHECK(raises([&] { fibrePoint(push1, {0.0}); }, Err::InvalidInput));
  CHECK(raises([&] { fibrePoint(push1, {0.0, 0.0, 0.0}); }, Err::InvalidInput));
  CHECK(raises([&] { fibrePoint(push1, {0.0, std::nan("")}); }, Err::InvalidInput));
  CHECK(raises([&] { fibrePoint(push1, {0.0, 0.0}, 0.0); }, Err::InvalidInput));
  CHECK(raises([&] { fibrePoint(push1, {0.0, 0.0}, -2.0); }, Err::InvalidInput));

  Representation push6 = pushforward(gFromR(symmetricHyperelliptic(6)), 1);
  CHECK(raises([&] { fibrePoint(push6, {0.5}); }, Err::InvalidInput));
}
