#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "groups.hpp"
#include "oracles.hpp"
#include "seedgen.hpp"

using namespace fibretool;
using testsupport::Rng;
using testsupport::raises;

TEST_CASE("presentations accept only even sizes of at least six") {
  CHECK(Presentation(Kind::H, 6).generatorCount() == 6);
  CHECK(Presentation(Kind::G, 6).generatorCount() == 5);
  CHECK(Presentation(Kind::H, 10).generatorCount() == 10);
  CHECK(raises([] { Presentation(Kind::H, 5); }, Err::InvalidInput));
  CHECK(raises([] { Presentation(Kind::G, 4); }, Err::InvalidInput));
  CHECK(raises([] { Presentation(Kind::H, 7); }, Err::InvalidInput));
}

TEST_CASE("structural validation checks counts and half-turn quality") {
  Representation rep = symmetricHyperelliptic(6);
  CHECK_NOTHROW(validateRep(rep));

  Representation tooFew = rep;
  tooFew.gens.pop_back();
  CHECK(raises([&] { validateStructure(tooFew); }, Err::InvalidInput));

  Representation notHalfTurn = rep;
  notHalfTurn.gens[2] = translationAlong(1.0);
  CHECK_NOTHROW(validateStructure(notHalfTurn)); // structure alone does not look at traces
  CHECK(raises([&] { validateRep(notHalfTurn); }, Err::InvalidInput));
}

TEST_CASE("word evaluation multiplies images right to left") {
  Representation rep = symmetricHyperelliptic(6);

  CHECK(distUpToSign(evalWord(rep, Word{}), ProjMatrix::identity()) == 0.0);
  CHECK(supNormDist(evalWord(rep, Word{{3, 1}}), rep.image(3)) < 1e-15);
  CHECK(distUpToSign(evalWord(rep, Word{{2, 1}, {2, 1}}), ProjMatrix::identity()) < 1e-12);

  // rightmost letter acts first: w = [2, 3] evaluates to image(2) * image(3)
  ProjMatrix prod = evalWord(rep, Word{{2, 1}, {3, 1}});
  CHECK(supNormDist(prod, rep.image(2) * rep.image(3)) < 1e-14);

  CHECK(raises([&] { evalWord(rep, Word{{7, 1}}); }, Err::InvalidInput));
  CHECK(raises([&] { evalWord(rep, Word{{1, 2}}); }, Err::InvalidInput));
}

TEST_CASE("relation residuals vanish on exact representations and grow with perturbations") {
  Representation seed = symmetricHyperelliptic(6);
  CHECK(relationResidual(seed) < 1e-9);

  Representation trivialG;
  trivialG.pres = Presentation(Kind::G, 6);
  trivialG.gens.assign(5, ProjMatrix::identity());
  CHECK(relationResidual(trivialG) == 0.0);

  auto perturbed = [&](double eps) {
    Representation rep = seed;
    rep.gens[2] = rep.gens[2] * ProjMatrix(std::exp(eps), 0.0, 0.0, std::exp(-eps));
    return relationResidual(rep);
  };
  double small = perturbed(1e-5);
  double large = perturbed(1e-3);
  CHECK(small > 0.0);
  CHECK(large > small);
  CHECK(large > 1e-4);
}

TEST_CASE("relation residuals are conjugation invariant") {
  Representation seed = symmetricHyperelliptic(8);
  Representation even = gFromR(seed);
  Rng rng(21);
  for (int k = 0; k < 20; ++k) {
    ProjMatrix m = testsupport::randomProjMatrix(rng);
    Representation conj = even;
    for (ProjMatrix& g : conj.gens) g = m * g * m.inverse();
    CHECK(std::abs(relationResidual(conj) - relationResidual(even)) < 1e-8);
  }
}

TEST_CASE("the even-subgroup representation multiplies the last image onto each generator") {
  Representation seed = symmetricHyperelliptic(6);
  Representation even = gFromR(seed);
  CHECK(even.pres.kind == Kind::G);
  CHECK(even.gens.size() == 5);
  CHECK(relationResidual(even) < 1e-9);

  for (int i = 1; i <= 5; ++i)
    CHECK(supNormDist(even.image(i), seed.image(6) * seed.image(i)) < 1e-14);

  // g_2 g_1^{-1} agrees with the length-four word in the involution family
  ProjMatrix lhs = evalWord(even, Word{{2, 1}, {1, -1}});
  ProjMatrix rhs = evalWord(seed, Word{{6, 1}, {2, 1}, {1, 1}, {6, 1}});
  CHECK(distUpToSign(lhs, rhs) < 1e-12);

  // constant involution family: every even generator collapses to the identity
  Representation constant;
  constant.pres = Presentation(Kind::H, 6);
  constant.gens.assign(6, reflection(InteriorPoint(0.3, 1.2)));
  Representation constantEven = gFromR(constant);
  for (const ProjMatrix& g : constantEven.gens)
    CHECK(distUpToSign(g, ProjMatrix::identity()) < 1e-14);

  Representation broken = seed;
  broken.gens[1] = reflection(InteriorPoint(5.0, 0.1));
  CHECK(raises([&] { gFromR(broken); }, Err::InvalidInput));
}

TEST_CASE("the inverse passage recovers the involution family from the even one") {
  for (int n : {6, 8}) {
    Representation seed = symmetricHyperelliptic(n);
    Representation even = gFromR(seed);
    Representation back = hFromG(even, seed.image(n));
    CHECK(back.pres.kind == Kind::H);
    CHECK(testsupport::maxGenDist(back, seed) < 1e-10);
  }

  Representation seed = symmetricHyperelliptic(6);
  Representation even = gFromR(seed);
  CHECK(raises([&] { hFromG(even, reflection(InteriorPoint(4.0, 0.3))); },
               Err::NotHyperellipticInvolution));
  CHECK(raises([&] { hFromG(even, translationAlong(1.0)); }, Err::NotHyperellipticInvolution));
  CHECK(raises([&] { hFromG(seed, seed.image(6)); }, Err::InvalidInput));
}
