#include "groups.hpp"

#include <cmath>
#include <string>

#include "ddarith.hpp"

namespace fibretool {

Presentation::Presentation(Kind k, int n_) : kind(k), n(n_) {
  if (n < 6 || n % 2 != 0)
    fail(Err::InvalidInput, "presentation size must be an even integer >= 6, got " +
                                std::to_string(n));
}

void validateStructure(const Representation& rep) {
  Presentation check(rep.pres.kind, rep.pres.n); // re-run invariants
  if (rep.gens.size() != static_cast<size_t>(rep.pres.generatorCount()))
    fail(Err::InvalidInput, "generator image count " + std::to_string(rep.gens.size()) +
                                " does not match the presentation, expected " +
                                std::to_string(rep.pres.generatorCount()));
}

void validateRep(const Representation& rep, double traceTol) {
  validateStructure(rep);
  if (rep.pres.kind == Kind::H) {
    for (size_t i = 0; i < rep.gens.size(); ++i) {
      const ProjMatrix& m = rep.gens[i];
      if (std::abs(m.trace()) > traceTol * std::max(1.0, m.supNorm()))
        fail(Err::InvalidInput, "generator " + std::to_string(i + 1) +
                                    " of an involution family is not a half-turn");
    }
  }
}

std::vector<Word> definingRelators(const Presentation& pres) {
  std::vector<Word> rels;
  if (pres.kind == Kind::H) {
    for (int i = 1; i <= pres.n; ++i) rels.push_back(Word{{i, 1}, {i, 1}});
    Word longRel;
    for (int i = pres.n; i >= 1; --i) longRel.push_back({i, 1});
    rels.push_back(longRel);
  } else {
    Word rel1, rel2;
    for (int i = pres.n - 1; i >= 1; --i) {
      rel1.push_back({i, i % 2 == 1 ? 1 : -1});
      rel2.push_back({i, i % 2 == 0 ? 1 : -1});
    }
    rels.push_back(rel1);
    rels.push_back(rel2);
  }
  return rels;
}

ProjMatrix evalWord(const Representation& rep, const Word& w) {
  ProjMatrix acc;
  for (const Letter& l : w) {
    if (l.index < 1 || l.index > rep.pres.generatorCount())
      fail(Err::InvalidInput, "word letter index " + std::to_string(l.index) +
                                  " is out of range for the presentation");
    if (l.exponent != 1 && l.exponent != -1)
      fail(Err::InvalidInput, "word letter exponent must be +-1");
    const ProjMatrix& m = rep.image(l.index);
    acc = acc * (l.exponent == 1 ? m : m.inverse());
  }
  return acc;
}

double relationResidual(const Representation& rep) {
  validateStructure(rep); // half-turn quality is a separate, named check for callers
  // Evaluate the relators in double-double: stiff representations have
  // generator entries spanning many orders of magnitude, and a plain double
  // product would report eps * ||partial product|| evaluation noise instead
  // of a property of the stored matrices.
  double worst = 0.0;
  for (const Word& w : definingRelators(rep.pres)) {
    ddnum::DDMat acc = ddnum::ddIdentity();
    for (const Letter& l : w) {
      ddnum::DDMat m = ddnum::ddPromote(rep.image(l.index));
      acc = ddnum::ddMul2(acc, l.exponent == 1 ? m : ddnum::ddAdjugate(m));
    }
    worst = std::max(worst, ddnum::ddDistToIdentity(acc));
  }
  return worst;
}

Representation gFromR(const Representation& repH, double residualTol) {
  if (repH.pres.kind != Kind::H)
    fail(Err::InvalidInput, "expected a representation of the involution family");
  validateRep(repH);
  double res = relationResidual(repH);
  if (res >= residualTol)
    fail(Err::InvalidInput,
         "input relation residual " + std::to_string(res) + " exceeds " +
             std::to_string(residualTol));
  Representation out;
  out.pres = Presentation(Kind::G, repH.pres.n);
  const ProjMatrix& rn = repH.image(repH.pres.n);
  for (int i = 1; i <= repH.pres.n - 1; ++i) out.gens.push_back(rn * repH.image(i));
  return out;
}

Representation hFromG(const Representation& repG, const ProjMatrix& r, double tol) {
  if (repG.pres.kind != Kind::G)
    fail(Err::InvalidInput, "expected a representation of the even subgroup family");
  validateRep(repG);
  if (std::abs(r.trace()) > kEpsGeneral * std::max(1.0, r.supNorm()))
    fail(Err::NotHyperellipticInvolution, "the supplied isometry is not a half-turn");
  for (int i = 1; i <= repG.pres.generatorCount(); ++i) {
    const ProjMatrix& g = repG.image(i);
    double dev = distUpToSign(r * g * r.inverse(), g.inverse());
    if (dev > tol * std::max(1.0, g.supNorm()))
      fail(Err::NotHyperellipticInvolution,
           "conjugation fails to invert generator " + std::to_string(i) + ", deviation " +
               std::to_string(dev));
  }
  Representation out;
  out.pres = Presentation(Kind::H, repG.pres.n);
  for (int i = 1; i <= repG.pres.n - 1; ++i) out.gens.push_back(r * repG.image(i));
  out.gens.push_back(r);
  return out;
}

} // namespace fibretool
