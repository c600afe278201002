#pragma once

// Presentations of the two group families, words in their generators,
// evaluation of representations, relation residuals, and the passage between
// a representation by involutions and the induced even-subgroup
// representation.
//
// Family H (n generators r_1..r_n): relations r_i^2 = 1 and r_n...r_2 r_1 = 1.
// Family G (n-1 generators g_i = r_n r_i): two relations, the alternating
// products g_{n-1} g_{n-2}^{-1} g_{n-3} ... g_2^{-1} g_1 = 1 and its
// sign-mirrored twin.

#include <vector>

#include "geom2.hpp"

namespace fibretool {

enum class Kind { H, G };

struct Presentation {
  Kind kind = Kind::H;
  int n = 6; // even, >= 6
  Presentation() = default;
  Presentation(Kind k, int n_);
  int generatorCount() const { return kind == Kind::H ? n : n - 1; }
};

// One letter of a word: a 1-based generator index and an exponent of +-1.
struct Letter {
  int index = 1;
  int exponent = 1;
};
using Word = std::vector<Letter>;

struct Representation {
  Presentation pres;
  std::vector<ProjMatrix> gens; // gens[i-1] is the image of generator i
  const ProjMatrix& image(int index) const { return gens.at(static_cast<size_t>(index) - 1); }
};

// Structural validation alone: presentation invariants and generator count.
void validateStructure(const Representation& rep);

// Structural validation plus, for family H, the requirement that every
// image is a half-turn within traceTol.
void validateRep(const Representation& rep, double traceTol = kEpsGeneral);

// Defining relators as words. For H: r_1^2, ..., r_n^2, then the long
// relator r_n ... r_2 r_1. For G: the two alternating relators.
std::vector<Word> definingRelators(const Presentation& pres);

// Ordered product of generator images; the rightmost letter acts first on
// points. Empty word evaluates to the identity.
ProjMatrix evalWord(const Representation& rep, const Word& w);

// Maximum over the defining relations of the sign-minimized sup-norm
// distance between the evaluated relator and the identity.
double relationResidual(const Representation& rep);

// Induced even-subgroup representation: g_i -> (image of r_n)(image of r_i).
Representation gFromR(const Representation& repH, double residualTol = 1e-6);

// Inverse passage: r_n -> r and r_i -> r g_i, after checking that
// conjugation by the half-turn r inverts every generator image.
Representation hFromG(const Representation& repG, const ProjMatrix& r, double tol = 1e-6);

} // namespace fibretool
