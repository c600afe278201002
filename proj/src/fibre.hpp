// Inverse direction: solvers for the two boundary-data closure problems on
// equidistant rays (a quadratic chain-pair step and a cubic closure step),
// recovery of a translation length conjugating one half-turn to another,
// reconstruction of an even-family representation from its two
// involution-family images, and the fibre parametrization that produces all
// second images compatible with a given first image.
#pragma once

#include <vector>

#include "geom2.hpp"
#include "groups.hpp"

namespace fibretool {

// Boundary data for the chain-pair solver: feet 0 < b3 < e3 of the current
// cycle and the slopes k2, k3 > 0 of the two equidistant rays that must
// receive one half-turn center each.
struct ChainPairInput {
  double b3, e3, k2, k3;
  ChainPairInput(double b3_, double e3_, double k2_, double k3_);
};

struct ChainPairResult {
  double u;          // unique positive root of the chain quadratic
  InteriorPoint p2;  // center on the slope-k2 ray
  InteriorPoint p3;  // center on the slope-k3 ray
};

// Place p3 and p2 on their rays so that reflecting (b3, e3) through p3 and
// then p2 lands on (infinity, 0) while keeping the six-point boundary cycle
// positive. The parameter u solves
//   (1+k3^2)u^2 + u + (1 - b3/e3)(k3^2 u - k2^2 u - k2^2) = 0,
// which has exactly one positive root.
ChainPairResult solveChainPair(const ChainPairInput& in);

// Boundary data for the closure cubic: feet 0 < b < e of the cycle after
// all free centers are placed, slopes k2, k3, k4 of the last three
// equidistant rays, and the height d1 of the base half-turn center on the
// axis (carried for completeness; the cubic itself does not involve it).
// The gap e - b is stored separately because the cycle collapses
// exponentially fast: for longer presentations the feet agree in most of
// their digits and the difference of the rounded feet would lose the
// relative precision the cubic coefficients need.
struct ClosureConfig {
  double b, e, gap, k2, k3, k4, d1;
  ClosureConfig(double b_, double e_, double k2_, double k3_, double k4_, double d1_);
  // Build from the leading foot and an exactly-propagated gap, bypassing
  // the cancellation in e - b.
  static ClosureConfig fromGap(double b_, double gap_, double k2_, double k3_, double k4_,
                               double d1_);
};

// The unique w > v solving
//   (e(1+k4^2)/(e-b)) v w (w-v) + (e/(e-b)+k4^2) w (w-v)
//     + (1+k2^2+k3^2)(v+1)(w-v) - k2^2 k3^2 v (v+1) = 0.
// w encodes the alternating product of the four remaining translation
// lengths; v parameterizes the provisional choice of the fourth center.
double closureForward(const ClosureConfig& cfg, double v);

// The unique v > 0 with closureForward(cfg, v) = wTarget, by monotone
// bracketing on [1e-12, 1e12] (OutOfRange if the target is not enclosed).
double closureInvert(const ClosureConfig& cfg, double wTarget);

// The translation length phi along g conjugating the half-turn a to the
// half-turn c. Their centers must lie on the same equidistant curve of g
// (same side, same offset within 1e-7), else NotSameEquidistant.
double solveConjTranslation(const ProjMatrix& a, const ProjMatrix& c, const Geodesic& g);

// Rebuild the even-family representation from its two involution-family
// images. Requires matching images of the last generator (MismatchedBase
// otherwise), matching images of generator n-1 and a vanishing alternating
// sum of conjugator lengths (NotAFibrePair otherwise).
Representation reconstruct(const Representation& rep1, const Representation& rep2);

// The member of the fibre over rep1 selected by the n-6 chart values
// lambda: free half-turn centers are placed at logistic fractions of their
// admissible segments, the last four are completed by the chain-pair and
// closure solvers, and the provisional fourth choice is corrected so the
// alternating-sum constraint holds. The result does not depend on
// provisionalV (exposed for exactly that verification).
Representation fibrePoint(const Representation& rep1, const std::vector<double>& lambda,
                          double provisionalV = 1.0);

} // namespace fibretool
