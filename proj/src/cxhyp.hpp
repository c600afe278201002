// Complex-hyperbolic machinery: a three-dimensional Hermitian space of
// signature ++-, the Kähler-potential segment integral, the signed triangle
// area from pairwise inner products, positivity of boundary cycles inside a
// complex geodesic, the embedding of half-plane isometries along the
// {z2 = 0} complex geodesic, and the area (Toledo) invariant of an embedded
// representation.
#pragma once

#include <array>
#include <complex>
#include <vector>

#include "geom2.hpp"
#include "groups.hpp"

namespace fibretool {

using Cx = std::complex<double>;

// A vector of the Hermitian space; the form is fixed as diag(1, 1, -1).
struct HermVector {
  Cx z1, z2, z3;
};

// <p, q> = z1*conj(w1) + z2*conj(w2) - z3*conj(w3).
Cx hermProduct(const HermVector& p, const HermVector& q);

// Squared coordinate norm |z1|^2 + |z2|^2 + |z3|^2 (a positive scale; not
// the Hermitian form).
double coordNormSq(const HermVector& p);

// Sign classification helpers: negative self-product beyond the relative
// tolerance 1e-10 -> interior; within it -> boundary (isotropic).
bool isInteriorVector(const HermVector& p);
bool isIsotropicVector(const HermVector& p);

// Matrix of pairwise inner products g[i][j] = <p_{i+1}, p_{j+1}>.
struct GramTriple {
  std::array<std::array<Cx, 3>, 3> g;
};

GramTriple gramTriple(const HermVector& p1, const HermVector& p2, const HermVector& p3);

// Integral of the Kähler potential based at u along the geodesic segment
// [p1, p2]: -pi/2 + (1/2) Arg(<u,p2><p2,p1>/<u,p1>), all points interior.
double kahlerSegmentIntegral(const HermVector& u, const HermVector& p1, const HermVector& p2);

// Signed area (1/2) arg(-g12 g23 g31) of the geodesic triangle spanned by
// three points of the closed ball; the guard Re(-g12 g23 g31) >= -1e-10
// (relative) keeps |area| <= pi/2 and rejects triples outside the ball.
double triangleArea31(const HermVector& p1, const HermVector& p2, const HermVector& p3);

// True iff >= 3 pairwise non-proportional isotropic points all lie in the
// complex geodesic spanned by the first two and appear there in positive
// cyclic order. Non-coplanar input returns false; a proportional pair or a
// non-isotropic point is an error.
bool isPositiveCycleCG(const std::vector<HermVector>& points);

// 3x3 complex matrix acting on HermVector coordinates.
struct Mat3 {
  std::array<std::array<Cx, 3>, 3> e;

  static Mat3 identity();
  Mat3 operator*(const Mat3& o) const;
  HermVector operator*(const HermVector& p) const;
  double supNorm() const;
};

double supNormDist(const Mat3& m, const Mat3& n);

// Representation by 3x3 matrices preserving the form, as produced by the
// embedding below.
struct Rep3 {
  Presentation pres{Kind::H, 6};
  std::vector<Mat3> gens;

  const Mat3& image(int index) const { return gens.at(static_cast<size_t>(index) - 1); }
};

// Image of a half-plane isometry under the standard identification with the
// isometries of the {z2 = 0} complex geodesic (disc coordinate z1/z3). The
// map is exactly multiplicative on the stored matrix representatives; the
// two lifts of a projective matrix map to images differing by
// diag(-1, 1, -1).
Mat3 embedMatrix(const ProjMatrix& m);

// Apply embedMatrix to every generator image.
Rep3 embedFuchsian(const Representation& rep);

// Largest deviation of a defining-relator image from the set
// {I, -I, D, -D} with D = diag(-1, 1, -1) (the lift ambiguity of the
// embedding).
double relationResidualCG(const Rep3& rep);

// Area invariant: fan sum of triangleArea31 over the relator orbit polygon
// of the interior basepoint x0 (first relator counted twice for the even
// family, as in the half-plane area invariant). A degenerate fan triple at
// x0 triggers one retry from a fixed nearby basepoint.
double toledoInvariant(const Rep3& rep, const HermVector& x0);

// Same, at the default basepoint (0, 0, 1).
double toledoInvariant(const Rep3& rep);

} // namespace fibretool
