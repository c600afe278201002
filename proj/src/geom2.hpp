#pragma once

// Plane hyperbolic geometry in the upper half-plane model: interior and
// boundary points, unit-determinant 2x2 real matrices held up to global sign,
// isometry classification, axes, reflections in points, equidistant rays,
// geodesic intersection, and normalization maps onto the vertical axis.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fibretool {

enum class Err {
  InvalidMatrix,
  InvalidPoint,
  InvalidInput,
  DomainError,
  DegenerateIntersection,
  PointNotOnAxis,
  NotInV,
  NotInMaximalComponent,
  NotHyperellipticInvolution,
  NotSameEquidistant,
  NotAFibrePair,
  MismatchedBase,
  NotAPointTriple,
  OutOfRange,
  ParseError,
  IoError,
  InternalError,
};

const char* errName(Err e);

class FtError : public std::runtime_error {
public:
  FtError(Err code, const std::string& what)
      : std::runtime_error(std::string(errName(code)) + ": " + what), code_(code) {}
  Err code() const noexcept { return code_; }

private:
  Err code_;
};

[[noreturn]] void fail(Err code, const std::string& what);

// Numerical policy, loosest to tightest: general comparison tolerance for
// accumulated products, on-axis tolerance, trace-vs-2 classification margin,
// construction-time determinant drift, minimum interior height.
inline constexpr double kEpsGeneral = 1e-8;
inline constexpr double kEpsAxis = 1e-8;
inline constexpr double kEpsClass = 1e-9;
inline constexpr double kEpsDet = 1e-10;
inline constexpr double kEpsY = 1e-12;

// A point x + iy of the open upper half-plane; construction rejects y <= kEpsY.
struct InteriorPoint {
  double x = 0.0;
  double y = 1.0;
  InteriorPoint() = default;
  InteriorPoint(double px, double py);
  std::complex<double> z() const { return {x, y}; }
};

// A point of the boundary circle: a finite real or the point at infinity.
struct BoundaryPoint {
  double x = 0.0;
  bool atInf = false;

  static BoundaryPoint inf() {
    BoundaryPoint p;
    p.atInf = true;
    return p;
  }
  static BoundaryPoint at(double x);
  bool isInf() const { return atInf; }
};

// Equality of boundary points; tol is relative for finite coordinates
// (tol = 0 means exact coordinate equality).
bool samePoint(const BoundaryPoint& p, const BoundaryPoint& q, double tol = 0.0);

// Angle in [0, 2*pi) of the image of a boundary point under the Cayley map
// z -> (z - i)/(z + i); infinity maps to angle 0.
double circleAngle(const BoundaryPoint& p);

// A 2x2 real matrix of determinant one, identified with its negative.
// Construction renormalizes a positive determinant to one and rejects the
// rest. Products are renormalized but never sign-flipped, so chains of
// multiplications are exactly associative up to rounding.
struct ProjMatrix {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  ProjMatrix() = default;
  ProjMatrix(double a_, double b_, double c_, double d_);
  static ProjMatrix identity() { return ProjMatrix(); }
  // Accept entries whose determinant is already within detTol of one and
  // keep them bit-exact (deserialization path; the regular constructor
  // renormalizes and so perturbs low bits).
  static ProjMatrix fromUnitDeterminant(double a_, double b_, double c_, double d_,
                                        double detTol = 1e-6);

  ProjMatrix operator*(const ProjMatrix& o) const;
  ProjMatrix inverse() const;
  double trace() const { return a + d; }
  double supNorm() const;
  // Representative with a > 0, or a == 0 and b > 0.
  ProjMatrix signCanonical() const;
};

double supNormDist(const ProjMatrix& m, const ProjMatrix& n);
// Entrywise sup-norm distance minimized over the global sign of n.
double distUpToSign(const ProjMatrix& m, const ProjMatrix& n);

// Oriented geodesic given by its distinct boundary endpoints.
struct Geodesic {
  BoundaryPoint src;
  BoundaryPoint dst;
  Geodesic(BoundaryPoint s, BoundaryPoint d);
};

// The ray (1 + i/k) R+, k > 0: the curve equidistant from the vertical axis
// geodesic G(inf, 0) on its positive side.
struct EquidistantRay {
  double k;
  explicit EquidistantRay(double k_);
};

enum class IsoKind { Identity, Elliptic, Parabolic, Hyperbolic };

struct IsometryClass {
  IsoKind kind = IsoKind::Identity;
  std::optional<BoundaryPoint> repeller;   // Hyperbolic only
  std::optional<BoundaryPoint> attractor;  // Hyperbolic only
  std::optional<InteriorPoint> fixedPoint; // Elliptic only
};

// Classify by |trace| against 2 with margin kEpsClass; matrices within
// kEpsClass of the identity (up to sign) are Identity.
IsometryClass classify(const ProjMatrix& m);

// Moebius action (a z + b) / (c z + d); boundary maps to boundary with exact
// handling of infinity and poles, interior maps to interior.
InteriorPoint apply(const ProjMatrix& m, const InteriorPoint& p);
BoundaryPoint apply(const ProjMatrix& m, const BoundaryPoint& p);

// The half-turn about p: trace zero, fixes p, squares to minus the identity.
ProjMatrix reflection(const InteriorPoint& p);

// Fixed point of a half-turn; rejects |trace| > traceTol * max(1, supNorm).
InteriorPoint halfTurnCenter(const ProjMatrix& m, double traceTol = kEpsAxis);

// The point (1 + i/k) * q / ((1 + k^-2)(1 + u)) of the ray, strictly on the
// positive-normal side of the geodesic G(q, 0); requires q > 0 and u > 0.
InteriorPoint pointOnRay(const EquidistantRay& d, double q, double u);

// Unique interior crossing if the endpoint pairs interlace on the boundary
// circle; empty when ultraparallel or sharing an endpoint; identical
// unordered endpoint pairs raise DegenerateIntersection.
std::optional<InteriorPoint> intersectGeodesics(const Geodesic& g1, const Geodesic& g2);

// diag(e^{phi/2}, e^{-phi/2}): translation by phi along G(inf, 0), acting as
// x -> e^phi x; vCoordinate is its inverse and rejects matrices that are not
// diagonal up to sign with positive ratio.
ProjMatrix translationAlong(double phi);
double vCoordinate(const ProjMatrix& f);

// Axis of a hyperbolic matrix, oriented repeller -> attractor.
Geodesic axisOf(const ProjMatrix& m);

// Split a hyperbolic g as a product of two half-turns, t * s = g up to sign,
// where t is the reflection in the given axis point c.
std::pair<ProjMatrix, ProjMatrix> splitAtAxisPoint(const ProjMatrix& g, const InteriorPoint& c);

// Map sending src -> inf and dst -> 0, left side of the oriented geodesic to
// the half-plane Re > 0. The canonical form fixes the remaining dilation
// freedom by sending a fixed reference point of the geodesic (its Euclidean
// apex, or the point at height one over a finite endpoint) to i. The ref
// form instead sends ref to 1 + i * offset (to i when ref lies on the
// geodesic); ref strictly on the negative side is a DomainError.
ProjMatrix normalizeTo(const Geodesic& g);
ProjMatrix normalizeTo(const Geodesic& g, const InteriorPoint& ref);

} // namespace fibretool
