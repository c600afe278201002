#include "geom2.hpp"

#include <algorithm>
#include <cmath>

namespace fibretool {

const char* errName(Err e) {
  switch (e) {
    case Err::InvalidMatrix: return "InvalidMatrix";
    case Err::InvalidPoint: return "InvalidPoint";
    case Err::InvalidInput: return "InvalidInput";
    case Err::DomainError: return "DomainError";
    case Err::DegenerateIntersection: return "DegenerateIntersection";
    case Err::PointNotOnAxis: return "PointNotOnAxis";
    case Err::NotInV: return "NotInV";
    case Err::NotInMaximalComponent: return "NotInMaximalComponent";
    case Err::NotHyperellipticInvolution: return "NotHyperellipticInvolution";
    case Err::NotSameEquidistant: return "NotSameEquidistant";
    case Err::NotAFibrePair: return "NotAFibrePair";
    case Err::MismatchedBase: return "MismatchedBase";
    case Err::NotAPointTriple: return "NotAPointTriple";
    case Err::OutOfRange: return "OutOfRange";
    case Err::ParseError: return "ParseError";
    case Err::IoError: return "IoError";
    case Err::InternalError: return "InternalError";
  }
  return "UnknownError";
}

void fail(Err code, const std::string& what) { throw FtError(code, what); }

InteriorPoint::InteriorPoint(double px, double py) : x(px), y(py) {
  if (!std::isfinite(x) || !std::isfinite(y))
    fail(Err::InvalidPoint, "interior point coordinates must be finite");
  if (!(y > kEpsY))
    fail(Err::InvalidPoint, "interior point height must exceed " + std::to_string(kEpsY) +
                                ", got " + std::to_string(y));
}

BoundaryPoint BoundaryPoint::at(double x) {
  if (!std::isfinite(x)) fail(Err::InvalidPoint, "finite boundary point must be finite");
  BoundaryPoint p;
  p.x = x;
  return p;
}

bool samePoint(const BoundaryPoint& p, const BoundaryPoint& q, double tol) {
  if (p.atInf || q.atInf) return p.atInf && q.atInf;
  return std::abs(p.x - q.x) <= tol * std::max({1.0, std::abs(p.x), std::abs(q.x)});
}

double circleAngle(const BoundaryPoint& p) {
  if (p.atInf) return 0.0;
  double th = std::atan2(-2.0 * p.x, p.x * p.x - 1.0);
  if (th < 0.0) th += 2.0 * M_PI;
  return th;
}

ProjMatrix::ProjMatrix(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    fail(Err::InvalidMatrix, "matrix entries must be finite");
  double det = a * d - b * c;
  if (!(det > 0.0))
    fail(Err::InvalidMatrix, "matrix determinant must be positive, got " + std::to_string(det));
  double s = std::sqrt(det);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
}

ProjMatrix ProjMatrix::fromUnitDeterminant(double a_, double b_, double c_, double d_,
                                           double detTol) {
  if (!std::isfinite(a_) || !std::isfinite(b_) || !std::isfinite(c_) || !std::isfinite(d_))
    fail(Err::InvalidMatrix, "matrix entries must be finite");
  double det = a_ * d_ - b_ * c_;
  if (!(std::abs(det - 1.0) <= detTol))
    fail(Err::InvalidMatrix,
         "matrix determinant must be within " + std::to_string(detTol) + " of one, got " +
             std::to_string(det));
  // Entries are kept bit-exact (no renormalization), so serialization
  // round-trips are stable byte for byte.
  ProjMatrix m;
  m.a = a_;
  m.b = b_;
  m.c = c_;
  m.d = d_;
  return m;
}

ProjMatrix ProjMatrix::operator*(const ProjMatrix& o) const {
  return ProjMatrix(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

ProjMatrix ProjMatrix::inverse() const { return ProjMatrix(d, -b, -c, a); }

double ProjMatrix::supNorm() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

ProjMatrix ProjMatrix::signCanonical() const {
  bool flip = (a < 0.0) || (a == 0.0 && b < 0.0);
  ProjMatrix r = *this;
  if (flip) {
    r.a = -r.a;
    r.b = -r.b;
    r.c = -r.c;
    r.d = -r.d;
  }
  return r;
}

double supNormDist(const ProjMatrix& m, const ProjMatrix& n) {
  return std::max({std::abs(m.a - n.a), std::abs(m.b - n.b), std::abs(m.c - n.c),
                   std::abs(m.d - n.d)});
}

double distUpToSign(const ProjMatrix& m, const ProjMatrix& n) {
  double plus = std::max({std::abs(m.a + n.a), std::abs(m.b + n.b), std::abs(m.c + n.c),
                          std::abs(m.d + n.d)});
  return std::min(supNormDist(m, n), plus);
}

Geodesic::Geodesic(BoundaryPoint s, BoundaryPoint d) : src(s), dst(d) {
  if (samePoint(src, dst)) fail(Err::InvalidInput, "geodesic endpoints must be distinct");
}

EquidistantRay::EquidistantRay(double k_) : k(k_) {
  if (!(k > 0.0) || !std::isfinite(k))
    fail(Err::InvalidInput, "equidistant ray slope parameter must be positive");
}

IsometryClass classify(const ProjMatrix& m) {
  IsometryClass out;
  if (distUpToSign(m, ProjMatrix::identity()) < kEpsClass) {
    out.kind = IsoKind::Identity;
    return out;
  }
  double tr = m.trace();
  double atr = std::abs(tr);
  if (atr > 2.0 + kEpsClass) {
    out.kind = IsoKind::Hyperbolic;
    double s = std::sqrt(tr * tr - 4.0);
    if (std::abs(m.c) <= 1e-14 * m.supNorm()) {
      // Upper triangular: fixed points are infinity and b / (d - a).
      BoundaryPoint finite = BoundaryPoint::at(m.b / (m.d - m.a));
      if (std::abs(m.a) > std::abs(m.d)) {
        out.attractor = BoundaryPoint::inf();
        out.repeller = finite;
      } else {
        out.attractor = finite;
        out.repeller = BoundaryPoint::inf();
      }
      return out;
    }
    // Roots of c x^2 + (d - a) x - b = 0; the attractor is the root where
    // |c x + d| = |tr + sign(tr) s| / 2 > 1. Compute the larger-magnitude
    // numerator directly, the other root from the product -b/c.
    double sa = (tr >= 0.0) ? 1.0 : -1.0;
    double u = m.a - m.d;
    double attNum = u + sa * s;
    double repNum = u - sa * s;
    double att, rep;
    if (std::abs(attNum) >= std::abs(repNum)) {
      att = attNum / (2.0 * m.c);
      rep = -m.b / (m.c * att);
    } else {
      rep = repNum / (2.0 * m.c);
      att = -m.b / (m.c * rep);
    }
    out.attractor = BoundaryPoint::at(att);
    out.repeller = BoundaryPoint::at(rep);
    return out;
  }
  if (atr < 2.0 - kEpsClass) {
    out.kind = IsoKind::Elliptic;
    if (m.c == 0.0)
      fail(Err::InternalError, "elliptic matrix with zero lower-left entry");
    double root = std::sqrt(4.0 - tr * tr);
    double sc = (m.c > 0.0) ? 1.0 : -1.0;
    out.fixedPoint = InteriorPoint((m.a - m.d) / (2.0 * m.c), sc * root / (2.0 * m.c));
    return out;
  }
  out.kind = IsoKind::Parabolic;
  return out;
}

InteriorPoint apply(const ProjMatrix& m, const InteriorPoint& p) {
  std::complex<double> w = (m.a * p.z() + m.b) / (m.c * p.z() + m.d);
  return InteriorPoint(w.real(), w.imag());
}

BoundaryPoint apply(const ProjMatrix& m, const BoundaryPoint& p) {
  if (p.atInf) {
    if (std::abs(m.c) <= 1e-13 * (std::abs(m.a) + std::abs(m.c)))
      return BoundaryPoint::inf();
    return BoundaryPoint::at(m.a / m.c);
  }
  double num = m.a * p.x + m.b;
  double den = m.c * p.x + m.d;
  if (std::abs(den) <= 1e-13 * (std::abs(m.c * p.x) + std::abs(m.d)))
    return BoundaryPoint::inf();
  return BoundaryPoint::at(num / den);
}

ProjMatrix reflection(const InteriorPoint& p) {
  return ProjMatrix(-p.x / p.y, (p.x * p.x + p.y * p.y) / p.y, -1.0 / p.y, p.x / p.y);
}

InteriorPoint halfTurnCenter(const ProjMatrix& m, double traceTol) {
  double tr = m.trace();
  if (std::abs(tr) > traceTol * std::max(1.0, m.supNorm()))
    fail(Err::DomainError, "not a half-turn: |trace| = " + std::to_string(std::abs(tr)));
  if (m.c == 0.0) fail(Err::InternalError, "half-turn with zero lower-left entry");
  double root = std::sqrt(std::max(0.0, 4.0 - tr * tr));
  double sc = (m.c > 0.0) ? 1.0 : -1.0;
  return InteriorPoint((m.a - m.d) / (2.0 * m.c), sc * root / (2.0 * m.c));
}

InteriorPoint pointOnRay(const EquidistantRay& d, double q, double u) {
  if (!(q > 0.0)) fail(Err::DomainError, "ray base coordinate must be positive");
  if (!(u > 0.0)) fail(Err::DomainError, "ray parameter must be positive");
  double t = q / ((1.0 + 1.0 / (d.k * d.k)) * (1.0 + u));
  return InteriorPoint(t, t / d.k);
}

namespace {

// Center and squared radius of the half-circle with finite feet p, q.
void circleOf(double p, double q, double& m, double& r2) {
  m = 0.5 * (p + q);
  double r = 0.5 * std::abs(p - q);
  r2 = r * r;
}

} // namespace

std::optional<InteriorPoint> intersectGeodesics(const Geodesic& g1, const Geodesic& g2) {
  const double tol = 1e-12;
  bool s11 = samePoint(g1.src, g2.src, tol), s12 = samePoint(g1.src, g2.dst, tol);
  bool s21 = samePoint(g1.dst, g2.src, tol), s22 = samePoint(g1.dst, g2.dst, tol);
  if ((s11 && s22) || (s12 && s21))
    fail(Err::DegenerateIntersection, "geodesics share both endpoints");
  if (s11 || s12 || s21 || s22) return std::nullopt;

  double a1 = circleAngle(g1.src), a2 = circleAngle(g1.dst);
  double arc = a2 - a1;
  if (arc < 0.0) arc += 2.0 * M_PI;
  auto inside = [&](const BoundaryPoint& p) {
    double t = circleAngle(p) - a1;
    if (t < 0.0) t += 2.0 * M_PI;
    return t > 0.0 && t < arc;
  };
  if (static_cast<int>(inside(g2.src)) + static_cast<int>(inside(g2.dst)) != 1)
    return std::nullopt;

  bool v1 = g1.src.atInf || g1.dst.atInf;
  bool v2 = g2.src.atInf || g2.dst.atInf;
  if (v1 && v2) return std::nullopt; // both vertical: share infinity, handled above
  if (v1 || v2) {
    const Geodesic& vert = v1 ? g1 : g2;
    const Geodesic& circ = v1 ? g2 : g1;
    double x0 = vert.src.atInf ? vert.dst.x : vert.src.x;
    double m, r2;
    circleOf(circ.src.x, circ.dst.x, m, r2);
    double y2 = r2 - (x0 - m) * (x0 - m);
    if (y2 <= kEpsY * kEpsY) return std::nullopt;
    return InteriorPoint(x0, std::sqrt(y2));
  }
  double m1, r1sq, m2, r2sq;
  circleOf(g1.src.x, g1.dst.x, m1, r1sq);
  circleOf(g2.src.x, g2.dst.x, m2, r2sq);
  if (m1 == m2) return std::nullopt; // concentric half-circles are nested
  double x = (r1sq - r2sq + m2 * m2 - m1 * m1) / (2.0 * (m2 - m1));
  double y2 = r1sq - (x - m1) * (x - m1);
  if (y2 <= kEpsY * kEpsY) return std::nullopt;
  return InteriorPoint(x, std::sqrt(y2));
}

ProjMatrix translationAlong(double phi) {
  if (!std::isfinite(phi)) fail(Err::InvalidInput, "translation length must be finite");
  double r = std::exp(0.5 * phi);
  return ProjMatrix(r, 0.0, 0.0, 1.0 / r);
}

double vCoordinate(const ProjMatrix& f) {
  ProjMatrix m = f;
  if (m.a < 0.0 || (m.a == 0.0 && m.b < 0.0)) m = m.signCanonical();
  double scale = std::max(1.0, m.supNorm());
  if (std::abs(m.b) > 1e-9 * scale || std::abs(m.c) > 1e-9 * scale)
    fail(Err::NotInV, "matrix is not diagonal up to sign");
  if (!(m.a > 0.0) || !(m.d > 0.0))
    fail(Err::NotInV, "diagonal matrix has nonpositive ratio");
  return std::log(m.a / m.d);
}

Geodesic axisOf(const ProjMatrix& m) {
  IsometryClass cls = classify(m);
  if (cls.kind != IsoKind::Hyperbolic)
    fail(Err::DomainError, "axis requested for a non-hyperbolic matrix");
  return Geodesic(*cls.repeller, *cls.attractor);
}

std::pair<ProjMatrix, ProjMatrix> splitAtAxisPoint(const ProjMatrix& g, const InteriorPoint& c) {
  Geodesic axis = axisOf(g);
  ProjMatrix n = normalizeTo(axis);
  InteriorPoint ct = apply(n, c);
  if (std::abs(ct.x) / ct.y > kEpsAxis)
    fail(Err::PointNotOnAxis, "splitting point lies off the axis, offset " +
                                  std::to_string(std::abs(ct.x) / ct.y));
  ProjMatrix t = reflection(c);
  ProjMatrix s = t * g;
  if (std::abs(s.trace()) > kEpsGeneral * std::max(1.0, s.supNorm()))
    fail(Err::PointNotOnAxis, "split cofactor is not a half-turn");
  return {t, s};
}

namespace {

ProjMatrix baseMapTo(const Geodesic& g) {
  if (g.src.atInf) return ProjMatrix(1.0, -g.dst.x, 0.0, 1.0);
  if (g.dst.atInf) return ProjMatrix(0.0, -1.0, 1.0, -g.src.x);
  double s = g.src.x, d = g.dst.x;
  if (d > s) return ProjMatrix(1.0, -d, 1.0, -s);
  return ProjMatrix(-1.0, d, 1.0, -s);
}

InteriorPoint geodesicMarker(const Geodesic& g) {
  if (g.src.atInf) return InteriorPoint(g.dst.x, 1.0);
  if (g.dst.atInf) return InteriorPoint(g.src.x, 1.0);
  double m = 0.5 * (g.src.x + g.dst.x);
  double r = 0.5 * std::abs(g.src.x - g.dst.x);
  return InteriorPoint(m, r);
}

ProjMatrix dilationNormalizing(double h) {
  double s = std::sqrt(h);
  return ProjMatrix(1.0 / s, 0.0, 0.0, s);
}

} // namespace

ProjMatrix normalizeTo(const Geodesic& g) {
  ProjMatrix base = baseMapTo(g);
  InteriorPoint marker = apply(base, geodesicMarker(g));
  return dilationNormalizing(marker.y) * base;
}

ProjMatrix normalizeTo(const Geodesic& g, const InteriorPoint& ref) {
  ProjMatrix n0 = normalizeTo(g);
  InteriorPoint r = apply(n0, ref);
  if (std::abs(r.x) <= kEpsAxis * r.y) return dilationNormalizing(r.y) * n0;
  if (r.x < 0.0)
    fail(Err::DomainError, "reference point lies on the negative side of the geodesic");
  return dilationNormalizing(r.x) * n0;
}

} // namespace fibretool
