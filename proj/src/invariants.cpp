#include "invariants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace fibretool {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEpsAngular = 1e-10; // cycle points must be distinct beyond this
constexpr double kEpsCoincide = 1e-13; // relative snap-to-zero for touching vertices

// Number of strict descents theta[i+1] < theta[i] around the cyclic list.
// A strictly counterclockwise cyclic sequence has exactly one.
int cyclicDescents(const std::vector<double>& theta) {
  int count = 0;
  size_t n = theta.size();
  for (size_t i = 0; i < n; ++i)
    if (theta[(i + 1) % n] < theta[i]) ++count;
  return count;
}

// Angle on the boundary circle of the disc model; interior points map to the
// open disc, so the angle is only meaningful for points near the boundary
// (used as an orientation fallback for nearly ideal triangles).
double approxCircleAngle(const TrianglePoint& p) {
  if (std::holds_alternative<BoundaryPoint>(p))
    return circleAngle(std::get<BoundaryPoint>(p));
  std::complex<double> z = std::get<InteriorPoint>(p).z();
  std::complex<double> w = (z - std::complex<double>(0, 1)) / (z + std::complex<double>(0, 1));
  double a = std::atan2(w.imag(), w.real());
  if (a < 0) a += 2 * kPi;
  return a;
}

bool sameVertex(const TrianglePoint& p, const TrianglePoint& q) {
  if (std::holds_alternative<BoundaryPoint>(p) != std::holds_alternative<BoundaryPoint>(q))
    return false;
  if (std::holds_alternative<BoundaryPoint>(p)) {
    const auto& a = std::get<BoundaryPoint>(p);
    const auto& b = std::get<BoundaryPoint>(q);
    if (a.isInf() || b.isInf()) return a.isInf() && b.isInf();
    return std::abs(a.x - b.x) <= kEpsCoincide * std::max({1.0, std::abs(a.x), std::abs(b.x)});
  }
  const auto& a = std::get<InteriorPoint>(p);
  const auto& b = std::get<InteriorPoint>(q);
  double scale = std::max({1.0, std::abs(a.x), std::abs(b.x), a.y, b.y});
  return std::hypot(a.x - b.x, a.y - b.y) <= kEpsCoincide * scale;
}

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// Unit tangent at the interior point v of the geodesic from v toward w.
Vec2 tangentToward(const InteriorPoint& v, const TrianglePoint& w) {
  bool wBoundary = std::holds_alternative<BoundaryPoint>(w);
  if (wBoundary && std::get<BoundaryPoint>(w).isInf()) return {0.0, 1.0};
  double wx, wy;
  if (wBoundary) {
    wx = std::get<BoundaryPoint>(w).x;
    wy = 0.0;
  } else {
    wx = std::get<InteriorPoint>(w).x;
    wy = std::get<InteriorPoint>(w).y;
  }
  if (wx == v.x) {
    // Vertical geodesic: straight up toward a higher point, down otherwise
    // (a finite boundary endpoint sits at height zero).
    return {0.0, wy > v.y ? 1.0 : -1.0};
  }
  // Semicircle centred on the real axis at m, equidistant from v and w.
  double m = ((v.x * v.x + v.y * v.y) - (wx * wx + wy * wy)) / (2.0 * (v.x - wx));
  double thetaV = std::atan2(v.y, v.x - m);
  double thetaW = std::atan2(wy, wx - m);
  double s = thetaW > thetaV ? 1.0 : -1.0;
  // Unit velocity along the circle in the direction of increasing angle is
  // i*(z - m)/r; scale by s to head toward w.
  double r = std::hypot(v.x - m, v.y);
  return {s * -(v.y) / r, s * (v.x - m) / r};
}

} // namespace

bool isPositiveCycle(const std::vector<BoundaryPoint>& cycle) {
  if (cycle.size() < 3)
    fail(Err::InvalidInput,
         "a boundary cycle needs at least 3 points, got " + std::to_string(cycle.size()));
  std::vector<double> theta;
  theta.reserve(cycle.size());
  for (const BoundaryPoint& p : cycle) theta.push_back(circleAngle(p));
  for (size_t i = 0; i < theta.size(); ++i)
    for (size_t j = i + 1; j < theta.size(); ++j) {
      double d = std::abs(theta[i] - theta[j]);
      d = std::min(d, 2 * kPi - d);
      if (d <= kEpsAngular)
        fail(Err::InvalidInput, "boundary cycle points " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " coincide on the circle");
    }
  return cyclicDescents(theta) == 1;
}

double triangleAreaGB(const TrianglePoint& p1, const TrianglePoint& p2,
                      const TrianglePoint& p3) {
  const TrianglePoint* pts[3] = {&p1, &p2, &p3};
  for (int i = 0; i < 3; ++i)
    if (sameVertex(*pts[i], *pts[(i + 1) % 3])) return 0.0;

  // Interior angles (ideal vertices contribute zero) and, per interior
  // vertex, the cross product of the unit tangents toward the two
  // neighbours; its sign is the triangle orientation.
  double angleSum = 0.0;
  double bestCross = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (!std::holds_alternative<InteriorPoint>(*pts[i])) continue;
    const auto& v = std::get<InteriorPoint>(*pts[i]);
    Vec2 toNext = tangentToward(v, *pts[(i + 1) % 3]);
    Vec2 toPrev = tangentToward(v, *pts[(i + 2) % 3]);
    double cross = toNext.x * toPrev.y - toNext.y * toPrev.x;
    double dot = toNext.x * toPrev.x + toNext.y * toPrev.y;
    angleSum += std::atan2(std::abs(cross), dot);
    if (std::abs(cross) > std::abs(bestCross)) bestCross = cross;
  }
  double defect = kPi - angleSum;

  double sigma;
  if (std::abs(bestCross) > 1e-14) {
    sigma = bestCross > 0 ? 1.0 : -1.0;
  } else if (std::abs(defect) < 1e-9) {
    return 0.0; // all three on one geodesic
  } else {
    // No usable interior vertex (all ideal, or vanishing angles): the
    // orientation is the cyclic order on the boundary circle.
    std::vector<double> theta = {approxCircleAngle(p1), approxCircleAngle(p2),
                                 approxCircleAngle(p3)};
    sigma = cyclicDescents(theta) == 1 ? 1.0 : -1.0;
  }
  return sigma * defect;
}

double repArea(const Representation& rep, const InteriorPoint& x0) {
  double residual = relationResidual(rep);
  if (residual >= 1e-6)
    fail(Err::InvalidInput,
         "relation residual " + std::to_string(residual) + " too large for an area invariant");

  // Fan over the orbit polygon of each defining relator and add the pieces:
  // one disc cell per defining relation. The squared-generator cells of the
  // involution family produce degenerate fans and contribute zero; the two
  // cells of the even family carry unequal shares of the total.
  double sum = 0.0;
  for (const Word& relator : definingRelators(rep.pres)) {
    std::vector<InteriorPoint> v;
    v.push_back(x0);
    ProjMatrix acc;
    for (const Letter& l : relator) {
      const ProjMatrix& m = rep.image(l.index);
      acc = acc * (l.exponent == 1 ? m : m.inverse());
      v.push_back(apply(acc, x0));
    }
    for (size_t j = 1; j + 2 <= relator.size(); ++j)
      sum += triangleAreaGB(TrianglePoint(v[0]), TrianglePoint(v[j]), TrianglePoint(v[j + 1]));
  }
  return sum;
}

double repArea(const Representation& rep) { return repArea(rep, InteriorPoint(0.2, 1.3)); }

} // namespace fibretool
