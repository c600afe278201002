// Signed-area machinery on the upper half-plane: positivity of boundary
// cycles, signed geodesic-triangle areas via angle defect, and the area
// invariant of a representation (fan-triangulated relator polygon).
#pragma once

#include <variant>
#include <vector>

#include "geom2.hpp"
#include "groups.hpp"

namespace fibretool {

// A triangle vertex is either an interior point or a boundary point.
using TrianglePoint = std::variant<InteriorPoint, BoundaryPoint>;

// True iff the points (>= 3, pairwise distinct within angular tolerance
// 1e-10 on the circle) appear in strictly counterclockwise cyclic order on
// the boundary circle. Duplicate points are an error.
bool isPositiveCycle(const std::vector<BoundaryPoint>& cycle);

// Signed hyperbolic area of the geodesic triangle (p1, p2, p3), positive for
// counterclockwise vertex order. Ideal vertices contribute interior angle 0,
// so an ideal triangle gives +-pi. Coinciding vertices and triples lying on
// a single geodesic give 0.
double triangleAreaGB(const TrianglePoint& p1, const TrianglePoint& p2,
                      const TrianglePoint& p3);

// Area invariant of a representation with relation residual < 1e-6: the fan
// sum of signed triangle areas over the orbit polygon of the defining
// relator based at x0. Basepoint-independent within 1e-6.
double repArea(const Representation& rep, const InteriorPoint& x0);

// Same, at the default basepoint (0.2, 1.3) (kept slightly off the
// imaginary axis so symmetric configurations do not degenerate the fan).
double repArea(const Representation& rep);

} // namespace fibretool
