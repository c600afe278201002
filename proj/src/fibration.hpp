// Forward construction of the two involution-family images of an
// even-family representation: split every generator image g_i into a pair
// of half-turns t_i * s_i at crossings with the axis of the g_1-image,
// assemble the translation tables u_i, v_i from the pair products
// h_i = t_i * t_{i-1}, and read off the conjugator translation lengths
// (the fibre coordinates).
#pragma once

#include <vector>

#include "geom2.hpp"
#include "groups.hpp"

namespace fibretool {

// Half-turn decomposition data. t holds t_1..t_{n-1} with t_1 = t_{n-1}
// stored verbatim; s holds s_1..s_n with s_n = t_{n-1} stored verbatim, so
// the center of s_n is tCenter of index n-1. All centers sit on `axis` by
// construction; the flags record the numerically verified statement.
struct TSData {
  int n;
  Geodesic axis; // axis of the g_1-image; never recomputed per index
  std::vector<ProjMatrix> t;
  std::vector<ProjMatrix> s;
  std::vector<InteriorPoint> tCenter;
  InteriorPoint s1Center;
  std::vector<bool> tCenterOnAxis;
  bool s1CenterOnAxis;

  const ProjMatrix& tAt(int i) const { return t.at(static_cast<size_t>(i) - 1); }
  const ProjMatrix& sAt(int i) const { return s.at(static_cast<size_t>(i) - 1); }
  const InteriorPoint& tCenterAt(int i) const { return tCenter.at(static_cast<size_t>(i) - 1); }
};

// Translation tables. h holds h_2..h_{n-1}; u and v hold u_1..u_n and
// v_1..v_n, all translations along the axis (or the identity).
struct UVTables {
  int n;
  std::vector<ProjMatrix> h;
  std::vector<ProjMatrix> u;
  std::vector<ProjMatrix> v;

  const ProjMatrix& hAt(int i) const { return h.at(static_cast<size_t>(i) - 2); }
  const ProjMatrix& uAt(int i) const { return u.at(static_cast<size_t>(i) - 1); }
  const ProjMatrix& vAt(int i) const { return v.at(static_cast<size_t>(i) - 1); }
};

// Translation lengths of the conjugators f_1..f_{n-2} relating the two
// involution-family images (f_{n-1} = f_n = identity always); their
// alternating sum -phi_1 + phi_2 - ... + phi_{n-2} vanishes.
struct FibreCoordinates {
  std::vector<double> phi;

  double phiAt(int i) const { return phi.at(static_cast<size_t>(i) - 1); }
};

// Decompose every generator image of an even-family representation with
// relation residual < 1e-6 into half-turn pairs. Fails with
// NotInMaximalComponent when a generator image is not hyperbolic or its
// axis does not cross the g_1-axis in the interior.
TSData tsDecompose(const Representation& repG);

// The h/u/v translation tables from the half-turn data.
UVTables uvTables(const TSData& ts);

// The involution-family image of repG: which=1 maps r_i to a_i = s_i
// conjugated by u_i (a_1 = u_1*s_1), which=2 uses the v table. Output
// relation residual stays below 1e-6.
Representation pushforward(const Representation& repG, int which);

// Translation lengths phi_i of the conjugators f_1 = v_1 and
// f_i = v_i * u_i^{-1}; verifies that conjugation by f_i carries a_i to c_i
// and that the alternating sum vanishes.
FibreCoordinates fParams(const TSData& ts, const UVTables& uv);

} // namespace fibretool
