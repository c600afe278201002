#pragma once

#include <cmath>

#include "geom2.hpp"

// Compensated double-double arithmetic (internal).
//
// Configurations deep in the deformation space are stiff: boundary-cycle gaps
// and chain centers span 10+ orders of magnitude, so plain double products
// accumulate eps * ||partial product|| noise that can dwarf the quantities
// being checked. Carrying the stiff steps in double-double (~1e-32 relative)
// keeps constructed data and verification faithful to the stored doubles;
// everything user-visible remains plain double.
namespace fibretool::ddnum {

struct DD {
  double hi = 0.0, lo = 0.0;
  DD() = default;
  DD(double x) : hi(x) {}
  DD(double h, double l) : hi(h), lo(l) {}
  double to() const { return hi + lo; }
};

inline DD twoSum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return DD(s, (a - (s - bb)) + (b - bb));
}

inline DD quickTwoSum(double a, double b) { // requires |a| >= |b|
  double s = a + b;
  return DD(s, b - (s - a));
}

inline DD twoProd(double a, double b) {
  double p = a * b;
  return DD(p, std::fma(a, b, -p));
}

inline DD ddAdd(const DD& a, const DD& b) {
  DD s = twoSum(a.hi, b.hi);
  return quickTwoSum(s.hi, s.lo + a.lo + b.lo);
}

inline DD ddSub(const DD& a, const DD& b) { return ddAdd(a, DD(-b.hi, -b.lo)); }

inline DD ddMul(const DD& a, const DD& b) {
  DD p = twoProd(a.hi, b.hi);
  return quickTwoSum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD ddDiv(const DD& a, const DD& b) {
  double q1 = a.hi / b.hi;
  DD r = ddSub(a, ddMul(DD(q1), b));
  double q2 = r.to() / b.hi;
  DD q = quickTwoSum(q1, q2);
  r = ddSub(a, ddMul(q, b));
  return ddAdd(q, DD(r.to() / b.hi));
}

inline DD ddSqrt(const DD& a) {
  double s = std::sqrt(a.hi);
  if (!(s > 0.0)) return DD(0.0);
  DD r = ddSub(a, twoProd(s, s));
  return quickTwoSum(s, r.to() / (2.0 * s));
}

// 2x2 matrix with double-double entries.
struct DDMat {
  DD a, b, c, d;
};

inline DDMat ddMul2(const DDMat& x, const DDMat& y) {
  return DDMat{ddAdd(ddMul(x.a, y.a), ddMul(x.b, y.c)), ddAdd(ddMul(x.a, y.b), ddMul(x.b, y.d)),
               ddAdd(ddMul(x.c, y.a), ddMul(x.d, y.c)), ddAdd(ddMul(x.c, y.b), ddMul(x.d, y.d))};
}

inline DDMat ddPromote(const ProjMatrix& m) { return DDMat{DD(m.a), DD(m.b), DD(m.c), DD(m.d)}; }

// Inverse of a det-1 matrix (adjugate); exact on the promoted entries.
inline DDMat ddAdjugate(const DDMat& m) {
  return DDMat{m.d, DD(-m.b.hi, -m.b.lo), DD(-m.c.hi, -m.c.lo), m.a};
}

inline DDMat ddIdentity() { return DDMat{DD(1.0), DD(0.0), DD(0.0), DD(1.0)}; }

// Sign-minimized sup-norm distance from m to the identity.
inline double ddDistToIdentity(const DDMat& m) {
  auto entryDist = [&](double sign) {
    double worst = 0.0;
    worst = std::max(worst, std::abs(ddSub(ddMul(DD(sign), m.a), DD(1.0)).to()));
    worst = std::max(worst, std::abs(sign * m.b.to()));
    worst = std::max(worst, std::abs(sign * m.c.to()));
    worst = std::max(worst, std::abs(ddSub(ddMul(DD(sign), m.d), DD(1.0)).to()));
    return worst;
  };
  return std::min(entryDist(1.0), entryDist(-1.0));
}

} // namespace fibretool::ddnum
