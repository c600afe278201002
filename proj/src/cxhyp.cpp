#include "cxhyp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invariants.hpp"

namespace fibretool {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
// Relative tolerance separating interior / isotropic / rejected vectors.
constexpr double kEpsSign = 1e-10;

void requireNonzero(const HermVector& p, const char* what) {
  if (!(coordNormSq(p) > 0.0) || !std::isfinite(coordNormSq(p))) {
    fail(Err::InvalidInput, std::string(what) + ": zero or non-finite vector");
  }
}

double selfProduct(const HermVector& p) { return hermProduct(p, p).real(); }

// Determinant of the 3x3 matrix with columns a, b, c.
Cx det3(const HermVector& a, const HermVector& b, const HermVector& c) {
  return a.z1 * (b.z2 * c.z3 - b.z3 * c.z2) - b.z1 * (a.z2 * c.z3 - a.z3 * c.z2) +
         c.z1 * (a.z2 * b.z3 - a.z3 * b.z2);
}

// Largest 2x2 minor magnitude of the pair (p, q); zero iff proportional.
double maxMinor(const HermVector& p, const HermVector& q) {
  double m1 = std::abs(p.z1 * q.z2 - p.z2 * q.z1);
  double m2 = std::abs(p.z1 * q.z3 - p.z3 * q.z1);
  double m3 = std::abs(p.z2 * q.z3 - p.z3 * q.z2);
  return std::max({m1, m2, m3});
}

// Principal argument with a guard snapping near-negative-real values to +pi
// so that limits approached from either side of the cut agree.
double argPrincipal(const Cx& z) {
  if (z.real() < 0.0 && std::abs(z.imag()) <= 1e-12 * std::abs(z.real())) {
    return kPi;
  }
  return std::arg(z);
}

} // namespace

Cx hermProduct(const HermVector& p, const HermVector& q) {
  return p.z1 * std::conj(q.z1) + p.z2 * std::conj(q.z2) - p.z3 * std::conj(q.z3);
}

double coordNormSq(const HermVector& p) {
  return std::norm(p.z1) + std::norm(p.z2) + std::norm(p.z3);
}

bool isInteriorVector(const HermVector& p) {
  requireNonzero(p, "isInteriorVector");
  return selfProduct(p) < -kEpsSign * coordNormSq(p);
}

bool isIsotropicVector(const HermVector& p) {
  requireNonzero(p, "isIsotropicVector");
  return std::abs(selfProduct(p)) <= kEpsSign * coordNormSq(p);
}

GramTriple gramTriple(const HermVector& p1, const HermVector& p2, const HermVector& p3) {
  const HermVector* pts[3] = {&p1, &p2, &p3};
  GramTriple out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.g[static_cast<size_t>(i)][static_cast<size_t>(j)] = hermProduct(*pts[i], *pts[j]);
    }
  }
  return out;
}

double kahlerSegmentIntegral(const HermVector& u, const HermVector& p1, const HermVector& p2) {
  if (!isInteriorVector(u) || !isInteriorVector(p1) || !isInteriorVector(p2)) {
    fail(Err::DomainError, "kahlerSegmentIntegral: all three points must be interior");
  }
  Cx gu2 = hermProduct(u, p2);
  Cx g21 = hermProduct(p2, p1);
  Cx gu1 = hermProduct(u, p1);
  // Interior points at finite distance always have nonzero pairings; a
  // vanishing one signals invalid input rather than a removable singularity.
  double scale = std::sqrt(coordNormSq(u) * coordNormSq(p1) * coordNormSq(p2));
  double floor = 1e-14 * std::max(1.0, scale);
  if (std::abs(gu2) <= floor || std::abs(g21) <= floor || std::abs(gu1) <= floor) {
    fail(Err::DomainError, "kahlerSegmentIntegral: vanishing inner product");
  }
  return -kPi / 2.0 + 0.5 * argPrincipal(gu2 * g21 / gu1);
}

double triangleArea31(const HermVector& p1, const HermVector& p2, const HermVector& p3) {
  const HermVector* pts[3] = {&p1, &p2, &p3};
  for (const HermVector* p : pts) {
    requireNonzero(*p, "triangleArea31");
    if (selfProduct(*p) > kEpsSign * coordNormSq(*p)) {
      fail(Err::NotAPointTriple, "triangleArea31: point outside the closed ball");
    }
  }
  // Coinciding boundary vertices: the product below degenerates to 0 and its
  // argument carries no information, so the area is defined to vanish.
  for (int i = 0; i < 3; ++i) {
    const HermVector& a = *pts[i];
    const HermVector& b = *pts[(i + 1) % 3];
    double pairScale = std::sqrt(coordNormSq(a) * coordNormSq(b));
    if (maxMinor(a, b) <= 1e-12 * pairScale && isIsotropicVector(a) && isIsotropicVector(b)) {
      return 0.0;
    }
  }
  Cx g12 = hermProduct(p1, p2);
  Cx g23 = hermProduct(p2, p3);
  Cx g31 = hermProduct(p3, p1);
  Cx prod = -g12 * g23 * g31;
  double scale = coordNormSq(p1) * coordNormSq(p2) * coordNormSq(p3);
  if (std::abs(prod) <= 1e-13 * std::max(1.0, scale)) {
    return 0.0;
  }
  if (prod.real() < -1e-10 * std::max(1.0, std::abs(prod))) {
    fail(Err::NotAPointTriple, "triangleArea31: triple product has negative real part");
  }
  return 0.5 * std::atan2(prod.imag(), std::max(prod.real(), 0.0));
}

bool isPositiveCycleCG(const std::vector<HermVector>& points) {
  if (points.size() < 3) {
    fail(Err::InvalidInput, "isPositiveCycleCG: need at least three points");
  }
  for (const HermVector& p : points) {
    if (!isIsotropicVector(p)) {
      fail(Err::InvalidInput, "isPositiveCycleCG: point is not isotropic");
    }
  }
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      double pairScale = std::sqrt(coordNormSq(points[i]) * coordNormSq(points[j]));
      if (maxMinor(points[i], points[j]) <= kEpsSign * pairScale) {
        fail(Err::InvalidInput, "isPositiveCycleCG: proportional pair of points");
      }
    }
  }
  const HermVector& p1 = points[0];
  const HermVector& p2 = points[1];
  for (size_t k = 2; k < points.size(); ++k) {
    double scale =
        std::sqrt(coordNormSq(p1) * coordNormSq(p2) * coordNormSq(points[k]));
    if (std::abs(det3(p1, p2, points[k])) > 1e-8 * std::max(1.0, scale)) {
      return false;
    }
  }
  // All points lie in the span of p1, p2. Write p_k = x p1 + y p2 using the
  // best-conditioned pair of coordinate rows, and track zeta_k = y / x (the
  // projective coordinate in which p1 -> 0 and p2 -> infinity).
  Cx g12 = hermProduct(p1, p2);
  if (std::abs(g12) <= kEpsSign * std::sqrt(coordNormSq(p1) * coordNormSq(p2))) {
    fail(Err::InvalidInput, "isPositiveCycleCG: first two points pair to zero");
  }
  Cx gHat = g12 / std::abs(g12);
  // In the coordinate zeta' = zeta / (i gHat) the interior of the complex
  // geodesic is the upper half-plane, so boundary points land on the real
  // axis; feed their real coordinates to the half-plane cycle test.
  std::vector<BoundaryPoint> cycle;
  cycle.reserve(points.size());
  cycle.push_back(BoundaryPoint::at(0.0));
  cycle.push_back(BoundaryPoint::inf());
  const Cx rows1[3] = {p1.z1, p1.z2, p1.z3};
  const Cx rows2[3] = {p2.z1, p2.z2, p2.z3};
  for (size_t k = 2; k < points.size(); ++k) {
    const Cx rhs[3] = {points[k].z1, points[k].z2, points[k].z3};
    int bi = 0;
    int bj = 1;
    double best = -1.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        double d = std::abs(rows1[i] * rows2[j] - rows1[j] * rows2[i]);
        if (d > best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    Cx det = rows1[bi] * rows2[bj] - rows1[bj] * rows2[bi];
    Cx x = (rhs[bi] * rows2[bj] - rhs[bj] * rows2[bi]) / det;
    Cx y = (rows1[bi] * rhs[bj] - rows1[bj] * rhs[bi]) / det;
    if (!std::isfinite(x.real()) || !std::isfinite(y.real()) || std::abs(x) == 0.0) {
      fail(Err::InternalError, "isPositiveCycleCG: span decomposition failed");
    }
    Cx zeta = y / x;
    cycle.push_back(BoundaryPoint::at((zeta / (Cx(0.0, 1.0) * gHat)).real()));
  }
  return isPositiveCycle(cycle);
}

Mat3 Mat3::identity() {
  Mat3 m;
  for (auto& row : m.e) {
    row.fill(Cx(0.0, 0.0));
  }
  m.e[0][0] = m.e[1][1] = m.e[2][2] = Cx(1.0, 0.0);
  return m;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 out;
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      Cx acc(0.0, 0.0);
      for (size_t k = 0; k < 3; ++k) {
        acc += e[i][k] * o.e[k][j];
      }
      out.e[i][j] = acc;
    }
  }
  return out;
}

HermVector Mat3::operator*(const HermVector& p) const {
  Cx in[3] = {p.z1, p.z2, p.z3};
  Cx out[3];
  for (size_t i = 0; i < 3; ++i) {
    out[i] = e[i][0] * in[0] + e[i][1] * in[1] + e[i][2] * in[2];
  }
  return HermVector{out[0], out[1], out[2]};
}

double Mat3::supNorm() const {
  double m = 0.0;
  for (const auto& row : e) {
    for (const Cx& v : row) {
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

double supNormDist(const Mat3& m, const Mat3& n) {
  double d = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      d = std::max(d, std::abs(m.e[i][j] - n.e[i][j]));
    }
  }
  return d;
}

Mat3 embedMatrix(const ProjMatrix& m) {
  double a = m.a;
  double b = m.b;
  double c = m.c;
  double d = m.d;
  Cx alpha((a + d) / 2.0, (b - c) / 2.0);
  Cx beta((a - d) / 2.0, -(b + c) / 2.0);
  Mat3 out;
  for (auto& row : out.e) {
    row.fill(Cx(0.0, 0.0));
  }
  out.e[0][0] = alpha;
  out.e[0][2] = beta;
  out.e[1][1] = Cx(1.0, 0.0);
  out.e[2][0] = std::conj(beta);
  out.e[2][2] = std::conj(alpha);
  return out;
}

Rep3 embedFuchsian(const Representation& rep) {
  validateStructure(rep);
  Rep3 out;
  out.pres = rep.pres;
  out.gens.reserve(rep.gens.size());
  for (const ProjMatrix& g : rep.gens) {
    out.gens.push_back(embedMatrix(g));
  }
  return out;
}

namespace {

Mat3 evalWord3(const Rep3& rep, const Word& word) {
  Mat3 acc = Mat3::identity();
  for (const Letter& letter : word) {
    const Mat3& g = rep.image(letter.index);
    if (letter.exponent == 1) {
      acc = acc * g;
    } else {
      // The images lie in U(2,1) for the form J = diag(1,1,-1), so the
      // inverse is J g^* J.
      Mat3 inv;
      for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) {
          double si = (i == 2) ? -1.0 : 1.0;
          double sj = (j == 2) ? -1.0 : 1.0;
          inv.e[i][j] = si * sj * std::conj(g.e[j][i]);
        }
      }
      acc = acc * inv;
    }
  }
  return acc;
}

double distToLiftSet(const Mat3& w) {
  Mat3 id = Mat3::identity();
  Mat3 dTwist = Mat3::identity();
  dTwist.e[0][0] = Cx(-1.0, 0.0);
  dTwist.e[2][2] = Cx(-1.0, 0.0);
  Mat3 negId = id;
  Mat3 negD = dTwist;
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      negId.e[i][j] = -negId.e[i][j];
      negD.e[i][j] = -negD.e[i][j];
    }
  }
  return std::min({supNormDist(w, id), supNormDist(w, negId), supNormDist(w, dTwist),
                   supNormDist(w, negD)});
}

double fanSum(const Rep3& rep, const HermVector& x0) {
  size_t count = rep.pres.generatorCount();
  if (rep.gens.size() != count) {
    fail(Err::InvalidInput, "toledoInvariant: generator count mismatch");
  }
  // Fan over the orbit polygon of each defining relator and add the pieces:
  // one disc cell per defining relation. Squared-generator cells produce
  // degenerate fans and contribute zero; the two cells of the even family
  // carry unequal shares of the total.
  double sum = 0.0;
  for (const Word& relator : definingRelators(rep.pres)) {
    std::vector<HermVector> orbit;
    orbit.reserve(relator.size() + 1);
    orbit.push_back(x0);
    Mat3 acc = Mat3::identity();
    for (const Letter& letter : relator) {
      acc = acc * evalWord3(rep, Word{letter});
      orbit.push_back(acc * x0);
    }
    for (size_t j = 1; j + 2 <= orbit.size(); ++j) {
      sum += triangleArea31(orbit[0], orbit[j], orbit[j + 1]);
    }
  }
  return sum;
}

} // namespace

double relationResidualCG(const Rep3& rep) {
  size_t count = rep.pres.generatorCount();
  if (rep.gens.size() != count) {
    fail(Err::InvalidInput, "relationResidualCG: generator count mismatch");
  }
  double worst = 0.0;
  for (const Word& rel : definingRelators(rep.pres)) {
    worst = std::max(worst, distToLiftSet(evalWord3(rep, rel)));
  }
  return worst;
}

double toledoInvariant(const Rep3& rep, const HermVector& x0) {
  if (!isInteriorVector(x0)) {
    fail(Err::InvalidInput, "toledoInvariant: basepoint must be interior");
  }
  if (relationResidualCG(rep) >= 1e-6) {
    fail(Err::InvalidInput, "toledoInvariant: defining relations not satisfied");
  }
  try {
    return fanSum(rep, x0);
  } catch (const FtError&) {
    // A degenerate fan triple (e.g. the basepoint fixed by a relator prefix)
    // is retried once from a fixed nearby interior basepoint.
  }
  HermVector jittered{x0.z1 + Cx(1e-3, 0.0), x0.z2 + Cx(0.0, 5e-4), x0.z3};
  if (!isInteriorVector(jittered)) {
    fail(Err::InternalError, "toledoInvariant: jittered basepoint left the ball");
  }
  return fanSum(rep, jittered);
}

double toledoInvariant(const Rep3& rep) {
  return toledoInvariant(rep, HermVector{Cx(0.0, 0.0), Cx(0.0, 0.0), Cx(1.0, 0.0)});
}

} // namespace fibretool
