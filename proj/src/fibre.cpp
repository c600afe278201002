#include "fibre.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ddarith.hpp"

namespace fibretool {

ChainPairInput::ChainPairInput(double b3_, double e3_, double k2_, double k3_)
    : b3(b3_), e3(e3_), k2(k2_), k3(k3_) {
  if (!(std::isfinite(b3) && std::isfinite(e3) && 0.0 < b3 && b3 < e3))
    fail(Err::DomainError, "chain-pair feet must satisfy 0 < b3 < e3");
  if (!(std::isfinite(k2) && std::isfinite(k3) && k2 > 0.0 && k3 > 0.0))
    fail(Err::DomainError, "chain-pair ray slopes must be positive");
}

namespace {

// Core of the chain-pair step, taking the relative gap r = 1 - b3/e3
// directly so callers that track the gap exactly do not lose precision to
// the subtraction of nearly equal feet.
ChainPairResult chainPairCore(double b3, double r, double k2, double k3) {
  const double k2sq = k2 * k2;
  const double k3sq = k3 * k3;
  const double qa = 1.0 + k3sq;
  const double qb = 1.0 + r * (k3sq - k2sq);
  const double qc = -r * k2sq; // strictly negative, so one positive root
  const double disc = qb * qb - 4.0 * qa * qc;
  if (!(disc > 0.0))
    fail(Err::InternalError, "chain-pair quadratic lost its positive root");
  const double sq = std::sqrt(disc);
  const double u = qb >= 0.0 ? -2.0 * qc / (qb + sq) : (-qb + sq) / (2.0 * qa);
  if (!(u > 0.0))
    fail(Err::InternalError, "chain-pair quadratic produced a nonpositive root");

  const double t3 = b3 / ((1.0 + 1.0 / k3sq) * (1.0 + u));
  const double t2 = b3 * u / ((1.0 + u) * (1.0 / k3sq + u + u / k3sq));
  return ChainPairResult{u, InteriorPoint(t2, t2 / k2), InteriorPoint(t3, t3 / k3)};
}

} // namespace

ChainPairResult solveChainPair(const ChainPairInput& in) {
  return chainPairCore(in.b3, 1.0 - in.b3 / in.e3, in.k2, in.k3);
}

ClosureConfig::ClosureConfig(double b_, double e_, double k2_, double k3_, double k4_,
                             double d1_)
    : b(b_), e(e_), gap(e_ - b_), k2(k2_), k3(k3_), k4(k4_), d1(d1_) {
  if (!(std::isfinite(b) && std::isfinite(e) && 0.0 < b && b < e))
    fail(Err::DomainError, "closure feet must satisfy 0 < b < e");
  if (!(k2 > 0.0 && k3 > 0.0 && k4 > 0.0))
    fail(Err::DomainError, "closure ray slopes must be positive");
  if (!(std::isfinite(d1) && d1 > 0.0))
    fail(Err::DomainError, "closure base height must be positive");
}

ClosureConfig ClosureConfig::fromGap(double b_, double gap_, double k2_, double k3_,
                                     double k4_, double d1_) {
  if (!(std::isfinite(b_) && std::isfinite(gap_) && b_ > 0.0 && gap_ > 0.0))
    fail(Err::DomainError, "closure feet must satisfy 0 < b < e");
  ClosureConfig cfg(b_, b_ + gap_ > b_ ? b_ + gap_ : std::nextafter(b_, 2.0 * b_), k2_, k3_,
                    k4_, d1_);
  cfg.gap = gap_;
  return cfg;
}

namespace {

struct ClosurePoly {
  double c1, c2, c3, c4;

  explicit ClosurePoly(const ClosureConfig& cfg) {
    const double eOverGap = cfg.b / cfg.gap + 1.0; // = e / (e - b), cancellation-free
    c1 = eOverGap * (1.0 + cfg.k4 * cfg.k4);
    c2 = eOverGap + cfg.k4 * cfg.k4;
    c3 = 1.0 + cfg.k2 * cfg.k2 + cfg.k3 * cfg.k3;
    c4 = cfg.k2 * cfg.k2 * cfg.k3 * cfg.k3;
  }

  double eval(double v, double w) const {
    return c1 * v * w * (w - v) + c2 * w * (w - v) + c3 * (v + 1.0) * (w - v) -
           c4 * v * (v + 1.0);
  }

  double dEvalDw(double v, double w) const {
    return c1 * v * (2.0 * w - v) + c2 * (2.0 * w - v) + c3 * (v + 1.0);
  }

  double scale(double v, double w) const {
    return std::abs(c1 * v * w * w) + std::abs(c2 * w * w) + std::abs(c3 * (v + 1.0) * w) +
           std::abs(c4 * v * (v + 1.0));
  }
};

} // namespace

double closureForward(const ClosureConfig& cfg, double v) {
  if (!(std::isfinite(v) && v > 0.0))
    fail(Err::DomainError, "closure parameter must be positive");
  const ClosurePoly poly(cfg);

  // The polynomial is negative at w = v and positive for large w; the
  // enclosed root is unique beyond v.
  double lo = v;
  double hi = 1e12 * v;
  if (!(poly.eval(v, hi) > 0.0))
    fail(Err::InternalError, "closure polynomial not positive at the bracket end");
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-16 * hi; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (poly.eval(v, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double w = 0.5 * (lo + hi);
  for (int iter = 0; iter < 4; ++iter) {
    double step = poly.eval(v, w) / poly.dEvalDw(v, w);
    double next = w - step;
    if (std::isfinite(next) && next > v) w = next;
  }
  if (std::abs(poly.eval(v, w)) > 1e-12 * std::max(1.0, poly.scale(v, w)))
    fail(Err::InternalError, "closure root failed the residual check");
  return w;
}

double closureInvert(const ClosureConfig& cfg, double wTarget) {
  if (!(std::isfinite(wTarget) && wTarget > 0.0))
    fail(Err::DomainError, "closure target must be positive");
  double lo = 1e-12;
  double hi = 1e12;
  if (!(closureForward(cfg, lo) < wTarget && wTarget < closureForward(cfg, hi)))
    fail(Err::OutOfRange, "closure target not enclosed by the bracket");
  // The forward map is strictly increasing; bisect in log scale.
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * hi; ++iter) {
    double mid = std::sqrt(lo * hi);
    if (closureForward(cfg, mid) < wTarget)
      lo = mid;
    else
      hi = mid;
  }
  double v = std::sqrt(lo * hi);
  if (std::abs(closureForward(cfg, v) - wTarget) > 1e-10 * std::max(1.0, wTarget))
    fail(Err::InternalError, "closure inversion failed to reach the target");
  return v;
}

double solveConjTranslation(const ProjMatrix& a, const ProjMatrix& c, const Geodesic& g) {
  ProjMatrix toStd = normalizeTo(g);
  InteriorPoint za = apply(toStd, halfTurnCenter(a));
  InteriorPoint zc = apply(toStd, halfTurnCenter(c));
  // Equidistant curves of the standard axis are rays x/y = const; the
  // signed axis offset asinh(x/y) must agree (a mirrored center has the
  // opposite sign and is rejected).
  double offA = std::asinh(za.x / za.y);
  double offC = std::asinh(zc.x / zc.y);
  if (std::abs(offA - offC) > 1e-7)
    fail(Err::NotSameEquidistant, "half-turn centers lie on different equidistant curves, " +
                                      std::to_string(offA) + " vs " + std::to_string(offC));
  return std::log(std::hypot(zc.x, zc.y) / std::hypot(za.x, za.y));
}

namespace {

// The boundary-cycle transport is carried in double-double: each placement of
// a free center contracts the cycle gap by the square of a reflection
// derivative, so after a handful of steps the ratio b / (e - b) reaches
// 1e10..1e13, and a relative rounding error eps in a foot position low in the
// chain surfaces as an absolute error of order eps * b / gap at the top.
using namespace ddnum;

// Half-turn with center on the ray of slope 1/k at ray coordinate t,
// written so that det = 1 holds identically.
DDMat ddReflOnRay(const DD& t, double slope) {
  DD coef = ddAdd(DD(slope), ddDiv(DD(1.0), DD(slope)));
  return DDMat{DD(-slope), ddMul(coef, t), ddDiv(DD(-slope), t), DD(slope)};
}

} // namespace

Representation reconstruct(const Representation& rep1, const Representation& rep2) {
  if (rep1.pres.kind != Kind::H || rep2.pres.kind != Kind::H)
    fail(Err::InvalidInput, "reconstruction expects two involution-family representations");
  if (rep1.pres.n != rep2.pres.n)
    fail(Err::InvalidInput, "reconstruction inputs have different presentation sizes");
  validateRep(rep1);
  validateRep(rep2);
  for (const Representation* rep : {&rep1, &rep2}) {
    double residual = relationResidual(*rep);
    if (residual >= 1e-6)
      fail(Err::InvalidInput,
           "relation residual " + std::to_string(residual) + " too large to reconstruct");
  }
  const int n = rep1.pres.n;

  const ProjMatrix& an = rep1.image(n);
  double devN = distUpToSign(an, rep2.image(n));
  if (devN > 1e-6 * std::max(1.0, an.supNorm()))
    fail(Err::MismatchedBase,
         "images of the last generator differ by " + std::to_string(devN));
  double devN1 = distUpToSign(rep1.image(n - 1), rep2.image(n - 1));
  if (devN1 > 1e-6 * std::max(1.0, rep1.image(n - 1).supNorm()))
    fail(Err::NotAFibrePair,
         "images of generator " + std::to_string(n - 1) + " differ by " + std::to_string(devN1));

  Geodesic axis = axisOf(rep1.image(1) * an);

  // Translation lengths of the conjugators carrying the first image to the
  // second; their alternating sum must vanish for a genuine fibre pair.
  std::vector<double> phi;
  phi.reserve(static_cast<size_t>(n - 2));
  double alt = 0.0;
  for (int i = 1; i <= n - 2; ++i) {
    phi.push_back(solveConjTranslation(rep1.image(i), rep2.image(i), axis));
    alt += (i % 2 == 0 ? 1.0 : -1.0) * phi.back();
  }
  if (std::abs(alt) > 1e-6)
    fail(Err::NotAFibrePair,
         "alternating sum of conjugator lengths is " + std::to_string(alt));

  ProjMatrix toStd = normalizeTo(axis);
  ProjMatrix fromStd = toStd.inverse();
  auto conjugator = [&](int i) {
    return fromStd * translationAlong(phi[static_cast<size_t>(i) - 1]) * toStd;
  };

  // Half-turn chain: t_{n-1} is the last image; each conjugator
  // f_i = t_{n-1} ... t_{i+1} t_i t_{i+1} ... t_{n-2} then determines t_i
  // descending, with t_1 = t_{n-1}.
  std::vector<ProjMatrix> t(static_cast<size_t>(n - 1), ProjMatrix::identity());
  t[static_cast<size_t>(n) - 2] = an;
  t[static_cast<size_t>(n) - 3] = an.inverse() * conjugator(n - 2);
  ProjMatrix left = t[static_cast<size_t>(n) - 2] * t[static_cast<size_t>(n) - 3];
  ProjMatrix right = t[static_cast<size_t>(n) - 3];
  for (int i = n - 3; i >= 2; --i) {
    t[static_cast<size_t>(i) - 1] = left.inverse() * conjugator(i) * right.inverse();
    left = left * t[static_cast<size_t>(i) - 1];
    right = t[static_cast<size_t>(i) - 1] * right;
  }
  t[0] = t[static_cast<size_t>(n) - 2];

  // u_i = t_{n-2} ... t_{i+1} for even i, t_{n-2} ... t_i for odd i
  // (i <= n-3); u_{n-2} = u_{n-1} = u_n = identity.
  std::vector<ProjMatrix> u(static_cast<size_t>(n), ProjMatrix::identity());
  ProjMatrix prodU = t[static_cast<size_t>(n) - 3];
  for (int i = n - 3; i >= 1; --i) {
    ProjMatrix withTi = prodU * t[static_cast<size_t>(i) - 1];
    u[static_cast<size_t>(i) - 1] = i % 2 == 1 ? withTi : prodU;
    prodU = withTi;
  }

  std::vector<ProjMatrix> s(static_cast<size_t>(n - 1), ProjMatrix::identity());
  s[0] = u[0].inverse() * rep1.image(1);
  for (int i = 2; i <= n - 3; ++i)
    s[static_cast<size_t>(i) - 1] =
        u[static_cast<size_t>(i) - 1].inverse() * rep1.image(i) * u[static_cast<size_t>(i) - 1];
  s[static_cast<size_t>(n) - 3] = rep1.image(n - 2);
  s[static_cast<size_t>(n) - 2] = rep1.image(n - 1);

  Representation out;
  out.pres = Presentation(Kind::G, n);
  for (int i = 1; i <= n - 1; ++i)
    out.gens.push_back(t[static_cast<size_t>(i) - 1] * s[static_cast<size_t>(i) - 1]);

  double residual = relationResidual(out);
  if (residual > 1e-3)
    fail(Err::InternalError,
         "reconstructed representation has relation residual " + std::to_string(residual));
  return out;
}

Representation fibrePoint(const Representation& rep1, const std::vector<double>& lambda,
                          double provisionalV) {
  if (rep1.pres.kind != Kind::H)
    fail(Err::InvalidInput, "fibre construction expects an involution-family representation");
  validateRep(rep1);
  double inResidual = relationResidual(rep1);
  if (inResidual >= 1e-6)
    fail(Err::InvalidInput, "relation residual " + std::to_string(inResidual) +
                                " too large for the fibre construction");
  const int n = rep1.pres.n;
  if (lambda.size() != static_cast<size_t>(n - 6))
    fail(Err::InvalidInput, "expected " + std::to_string(n - 6) + " chart values, got " +
                                std::to_string(lambda.size()));
  for (double l : lambda)
    if (!std::isfinite(l)) fail(Err::InvalidInput, "chart values must be finite");
  if (!(std::isfinite(provisionalV) && provisionalV > 0.0))
    fail(Err::InvalidInput, "provisional closure parameter must be positive");

  const ProjMatrix& an = rep1.image(n);
  Geodesic axis = axisOf(rep1.image(1) * an);
  ProjMatrix toStd = normalizeTo(axis, halfTurnCenter(an));
  ProjMatrix fromStd = toStd.inverse();

  // Normalized frame: the axis is the standard geodesic, the center of the
  // last image sits at height one on it.
  std::vector<ProjMatrix> aStd;
  std::vector<InteriorPoint> q;
  aStd.reserve(static_cast<size_t>(n));
  q.reserve(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    aStd.push_back(toStd * rep1.image(j) * fromStd);
    q.push_back(halfTurnCenter(aStd.back()));
  }
  auto qAt = [&](int j) -> const InteriorPoint& { return q[static_cast<size_t>(j) - 1]; };
  auto aAt = [&](int j) -> const ProjMatrix& { return aStd[static_cast<size_t>(j) - 1]; };

  if (std::abs(qAt(n).x) > 1e-7 * std::max(1.0, qAt(n).y) || std::abs(qAt(n).y - 1.0) > 1e-7)
    fail(Err::InternalError, "normalization failed to pin the base center at unit height: (" +
                                 std::to_string(qAt(n).x) + ", " + std::to_string(qAt(n).y) +
                                 ")");
  if (std::abs(qAt(1).x) > 1e-7 * std::max(1.0, qAt(1).y))
    fail(Err::InternalError, "center of the first image is off the axis: (" +
                                 std::to_string(qAt(1).x) + ", " + std::to_string(qAt(1).y) +
                                 ")");
  for (int j = 2; j <= n - 1; ++j)
    if (!(qAt(j).x > 0.0))
      fail(Err::InternalError, "center of image " + std::to_string(j) +
                                   " is not on the positive side of the axis: (" +
                                   std::to_string(qAt(j).x) + ", " + std::to_string(qAt(j).y) +
                                   ")");

  std::vector<double> k(static_cast<size_t>(n), 0.0);   // ray slope of center j
  std::vector<double> tau(static_cast<size_t>(n), 0.0); // ray coordinate of center j
  for (int j = 2; j <= n - 1; ++j) {
    k[static_cast<size_t>(j) - 1] = qAt(j).x / qAt(j).y;
    tau[static_cast<size_t>(j) - 1] = qAt(j).x;
  }
  tau[0] = qAt(1).y; // the first center lies on the axis; its height is its coordinate

  // Walk the boundary cycle: feet start at the images of (infinity, 0)
  // under the (n-1)-st half-turn and shrink toward 0 as the free centers
  // are placed at logistic fractions of their admissible segments.
  const ProjMatrix& aPrev = aAt(n - 1);
  if (aPrev.c == 0.0 || aPrev.d == 0.0)
    fail(Err::InternalError, "cycle foot escaped to infinity");
  DD bCur = ddDiv(DD(aPrev.a), DD(aPrev.c));
  DD eCur = ddDiv(DD(aPrev.b), DD(aPrev.d));
  if (!(0.0 < bCur.hi && bCur.hi < eCur.hi))
    fail(Err::InternalError, "initial cycle feet out of order: b = " + std::to_string(bCur.hi) +
                                 ", e = " + std::to_string(eCur.hi));
  // The cycle gap shrinks by the reflection derivative at every placement,
  // which empties the mantissa of e - b within a few steps. Track the gap
  // multiplicatively (the image gap under a half-turn with ray coordinate t
  // is gap * t^2 / (s^2 (b-t)(e-t)), all factors positive) so the chain and
  // closure steps keep full relative precision.
  DD gCur = ddSub(eCur, bCur);

  double tailAlt = 0.0; // alternating sum of the translation lengths placed so far
  std::vector<ProjMatrix> refl(static_cast<size_t>(n), ProjMatrix::identity());
  std::vector<DDMat> ddRefl(static_cast<size_t>(n));
  for (int kk = n - 2; kk >= 5; --kk) {
    double slope = k[static_cast<size_t>(kk) - 1];
    double ssq = slope * slope;
    DD onePlusSsq = twoSum(1.0, ssq);
    DD tSeg = ddDiv(ddMul(bCur, DD(ssq)), onePlusSsq); // ray coordinate of the segment end
    double lam = lambda[static_cast<size_t>(kk) - 5];
    double frac = 1.0 / (1.0 + std::exp(-lam)); // logistic chart, 0 maps to the midpoint
    double cofrac = 1.0 / (1.0 + std::exp(lam)); // = 1 - frac without cancellation
    DD tNew = ddMul(tSeg, DD(frac));
    double td = tNew.to();
    tailAlt += (kk % 2 == 0 ? 1.0 : -1.0) *
               std::log(ddDiv(tNew, DD(tau[static_cast<size_t>(kk) - 1])).to());
    refl[static_cast<size_t>(kk) - 1] = reflection(InteriorPoint(td, td / slope));
    ddRefl[static_cast<size_t>(kk) - 1] = ddReflOnRay(tNew, slope);

    DD oneSsqCo = ddAdd(DD(1.0), ddMul(DD(ssq), DD(cofrac)));
    DD bMinusT = ddDiv(ddMul(bCur, oneSsqCo), onePlusSsq); // = bCur - tNew
    DD bNext = ddDiv(ddMul(tNew, ddMul(DD(cofrac), onePlusSsq)), oneSsqCo);
    DD gNext = ddDiv(ddMul(gCur, ddMul(tNew, tNew)),
                     ddMul(DD(ssq), ddMul(bMinusT, ddAdd(bMinusT, gCur))));
    DD eNext = ddAdd(bNext, gNext);
    if (!(0.0 < bNext.hi && bNext.hi < eNext.to() && eNext.hi < bCur.hi))
      fail(Err::InternalError, "cycle positivity lost at center " + std::to_string(kk) +
                                   ": b = " + std::to_string(bNext.hi) +
                                   ", e = " + std::to_string(eNext.hi) +
                                   ", previous b = " + std::to_string(bCur.hi));
    bCur = bNext;
    eCur = eNext;
    gCur = gNext;
  }

  const double k2 = k[1], k3 = k[2], k4 = k[3];
  ClosureConfig cfg = ClosureConfig::fromGap(bCur.to(), gCur.to(), k2, k3, k4, qAt(n).y);

  struct LastFour {
    ProjMatrix r4, r3, r2, r1;
    double phi1, phi2, phi3, phi4;
    double altSum;
  };

  auto buildLastFour = [&](double v) -> LastFour {
    const DD k4sq = twoProd(k4, k4);
    const DD k4inv2 = ddDiv(DD(1.0), k4sq);
    const DD onePlusV = twoSum(1.0, v);
    const DD stretch = ddMul(ddAdd(DD(1.0), k4inv2), onePlusV);
    // = stretch - 1, assembled from its positive terms
    const DD denomB = ddAdd(ddAdd(k4inv2, DD(v)), ddMul(k4inv2, DD(v)));
    DD t4 = ddDiv(bCur, stretch);
    DD b3 = ddDiv(ddMul(bCur, DD(v)), ddMul(onePlusV, denomB));
    DD bMinusT4 = ddDiv(ddMul(bCur, denomB), stretch); // = bCur - t4
    DD gap3 = ddDiv(ddMul(gCur, ddMul(t4, t4)),
                    ddMul(k4sq, ddMul(bMinusT4, ddAdd(bMinusT4, gCur))));
    DD e3 = ddAdd(b3, gap3);
    if (!(0.0 < b3.hi && b3.hi < e3.to() && e3.hi < bCur.hi))
      fail(Err::InternalError, "cycle positivity lost at the closure step: b = " +
                                   std::to_string(b3.hi) + ", e = " + std::to_string(e3.hi) +
                                   ", previous b = " + std::to_string(bCur.hi));

    // Centers of the chain pair: positive root of the contact quadratic,
    // then the two ray coordinates it parameterizes.
    const DD k2sq = twoProd(k2, k2);
    const DD k3sq = twoProd(k3, k3);
    const DD r = ddDiv(gap3, e3);
    const DD qa = ddAdd(DD(1.0), k3sq);
    const DD qb = ddAdd(DD(1.0), ddMul(r, ddSub(k3sq, k2sq)));
    const DD qc = ddMul(DD(-1.0), ddMul(r, k2sq)); // strictly negative
    const DD disc = ddSub(ddMul(qb, qb), ddMul(DD(4.0), ddMul(qa, qc)));
    if (!(disc.hi > 0.0)) fail(Err::InternalError, "chain-pair quadratic lost its positive root");
    const DD sq = ddSqrt(disc);
    const DD u = qb.hi >= 0.0 ? ddDiv(ddMul(DD(-2.0), qc), ddAdd(qb, sq))
                              : ddDiv(ddAdd(ddSub(DD(0.0), qb), sq), ddMul(DD(2.0), qa));
    if (!(u.hi > 0.0))
      fail(Err::InternalError, "chain-pair quadratic produced a nonpositive root");
    const DD onePlusU = ddAdd(DD(1.0), u);
    const DD k3inv2 = ddDiv(DD(1.0), k3sq);
    DD t3 = ddDiv(b3, ddMul(ddAdd(DD(1.0), k3inv2), onePlusU));
    DD t2 = ddDiv(ddMul(b3, u),
                  ddMul(onePlusU, ddAdd(k3inv2, ddAdd(u, ddMul(u, k3inv2)))));

    double t4d = t4.to(), t3d = t3.to(), t2d = t2.to();
    LastFour out{reflection(InteriorPoint(t4d, t4d / k4)),
                 reflection(InteriorPoint(t3d, t3d / k3)),
                 reflection(InteriorPoint(t2d, t2d / k2)),
                 ProjMatrix::identity(), 0.0, 0.0, 0.0, 0.0, 0.0};
    out.phi4 = std::log(ddDiv(t4, DD(tau[3])).to());
    out.phi3 = std::log(ddDiv(t3, DD(tau[2])).to());
    out.phi2 = std::log(ddDiv(t2, DD(tau[1])).to());

    // Close the relation: the product of everything placed so far must be
    // inverted by one more half-turn with center on the axis.
    DDMat closure = ddMul2(ddPromote(aAt(n)), ddPromote(aAt(n - 1)));
    for (int kk = n - 2; kk >= 5; --kk)
      closure = ddMul2(closure, ddRefl[static_cast<size_t>(kk) - 1]);
    closure = ddMul2(closure, ddReflOnRay(t4, k4));
    closure = ddMul2(closure, ddReflOnRay(t3, k3));
    closure = ddMul2(closure, ddReflOnRay(t2, k2));
    DD tr = ddAdd(closure.a, closure.d);
    double sup = std::max(std::max(std::abs(closure.a.hi), std::abs(closure.b.hi)),
                          std::max(std::abs(closure.c.hi), std::abs(closure.d.hi)));
    if (std::abs(tr.to()) > 1e-7 * std::max(1.0, sup))
      fail(Err::InternalError,
           "closure product is not a half-turn, trace " + std::to_string(tr.to()));
    if (closure.c.to() == 0.0)
      fail(Err::InternalError, "closure product fixes infinity, it cannot be a half-turn");
    // The inverse of the product is the missing half-turn; its fixed point is
    // ((d - a) + i sqrt(4 - tr^2)) / (-2c) for the det-1 inverse [[d,-b],[-c,a]].
    DD x0 = ddDiv(ddSub(closure.d, closure.a), ddMul(DD(-2.0), closure.c));
    DD fourMinus = ddSub(DD(4.0), ddMul(tr, tr));
    if (!(fourMinus.hi > 0.0))
      fail(Err::InternalError, "closure product is not elliptic");
    DD y0 = ddDiv(ddSqrt(fourMinus), DD(2.0 * std::abs(closure.c.to())));
    if (std::abs(x0.to()) > 1e-7 * std::max(1.0, y0.to()))
      fail(Err::InternalError, "closure center is off the axis: (" + std::to_string(x0.to()) +
                                   ", " + std::to_string(y0.to()) + ")");
    out.r1 = reflection(InteriorPoint(x0.to(), y0.to()));
    out.phi1 = std::log(ddDiv(y0, DD(tau[0])).to());
    out.altSum = -out.phi1 + out.phi2 - out.phi3 + out.phi4 + tailAlt;
    return out;
  };

  // The alternating sum is, up to an additive constant, -log of the closure
  // encoding w, so correcting w by exp(altSum) lands exactly on the member
  // with vanishing sum, independently of the provisional choice.
  LastFour first = buildLastFour(provisionalV);
  double w0 = closureForward(cfg, provisionalV);
  double vStar = closureInvert(cfg, w0 * std::exp(first.altSum));
  LastFour last = buildLastFour(vStar);
  if (std::abs(last.altSum) > 1e-7)
    fail(Err::InternalError,
         "closure correction failed, residual alternating sum " + std::to_string(last.altSum));

  refl[0] = last.r1;
  refl[1] = last.r2;
  refl[2] = last.r3;
  refl[3] = last.r4;

  Representation rep2;
  rep2.pres = Presentation(Kind::H, n);
  for (int j = 1; j <= n - 2; ++j)
    rep2.gens.push_back(fromStd * refl[static_cast<size_t>(j) - 1] * toStd);
  rep2.gens.push_back(rep1.image(n - 1));
  rep2.gens.push_back(an);

  return reconstruct(rep1, rep2);
}

} // namespace fibretool
