#include "seedgen.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fibration.hpp"
#include "fibre.hpp"

namespace fibretool {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// Orientation of the equally spaced configuration, calibrated so that the
// area invariant of the output is +(n-4)*pi rather than its negative.
constexpr double kSeedDir = 1.0;

// Half-turn centers: disc points tanh(rho/2) e^{i theta_j} pulled back to the
// half-plane by the inverse Cayley map w -> i (1 + w)/(1 - w).
std::vector<InteriorPoint> ringCenters(int n, double rho) {
  std::vector<InteriorPoint> out;
  out.reserve(static_cast<size_t>(n));
  double radius = std::tanh(rho / 2.0);
  for (int j = 0; j < n; ++j) {
    double theta = kSeedDir * 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    std::complex<double> w = std::polar(radius, theta);
    std::complex<double> z =
        std::complex<double>(0.0, 1.0) * (1.0 + w) / (1.0 - w);
    out.emplace_back(z.real(), z.imag());
  }
  return out;
}

// Signed rotation angle of the defining-relator product r_n ... r_1 of the
// half-turns about the ring points, about the configuration's center.
//
// The ring is invariant under the rotation C by kSeedDir * 2pi/n about the
// disc-model center, and r_i is the half-turn about C^{i-1} q_1, so the
// relator product telescopes to a conjugate of (R(q_1) C^{-1})^n (up to the
// central element C^n). The total rotation angle is therefore n times the
// angle of the single bounded factor N = R(q_1) C^{-1}; forming the product
// of all n half-turns directly instead runs through huge intermediate
// translations and loses the determinant to cancellation.
//
// In the disc picture the factors are the unit-determinant matrices
//   R(w) = i/(1-|w|^2) [[1+|w|^2, -2w], [2 conj(w), -(1+|w|^2)]],
//   C^{-1} = diag(e^{-i pi d/n}, e^{i pi d/n}),   d = kSeedDir,
// acting as z -> (a z + b)/(conj(b) z + conj(a)). For an elliptic
// [[a,b],[conj b, conj a]] the Moebius derivative at the interior fixed
// point is e^{i psi} with
//   psi = 2 atan2(sign(Im a) sqrt(Im(a)^2 - |b|^2), Re a).
// Past the elliptic range of N the product carries no rotation and the
// angle is reported as 0.
double angleAt(int n, double rho) {
  const double radius = std::tanh(rho / 2.0);
  const double rr = radius * radius;
  const std::complex<double> ra = std::complex<double>(0.0, 1.0) * (1.0 + rr) / (1.0 - rr);
  const std::complex<double> rb = std::complex<double>(0.0, -2.0) * radius / (1.0 - rr);
  const std::complex<double> ph = std::polar(1.0, -kSeedDir * kPi / static_cast<double>(n));
  const std::complex<double> a = ra * ph;
  const std::complex<double> b = rb * std::conj(ph);
  double disc = a.imag() * a.imag() - std::norm(b);
  if (disc <= 0.0) return 0.0;
  double signIm = (a.imag() > 0.0) ? 1.0 : -1.0;
  double psi = 2.0 * std::atan2(signIm * std::sqrt(disc), a.real());
  return static_cast<double>(n) * psi;
}

} // namespace

SeedSpec::SeedSpec(int n_, std::uint64_t seed_, double magnitude_)
    : n(n_), seed(seed_), magnitude(magnitude_) {
  if (n < 6 || n % 2 != 0) {
    fail(Err::InvalidInput, "SeedSpec: n must be even and at least 6");
  }
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    fail(Err::InvalidInput, "SeedSpec: magnitude must be a nonnegative real");
  }
}

Representation symmetricHyperelliptic(int n) {
  if (n < 6 || n % 2 != 0) {
    fail(Err::InvalidInput, "symmetricHyperelliptic: n must be even and at least 6");
  }
  // The relator rotation angle decreases from just under (n-2)*pi toward
  // zero as the ring radius grows, passing a solution of the relation at
  // every multiple of 2*pi. The area invariant of the solution at angle
  // 2*pi*k is (n-2)*pi - 2*pi*k, so the maximal configuration is the final
  // crossing, at angle exactly 2*pi.
  const double target = 2.0 * kPi;
  const double rhoMin = 0.1;
  const double rhoMax = 5.0;
  const double step = 0.01;

  // Scan the radius grid for sign changes of the rotation-angle defect.
  // The defect must change sign exactly once: a monotone bracket is what
  // makes the refined root the intended configuration.
  auto defectAt = [&](double rho) { return std::abs(angleAt(n, rho)) - target; };
  double prevRho = rhoMin;
  double prevDefect = defectAt(rhoMin);
  double loRho = 0.0;
  double hiRho = 0.0;
  int crossings = 0;
  for (double rho = rhoMin + step; rho <= rhoMax + 0.5 * step; rho += step) {
    double defect = defectAt(rho);
    if ((prevDefect <= 0.0 && defect > 0.0) || (prevDefect >= 0.0 && defect < 0.0)) {
      ++crossings;
      loRho = prevRho;
      hiRho = rho;
    }
    prevRho = rho;
    prevDefect = defect;
  }
  if (crossings == 0) {
    fail(Err::InternalError,
         "symmetricHyperelliptic: no crossing of the target rotation angle in [0.1, 5]");
  }
  if (crossings > 1) {
    fail(Err::InternalError,
         "symmetricHyperelliptic: multiple crossings of the target rotation angle (" +
             std::to_string(crossings) + "); configuration not monotone");
  }

  double loDefect = defectAt(loRho);
  for (int iter = 0; iter < 64; ++iter) {
    double mid = 0.5 * (loRho + hiRho);
    double defectMid = defectAt(mid);
    if ((defectMid <= 0.0) == (loDefect <= 0.0)) {
      loRho = mid;
      loDefect = defectMid;
    } else {
      hiRho = mid;
    }
  }

  double rhoStar = 0.5 * (loRho + hiRho);
  std::vector<InteriorPoint> centers = ringCenters(n, rhoStar);
  Representation rep{Presentation{Kind::H, n}, {}};
  rep.gens.reserve(centers.size());
  for (const InteriorPoint& q : centers) {
    rep.gens.push_back(reflection(q));
  }
  double residual = relationResidual(rep);
  if (residual >= 1e-9) {
    fail(Err::InternalError,
         "symmetricHyperelliptic: refined radius leaves relation residual " +
             std::to_string(residual));
  }
  return rep;
}

Representation deformedRep(const SeedSpec& spec) {
  Representation seed = symmetricHyperelliptic(spec.n);
  Representation even = gFromR(seed);
  Representation rep1 = pushforward(even, 1);
  std::mt19937_64 eng(spec.seed);
  std::vector<double> lambda;
  lambda.reserve(static_cast<size_t>(spec.n - 6));
  for (int j = 0; j < spec.n - 6; ++j) {
    double u01 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    lambda.push_back((2.0 * u01 - 1.0) * spec.magnitude);
  }
  return fibrePoint(rep1, lambda);
}

} // namespace fibretool
