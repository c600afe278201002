#include "fibration.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fibretool {

namespace {

bool onAxis(const ProjMatrix& toStd, const InteriorPoint& p) {
  InteriorPoint q = apply(toStd, p);
  return std::abs(q.x) <= kEpsAxis * q.y;
}

} // namespace

TSData tsDecompose(const Representation& repG) {
  if (repG.pres.kind != Kind::G)
    fail(Err::InvalidInput, "half-turn decomposition expects an even-family representation");
  double residual = relationResidual(repG);
  if (residual >= 1e-6)
    fail(Err::InvalidInput, "relation residual " + std::to_string(residual) +
                                " too large for the half-turn decomposition");
  const int n = repG.pres.n;

  for (int i = 1; i <= n - 1; ++i)
    if (classify(repG.image(i)).kind != IsoKind::Hyperbolic)
      fail(Err::NotInMaximalComponent,
           "generator image " + std::to_string(i) + " is not hyperbolic");

  Geodesic axis = axisOf(repG.image(1));
  ProjMatrix toStd = normalizeTo(axis);

  std::vector<ProjMatrix> t(static_cast<size_t>(n - 1), ProjMatrix::identity());
  std::vector<ProjMatrix> s(static_cast<size_t>(n), ProjMatrix::identity());
  std::vector<InteriorPoint> tCenter;
  tCenter.reserve(static_cast<size_t>(n - 1));
  tCenter.assign(static_cast<size_t>(n - 1), InteriorPoint(0.0, 1.0));

  for (int i = 2; i <= n - 1; ++i) {
    Geodesic axisI = axisOf(repG.image(i));
    std::optional<InteriorPoint> cross;
    try {
      cross = intersectGeodesics(axis, axisI);
    } catch (const FtError& e) {
      if (e.code() == Err::DegenerateIntersection)
        fail(Err::NotInMaximalComponent, "axes of generator images 1 and " + std::to_string(i) +
                                             " coincide");
      throw;
    }
    if (!cross)
      fail(Err::NotInMaximalComponent, "axes of generator images 1 and " + std::to_string(i) +
                                           " do not cross in the interior");
    auto [ti, si] = splitAtAxisPoint(repG.image(i), *cross);
    t[static_cast<size_t>(i) - 1] = ti;
    s[static_cast<size_t>(i) - 1] = si;
    tCenter[static_cast<size_t>(i) - 1] = *cross;
  }

  // t_1 reuses t_{n-1}; splitting the g_1-image at the same center yields
  // s_1, whose own center again lies on the axis.
  auto [t1, s1] = splitAtAxisPoint(repG.image(1), tCenter[static_cast<size_t>(n) - 2]);
  (void)t1;
  t[0] = t[static_cast<size_t>(n) - 2];
  s[0] = s1;
  tCenter[0] = tCenter[static_cast<size_t>(n) - 2];
  s[static_cast<size_t>(n) - 1] = t[static_cast<size_t>(n) - 2];

  InteriorPoint s1Center = halfTurnCenter(s1);

  std::vector<bool> tFlags;
  tFlags.reserve(tCenter.size());
  for (const InteriorPoint& p : tCenter) tFlags.push_back(onAxis(toStd, p));

  return TSData{n,
                axis,
                std::move(t),
                std::move(s),
                std::move(tCenter),
                s1Center,
                std::move(tFlags),
                onAxis(toStd, s1Center)};
}

UVTables uvTables(const TSData& ts) {
  const int n = ts.n;
  std::vector<ProjMatrix> h;
  h.reserve(static_cast<size_t>(n - 2));
  for (int i = 2; i <= n - 1; ++i) h.push_back(ts.tAt(i) * ts.tAt(i - 1));

  std::vector<ProjMatrix> u(static_cast<size_t>(n), ProjMatrix::identity());
  std::vector<ProjMatrix> v(static_cast<size_t>(n), ProjMatrix::identity());
  // u_n = u_{n-1} = u_{n-2} = 1; descending, odd indices absorb h_{i+1}.
  for (int i = n - 3; i >= 1; --i)
    u[static_cast<size_t>(i) - 1] =
        i % 2 == 1 ? u[static_cast<size_t>(i)] * h[static_cast<size_t>(i) - 1]
                   : u[static_cast<size_t>(i)];
  // v_n = v_{n-1} = 1; descending, even indices absorb h_{i+1}.
  for (int i = n - 2; i >= 1; --i)
    v[static_cast<size_t>(i) - 1] =
        i % 2 == 0 ? v[static_cast<size_t>(i)] * h[static_cast<size_t>(i) - 1]
                   : v[static_cast<size_t>(i)];

  return UVTables{n, std::move(h), std::move(u), std::move(v)};
}

namespace {

ProjMatrix conjImage(const UVTables& uv, const TSData& ts, bool useU, int i) {
  const ProjMatrix& w = useU ? uv.uAt(i) : uv.vAt(i);
  if (i == 1) return w * ts.sAt(1);
  return w * ts.sAt(i) * w.inverse();
}

} // namespace

Representation pushforward(const Representation& repG, int which) {
  if (which != 1 && which != 2)
    fail(Err::InvalidInput, "pushforward selector must be 1 or 2, got " + std::to_string(which));
  TSData ts = tsDecompose(repG);
  UVTables uv = uvTables(ts);

  Representation out;
  out.pres = Presentation(Kind::H, ts.n);
  for (int i = 1; i <= ts.n; ++i) out.gens.push_back(conjImage(uv, ts, which == 1, i));

  double residual = relationResidual(out);
  if (residual >= 1e-6)
    fail(Err::InternalError, "involution-family image has relation residual " +
                                 std::to_string(residual));
  return out;
}

FibreCoordinates fParams(const TSData& ts, const UVTables& uv) {
  const int n = ts.n;
  ProjMatrix toStd = normalizeTo(ts.axis);
  ProjMatrix fromStd = toStd.inverse();

  std::vector<double> phi;
  phi.reserve(static_cast<size_t>(n - 2));
  for (int i = 1; i <= n - 2; ++i) {
    ProjMatrix f = i == 1 ? uv.vAt(1) : uv.vAt(i) * uv.uAt(i).inverse();
    double value = 0.0;
    try {
      value = vCoordinate(toStd * f * fromStd);
    } catch (const FtError& e) {
      fail(Err::InternalError, "conjugator " + std::to_string(i) +
                                   " is not a translation along the axis: " + e.what());
    }
    phi.push_back(value);

    ProjMatrix a = conjImage(uv, ts, true, i);
    ProjMatrix c = conjImage(uv, ts, false, i);
    double dev = distUpToSign(f * a * f.inverse(), c);
    if (dev > 1e-6 * std::max(1.0, c.supNorm()))
      fail(Err::InternalError, "conjugator " + std::to_string(i) +
                                   " fails to relate the two images, deviation " +
                                   std::to_string(dev));
  }

  double alt = 0.0;
  for (int i = 1; i <= n - 2; ++i) alt += (i % 2 == 0 ? 1.0 : -1.0) * phi[static_cast<size_t>(i) - 1];
  if (std::abs(alt) > 1e-6)
    fail(Err::InternalError,
         "alternating sum of conjugator lengths is " + std::to_string(alt));

  return FibreCoordinates{std::move(phi)};
}

} // namespace fibretool
