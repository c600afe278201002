#include "shell.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fibration.hpp"
#include "fibre.hpp"
#include "invariants.hpp"

namespace fibretool {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi_v<double>;

std::string readFileOrFail(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(Err::IoError, "cannot open for reading: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    fail(Err::IoError, "read failure: " + path);
  }
  return ss.str();
}

void writeFileOrFail(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(Err::IoError, "cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out.good()) {
    fail(Err::IoError, "write failure: " + path);
  }
}

double requireFiniteNumber(const ojson& v, const std::string& where) {
  if (!v.is_number()) {
    fail(Err::ParseError, where + ": expected a number");
  }
  double d = v.get<double>();
  if (!std::isfinite(d)) {
    fail(Err::ParseError, where + ": non-finite value");
  }
  return d;
}

ojson parseHeader(const std::string& path, const char* expectedFormat) {
  std::string text = readFileOrFail(path);
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    fail(Err::ParseError, std::string("JSON parse: ") + e.what());
  }
  if (!j.is_object()) {
    fail(Err::ParseError, "top level: expected an object");
  }
  if (!j.contains("format") || !j["format"].is_string() ||
      j["format"].get<std::string>() != expectedFormat) {
    fail(Err::ParseError, std::string("format: expected \"") + expectedFormat + "\"");
  }
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<long long>() != 1) {
    fail(Err::ParseError, "version: unrecognized (this reader understands version 1)");
  }
  return j;
}

Presentation presentationFrom(const ojson& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    fail(Err::ParseError, "kind: expected the string \"H\" or \"G\"");
  }
  std::string k = j["kind"].get<std::string>();
  if (k != "H" && k != "G") {
    fail(Err::ParseError, "kind: expected the string \"H\" or \"G\"");
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    fail(Err::ParseError, "n: expected an integer");
  }
  long long n = j["n"].get<long long>();
  if (n < 3 || n > 1000000) {
    fail(Err::ParseError, "n: out of range");
  }
  try {
    return Presentation{k == "H" ? Kind::H : Kind::G, static_cast<int>(n)};
  } catch (const FtError& e) {
    fail(Err::ParseError, std::string("n: ") + e.what());
  }
}

std::string metadataFrom(const ojson& j) {
  if (!j.contains("metadata")) {
    return std::string();
  }
  return j["metadata"].dump();
}

std::string fmtDouble(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return std::string(buf);
}

std::string relatorName(const Presentation& pres, size_t index) {
  if (pres.kind == Kind::H) {
    if (index < static_cast<size_t>(pres.n)) {
      return "r" + std::to_string(index + 1) + "^2";
    }
    return "long relator";
  }
  return index == 0 ? "relator1" : "relator2";
}

const char* isoKindName(IsoKind k) {
  switch (k) {
  case IsoKind::Identity:
    return "identity";
  case IsoKind::Elliptic:
    return "elliptic";
  case IsoKind::Parabolic:
    return "parabolic";
  case IsoKind::Hyperbolic:
    return "hyperbolic";
  }
  return "unknown";
}

unsigned sweepThreadCap() {
  const char* env = std::getenv("FIBRETOOL_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long parsed = std::strtoul(env, &end, 10);
    if (end == nullptr || *end != '\0' || parsed < 1 || parsed > 4096) {
      fail(Err::InvalidInput, "FIBRETOOL_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(parsed);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

} // namespace

RepFile loadRepFile(const std::string& path) {
  ojson j = parseHeader(path, "fibretool-rep");
  Presentation pres = presentationFrom(j);
  if (!j.contains("generators") || !j["generators"].is_array()) {
    fail(Err::ParseError, "generators: expected an array");
  }
  const ojson& rows = j["generators"];
  size_t expected = pres.generatorCount();
  if (rows.size() != expected) {
    fail(Err::ParseError, "generators: expected " + std::to_string(expected) + " rows, found " +
                              std::to_string(rows.size()));
  }
  Representation rep{pres, {}};
  rep.gens.reserve(expected);
  for (size_t i = 0; i < rows.size(); ++i) {
    std::string where = "generators[" + std::to_string(i) + "]";
    const ojson& row = rows[i];
    if (!row.is_array() || row.size() != 4) {
      fail(Err::ParseError, where + ": expected 4 reals");
    }
    double a = requireFiniteNumber(row[0], where);
    double b = requireFiniteNumber(row[1], where);
    double c = requireFiniteNumber(row[2], where);
    double d = requireFiniteNumber(row[3], where);
    double det = a * d - b * c;
    if (std::abs(det - 1.0) > 1e-6) {
      fail(Err::ParseError, where + ": determinant " + fmtDouble("%.9f", det) + " is not one");
    }
    try {
      rep.gens.push_back(ProjMatrix::fromUnitDeterminant(a, b, c, d));
    } catch (const FtError& e) {
      fail(Err::ParseError, where + ": " + e.what());
    }
  }
  return RepFile{std::move(rep), metadataFrom(j)};
}

void saveRepFile(const RepFile& file, const std::string& path) {
  validateStructure(file.rep);
  ojson j;
  j["format"] = "fibretool-rep";
  j["version"] = 1;
  j["kind"] = file.rep.pres.kind == Kind::H ? "H" : "G";
  j["n"] = file.rep.pres.n;
  ojson rows = ojson::array();
  for (const ProjMatrix& g : file.rep.gens) {
    ProjMatrix m = g.signCanonical();
    rows.push_back(ojson::array({m.a, m.b, m.c, m.d}));
  }
  j["generators"] = std::move(rows);
  if (!file.metadata.empty()) {
    try {
      j["metadata"] = ojson::parse(file.metadata);
    } catch (const std::exception&) {
      fail(Err::InvalidInput, "saveRepFile: metadata is not valid JSON");
    }
  }
  writeFileOrFail(path, j.dump(2) + "\n");
}

Rep3File loadRep3File(const std::string& path) {
  ojson j = parseHeader(path, "fibretool-rep3");
  Presentation pres = presentationFrom(j);
  if (!j.contains("generators") || !j["generators"].is_array()) {
    fail(Err::ParseError, "generators: expected an array");
  }
  const ojson& mats = j["generators"];
  size_t expected = pres.generatorCount();
  if (mats.size() != expected) {
    fail(Err::ParseError, "generators: expected " + std::to_string(expected) + " matrices, found " +
                              std::to_string(mats.size()));
  }
  Rep3 rep;
  rep.pres = pres;
  rep.gens.reserve(expected);
  for (size_t g = 0; g < mats.size(); ++g) {
    const ojson& mat = mats[g];
    std::string base = "generators[" + std::to_string(g) + "]";
    if (!mat.is_array() || mat.size() != 3) {
      fail(Err::ParseError, base + ": expected 3 rows");
    }
    Mat3 m;
    for (size_t r = 0; r < 3; ++r) {
      const ojson& row = mat[r];
      if (!row.is_array() || row.size() != 3) {
        fail(Err::ParseError, base + ": expected rows of 3 entries");
      }
      for (size_t c = 0; c < 3; ++c) {
        const ojson& cell = row[c];
        std::string where =
            base + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        if (!cell.is_array() || cell.size() != 2) {
          fail(Err::ParseError, where + ": expected [re, im]");
        }
        double re = requireFiniteNumber(cell[0], where);
        double im = requireFiniteNumber(cell[1], where);
        m.e[r][c] = Cx(re, im);
      }
    }
    rep.gens.push_back(m);
  }
  return Rep3File{std::move(rep), metadataFrom(j)};
}

void saveRep3File(const Rep3File& file, const std::string& path) {
  size_t expected = file.rep.pres.generatorCount();
  if (file.rep.gens.size() != expected) {
    fail(Err::InvalidInput, "saveRep3File: generator count mismatch");
  }
  ojson j;
  j["format"] = "fibretool-rep3";
  j["version"] = 1;
  j["kind"] = file.rep.pres.kind == Kind::H ? "H" : "G";
  j["n"] = file.rep.pres.n;
  ojson mats = ojson::array();
  for (const Mat3& m : file.rep.gens) {
    ojson mat = ojson::array();
    for (size_t r = 0; r < 3; ++r) {
      ojson row = ojson::array();
      for (size_t c = 0; c < 3; ++c) {
        row.push_back(ojson::array({m.e[r][c].real(), m.e[r][c].imag()}));
      }
      mat.push_back(std::move(row));
    }
    mats.push_back(std::move(mat));
  }
  j["generators"] = std::move(mats);
  if (!file.metadata.empty()) {
    try {
      j["metadata"] = ojson::parse(file.metadata);
    } catch (const std::exception&) {
      fail(Err::InvalidInput, "saveRep3File: metadata is not valid JSON");
    }
  }
  writeFileOrFail(path, j.dump(2) + "\n");
}

Representation loadRep(const std::string& path) { return loadRepFile(path).rep; }

void saveRep(const Representation& rep, const std::string& path) {
  saveRepFile(RepFile{rep, std::string()}, path);
}

Rep3 loadRep3(const std::string& path) { return loadRep3File(path).rep; }

void saveRep3(const Rep3& rep, const std::string& path) {
  saveRep3File(Rep3File{rep, std::string()}, path);
}

VerifyOutcome verifyRep(const Representation& rep, double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    fail(Err::InvalidInput, "verifyRep: tolerance must be a positive real");
  }
  validateStructure(rep);
  std::ostringstream out;
  bool pass = true;
  bool isH = rep.pres.kind == Kind::H;
  out << "kind " << (isH ? "H" : "G") << "\n";
  out << "n " << rep.pres.n << "\n";
  std::vector<Word> rels = definingRelators(rep.pres);
  for (size_t k = 0; k < rels.size(); ++k) {
    double res = distUpToSign(evalWord(rep, rels[k]), ProjMatrix::identity());
    bool ok = res < tolerance;
    pass = pass && ok;
    out << "relation " << relatorName(rep.pres, k) << " residual " << fmtDouble("%.3e", res)
        << (ok ? " ok" : " FAIL") << "\n";
  }
  if (isH) {
    for (int i = 1; i <= rep.pres.n; ++i) {
      const ProjMatrix& g = rep.image(i);
      double dev = std::abs(g.trace());
      bool ok = dev <= tolerance * std::max(1.0, g.supNorm());
      pass = pass && ok;
      out << "halfturn r" << i << " trace " << fmtDouble("%.3e", dev) << (ok ? " ok" : " FAIL")
          << "\n";
    }
  }
  try {
    out << "area " << fmtDouble("%.9f", repArea(rep)) << "\n";
  } catch (const FtError& e) {
    out << "area unavailable (" << e.what() << ")\n";
  }
  const char* label = isH ? "r" : "g";
  for (size_t i = 0; i < rep.gens.size(); ++i) {
    out << "class " << label << (i + 1) << " " << isoKindName(classify(rep.gens[i]).kind) << "\n";
  }
  out << "verdict " << (pass ? "pass" : "FAIL") << "\n";
  return VerifyOutcome{pass, out.str()};
}

VerifyOutcome verifySweep(const Representation& rep, int count, double tolerance) {
  if (count < 1) {
    fail(Err::InvalidInput, "verifySweep: count must be positive");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    fail(Err::InvalidInput, "verifySweep: tolerance must be a positive real");
  }
  if (rep.pres.kind != Kind::G) {
    fail(Err::InvalidInput, "verifySweep: sweep requires an even-family (kind G) representation");
  }
  Representation rep1 = pushforward(rep, 1);
  int n = rep.pres.n;
  unsigned threads = std::min<unsigned>(sweepThreadCap(), static_cast<unsigned>(count));
  std::vector<std::string> lines(static_cast<size_t>(count));
  std::vector<char> good(static_cast<size_t>(count), 0);
  auto worker = [&](unsigned offset) {
    for (int s = static_cast<int>(offset); s < count; s += static_cast<int>(threads)) {
      try {
        std::mt19937_64 eng(static_cast<std::uint64_t>(s));
        std::vector<double> lambda;
        lambda.reserve(static_cast<size_t>(std::max(0, n - 6)));
        for (int j = 0; j < n - 6; ++j) {
          double u01 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
          lambda.push_back(2.0 * u01 - 1.0);
        }
        Representation deformed = fibrePoint(rep1, lambda);
        double res = relationResidual(deformed);
        double area = repArea(deformed);
        bool ok = res < tolerance;
        lines[static_cast<size_t>(s)] = "seed " + std::to_string(s) + " residual " +
                                        fmtDouble("%.3e", res) + " area " +
                                        fmtDouble("%.9f", area) + (ok ? " ok" : " FAIL");
        good[static_cast<size_t>(s)] = ok ? 1 : 0;
      } catch (const std::exception& e) {
        lines[static_cast<size_t>(s)] =
            "seed " + std::to_string(s) + " FAIL (" + e.what() + ")";
        good[static_cast<size_t>(s)] = 0;
      }
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back(worker, w);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  std::ostringstream out;
  int passed = 0;
  for (int s = 0; s < count; ++s) {
    out << lines[static_cast<size_t>(s)] << "\n";
    passed += good[static_cast<size_t>(s)] ? 1 : 0;
  }
  bool pass = passed == count;
  out << "sweep " << passed << "/" << count << (pass ? " pass" : " FAIL") << "\n";
  return VerifyOutcome{pass, out.str()};
}

double roundtripDeviation(const Representation& rep) {
  if (rep.pres.kind != Kind::G) {
    fail(Err::InvalidInput, "roundtripDeviation: requires an even-family (kind G) representation");
  }
  Representation r1 = pushforward(rep, 1);
  Representation r2 = pushforward(rep, 2);
  Representation back = reconstruct(r1, r2);
  double dev = 0.0;
  for (size_t i = 0; i < rep.gens.size(); ++i) {
    dev = std::max(dev, distUpToSign(back.gens[i], rep.gens[i]));
  }
  return dev;
}

namespace {

std::complex<double> discOf(const InteriorPoint& p) {
  std::complex<double> z = p.z();
  return (z - std::complex<double>(0.0, 1.0)) / (z + std::complex<double>(0.0, 1.0));
}

std::complex<double> discOf(const BoundaryPoint& p) {
  double th = circleAngle(p);
  return {std::cos(th), std::sin(th)};
}

std::string coord(double v) { return fmtDouble("%.6f", v); }

void svgDot(std::ostringstream& out, std::complex<double> p, double r, const char* fill) {
  out << "<circle cx=\"" << coord(p.real()) << "\" cy=\"" << coord(-p.imag()) << "\" r=\""
      << coord(r) << "\" fill=\"" << fill << "\"/>\n";
}

// Geodesic of the disc between boundary points p, q: the circle through both
// orthogonal to the unit circle (a diameter when they are antipodal). The
// drawn arc is the one inside the disc; the vertical flip to screen
// coordinates turns a mathematically counterclockwise arc into sweep 0.
void svgGeodesic(std::ostringstream& out, std::complex<double> p, std::complex<double> q,
                 const char* stroke, double width) {
  double denom = 1.0 + (p * std::conj(q)).real();
  if (std::abs(denom) < 1e-9) {
    out << "<line x1=\"" << coord(p.real()) << "\" y1=\"" << coord(-p.imag()) << "\" x2=\""
        << coord(q.real()) << "\" y2=\"" << coord(-q.imag()) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << coord(width) << "\"/>\n";
    return;
  }
  std::complex<double> m = (p + q) / denom;
  double r = std::abs(p - m);
  double alpha = std::arg(p - m);
  double beta = std::arg(q - m);
  double dccw = std::fmod(beta - alpha + 4.0 * kPi, 2.0 * kPi);
  std::complex<double> mid = m + r * std::polar(1.0, alpha + dccw / 2.0);
  int sweep = (std::abs(mid) < 1.0) ? 0 : 1;
  out << "<path d=\"M " << coord(p.real()) << " " << coord(-p.imag()) << " A " << coord(r) << " "
      << coord(r) << " 0 0 " << sweep << " " << coord(q.real()) << " " << coord(-q.imag())
      << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << coord(width)
      << "\"/>\n";
}

} // namespace

std::string plotSvg(const Representation& rep) {
  validateStructure(rep);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"-1.15 -1.15 2.3 2.3\">\n";
  out << "<rect x=\"-1.15\" y=\"-1.15\" width=\"2.3\" height=\"2.3\" fill=\"#ffffff\"/>\n";
  out << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" "
         "stroke-width=\"0.01\"/>\n";
  for (const ProjMatrix& g : rep.gens) {
    IsometryClass cls = classify(g);
    if (cls.kind == IsoKind::Hyperbolic) {
      std::complex<double> p = discOf(*cls.repeller);
      std::complex<double> q = discOf(*cls.attractor);
      svgGeodesic(out, p, q, "#777777", 0.008);
      svgDot(out, p, 0.012, "#000000");
      svgDot(out, q, 0.012, "#000000");
    } else if (cls.kind == IsoKind::Elliptic) {
      svgDot(out, discOf(*cls.fixedPoint), 0.015, "#000000");
    }
  }
  if (rep.pres.kind == Kind::G) {
    try {
      TSData ts = tsDecompose(rep);
      svgGeodesic(out, discOf(ts.axis.src), discOf(ts.axis.dst), "#cc0000", 0.014);
      for (const InteriorPoint& c : ts.tCenter) {
        svgDot(out, discOf(c), 0.016, "#0066cc");
      }
      svgDot(out, discOf(ts.s1Center), 0.016, "#00aa44");
      for (const ProjMatrix& s : ts.s) {
        try {
          svgDot(out, discOf(halfTurnCenter(s)), 0.011, "#00aa44");
        } catch (const FtError&) {
          // s_i at the shared crossing saturates to t_i; skip unplottable ones.
        }
      }
    } catch (const FtError&) {
      // Decomposition preconditions can fail for hand-edited files; the
      // basic figure is still emitted.
    }
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace fibretool
