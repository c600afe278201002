// Serialization, verification reports, and figure emission: the JSON rep
// file formats (2x2 real and 3x3 complex), the named-check verify report,
// parallel property sweeps, the round-trip deviation, and the disc-model
// SVG plot.
#pragma once

#include <string>

#include "cxhyp.hpp"
#include "groups.hpp"

namespace fibretool {

// A representation file: the representation plus optional metadata carried
// verbatim (a serialized JSON value, empty when absent).
struct RepFile {
  Representation rep;
  std::string metadata;
};

struct Rep3File {
  Rep3 rep;
  std::string metadata;
};

// Load enforces structure only: recognized format and version, kind, n,
// generator count and shape, finite entries, determinant within 1e-6 of one.
// Geometric properties (half-turn traces, relation residuals) are left to
// the named verify checks. Malformed content raises ParseError with a field
// diagnostic; unreadable or unwritable paths raise IoError.
RepFile loadRepFile(const std::string& path);
void saveRepFile(const RepFile& file, const std::string& path);
Rep3File loadRep3File(const std::string& path);
void saveRep3File(const Rep3File& file, const std::string& path);

// Conveniences without metadata.
Representation loadRep(const std::string& path);
void saveRep(const Representation& rep, const std::string& path);
Rep3 loadRep3(const std::string& path);
void saveRep3(const Rep3& rep, const std::string& path);

// Result of a verification run: the printable report and the overall gate.
struct VerifyOutcome {
  bool pass = false;
  std::string report;
};

// Named checks, one line each: every defining relation's residual against
// the tolerance, the half-turn trace of every odd-family generator, the
// area invariant (informational), and each generator's isometry class.
VerifyOutcome verifyRep(const Representation& rep, double tolerance);

// Property sweep over an even-family representation: for seeds 0..count-1
// a fibre deformation of the input (chart coordinates uniform in [-1, 1]
// from std::mt19937_64(seed)) is generated and verified; one merged line
// per seed. Fans out over a thread pool capped by FIBRETOOL_THREADS.
VerifyOutcome verifySweep(const Representation& rep, int count, double tolerance);

// Largest generator deviation (up to sign) between an even-family
// representation and the reconstruction from its two hyperelliptic
// pushforwards.
double roundtripDeviation(const Representation& rep);

// Disc-model figure of a representation: the boundary circle, generator
// axes with endpoint marks (or fixed-point marks for half-turns), and for
// the even family the common perpendicular-foot axis highlighted with the
// half-turn centers of its canonical t/s decomposition. Self-contained
// SVG 1.1 markup, no external references.
std::string plotSvg(const Representation& rep);

} // namespace fibretool
