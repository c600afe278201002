// Seed generation: maximal-area representations of the odd family built from
// the rotationally symmetric configuration by one-dimensional root-finding,
// their induced even-family representations, and deterministic randomized
// deformations along the fibre chart.
#pragma once

#include <cstdint>

#include "groups.hpp"

namespace fibretool {

// Parameters of a deformed seed; n must be even and >= 6, magnitude >= 0.
struct SeedSpec {
  int n = 6;
  std::uint64_t seed = 0;
  double magnitude = 0.0;

  SeedSpec(int n_, std::uint64_t seed_, double magnitude_);
};

// Half-turn generators at n equally spaced points on a centered circle of
// the disc model, with the common radius solved so that the defining product
// relation holds (relation residual < 1e-9). The result has area invariant
// (n - 4) * pi.
Representation symmetricHyperelliptic(int n);

// Deterministic deformation: draws lambda in R^{n-6} with entries uniform in
// [-magnitude, magnitude] from std::mt19937_64(seed) (53-bit mantissa
// mapping), and returns the fibre point of the symmetric seed's first
// hyperelliptic pushforward at chart coordinates lambda. Same spec, same
// output, bit for bit.
Representation deformedRep(const SeedSpec& spec);

} // namespace fibretool
