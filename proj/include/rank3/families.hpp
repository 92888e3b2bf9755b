#pragma once

#include <array>
#include <string>

#include "rank3/params.hpp"
#include "rank3/polar.hpp"

namespace rank3 {

using Distribution = std::array<Rational, kNumClasses>;

/// The example line families with a known inner distribution.
enum class Example {
  Plane,           // lines of one plane
  PointPencil,     // lines through a point
  PerpAvoiding,    // lines of P^perp missing P
  OneSystem,       // q^{e+2}+1 pairwise opposite lines
  EkrOpposite,     // smallest set in <j> + V10 (never exists)
  EmbeddedRank3,   // lines of an embedded rank 3 space with parameter e-1
  Quadrangle,      // lines of an embedded GQ with parameter e+1
  Spread,          // lines inside the planes of a plane spread
  Hexagon,         // split Cayley hexagon lines (e = 1)
};

std::string to_string(Example x);

/// Inner distribution of the example at (q, e). Throws std::invalid_argument
/// where the formula needs e >= 1 (EmbeddedRank3) or e = 1 (Hexagon).
Distribution expected_inner_distribution(Example x, const SchemeParams& prm);

}  // namespace rank3
