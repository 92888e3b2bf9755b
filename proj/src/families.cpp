#include "rank3/families.hpp"

namespace rank3 {

std::string to_string(Example x) {
  switch (x) {
    case Example::Plane: return "plane";
    case Example::PointPencil: return "point_pencil";
    case Example::PerpAvoiding: return "perp_avoiding";
    case Example::OneSystem: return "one_system";
    case Example::EkrOpposite: return "ekr";
    case Example::EmbeddedRank3: return "embedded_rank3";
    case Example::Quadrangle: return "quadrangle";
    case Example::Spread: return "spread";
    case Example::Hexagon: return "hexagon";
  }
  return "?";
}

Distribution expected_inner_distribution(Example x, const SchemeParams& prm) {
  prm.validate();
  const Rational q = prm.q;
  const Rational qe = prm.qe(0);
  switch (x) {
    case Example::Plane:
      return {1, q * q + q, 0, 0, 0};
    case Example::PointPencil:
      return {1, prm.qe(1) + q, prm.qe(2), 0, 0};
    case Example::PerpAvoiding:
      return {1, q * q - 1, prm.qe(1) * (q + 1), (q * q - 1) * prm.qe(1), prm.qme(2, 3)};
    case Example::OneSystem:
      return {1, 0, 0, 0, prm.qe(2)};
    case Example::EkrOpposite:
      return {1, prm.qe(1) + q * q + q, prm.qe(2), prm.qe(3), 0};
    case Example::EmbeddedRank3:
      if (prm.two_e < 2) throw std::invalid_argument("embedded rank 3 space needs e >= 1");
      return {1, q * (q + 1) * (prm.qe(-1) + 1), prm.qe(1) * (q + 1), prm.qe(2) * (q + 1) * (prm.qe(-1) + 1),
              prm.qme(2, 3)};
    case Example::Quadrangle:
      return {1, 0, prm.qe(1) * (q + 1), 0, prm.qme(2, 3)};
    case Example::Spread:
      return {1, q * q + q, 0, prm.qe(2) * (q + 1), prm.qe(4)};
    case Example::Hexagon:
      if (prm.two_e != 2) throw std::invalid_argument("the hexagon formula is stated for e = 1");
      return {1, q * q + q, 0, q * q * q * q + q * q * q, q * q * q * q * q};
  }
  throw std::logic_error("unknown example");
}

}  // namespace rank3
