#include "rank3/params.hpp"

#include <cstdlib>

namespace rank3 {

namespace {

bool integer_sqrt(unsigned q, unsigned& root) {
  for (unsigned r = 1; r * r <= q; ++r)
    if (r * r == q) {
      root = r;
      return true;
    }
  return false;
}

}  // namespace

void SchemeParams::validate() const {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (two_e < 0 || two_e > 4) throw std::invalid_argument("e must be one of 0, 1/2, 1, 3/2, 2");
  unsigned root = 0;
  if (two_e % 2 != 0 && !integer_sqrt(q, root))
    throw std::invalid_argument("half-integral e requires a square q (got q=" + std::to_string(q) + ")");
}

Rational SchemeParams::qpow_half(int twice_exponent) const {
  Integer base;
  int k = twice_exponent;
  if (k % 2 == 0) {
    base = q;
    k /= 2;
  } else {
    unsigned root = 0;
    if (!integer_sqrt(q, root)) throw std::invalid_argument("odd power of sqrt(q) with non-square q");
    base = root;
  }
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::abs(k)));
  if (k >= 0) return Rational(power);
  return Rational(1) / Rational(power);
}

Integer as_integer(const Rational& r, const char* what) {
  if (r.get_den() != 1) throw std::logic_error(std::string(what) + " is not integral: " + to_string(r));
  return r.get_num();
}

Integer SchemeParams::num_lines() const {
  Rational qq = q;
  return as_integer((qe(1) + 1) * (qe(2) + 1) * (qq * qq + qq + 1), "line count");
}

Integer SchemeParams::num_points() const {
  Rational qq = q;
  return as_integer((qq * qq + qq + 1) * (qe(2) + 1), "point count");
}

Integer SchemeParams::num_planes() const {
  return as_integer((qe(0) + 1) * (qe(1) + 1) * (qe(2) + 1), "plane count");
}

Integer SchemeParams::lines_per_point() const {
  return as_integer((Rational(q) + 1) * (qe(1) + 1), "pencil size");
}

std::string SchemeParams::e_string() const {
  if (two_e % 2 == 0) return std::to_string(two_e / 2);
  return std::to_string(two_e) + "/2";
}

}  // namespace rank3
