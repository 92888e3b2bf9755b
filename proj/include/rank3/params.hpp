#pragma once

#include <stdexcept>
#include <string>

#include "rank3/rational.hpp"

namespace rank3 {

/// The pair (q, e) that fixes the scheme parameters. e is stored doubled so
/// that the half-integral values of the Hermitian families stay exact.
struct SchemeParams {
  unsigned q = 2;
  int two_e = 0;

  /// Throws std::invalid_argument unless two_e is in {0..4} and half-integral
  /// e comes with a square q.
  void validate() const;
  bool e_is_integral() const { return two_e % 2 == 0; }

  /// q^{k/2} for an integer k; requires q square when k is odd.
  /// Negative k yields a proper fraction, which is why this is rational.
  Rational qpow_half(int twice_exponent) const;
  /// q^{e + k}.
  Rational qe(int k) const { return qpow_half(two_e + 2 * k); }
  /// q^{m e + k}.
  Rational qme(int m, int k) const { return qpow_half(m * two_e + 2 * k); }

  /// n = (q^{e+1}+1)(q^{e+2}+1)(q^2+q+1).
  Integer num_lines() const;
  /// (q^2+q+1)(q^{e+2}+1).
  Integer num_points() const;
  /// (q^e+1)(q^{e+1}+1)(q^{e+2}+1).
  Integer num_planes() const;
  /// Lines through a point: (q+1)(q^{e+1}+1).
  Integer lines_per_point() const;

  std::string e_string() const;
  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Converts an exact rational that must be integral; throws otherwise.
Integer as_integer(const Rational& r, const char* what);

}  // namespace rank3
