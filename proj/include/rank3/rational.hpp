#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace rank3 {

/// Arbitrary precision integers and canonical rationals (GMP).
using Integer = mpz_class;
using Rational = mpq_class;

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);
/// Parses "num/den" or "num"; the result is canonicalized.
Rational parse_rational(const std::string& s);

bool is_integer(const Rational& r);

/// Dense square matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

  static RationalMatrix identity(int n);
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix scaled(const Rational& s) const;
  /// Gauss-Jordan inverse; throws std::domain_error if singular.
  RationalMatrix inverse() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

}  // namespace rank3
