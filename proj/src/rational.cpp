#include "rank3/rational.hpp"

#include <stdexcept>
#include <utility>

namespace rank3 {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw std::invalid_argument("malformed rational: " + s);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("matrix size mismatch");
  RationalMatrix c(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Rational s = 0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * o(k, j);
      c(i, j) = s;
    }
  return c;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix c = *this;
  for (auto& x : c.data_) x *= s;
  return c;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix");
    for (int k = 0; k < n_; ++k) {
      std::swap(a(piv, k), a(c, k));
      std::swap(inv(piv, k), inv(c, k));
    }
    Rational s = 1 / a(c, c);
    for (int k = 0; k < n_; ++k) {
      a(c, k) *= s;
      inv(c, k) *= s;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational factor = a(r, c);
      for (int k = 0; k < n_; ++k) {
        a(r, k) -= factor * a(c, k);
        inv(r, k) -= factor * inv(c, k);
      }
    }
  }
  return inv;
}

}  // namespace rank3
