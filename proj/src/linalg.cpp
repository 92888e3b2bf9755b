#include "rank3/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace rank3 {

std::uint64_t encode(const Field& f, const Vec& v, int dim) {
  std::uint64_t code = 0;
  for (int i = 0; i < dim; ++i) code = code * f.q() + v[i];
  return code;
}

Vec decode(const Field& f, std::uint64_t code, int dim) {
  Vec v{};
  for (int i = dim; i-- > 0;) {
    v[i] = static_cast<Elem>(code % f.q());
    code /= f.q();
  }
  return v;
}

bool is_zero(const Vec& v, int dim) {
  for (int i = 0; i < dim; ++i)
    if (v[i] != 0) return false;
  return true;
}

bool normalize(const Field& f, Vec& v, int dim) {
  for (int i = 0; i < dim; ++i) {
    if (v[i] == 0) continue;
    Elem s = f.inv(v[i]);
    for (int j = i; j < dim; ++j) v[j] = f.mul(v[j], s);
    return true;
  }
  return false;
}

GFMatrix GFMatrix::from_rows(std::span<const Vec> rows, int cols) {
  GFMatrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  return m;
}

GFMatrix GFMatrix::identity(int n) {
  GFMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vec GFMatrix::row(int r) const {
  Vec v{};
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

void GFMatrix::append_row(const Vec& v) {
  for (int c = 0; c < cols_; ++c) data_.push_back(v[c]);
  ++rows_;
}

GFMatrix GFMatrix::transpose() const {
  GFMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

int rref_in_place(const Field& f, GFMatrix& m) {
  int lead = 0;
  for (int c = 0; c < m.cols() && lead < m.rows(); ++c) {
    int piv = -1;
    for (int r = lead; r < m.rows(); ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int k = 0; k < m.cols(); ++k) std::swap(m.at(piv, k), m.at(lead, k));
    Elem s = f.inv(m.at(lead, c));
    for (int k = 0; k < m.cols(); ++k) m.at(lead, k) = f.mul(m.at(lead, k), s);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == lead || m.at(r, c) == 0) continue;
      Elem factor = f.neg(m.at(r, c));
      for (int k = 0; k < m.cols(); ++k) m.at(r, k) = f.add(m.at(r, k), f.mul(factor, m.at(lead, k)));
    }
    ++lead;
  }
  GFMatrix trimmed(lead, m.cols());
  for (int r = 0; r < lead; ++r)
    for (int c = 0; c < m.cols(); ++c) trimmed.at(r, c) = m.at(r, c);
  m = std::move(trimmed);
  return lead;
}

int rank(const Field& f, GFMatrix m) { return rref_in_place(f, m); }

GFMatrix null_space(const Field& f, const GFMatrix& m) {
  GFMatrix r = m;
  int rk = rref_in_place(f, r);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(m.cols(), false);
  for (int i = 0; i < rk; ++i)
    for (int c = 0; c < m.cols(); ++c)
      if (r.at(i, c) != 0) {
        pivot_col.push_back(c);
        is_pivot[c] = true;
        break;
      }
  GFMatrix basis(m.cols() - rk, m.cols());
  int out = 0;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.at(out, free) = 1;
    for (int i = 0; i < rk; ++i) basis.at(out, pivot_col[i]) = f.neg(r.at(i, free));
    ++out;
  }
  return basis;
}

GFMatrix multiply(const Field& f, const GFMatrix& a, const GFMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  GFMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Elem s = 0;
      for (int k = 0; k < a.cols(); ++k) s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
      c.at(i, j) = s;
    }
  return c;
}

bool Subspace::contains(const Field& f, const Vec& v) const {
  GFMatrix m = basis_;
  m.append_row(v);
  return rank(f, m) == dim();
}

std::string Subspace::key() const {
  std::string k;
  k.reserve(static_cast<std::size_t>(dim()) * ambient_ + 1);
  k.push_back(static_cast<char>(ambient_));
  for (int r = 0; r < basis_.rows(); ++r)
    for (int c = 0; c < basis_.cols(); ++c) k.push_back(static_cast<char>(basis_.at(r, c)));
  return k;
}

Subspace rref_canonicalize(const Field& f, const GFMatrix& m) {
  GFMatrix r = m;
  rref_in_place(f, r);
  return Subspace(m.cols(), std::move(r));
}

Subspace span_of(const Field& f, std::span<const Vec> vectors, int ambient) {
  return rref_canonicalize(f, GFMatrix::from_rows(vectors, ambient));
}

Subspace subspace_sum(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  GFMatrix m = a.basis();
  for (int r = 0; r < b.dim(); ++r) m.append_row(b.basis().row(r));
  return rref_canonicalize(f, m);
}

Intersection intersect_dim(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const int d = a.ambient();
  // Rows (x, y) of the left kernel of [A; B] give x A = -y B, a vector of A n B.
  GFMatrix stacked = a.basis();
  for (int r = 0; r < b.dim(); ++r) stacked.append_row(b.basis().row(r));
  GFMatrix kernel = null_space(f, stacked.transpose());
  GFMatrix vecs(0, d);
  for (int k = 0; k < kernel.rows(); ++k) {
    Vec v{};
    for (int i = 0; i < a.dim(); ++i)
      for (int c = 0; c < d; ++c) v[c] = f.add(v[c], f.mul(kernel.at(k, i), a.basis().at(i, c)));
    vecs.append_row(v);
  }
  Subspace s = rref_canonicalize(f, vecs);
  int dim = s.dim();
  return {std::move(s), dim};
}

}  // namespace rank3
