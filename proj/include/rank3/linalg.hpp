#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rank3/field.hpp"

namespace rank3 {

inline constexpr int kMaxDim = 8;

/// A vector of the ambient space; only the first `dim` entries are used.
using Vec = std::array<Elem, kMaxDim>;

/// Base-q integer code of the first `dim` coordinates, first coordinate most
/// significant, so that code order equals lexicographic coordinate order.
std::uint64_t encode(const Field& f, const Vec& v, int dim);
Vec decode(const Field& f, std::uint64_t code, int dim);

/// Scales v so its first nonzero coordinate is 1. Returns false for v = 0.
bool normalize(const Field& f, Vec& v, int dim);
bool is_zero(const Vec& v, int dim);

/// Dense matrix over GF(q), row major.
class GFMatrix {
 public:
  GFMatrix() = default;
  GFMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  static GFMatrix from_rows(std::span<const Vec> rows, int cols);
  static GFMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Vec row(int r) const;
  void append_row(const Vec& v);

  GFMatrix transpose() const;

  friend bool operator==(const GFMatrix&, const GFMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

/// Brings m to reduced row echelon form in place and drops zero rows.
/// Returns the rank.
int rref_in_place(const Field& f, GFMatrix& m);
int rank(const Field& f, GFMatrix m);

/// {x : m x = 0} as the rows of a basis matrix.
GFMatrix null_space(const Field& f, const GFMatrix& m);

GFMatrix multiply(const Field& f, const GFMatrix& a, const GFMatrix& b);

/// A subspace of GF(q)^d held by its unique RREF basis.
class Subspace {
 public:
  Subspace(int ambient, GFMatrix rref_basis) : ambient_(ambient), basis_(std::move(rref_basis)) {}

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const GFMatrix& basis() const { return basis_; }
  bool contains(const Field& f, const Vec& v) const;
  /// Byte string of the canonical basis; the global identity of a subspace.
  std::string key() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  int ambient_;
  GFMatrix basis_;
};

/// Canonical subspace spanned by the rows of m.
Subspace rref_canonicalize(const Field& f, const GFMatrix& m);
Subspace span_of(const Field& f, std::span<const Vec> vectors, int ambient);

Subspace subspace_sum(const Field& f, const Subspace& a, const Subspace& b);

struct Intersection {
  Subspace space;
  int dim;
};

/// Throws std::invalid_argument on ambient mismatch.
Intersection intersect_dim(const Field& f, const Subspace& a, const Subspace& b);

}  // namespace rank3
