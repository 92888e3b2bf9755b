#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rank3/field.hpp"
#include "rank3/linalg.hpp"
#include "rank3/params.hpp"

namespace rank3 {

enum class Family { Sp6, O6plus, O7, O8minus, U6, U7 };

std::string to_string(Family f);
/// Accepts "sp6", "o6plus", "o7", "o8minus", "u6", "u7".
Family parse_family(const std::string& s);
int family_dim(Family f);
/// 2e for the family.
int family_two_e(Family f);

/// The five relations between lines, in the fixed order 00, 10, 11, 20, 21.
enum class Relation : std::uint8_t { R00 = 0, R10 = 1, R11 = 2, R20 = 3, R21 = 4 };
inline constexpr int kNumClasses = 5;
inline constexpr std::array<Relation, kNumClasses> kRelations = {Relation::R00, Relation::R10, Relation::R11,
                                                                 Relation::R20, Relation::R21};
inline int index(Relation r) { return static_cast<int>(r); }
std::string to_string(Relation r);
Relation parse_relation(const std::string& s);

/// Maps (dim(L n M), dim(L n M^perp)) to its relation; throws std::logic_error
/// for pairs that cannot occur between lines of a rank 3 polar space.
Relation relation_from_dims(int s, int t);

class PolarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sesquilinear form B(x,y) = sum x_i G_ij conj(y_j), plus a quadratic form
/// sum_{i<=j} c_ij x_i x_j for the orthogonal families.
struct FormSpec {
  Family family = Family::Sp6;
  int dim = 6;
  GFMatrix gram;
  GFMatrix quadratic;  // upper triangular, 0x0 unless orthogonal
  bool hermitian = false;

  bool orthogonal() const { return quadratic.rows() > 0; }
  Elem bilinear(const Field& f, const Vec& x, const Vec& y) const;
  Elem quadratic_value(const Field& f, const Vec& x) const;
  /// Q(x) = 0 for orthogonal forms, B(x,x) = 0 otherwise.
  bool isotropic(const Field& f, const Vec& x) const;
  /// w with B(x, y) = x . w for all x.
  Vec dual(const Field& f, const Vec& y) const;
};

/// The fixed standard form of a family over f. Throws PolarError for
/// incompatible family/q (U needs square q; O7 needs odd q).
FormSpec standard_form(Family family, const Field& f);

struct BuildOptions {
  std::size_t max_points = 100000;
  std::size_t max_lines = 200000;
};

using LineBasis = std::array<Vec, 2>;
using PlaneBasis = std::array<Vec, 3>;

/// An enumerated rank 3 polar space. Points, lines and planes are indexed in
/// lexicographic order of their canonical RREF bases.
class PolarSpace {
 public:
  static PolarSpace build(Family family, unsigned q, const BuildOptions& opts = {});
  /// Rebuilds from stored canonical bases (in index order) and validates them.
  static PolarSpace from_bases(Family family, unsigned q, std::vector<Vec> points, std::vector<LineBasis> lines,
                               std::vector<PlaneBasis> planes);

  const Field& field() const { return field_; }
  const FormSpec& form() const { return form_; }
  Family family() const { return form_.family; }
  unsigned q() const { return field_.q(); }
  int two_e() const { return two_e_; }
  SchemeParams params() const { return {field_.q(), two_e_}; }
  int dim() const { return form_.dim; }
  /// "family:p:h", the identity used by line set files.
  std::string fingerprint() const;
  /// Short name such as "sp6_q2".
  std::string name() const;

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  int num_planes() const { return static_cast<int>(planes_.size()); }

  const Vec& point(int i) const { return points_[i]; }
  const LineBasis& line_basis(int i) const { return lines_[i]; }
  const PlaneBasis& plane_basis(int i) const { return planes_[i]; }
  Subspace point_subspace(int i) const;
  Subspace line_subspace(int i) const;
  Subspace plane_subspace(int i) const;

  std::span<const int> line_points(int l) const { return line_points_[l]; }
  std::span<const int> point_lines(int p) const { return point_lines_[p]; }
  std::span<const int> plane_lines(int pl) const { return plane_lines_[pl]; }
  std::span<const int> plane_points(int pl) const { return plane_points_[pl]; }
  std::span<const int> line_planes(int l) const { return line_planes_[l]; }

  /// Index of the point spanned by v, or -1 if v is zero or not isotropic.
  int point_index(Vec v) const;
  /// Index of a line/plane given by any basis, or -1.
  int line_index(const Subspace& s) const;
  int plane_index(const Subspace& s) const;

  bool collinear(int p1, int p2) const;
  Subspace perp(const Subspace& s) const;

  /// Relation of two lines from shared points and the Gram block; pure.
  Relation classify_pair(int l, int m) const;

 private:
  PolarSpace(Field field, FormSpec form) : field_(std::move(field)), form_(std::move(form)) {}
  void assemble(std::vector<Vec> points, std::vector<LineBasis> lines, std::vector<PlaneBasis> planes);

  Field field_;
  FormSpec form_;
  int two_e_ = 0;
  std::vector<Vec> points_;
  std::vector<LineBasis> lines_;
  std::vector<PlaneBasis> planes_;
  std::vector<std::array<Vec, 2>> line_duals_;
  std::vector<std::vector<int>> line_points_;
  std::vector<std::vector<int>> point_lines_;
  std::vector<std::vector<int>> plane_lines_;
  std::vector<std::vector<int>> plane_points_;
  std::vector<std::vector<int>> line_planes_;
  std::unordered_map<std::uint64_t, int> point_lookup_;
  std::unordered_map<std::string, int> line_lookup_;
  std::unordered_map<std::string, int> plane_lookup_;
};

/// Relation computed from scratch with subspace intersections and perps.
/// Slow; serves as the reference for PolarSpace::classify_pair.
Relation classify_subspaces(const PolarSpace& space, const Subspace& l, const Subspace& m);

/// Dense n x n relation table, 4 bits per entry.
class RelationTable {
 public:
  static constexpr std::size_t kDefaultMaxLines = 10000;

  explicit RelationTable(const PolarSpace& space, unsigned threads = 1, std::size_t max_lines = kDefaultMaxLines);

  int size() const { return n_; }
  Relation operator()(int a, int b) const {
    std::size_t k = static_cast<std::size_t>(a) * n_ + b;
    return static_cast<Relation>((packed_[k >> 1] >> ((k & 1) * 4)) & 0xF);
  }
  /// Number of lines in each relation to line x.
  std::array<int, kNumClasses> census(int x) const;

 private:
  void set(int a, int b, std::uint8_t v) {
    std::size_t k = static_cast<std::size_t>(a) * n_ + b;
    std::uint8_t& byte = packed_[k >> 1];
    int shift = (k & 1) * 4;
    byte = static_cast<std::uint8_t>((byte & ~(0xF << shift)) | (v << shift));
  }

  int n_ = 0;
  std::vector<std::uint8_t> packed_;
};

/// Per-relation adjacency lists (relation index 1..4), for search code.
using Adjacency = std::array<std::vector<std::vector<int>>, kNumClasses>;
Adjacency build_adjacency(const RelationTable& table);

}  // namespace rank3
