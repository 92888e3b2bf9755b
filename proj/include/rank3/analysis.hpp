#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rank3/families.hpp"
#include "rank3/polar.hpp"
#include "rank3/scheme.hpp"

namespace rank3 {

/// A space together with its scheme tables and, when available, a
/// precomputed relation table. Without a table, relations are classified
/// on demand.
class LineScheme {
 public:
  LineScheme(const PolarSpace& space, const RelationTable* table = nullptr);

  const PolarSpace& space() const { return *space_; }
  const SchemeTables& tables() const { return tables_; }
  const RelationTable* table() const { return table_; }
  int n() const { return space_->num_lines(); }
  Relation relation(int a, int b) const { return table_ ? (*table_)(a, b) : space_->classify_pair(a, b); }

 private:
  const PolarSpace* space_;
  const RelationTable* table_;
  SchemeTables tables_;
};

struct LineSet {
  std::string fingerprint;
  std::vector<int> lines;  // strictly increasing
  std::string name;

  int size() const { return static_cast<int>(lines.size()); }
  bool empty() const { return lines.empty(); }
  bool contains(int line) const;
  /// Membership as a 0/1 vector of length n.
  std::vector<char> indicator(int n) const;
};

/// Sorts the indices; throws std::invalid_argument on duplicates or indices
/// out of range.
LineSet make_line_set(const PolarSpace& space, std::vector<int> lines, std::string name = {});
LineSet complement(const PolarSpace& space, const LineSet& y);
LineSet set_union(const PolarSpace& space, const LineSet& a, const LineSet& b);

/// a_i = |{(x,y) in R_i : x,y in Y}| / |Y|. Throws std::invalid_argument for
/// an empty set.
Distribution inner_distribution(const LineScheme& ls, const LineSet& y);
/// Weighted version: a_i = w^T A_i w / (j^T w) for nonnegative weights.
Distribution weighted_inner_distribution(const LineScheme& ls, const std::map<int, Integer>& weights);

/// aQ. Throws std::logic_error if an entry is negative.
Distribution dual_distribution(const SchemeTables& tables, const Distribution& a);
Distribution dual_distribution(const LineScheme& ls, const LineSet& y);

/// Eigenspaces j != 00 with (aQ)_j != 0, as indices 1..4.
std::vector<int> eigenspace_support(const Distribution& aq);
/// Empty for the empty set.
std::vector<int> eigenspace_support(const LineScheme& ls, const LineSet& y);

/// Degrees predicted for a regular set of the given size in <j> + V_j:
/// inside[i] for x in Y, outside[i] for x not in Y.
struct DegreeTable {
  int eigenspace = 0;
  Integer size;
  std::array<Rational, kNumClasses> inside;
  std::array<Rational, kNumClasses> outside;
  std::array<Rational, kNumClasses> valency;

  bool integral() const;
  bool nonnegative() const;
  /// Every degree is at most the valency of its relation.
  bool bounded() const;
};
DegreeTable degree_table(const SchemeTables& tables, int j, const Integer& size);

/// d[x][i] = |{y in Y : (x,y) in R_i}| for every line x.
std::vector<std::array<int, kNumClasses>> vertex_degrees(const LineScheme& ls, const LineSet& y);

struct RegularVerdict {
  bool regular = false;
  int eigenspace = -1;
  bool support_test = false;  // support is a single eigenspace
  bool vertex_test = false;   // vertexwise degrees are constant
  std::vector<int> support;
  std::optional<DegreeTable> degrees;
  /// For each j = 1..4, the first vertex whose degrees violate the formula
  /// for j (-1 when all vertices agree).
  std::array<int, kNumClasses> counterexample{-1, -1, -1, -1, -1};
};

/// Two independent tests: the support of aQ, and the vertexwise degree
/// formula. Throws std::invalid_argument unless Y is a nonempty proper
/// subset, and std::logic_error if the two tests disagree.
RegularVerdict regular_set_check(const LineScheme& ls, const LineSet& y);

struct DivisibilityReport {
  int eigenspace = 0;
  Integer size;
  /// Verdict of the divisibility table, with clause c(ii) excluding m = 1
  /// and its complement 2q^{e+1}+1.
  bool consistent = false;
  /// Same, with the c(ii) exclusion m != 2q^{e+2}+1 taken literally.
  bool consistent_as_printed = false;
  std::string clause;
  Rational modulus;
  std::optional<Integer> m;
  std::string excluded;  // human readable exclusion rule
  std::string reason;
  /// Independent verdict: the predicted regular degrees are integers in
  /// [0, k_i] (sizes 0 and n always pass).
  bool degree_feasible = false;
};

/// Pass tables to skip rebuilding them for each call.
DivisibilityReport divisibility_report(const Integer& size, int j, const SchemeParams& prm,
                                       const SchemeTables* tables = nullptr);

struct DivisorFlags {
  bool uncovered_point = false;  // some point lies on no line of Z
  bool has_spread = false;       // the space has a plane spread
};

struct Divisor {
  Rational modulus;  // as stated
  Rational derived;  // from the intersection-count argument with the witness family
  std::string rule;
};

/// |Z| is a multiple of the modulus whenever chi_Z is orthogonal to the
/// eigenspaces in s (indices 1..4). Throws std::invalid_argument when no
/// rule covers s.
Divisor span_orthogonal_divisor(std::vector<int> s, const SchemeParams& prm, const DivisorFlags& flags = {});

struct PlaneProfile {
  std::map<int, int> histogram;  // intersection size -> number of planes
  std::vector<int> counts;       // per plane
  bool pencils = true;           // every (q+1)-intersection shares a point
};

PlaneProfile plane_profile(const PolarSpace& space, const LineSet& y);

enum class DesignLevel { Points, Planes };

struct DesignResult {
  bool design = false;
  Integer m;
  bool size_formula = false;      // |Y| matches the design size formula
  bool support_consistent = false;  // support inside {20,21} or {11,21}
};

DesignResult design_check(const LineScheme& ls, const LineSet& y, DesignLevel level);

}  // namespace rank3
