#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rank3/families.hpp"
#include "rank3/scheme.hpp"

namespace rank3 {

class LPError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximize sum a_i over inner distributions with a_00 = 1, a_i = 0 for the
/// forbidden relations, a >= 0 and (aQ)_j >= 0 for every eigenspace.
struct LPInstance {
  SchemeParams params;
  std::vector<int> forbidden;  // relation indices 1..4, sorted
};

/// Parses "R10,R11" (the "R" is optional); throws std::invalid_argument.
std::vector<int> parse_forbidden(const std::string& s);
std::string forbidden_string(const std::vector<int>& forbidden);

struct LPResult {
  LPInstance instance;
  Rational optimum;
  Distribution a;   // an optimal vertex
  Distribution aq;  // its dual distribution
  /// Eigenspaces j >= 1 with (aQ)_j = 0 at every optimal vertex.
  std::vector<int> tight;
  /// Dual multipliers y_j >= 0 with sum_j y_j (-Q_ij) >= 1 for every free i,
  /// so that |Y| <= 1 + sum_j y_j Q_0j.
  std::array<Rational, kNumClasses> dual{};
  Rational dual_bound;
  int optimal_vertices = 0;
};

/// Exact solve by vertex enumeration of the primal and dual polytopes.
/// Throws std::invalid_argument for an empty or full forbidden set.
LPResult delsarte_lp_bound(const LPInstance& inst);
LPResult delsarte_lp_bound(const SchemeTables& tables, const std::vector<int>& forbidden);

/// Re-checks primal feasibility, dual feasibility and equal objectives.
bool verify_certificate(const SchemeTables& tables, const LPResult& r);

/// The closed-form bound for the forbidden sets that have one of their own;
/// nullopt for {R21}, {R20,R21}, {R10,R11,R20}, {R10,R11,R21} and
/// {R11,R20,R21}.
std::optional<Rational> closed_form_bound(const SchemeParams& prm, const std::vector<int>& forbidden);

/// All 14 nonempty proper forbidden sets.
std::vector<std::vector<int>> all_forbidden_sets();

}  // namespace rank3
