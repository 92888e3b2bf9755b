#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rank3/params.hpp"
#include "rank3/polar.hpp"
#include "rank3/rational.hpp"

namespace rank3 {

/// Eigenspaces are indexed 0..4 in the order V00, V10, V11, V20, V21.
std::string eigenspace_name(int j);
/// Accepts "V10", "10".
int parse_eigenspace(const std::string& s);

class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalue matrix P (rows eigenspaces, columns relations) and dual matrix
/// Q (rows relations, columns eigenspaces) of the line scheme.
struct SchemeTables {
  SchemeParams params;
  Integer n;
  RationalMatrix P;
  RationalMatrix Q;
  std::array<Integer, kNumClasses> multiplicities;

  Integer valency(int relation) const { return P(0, relation).get_num(); }
};

/// P evaluated exactly at (q, e).
RationalMatrix p_matrix(const SchemeParams& params);
/// The explicit closed form of Q with theta, eta and nu substituted. The
/// commonly printed form has q*eta where the (R20, V10) entry needs
/// q^{e+2}-q^{e+1}-q^e-q; as_printed reproduces that version.
RationalMatrix q_matrix_closed_form(const SchemeParams& params, bool as_printed = false);
/// Q = n P^{-1}, cross-checked entrywise against the closed form; throws
/// SchemeError on any mismatch.
RationalMatrix q_matrix(const SchemeParams& params, const RationalMatrix& P);

SchemeTables make_tables(const SchemeParams& params);

struct ProjectorCheck {
  int relation = 0;
  int eigenspace = 0;
  bool pass = false;
};

struct SchemeReport {
  bool valencies_match = false;
  std::array<int, kNumClasses> census{};
  /// One entry per (relation in 10..21, eigenspace in 00..21).
  std::vector<ProjectorCheck> checks;
  bool projectors_sum_to_identity = false;
  bool projectors_idempotent = false;
  int vectors = 0;

  bool pass() const;
};

/// Randomized exact check that the enumerated relations realize P: for random
/// integer x and each j, y = E_j x must satisfy A_i y = P[j][i] y for all i.
/// Works in scaled integer arithmetic; overflow raises std::overflow_error.
SchemeReport verify_scheme(const RelationTable& table, const SchemeTables& tables, int vectors = 5,
                           std::uint64_t seed = 20240601, unsigned threads = 1);

}  // namespace rank3
