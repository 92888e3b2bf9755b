#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rank3/analysis.hpp"

namespace rank3 {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- sections

enum class SectionType { Rank3, Quadrangle, Degenerate, Other };
std::string to_string(SectionType t);

/// A hyperplane a^perp of the ambient space, or (Sp6, q even) the quadric
/// x1x2+x3x4+x5x6 + sum c_i x_i^2 whose polar form is the symplectic form.
struct Section {
  enum class Kind { Hyperplane, Quadric };
  Kind kind = Kind::Hyperplane;
  Vec normal{};
  Vec diag{};
  SectionType type = SectionType::Other;
  int num_points = 0;
  int num_lines = 0;
  int num_planes = 0;
};

bool section_contains(const PolarSpace& space, const Section& s, const Vec& x);
std::vector<int> section_points(const PolarSpace& space, const Section& s);
/// Lines of the space contained in the section.
std::vector<int> section_line_indices(const PolarSpace& space, const Section& s);

/// Classifies a^perp by its radical and by counting contained lines/planes.
Section hyperplane_section(const PolarSpace& space, const Vec& normal);
/// Sp6 with q even only.
Section quadric_section(const PolarSpace& space, const Vec& diag);
/// First section of the requested type in a fixed scan order (quadrics for
/// Sp6 with q even, hyperplanes otherwise). Throws ConstructionError if none.
Section find_section(const PolarSpace& space, SectionType type);

// ---------------------------------------------------------------- line families

LineSet plane_lines(const PolarSpace& space, int plane);

enum class PencilMode { Through, PerpAvoiding };
LineSet point_pencil(const PolarSpace& space, int point, PencilMode mode);
/// (q^e+1) on the lines through the point plus 1 on the lines of P^perp
/// missing P.
std::map<int, Integer> weighted_pencil(const PolarSpace& space, int point);

/// All lines inside a rank 3 or quadrangle section; throws ConstructionError
/// for a degenerate or unclassified section.
LineSet hyperplane_section_lines(const PolarSpace& space, const Section& s);

// ---------------------------------------------------------------- ovoids

struct OvoidSet {
  std::string fingerprint;
  std::vector<int> points;
};

/// Checks pairwise non-collinearity, size q^{e+2}+1 and one point per plane.
void validate_ovoid(const PolarSpace& space, const OvoidSet& o);
/// O+(6,q) only: the singular points of a fixed elliptic 4-dim section.
OvoidSet elliptic_ovoid(const PolarSpace& space);

struct PencilUnion {
  LineSet lines;
  Integer formula_size;  // (q+1)(q^{e+1}+1)(q^{e+2}+1)
};
PencilUnion pencil_union(const PolarSpace& space, const OvoidSet& o);

/// m such that every line of the section meets the point set in m points.
/// Throws ConstructionError if the points are not in the section or the
/// count varies.
int validate_m_ovoid(const PolarSpace& space, const Section& section, const std::vector<int>& points);

struct MOvoidLift {
  LineSet lines;
  int m = 0;
  Integer formula_size;  // m q (q^{e+1}+1)(q^{e+2}+1)
};
/// Lines meeting the quadrangle section in exactly one point, that point in
/// the m-ovoid. q must be odd.
MOvoidLift m_ovoid_lift(const PolarSpace& space, const Section& section, const std::vector<int>& points);
/// For O+(6,q): the quadrangle section a^perp containing the elliptic ovoid.
Section ovoid_host_section(const PolarSpace& space);

// ---------------------------------------------------------------- spreads, hexagon

struct SpreadLines {
  std::vector<int> planes;
  LineSet lines;
};
/// Sp6 only: the Desarguesian plane spread from GF(q^3)^2 with the form
/// Tr(ad - bc).
SpreadLines symplectic_spread_lines(const PolarSpace& space);

/// O7 with q odd, Sp6 with q even: lines of the split Cayley hexagon, as the
/// singular trace-zero split octonion pairs with product zero.
LineSet hexagon_lines(const PolarSpace& space);

/// Girth of the point-line incidence graph of the lines (0 if acyclic).
int incidence_girth(const PolarSpace& space, const LineSet& y);

// ---------------------------------------------------------------- two-weight sets

struct TwoWeightProfile {
  Rational m;
  Integer expected_high;  // m(q+1)(q^{e+1}+1)
  Integer expected_low;   // expected_high - q^{e+1}
  std::map<int, int> histogram;  // covered points in H -> number of hyperplanes
  bool matches = false;          // every hyperplane has the count the dichotomy predicts
};

/// Sp6, U7 or O8minus; Y pairwise disjoint with (aQ)_10 = 0.
TwoWeightProfile two_weight_profile(const LineScheme& ls, const LineSet& y);

struct SrgParameters {
  Integer v;
  Rational k, r, s;
  Rational lambda, mu;
  bool integral = false;
};
SrgParameters srg_parameters(const Rational& m, const SchemeParams& prm);

struct GraphCheck {
  int v = 0;
  int k = -1;
  int lambda = -1;
  int mu = -1;
  bool strongly_regular = false;
};
/// The Cayley graph on GF(q)^d whose connection set is the nonzero multiples
/// of the given points. Only for q^d <= 4096.
GraphCheck cayley_graph_check(const PolarSpace& space, const std::vector<int>& points);

/// Points lying on at least one line of Y.
std::vector<int> covered_points(const PolarSpace& space, const LineSet& y);

}  // namespace rank3
