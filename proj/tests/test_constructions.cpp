#include <functional>

#include "doctest.h"
#include "rank3/constructions.hpp"

using namespace rank3;

namespace {

const PolarSpace& space(Family fam, unsigned q) {
  static std::map<std::pair<int, unsigned>, PolarSpace> cache;
  auto key = std::make_pair(static_cast<int>(fam), q);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, PolarSpace::build(fam, q)).first;
  return it->second;
}

void check_distribution(const LineScheme& ls, const LineSet& y, Example ex) {
  CAPTURE(to_string(ex));
  CAPTURE(ls.space().name());
  CHECK(inner_distribution(ls, y) == expected_inner_distribution(ex, ls.space().params()));
}

// Pairwise disjoint lines of the set covering every covered point once, by
// plain backtracking. Small inputs only.
std::vector<int> line_partition(const PolarSpace& s, const std::vector<int>& lines) {
  std::vector<int> pts;
  for (int l : lines)
    for (int p : s.line_points(l)) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<char> used(s.num_points(), 0);
  std::vector<int> chosen;
  std::function<bool()> go = [&]() {
    int first = -1;
    for (int p : pts)
      if (!used[p]) {
        first = p;
        break;
      }
    if (first < 0) return true;
    for (int l : lines) {
      auto lp = s.line_points(l);
      if (std::find(lp.begin(), lp.end(), first) == lp.end()) continue;
      bool free = true;
      for (int p : lp) free = free && !used[p];
      if (!free) continue;
      for (int p : lp) used[p] = 1;
      chosen.push_back(l);
      if (go()) return true;
      chosen.pop_back();
      for (int p : lp) used[p] = 0;
    }
    return false;
  };
  if (!go()) return {};
  return chosen;
}

}  // namespace

TEST_CASE("sections of O+(6,2)") {
  const auto& s = space(Family::O6plus, 2);
  Section gq = find_section(s, SectionType::Quadrangle);
  CHECK(gq.num_points == 15);
  CHECK(gq.num_lines == 15);
  CHECK(gq.num_planes == 0);
  Section deg = find_section(s, SectionType::Degenerate);
  CHECK(deg.num_points == 19);
  CHECK_THROWS_AS(find_section(s, SectionType::Rank3), ConstructionError);
  CHECK_THROWS_AS(hyperplane_section_lines(s, deg), ConstructionError);
  LineScheme ls(s);
  check_distribution(ls, hyperplane_section_lines(s, gq), Example::Quadrangle);
}

TEST_CASE("quadric sections of Sp(6,2)") {
  const auto& s = space(Family::Sp6, 2);
  LineScheme ls(s);
  Section hyp = find_section(s, SectionType::Rank3);
  CHECK(hyp.kind == Section::Kind::Quadric);
  CHECK(hyp.num_points == 35);
  CHECK(hyp.num_lines == 105);
  CHECK(hyp.num_planes == 30);
  Section ell = find_section(s, SectionType::Quadrangle);
  CHECK(ell.num_points == 27);
  CHECK(ell.num_lines == 45);
  check_distribution(ls, hyperplane_section_lines(s, hyp), Example::EmbeddedRank3);
  check_distribution(ls, hyperplane_section_lines(s, ell), Example::Quadrangle);
  // Every hyperplane of a symplectic space is degenerate.
  Vec a{};
  a[0] = 1;
  CHECK(hyperplane_section(s, a).type == SectionType::Degenerate);
  CHECK_THROWS_AS(quadric_section(space(Family::O6plus, 2), Vec{}), ConstructionError);
}

TEST_CASE("sections of O7(3)") {
  const auto& s = space(Family::O7, 3);
  LineScheme ls(s);
  Section hyp = find_section(s, SectionType::Rank3);
  CHECK(hyp.num_lines == 520);
  Section gq = find_section(s, SectionType::Quadrangle);
  CHECK(gq.num_lines == 280);
  CHECK(gq.num_points == 112);
  check_distribution(ls, hyperplane_section_lines(s, hyp), Example::EmbeddedRank3);
  check_distribution(ls, hyperplane_section_lines(s, gq), Example::Quadrangle);
}

TEST_CASE("O8-(2) has a rank 3 section") {
  const auto& s = space(Family::O8minus, 2);
  LineScheme ls(s);
  Section hyp = find_section(s, SectionType::Rank3);
  CHECK(hyp.num_lines == 315);
  check_distribution(ls, hyperplane_section_lines(s, hyp), Example::EmbeddedRank3);
}

TEST_CASE("planes and pencils have the predicted inner distributions") {
  for (auto [fam, q] : {std::pair{Family::O6plus, 2u}, std::pair{Family::Sp6, 2u}, std::pair{Family::O8minus, 2u},
                        std::pair{Family::O7, 3u}, std::pair{Family::U6, 4u}}) {
    const auto& s = space(fam, q);
    LineScheme ls(s);
    for (int i : {0, s.num_planes() / 2, s.num_planes() - 1}) check_distribution(ls, plane_lines(s, i), Example::Plane);
    for (int p : {0, s.num_points() / 3, s.num_points() - 1}) {
      auto pencil = point_pencil(s, p, PencilMode::Through);
      CHECK(pencil.size() == s.params().lines_per_point());
      check_distribution(ls, pencil, Example::PointPencil);
      check_distribution(ls, point_pencil(s, p, PencilMode::PerpAvoiding), Example::PerpAvoiding);
    }
  }
}

TEST_CASE("weighted pencil is orthogonal to all but V10") {
  for (auto [fam, q] : {std::pair{Family::O6plus, 2u}, std::pair{Family::Sp6, 2u}, std::pair{Family::O7, 3u}}) {
    const auto& s = space(fam, q);
    LineScheme ls(s);
    auto aq = dual_distribution(ls.tables(), weighted_inner_distribution(ls, weighted_pencil(s, 5)));
    CAPTURE(s.name());
    CHECK(eigenspace_support(aq) == std::vector<int>{1});
  }
}

TEST_CASE("elliptic ovoids and their pencil unions") {
  for (unsigned q : {2u, 3u}) {
    const auto& s = space(Family::O6plus, q);
    OvoidSet o = elliptic_ovoid(s);
    CHECK(o.points.size() == q * q + 1);
    PencilUnion u = pencil_union(s, o);
    CHECK(Integer(u.lines.size()) == u.formula_size);
    CHECK(u.lines.size() == (q == 2 ? 45 : 160));
    CHECK(eigenspace_support(LineScheme(s), u.lines) == std::vector<int>{2});
    Section host = ovoid_host_section(s);
    CHECK(validate_m_ovoid(s, host, o.points) == 1);
    OvoidSet bad = o;
    bad.points.pop_back();
    CHECK_THROWS_AS(validate_ovoid(s, bad), ConstructionError);
  }
}

TEST_CASE("m-ovoid lift at O+(6,3)") {
  const auto& s = space(Family::O6plus, 3);
  LineScheme ls(s);
  OvoidSet o = elliptic_ovoid(s);
  Section host = ovoid_host_section(s);
  MOvoidLift lift = m_ovoid_lift(s, host, o.points);
  CHECK(lift.m == 1);
  CHECK(lift.lines.size() == 120);
  CHECK(eigenspace_support(ls, lift.lines) == std::vector<int>{2});
  // The whole section is a 4-ovoid; its lift is every line meeting it in a point.
  MOvoidLift all = m_ovoid_lift(s, host, section_points(s, host));
  CHECK(all.m == 4);
  CHECK(all.lines.size() == 480);
  CHECK(eigenspace_support(ls, all.lines) == std::vector<int>{2});
  CHECK_THROWS_AS(m_ovoid_lift(space(Family::O6plus, 2), find_section(space(Family::O6plus, 2), SectionType::Quadrangle),
                               elliptic_ovoid(space(Family::O6plus, 2)).points),
                  ConstructionError);
}

TEST_CASE("symplectic plane spreads") {
  for (unsigned q : {2u, 3u}) {
    const auto& s = space(Family::Sp6, q);
    LineScheme ls(s);
    SpreadLines sp = symplectic_spread_lines(s);
    CHECK(sp.planes.size() == q * q * q + 1);
    CHECK(sp.lines.size() == (q == 2 ? 63 : 364));
    check_distribution(ls, sp.lines, Example::Spread);
    CHECK(eigenspace_support(ls, sp.lines) == std::vector<int>{3});
  }
  CHECK_THROWS_AS(symplectic_spread_lines(space(Family::O6plus, 2)), ConstructionError);
}

TEST_CASE("split Cayley hexagon") {
  for (auto [fam, q] : {std::pair{Family::Sp6, 2u}, std::pair{Family::O7, 3u}, std::pair{Family::Sp6, 4u}}) {
    const auto& s = space(fam, q);
    CAPTURE(s.name());
    LineSet h = hexagon_lines(s);
    CHECK(h.size() == static_cast<int>((q * q * q + 1) * (q * q + q + 1)));
    for (int p = 0; p < s.num_points(); ++p) {
      int c = 0;
      for (int l : s.point_lines(p)) c += h.contains(l);
      REQUIRE(c == static_cast<int>(q + 1));
    }
    if (q <= 3) {
      CHECK(incidence_girth(s, h) == 12);
      LineScheme ls(s);
      check_distribution(ls, h, Example::Hexagon);
    }
  }
  CHECK_THROWS_AS(hexagon_lines(space(Family::O6plus, 2)), ConstructionError);
}

TEST_CASE("girth of small incidence structures") {
  const auto& s = space(Family::O6plus, 2);
  CHECK(incidence_girth(s, plane_lines(s, 0)) == 6);
  CHECK(incidence_girth(s, point_pencil(s, 0, PencilMode::Through)) == 0);
}

TEST_CASE("two-weight dichotomy for a 1-system of Sp(6,2)") {
  const auto& s = space(Family::Sp6, 2);
  LineScheme ls(s);
  Section ell = find_section(s, SectionType::Quadrangle);
  auto part = line_partition(s, section_line_indices(s, ell));
  REQUIRE(part.size() == 9);
  LineSet y = make_line_set(s, part, "one_system");
  check_distribution(ls, y, Example::OneSystem);
  TwoWeightProfile tw = two_weight_profile(ls, y);
  CHECK(tw.m == 1);
  CHECK(tw.expected_high == 15);
  CHECK(tw.expected_low == 11);
  CHECK(tw.matches);
  CHECK(tw.histogram == std::map<int, int>{{11, 27}, {15, 36}});

  SrgParameters srg = srg_parameters(tw.m, s.params());
  CHECK(srg.v == 64);
  CHECK(srg.k == 27);
  CHECK(srg.r == 3);
  CHECK(srg.s == -5);
  CHECK(srg.lambda == 10);
  CHECK(srg.mu == 12);
  CHECK(srg.integral);
  GraphCheck g = cayley_graph_check(s, covered_points(s, y));
  CHECK(g.strongly_regular);
  CHECK(g.v == 64);
  CHECK(g.k == 27);
  CHECK(g.lambda == 10);
  CHECK(g.mu == 12);

  // Two intersecting lines are rejected.
  auto pencil = point_pencil(s, 0, PencilMode::Through);
  CHECK_THROWS_AS(two_weight_profile(ls, pencil), ConstructionError);
}

TEST_CASE("strongly regular parameters follow the eigenvalue identities") {
  for (SchemeParams prm : {SchemeParams{2, 2}, SchemeParams{3, 2}, SchemeParams{2, 4}, SchemeParams{4, 3}}) {
    for (int m = 1; m <= 3; ++m) {
      SrgParameters g = srg_parameters(m, prm);
      Rational v(g.v);
      // k(k - lambda - 1) = (v - k - 1) mu, and r, s are the roots of
      // x^2 + (mu - lambda) x + (mu - k).
      CHECK(g.k * (g.k - g.lambda - 1) == (v - g.k - 1) * g.mu);
      CHECK(g.r * g.r + (g.mu - g.lambda) * g.r + (g.mu - g.k) == 0);
      CHECK(g.s * g.s + (g.mu - g.lambda) * g.s + (g.mu - g.k) == 0);
    }
  }
}
