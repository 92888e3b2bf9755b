#include <random>

#include "doctest.h"
#include "rank3/polar.hpp"

using namespace rank3;

namespace {

// Isotropic projective points counted straight from the form.
long count_isotropic_points(const FormSpec& form, const Field& f) {
  long total = 1;
  for (int i = 0; i < form.dim; ++i) total *= f.q();
  long count = 0;
  for (long c = 1; c < total; ++c) {
    Vec v = decode(f, static_cast<std::uint64_t>(c), form.dim);
    Vec w = v;
    normalize(f, w, form.dim);
    if (w != v) continue;
    if (form.isotropic(f, v)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("family names round trip") {
  for (Family fam : {Family::Sp6, Family::O6plus, Family::O7, Family::O8minus, Family::U6, Family::U7})
    CHECK(parse_family(to_string(fam)) == fam);
  CHECK_THROWS(parse_family("o9"));
  for (Relation r : kRelations) CHECK(parse_relation(to_string(r)) == r);
  CHECK(parse_relation("21") == Relation::R21);
}

TEST_CASE("relation from intersection dimensions") {
  CHECK(relation_from_dims(2, 2) == Relation::R00);
  CHECK(relation_from_dims(1, 2) == Relation::R10);
  CHECK(relation_from_dims(1, 1) == Relation::R11);
  CHECK(relation_from_dims(0, 1) == Relation::R20);
  CHECK(relation_from_dims(0, 0) == Relation::R21);
  CHECK_THROWS_AS(relation_from_dims(2, 1), std::logic_error);
  CHECK_THROWS_AS(relation_from_dims(0, 2), std::logic_error);
  CHECK_THROWS_AS(relation_from_dims(1, 0), std::logic_error);
}

TEST_CASE("incompatible family and field") {
  CHECK_THROWS_AS(standard_form(Family::O7, Field::of_order(2)), PolarError);
  CHECK_THROWS_AS(standard_form(Family::U6, Field::of_order(3)), PolarError);
}

TEST_CASE("point counts agree with a direct scan of the form") {
  struct Case { Family fam; unsigned q; long points; };
  for (Case c : {Case{Family::Sp6, 2, 63}, Case{Family::O6plus, 2, 35}, Case{Family::O6plus, 3, 130},
                 Case{Family::O7, 3, 364}, Case{Family::O8minus, 2, 119}, Case{Family::U6, 4, 693},
                 Case{Family::Sp6, 3, 364}}) {
    CAPTURE(to_string(c.fam));
    CAPTURE(c.q);
    Field f = Field::of_order(c.q);
    CHECK(count_isotropic_points(standard_form(c.fam, f), f) == c.points);
  }
}

TEST_CASE("O+(6,2) enumerates as expected") {
  PolarSpace s = PolarSpace::build(Family::O6plus, 2);
  CHECK(s.num_points() == 35);
  CHECK(s.num_lines() == 105);
  CHECK(s.num_planes() == 30);
  CHECK(s.two_e() == 0);
  CHECK(s.fingerprint() == "o6plus:2:1");
  for (int l = 0; l < s.num_lines(); ++l) {
    CHECK(s.line_points(l).size() == 3);
    CHECK(s.line_planes(l).size() == 2);
    CHECK(s.line_index(s.line_subspace(l)) == l);
  }
  for (int p = 0; p < s.num_points(); ++p) {
    CHECK(s.point_lines(p).size() == 9);
    CHECK(s.point_index(s.point(p)) == p);
  }
  for (int pl = 0; pl < s.num_planes(); ++pl) {
    CHECK(s.plane_lines(pl).size() == 7);
    CHECK(s.plane_points(pl).size() == 7);
    CHECK(s.plane_index(s.plane_subspace(pl)) == pl);
  }

  RelationTable table(s);
  for (int x = 0; x < s.num_lines(); ++x) {
    auto c = table.census(x);
    CHECK(c == std::array<int, kNumClasses>{1, 12, 12, 48, 32});
    for (int y = 0; y < s.num_lines(); ++y) CHECK(table(x, y) == table(y, x));
  }
}

TEST_CASE("larger spaces have the expected line counts") {
  CHECK(PolarSpace::build(Family::Sp6, 2).num_lines() == 315);
  CHECK(PolarSpace::build(Family::O6plus, 3).num_lines() == 520);
  CHECK(PolarSpace::build(Family::O8minus, 2).num_lines() == 1071);
  PolarSpace o7 = PolarSpace::build(Family::O7, 3);
  CHECK(o7.num_lines() == 3640);
  CHECK(o7.num_planes() == 1120);
  PolarSpace u6 = PolarSpace::build(Family::U6, 4);
  CHECK(u6.num_points() == 693);
  CHECK(u6.num_lines() == 6237);
  CHECK(u6.two_e() == 1);
}

TEST_CASE("fast pair classification agrees with the subspace reference") {
  std::mt19937 rng(11);
  for (auto [fam, q] : {std::pair{Family::Sp6, 2u}, {Family::O6plus, 3u}, {Family::O7, 3u}, {Family::O8minus, 2u},
                        {Family::U6, 4u}, {Family::Sp6, 3u}}) {
    CAPTURE(to_string(fam));
    PolarSpace s = PolarSpace::build(fam, q);
    std::uniform_int_distribution<int> pick(0, s.num_lines() - 1);
    std::array<int, kNumClasses> seen{};
    for (int trial = 0; trial < 3000; ++trial) {
      int l = pick(rng);
      int m = trial % 50 == 0 ? l : pick(rng);
      // Bias toward meeting lines so every relation is exercised.
      if (trial % 3 == 0) {
        auto pts = s.line_points(l);
        auto pencil = s.point_lines(pts[trial % pts.size()]);
        m = pencil[pick(rng) % pencil.size()];
      }
      Relation fast = s.classify_pair(l, m);
      CHECK(fast == classify_subspaces(s, s.line_subspace(l), s.line_subspace(m)));
      ++seen[index(fast)];
    }
    for (int i = 0; i < kNumClasses; ++i) CHECK(seen[i] > 0);
  }
}

TEST_CASE("rebuilding from stored bases") {
  PolarSpace s = PolarSpace::build(Family::Sp6, 2);
  std::vector<Vec> pts;
  std::vector<LineBasis> lines;
  std::vector<PlaneBasis> planes;
  for (int i = 0; i < s.num_points(); ++i) pts.push_back(s.point(i));
  for (int i = 0; i < s.num_lines(); ++i) lines.push_back(s.line_basis(i));
  for (int i = 0; i < s.num_planes(); ++i) planes.push_back(s.plane_basis(i));
  PolarSpace r = PolarSpace::from_bases(Family::Sp6, 2, pts, lines, planes);
  CHECK(r.num_lines() == 315);
  for (int i = 0; i < r.num_lines(); ++i) CHECK(r.line_basis(i) == s.line_basis(i));

  auto swapped = lines;
  std::swap(swapped[0], swapped[1]);
  CHECK_THROWS_AS(PolarSpace::from_bases(Family::Sp6, 2, pts, swapped, planes), PolarError);
  auto bad = lines;
  bad[0][1] = bad[0][0];
  CHECK_THROWS_AS(PolarSpace::from_bases(Family::Sp6, 2, pts, bad, planes), PolarError);
}

TEST_CASE("size guards") {
  BuildOptions tiny;
  tiny.max_lines = 100;
  CHECK_THROWS_AS(PolarSpace::build(Family::Sp6, 2, tiny), PolarError);
  PolarSpace s = PolarSpace::build(Family::Sp6, 2);
  CHECK_THROWS(RelationTable(s, 1, 100));
}
