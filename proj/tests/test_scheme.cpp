#include "doctest.h"
#include "rank3/scheme.hpp"

using namespace rank3;

namespace {

std::vector<SchemeParams> legal_params(unsigned max_q) {
  std::vector<SchemeParams> out;
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u}) {
    if (q > max_q) continue;
    bool square = q == 4 || q == 9 || q == 16 || q == 25;
    for (int two_e = 0; two_e <= 4; ++two_e)
      if (two_e % 2 == 0 || square) out.push_back({q, two_e});
  }
  return out;
}

}  // namespace

TEST_CASE("counts at small parameters") {
  CHECK(SchemeParams{2, 0}.num_lines() == 105);
  CHECK(SchemeParams{2, 2}.num_lines() == 315);
  CHECK(SchemeParams{3, 2}.num_lines() == 3640);
  CHECK(SchemeParams{4, 1}.num_lines() == 6237);
  CHECK(SchemeParams{4, 3}.num_lines() == 89397);
  CHECK(SchemeParams{2, 4}.num_lines() == 1071);
  CHECK(SchemeParams{4, 1}.num_points() == 693);
  CHECK(SchemeParams{2, 2}.lines_per_point() == 15);
  CHECK(SchemeParams{4, 1}.e_string() == "1/2");
  CHECK_THROWS(SchemeParams{3, 1}.validate());
}

TEST_CASE("eigenvalue matrix at q=2, e=1") {
  auto t = make_tables({2, 2});
  std::array<long, 5> rows[5] = {{1, 18, 24, 144, 128}, {1, 9, 6, 0, -16}, {1, -3, 10, -24, 16},
                                 {1, 3, -6, -6, 8}, {1, -3, 0, 6, -4}};
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) CHECK(t.P(j, i) == rows[j][i]);
  CHECK(t.multiplicities == std::array<Integer, 5>{1, 35, 27, 84, 168});
}

TEST_CASE("printed closed form differs from the inverse in exactly one entry") {
  for (const auto& prm : legal_params(25)) {
    auto inv = p_matrix(prm).inverse().scaled(Rational(prm.num_lines()));
    auto printed = q_matrix_closed_form(prm, true);
    int differ = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (inv(i, j) != printed(i, j)) {
          ++differ;
          CHECK(i == index(Relation::R20));
          CHECK(j == 1);
        }
    CHECK(differ == 1);
  }
}

TEST_CASE("multiplicities at q=2, e=0") {
  auto t = make_tables({2, 0});
  CHECK(t.multiplicities == std::array<Integer, 5>{1, 14, 20, 14, 56});
}

TEST_CASE("scheme identities hold for every legal parameter pair") {
  for (const auto& prm : legal_params(25)) {
    CAPTURE(prm.q);
    CAPTURE(prm.two_e);
    SchemeTables t;
    REQUIRE_NOTHROW(t = make_tables(prm));
    const Rational n = Rational(t.n);
    // Valencies sum to n and every nontrivial row sums to zero.
    for (int j = 0; j < 5; ++j) {
      Rational row = 0;
      for (int i = 0; i < 5; ++i) row += t.P(j, i);
      CHECK(row == (j == 0 ? n : Rational(0)));
    }
    // First orthogonality relation: sum_i P_ji P_ki / k_i = delta_jk n / m_j.
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        Rational s = 0;
        for (int i = 0; i < 5; ++i) s += t.P(j, i) * t.P(k, i) / t.P(0, i);
        CHECK(s == (j == k ? n / Rational(t.multiplicities[j]) : Rational(0)));
      }
    CHECK(t.P * t.Q == RationalMatrix::identity(5).scaled(n));
    CHECK(t.Q * t.P == RationalMatrix::identity(5).scaled(n));
    // Q_ij / m_j = P_ji / k_i.
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(t.Q(i, j) / Rational(t.multiplicities[j]) == t.P(j, i) / t.P(0, i));
  }
}

TEST_CASE("enumerated relations realize the eigenvalue matrix") {
  for (auto [fam, q] : {std::pair{Family::O6plus, 2u}, {Family::Sp6, 2u}, {Family::O6plus, 3u},
                        {Family::O8minus, 2u}}) {
    CAPTURE(to_string(fam));
    PolarSpace s = PolarSpace::build(fam, q);
    RelationTable table(s);
    auto t = make_tables(s.params());
    SchemeReport rep = verify_scheme(table, t, 3);
    CHECK(rep.valencies_match);
    CHECK(rep.projectors_sum_to_identity);
    CHECK(rep.projectors_idempotent);
    for (const auto& c : rep.checks) {
      CAPTURE(c.relation);
      CAPTURE(c.eigenspace);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("a corrupted table is caught") {
  PolarSpace s = PolarSpace::build(Family::O6plus, 2);
  RelationTable table(s);
  auto t = make_tables({2, 2});
  CHECK_THROWS_AS(verify_scheme(table, t), SchemeError);
  // Wrong eigenvalues for the right size: swap two rows of P.
  auto good = make_tables(s.params());
  auto bad = good;
  for (int i = 0; i < 5; ++i) std::swap(bad.P(1, i), bad.P(3, i));
  CHECK_FALSE(verify_scheme(table, bad, 2).pass());
}
