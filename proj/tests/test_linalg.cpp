#include <random>
#include <vector>

#include "doctest.h"
#include "rank3/linalg.hpp"

using namespace rank3;

namespace {

Vec vec(std::initializer_list<int> xs) {
  Vec v{};
  int i = 0;
  for (int x : xs) v[i++] = static_cast<Elem>(x);
  return v;
}

// All vectors of a subspace, by brute force over coefficient tuples.
std::vector<std::uint64_t> members(const Field& f, const Subspace& s) {
  std::vector<std::uint64_t> out;
  std::uint64_t total = 1;
  for (int i = 0; i < s.dim(); ++i) total *= f.q();
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t r = c;
    Vec v{};
    for (int i = 0; i < s.dim(); ++i) {
      Elem coef = static_cast<Elem>(r % f.q());
      r /= f.q();
      for (int k = 0; k < s.ambient(); ++k) v[k] = f.add(v[k], f.mul(coef, s.basis().at(i, k)));
    }
    out.push_back(encode(f, v, s.ambient()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("rref of canonical and degenerate inputs") {
  Field f = Field::make(2, 1);
  std::vector<Vec> id = {vec({1, 0}), vec({0, 1})};
  Subspace s = span_of(f, id, 2);
  CHECK(s.dim() == 2);
  CHECK(s.basis().row(0) == vec({1, 0}));

  std::vector<Vec> rows = {vec({1, 1}), vec({0, 0})};
  Subspace t = span_of(f, rows, 2);
  CHECK(t.dim() == 1);
  CHECK(t.basis().row(0) == vec({1, 1}));

  std::vector<Vec> three = {vec({1, 1, 0}), vec({1, 0, 1})};
  Subspace u = span_of(f, three, 3);
  REQUIRE(u.dim() == 2);
  CHECK(u.basis().row(0) == vec({1, 0, 1}));
  CHECK(u.basis().row(1) == vec({0, 1, 1}));

  Subspace zero = rref_canonicalize(f, GFMatrix(3, 4));
  CHECK(zero.dim() == 0);
}

TEST_CASE("intersections") {
  Field f = Field::make(3, 1);
  std::vector<Vec> a_rows = {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})};
  std::vector<Vec> b_rows = {vec({0, 0, 1, 0}), vec({0, 0, 0, 1})};
  Subspace a = span_of(f, a_rows, 4);
  Subspace b = span_of(f, b_rows, 4);
  CHECK(intersect_dim(f, a, a).dim == 2);
  CHECK(intersect_dim(f, a, a).space == a);
  CHECK(intersect_dim(f, a, b).dim == 0);

  std::vector<Vec> c_rows = {vec({1, 0, 0, 0}), vec({0, 0, 1, 2})};
  Subspace c = span_of(f, c_rows, 4);
  auto meet = intersect_dim(f, a, c);
  CHECK(meet.dim == 1);
  // Oracle: vectors common to both spans.
  auto ma = members(f, a);
  auto mc = members(f, c);
  std::vector<std::uint64_t> common;
  std::set_intersection(ma.begin(), ma.end(), mc.begin(), mc.end(), std::back_inserter(common));
  CHECK(common == members(f, meet.space));
  CHECK(meet.space.basis().row(0) == vec({1, 0, 0, 0}));

  std::vector<Vec> other = {vec({1, 0, 0})};
  CHECK_THROWS_AS(intersect_dim(f, a, span_of(f, other, 3)), std::invalid_argument);
}

TEST_CASE("dimension formula and basis independence on random subspaces") {
  std::mt19937 rng(7);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    Field f = Field::of_order(q);
    std::uniform_int_distribution<int> e(0, static_cast<int>(q) - 1);
    std::uniform_int_distribution<int> k(0, 4);
    for (int trial = 0; trial < 60; ++trial) {
      const int d = 6;
      auto random_space = [&]() {
        std::vector<Vec> rows(k(rng));
        for (auto& r : rows)
          for (int i = 0; i < d; ++i) r[i] = static_cast<Elem>(e(rng));
        return span_of(f, rows, d);
      };
      Subspace a = random_space();
      Subspace b = random_space();
      int sum = subspace_sum(f, a, b).dim();
      CHECK(intersect_dim(f, a, b).dim + sum == a.dim() + b.dim());

      // Random invertible recombination of the basis leaves the RREF unchanged.
      if (a.dim() > 0) {
        GFMatrix m(a.dim(), a.dim());
        do {
          for (int r = 0; r < a.dim(); ++r)
            for (int c = 0; c < a.dim(); ++c) m.at(r, c) = static_cast<Elem>(e(rng));
        } while (rank(f, m) < a.dim());
        Subspace again = rref_canonicalize(f, multiply(f, m, a.basis()));
        CHECK(again == a);
        CHECK(again.key() == a.key());
        CHECK(rref_canonicalize(f, a.basis()) == a);
      }
    }
  }
}
