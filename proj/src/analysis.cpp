#include "rank3/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace rank3 {

LineScheme::LineScheme(const PolarSpace& space, const RelationTable* table)
    : space_(&space), table_(table), tables_(make_tables(space.params())) {
  if (table_ && table_->size() != space.num_lines()) throw std::invalid_argument("relation table size mismatch");
}

bool LineSet::contains(int line) const { return std::binary_search(lines.begin(), lines.end(), line); }

std::vector<char> LineSet::indicator(int n) const {
  std::vector<char> v(n, 0);
  for (int l : lines) v[l] = 1;
  return v;
}

LineSet make_line_set(const PolarSpace& space, std::vector<int> lines, std::string name) {
  std::sort(lines.begin(), lines.end());
  if (std::adjacent_find(lines.begin(), lines.end()) != lines.end())
    throw std::invalid_argument("line set contains a duplicate index");
  if (!lines.empty() && (lines.front() < 0 || lines.back() >= space.num_lines()))
    throw std::invalid_argument("line index out of range");
  return {space.fingerprint(), std::move(lines), std::move(name)};
}

LineSet complement(const PolarSpace& space, const LineSet& y) {
  std::vector<int> out;
  auto in = y.indicator(space.num_lines());
  for (int l = 0; l < space.num_lines(); ++l)
    if (!in[l]) out.push_back(l);
  return {space.fingerprint(), std::move(out), y.name.empty() ? "" : y.name + "_complement"};
}

LineSet set_union(const PolarSpace& space, const LineSet& a, const LineSet& b) {
  std::vector<int> out;
  std::set_union(a.lines.begin(), a.lines.end(), b.lines.begin(), b.lines.end(), std::back_inserter(out));
  return make_line_set(space, std::move(out));
}

Distribution inner_distribution(const LineScheme& ls, const LineSet& y) {
  if (y.empty()) throw std::invalid_argument("inner distribution is undefined for the empty set");
  std::array<long long, kNumClasses> count{};
  const auto& v = y.lines;
  count[0] = static_cast<long long>(v.size());
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) count[index(ls.relation(v[a], v[b]))] += 2;
  Distribution out;
  for (int i = 0; i < kNumClasses; ++i) out[i] = Rational(static_cast<long>(count[i]), static_cast<long>(v.size()));
  for (auto& x : out) x.canonicalize();
  return out;
}

Distribution weighted_inner_distribution(const LineScheme& ls, const std::map<int, Integer>& weights) {
  Integer total = 0;
  for (const auto& [l, w] : weights) {
    if (w < 0) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (total == 0) throw std::invalid_argument("inner distribution is undefined for zero weight");
  std::array<Integer, kNumClasses> sum{};
  for (const auto& [x, wx] : weights)
    for (const auto& [y, wy] : weights) sum[index(ls.relation(x, y))] += wx * wy;
  Distribution out;
  for (int i = 0; i < kNumClasses; ++i) out[i] = Rational(sum[i]) / Rational(total);
  return out;
}

Distribution dual_distribution(const SchemeTables& tables, const Distribution& a) {
  Distribution out;
  for (int j = 0; j < kNumClasses; ++j) {
    Rational s = 0;
    for (int i = 0; i < kNumClasses; ++i) s += a[i] * tables.Q(i, j);
    if (s < 0) throw std::logic_error("negative dual distribution entry at " + eigenspace_name(j));
    out[j] = s;
  }
  return out;
}

Distribution dual_distribution(const LineScheme& ls, const LineSet& y) {
  return dual_distribution(ls.tables(), inner_distribution(ls, y));
}

std::vector<int> eigenspace_support(const Distribution& aq) {
  std::vector<int> s;
  for (int j = 1; j < kNumClasses; ++j)
    if (aq[j] != 0) s.push_back(j);
  return s;
}

std::vector<int> eigenspace_support(const LineScheme& ls, const LineSet& y) {
  if (y.empty()) return {};
  return eigenspace_support(dual_distribution(ls, y));
}

bool DegreeTable::integral() const {
  for (int i = 0; i < kNumClasses; ++i)
    if (!is_integer(inside[i]) || !is_integer(outside[i])) return false;
  return true;
}

bool DegreeTable::bounded() const {
  for (int i = 0; i < kNumClasses; ++i)
    if (inside[i] > valency[i] || outside[i] > valency[i]) return false;
  return true;
}

bool DegreeTable::nonnegative() const {
  for (int i = 0; i < kNumClasses; ++i)
    if (inside[i] < 0 || outside[i] < 0) return false;
  return true;
}

DegreeTable degree_table(const SchemeTables& tables, int j, const Integer& size) {
  if (j < 1 || j >= kNumClasses) throw std::invalid_argument("eigenspace must be one of 10, 11, 20, 21");
  DegreeTable t;
  t.eigenspace = j;
  t.size = size;
  const Rational n = Rational(tables.n);
  for (int i = 0; i < kNumClasses; ++i) {
    Rational base = Rational(size) * (tables.P(0, i) - tables.P(j, i)) / n;
    t.outside[i] = base;
    t.inside[i] = base + tables.P(j, i);
    t.valency[i] = tables.P(0, i);
  }
  return t;
}

std::vector<std::array<int, kNumClasses>> vertex_degrees(const LineScheme& ls, const LineSet& y) {
  const int n = ls.n();
  std::vector<std::array<int, kNumClasses>> d(n);
  for (int x = 0; x < n; ++x) {
    d[x] = {};
    for (int l : y.lines) ++d[x][index(ls.relation(x, l))];
  }
  return d;
}

RegularVerdict regular_set_check(const LineScheme& ls, const LineSet& y) {
  if (y.empty() || y.size() == ls.n()) throw std::invalid_argument("regularity needs a nonempty proper subset");
  RegularVerdict v;
  v.support = eigenspace_support(ls, y);
  v.support_test = v.support.size() == 1;

  auto d = vertex_degrees(ls, y);
  auto in = y.indicator(ls.n());
  int passing = -1;
  for (int j = 1; j < kNumClasses; ++j) {
    DegreeTable t = degree_table(ls.tables(), j, Integer(y.size()));
    for (int x = 0; x < ls.n() && v.counterexample[j] < 0; ++x) {
      const auto& want = in[x] ? t.inside : t.outside;
      for (int i = 0; i < kNumClasses; ++i)
        if (Rational(d[x][i]) != want[i]) {
          v.counterexample[j] = x;
          break;
        }
    }
    if (v.counterexample[j] < 0) {
      if (passing >= 0) throw std::logic_error("vertex degrees fit two eigenspaces");
      passing = j;
      v.degrees = t;
    }
  }
  v.vertex_test = passing >= 0;
  if (v.support_test != v.vertex_test || (v.support_test && v.support[0] != passing))
    throw std::logic_error("support and vertexwise regularity tests disagree");
  v.regular = v.vertex_test;
  v.eigenspace = passing;
  return v;
}

// ---------------------------------------------------------------- divisibility

namespace {

std::optional<Integer> quotient(const Integer& size, const Rational& modulus) {
  Rational m = Rational(size) / modulus;
  if (!is_integer(m)) return std::nullopt;
  return m.get_num();
}

Integer to_int(const Rational& r) { return as_integer(r, "divisor"); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

DivisibilityReport divisibility_report(const Integer& size, int j, const SchemeParams& prm,
                                       const SchemeTables* tables) {
  prm.validate();
  if (j < 1 || j >= kNumClasses) throw std::invalid_argument("eigenspace must be one of 10, 11, 20, 21");
  const Integer n = prm.num_lines();
  const Rational q = prm.q;
  const Rational th = q * q + q + 1;
  DivisibilityReport r;
  r.eigenspace = j;
  r.size = size;

  if (size < 0 || size > n) {
    r.reason = "size outside [0, n]";
    r.clause = "range";
    return r;
  }
  if (size == 0 || size == n) {
    r.degree_feasible = true;
  } else {
    std::optional<SchemeTables> own;
    if (!tables) tables = &own.emplace(make_tables(prm));
    DegreeTable t = degree_table(*tables, j, size);
    r.degree_feasible = t.integral() && t.nonnegative() && t.bounded();
  }

  auto finish = [&](const Rational& modulus, auto excluded_pred) {
    r.modulus = modulus;
    r.m = quotient(size, modulus);
    if (!r.m) {
      r.consistent = false;
      r.reason = "size is not a multiple of " + to_string(modulus);
    } else if (excluded_pred(*r.m)) {
      r.consistent = false;
      r.reason = "m = " + r.m->get_str() + " is excluded";
    } else {
      r.consistent = true;
    }
  };

  if (j == 1) {
    r.clause = "a";
    const Integer top = to_int(prm.qe(2));
    r.excluded = "m != 1, q^{e+2} (= " + top.get_str() + ")";
    finish((prm.qe(1) + 1) * th, [&](const Integer& m) { return m == 1 || m == top; });
  } else if (j == 2) {
    r.clause = "b";
    finish((prm.qe(1) + 1) * (prm.qe(2) + 1), [](const Integer&) { return false; });
  } else if (j == 3) {
    if (prm.two_e != 2 && prm.q % 2 == 0) {
      r.clause = "c(i)";
      finish(th * (prm.qe(2) + 1), [](const Integer&) { return false; });
    } else if (prm.two_e != 2) {
      r.clause = "c(ii)";
      // Excludes m = 1 and its complement n / modulus - 1.
      const Integer top = to_int(2 * prm.qe(1) + 1);
      r.excluded = "m != 1, 2q^{e+1}+1 (= " + top.get_str() + ")";
      finish(th * (prm.qe(2) + 1) / 2, [&](const Integer& m) { return m == 1 || m == top; });
      const Integer printed = to_int(2 * prm.qe(2) + 1);
      r.consistent_as_printed = r.m && *r.m != 1 && *r.m != printed;
      return r;
    } else {
      r.clause = "c(iii)";
      const Integer qq = prm.q;
      const Integer lo = qq + 1, hi = qq * qq * (qq + 1), top = (qq * qq + 1) * (qq + 1);
      r.excluded = "m in {0} u [" + lo.get_str() + ", " + hi.get_str() + "] u {" + top.get_str() + "}";
      finish(q * q * q * q + q * q + 1,
             [&](const Integer& m) { return !(m == 0 || (m >= lo && m <= hi) || m == top); });
    }
  } else {
    r.clause = "d";
    r.modulus = Rational(n);
    r.excluded = "size in {0, n}";
    r.consistent = size == 0 || size == n;
    if (r.consistent) r.m = size == 0 ? 0 : 1;
    else r.reason = "only the empty set and the full set lie in <j> + V21";
  }
  r.consistent_as_printed = r.consistent;
  return r;
}

Divisor span_orthogonal_divisor(std::vector<int> s, const SchemeParams& prm, const DivisorFlags& flags) {
  prm.validate();
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const Rational q = prm.q;
  const Rational th = q * q + q + 1;
  const Integer n = prm.num_lines();
  const bool even = prm.q % 2 == 0;
  const int te = prm.two_e;
  // Smallest |Z| allowed by |W cap Z| = |W||Z|/n for a witness family W.
  auto from_witness = [&](const Rational& w) { return Rational(n / gcd(n, to_int(w))); };

  Divisor d;
  if (s == std::vector<int>{1, 3}) {
    d.rule = "plane";
    d.modulus = (prm.qe(1) + 1) * (prm.qe(2) + 1);
    d.derived = from_witness(th);
  } else if (s == std::vector<int>{1, 2}) {
    d.rule = "point_pencil";
    if (te == 2) d.modulus = q * q * q * q + q * q + 1;
    else if (even) d.modulus = th * (prm.qe(2) + 1);
    else d.modulus = th * (prm.qe(2) + 1) / 2;
    d.derived = from_witness((q + 1) * (prm.qe(1) + 1));
  } else if (s == std::vector<int>{1} && flags.uncovered_point) {
    d.rule = "weighted_pencil";
    if (te == 0 || te == 4) d.modulus = even ? Rational(prm.qe(2) + 1) : Rational((prm.qe(2) + 1) / 2);
    else if (te == 1 || te == 3) d.modulus = (prm.qe(2) + 1) / (prm.qe(0) + 1);
    else d.modulus = q * q - q + 1;
    Integer top = to_int(prm.qe(2) + 1);
    d.derived = Rational(top / gcd(top, to_int(prm.qe(0) + 1)));
  } else if (s == std::vector<int>{2}) {
    d.rule = "quadrangle";
    const bool mod3_two = prm.q % 3 == 2;
    if (te == 1) d.modulus = (prm.qpow_half(1) + 1) * (prm.qpow_half(5) + 1);
    else if (te == 3 && mod3_two) d.modulus = (prm.qpow_half(5) + 1) * (prm.qpow_half(7) + 1) / 3;
    else d.modulus = (prm.qe(1) + 1) * (prm.qe(2) + 1);
    d.derived = from_witness((prm.qe(1) + 1) * (prm.qe(2) + 1));
  } else if (s == std::vector<int>{3} && flags.has_spread) {
    d.rule = "spread";
    d.modulus = prm.qe(1) + 1;
    d.derived = from_witness(th * (prm.qe(2) + 1));
  } else {
    throw std::invalid_argument("no divisor known for this eigenspace set");
  }
  return d;
}

// ---------------------------------------------------------------- profiles

PlaneProfile plane_profile(const PolarSpace& space, const LineSet& y) {
  PlaneProfile p;
  p.counts.assign(space.num_planes(), 0);
  const int pencil = static_cast<int>(space.q()) + 1;
  for (int pl = 0; pl < space.num_planes(); ++pl) {
    std::vector<int> inside;
    for (int l : space.plane_lines(pl))
      if (y.contains(l)) inside.push_back(l);
    p.counts[pl] = static_cast<int>(inside.size());
    ++p.histogram[p.counts[pl]];
    if (p.counts[pl] == pencil) {
      std::vector<int> common(space.line_points(inside[0]).begin(), space.line_points(inside[0]).end());
      for (int l : inside) {
        std::vector<int> pts(space.line_points(l).begin(), space.line_points(l).end());
        std::vector<int> keep;
        std::set_intersection(common.begin(), common.end(), pts.begin(), pts.end(), std::back_inserter(keep));
        common.swap(keep);
      }
      if (common.empty()) p.pencils = false;
    }
  }
  return p;
}

DesignResult design_check(const LineScheme& ls, const LineSet& y, DesignLevel level) {
  const PolarSpace& s = ls.space();
  const SchemeParams prm = s.params();
  std::vector<int> counts;
  if (level == DesignLevel::Points) {
    for (int p = 0; p < s.num_points(); ++p) {
      int c = 0;
      for (int l : s.point_lines(p)) c += y.contains(l);
      counts.push_back(c);
    }
  } else {
    counts = plane_profile(s, y).counts;
  }
  DesignResult r;
  r.design = std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
  auto support = eigenspace_support(ls, y);
  const std::vector<int> allowed = level == DesignLevel::Points ? std::vector<int>{3, 4} : std::vector<int>{2, 4};
  bool inside = std::includes(allowed.begin(), allowed.end(), support.begin(), support.end());
  r.support_consistent = inside == r.design;
  if (r.design) {
    r.m = counts.empty() ? 0 : counts[0];
    const Rational q = prm.q;
    Rational expect = level == DesignLevel::Points
                          ? Rational(Rational(r.m) * Rational(prm.num_points()) / (q + 1))
                          : Rational(Rational(r.m) * (prm.qe(1) + 1) * (prm.qe(2) + 1));
    r.size_formula = expect == y.size();
  }
  return r;
}

}  // namespace rank3
