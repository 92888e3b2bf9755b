#include "rank3/polar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace rank3 {

std::string to_string(Family f) {
  switch (f) {
    case Family::Sp6: return "sp6";
    case Family::O6plus: return "o6plus";
    case Family::O7: return "o7";
    case Family::O8minus: return "o8minus";
    case Family::U6: return "u6";
    case Family::U7: return "u7";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  static const std::map<std::string, Family> names = {
      {"sp6", Family::Sp6}, {"o6plus", Family::O6plus}, {"o7", Family::O7},
      {"o8minus", Family::O8minus}, {"u6", Family::U6}, {"u7", Family::U7}};
  auto it = names.find(s);
  if (it == names.end()) throw PolarError("unknown family: " + s);
  return it->second;
}

int family_dim(Family f) {
  switch (f) {
    case Family::Sp6:
    case Family::O6plus:
    case Family::U6: return 6;
    case Family::O7:
    case Family::U7: return 7;
    case Family::O8minus: return 8;
  }
  return 0;
}

int family_two_e(Family f) {
  switch (f) {
    case Family::O6plus: return 0;
    case Family::U6: return 1;
    case Family::O7:
    case Family::Sp6: return 2;
    case Family::U7: return 3;
    case Family::O8minus: return 4;
  }
  return 0;
}

std::string to_string(Relation r) {
  static const char* names[] = {"R00", "R10", "R11", "R20", "R21"};
  return names[index(r)];
}

Relation parse_relation(const std::string& s) {
  for (Relation r : kRelations)
    if (to_string(r) == s || to_string(r).substr(1) == s) return r;
  throw std::invalid_argument("unknown relation: " + s);
}

Relation relation_from_dims(int s, int t) {
  if (s == 2 && t == 2) return Relation::R00;
  if (s == 1 && t == 2) return Relation::R10;
  if (s == 1 && t == 1) return Relation::R11;
  if (s == 0 && t == 1) return Relation::R20;
  if (s == 0 && t == 0) return Relation::R21;
  throw std::logic_error("illegal line pair (s,t)=(" + std::to_string(s) + "," + std::to_string(t) +
                         "): form or enumeration inconsistency");
}

// ---------------------------------------------------------------- forms

Elem FormSpec::bilinear(const Field& f, const Vec& x, const Vec& y) const {
  Elem s = 0;
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      Elem g = gram.at(i, j);
      if (g == 0 || y[j] == 0) continue;
      Elem yj = hermitian ? f.conj(y[j]) : y[j];
      s = f.add(s, f.mul(x[i], f.mul(g, yj)));
    }
  }
  return s;
}

Elem FormSpec::quadratic_value(const Field& f, const Vec& x) const {
  Elem s = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Elem c = quadratic.at(i, j);
      if (c != 0) s = f.add(s, f.mul(c, f.mul(x[i], x[j])));
    }
  return s;
}

bool FormSpec::isotropic(const Field& f, const Vec& x) const {
  if (orthogonal()) return quadratic_value(f, x) == 0;
  return bilinear(f, x, x) == 0;
}

Vec FormSpec::dual(const Field& f, const Vec& y) const {
  Vec w{};
  for (int i = 0; i < dim; ++i) {
    Elem s = 0;
    for (int j = 0; j < dim; ++j) {
      Elem yj = hermitian ? f.conj(y[j]) : y[j];
      s = f.add(s, f.mul(gram.at(i, j), yj));
    }
    w[i] = s;
  }
  return w;
}

namespace {

void set_orthogonal(FormSpec& spec, const Field& f, GFMatrix quad) {
  spec.quadratic = quad;
  spec.gram = GFMatrix(spec.dim, spec.dim);
  for (int i = 0; i < spec.dim; ++i)
    for (int j = i; j < spec.dim; ++j) {
      Elem c = quad.at(i, j);
      if (c == 0) continue;
      if (i == j) {
        spec.gram.at(i, i) = f.add(spec.gram.at(i, i), f.add(c, c));
      } else {
        spec.gram.at(i, j) = f.add(spec.gram.at(i, j), c);
        spec.gram.at(j, i) = f.add(spec.gram.at(j, i), c);
      }
    }
}

}  // namespace

FormSpec standard_form(Family family, const Field& f) {
  FormSpec spec;
  spec.family = family;
  spec.dim = family_dim(family);
  const int d = spec.dim;
  switch (family) {
    case Family::Sp6: {
      spec.gram = GFMatrix(d, d);
      for (int i = 0; i < d; i += 2) {
        spec.gram.at(i, i + 1) = 1;
        spec.gram.at(i + 1, i) = f.neg(1);
      }
      break;
    }
    case Family::O6plus:
    case Family::O7:
    case Family::O8minus: {
      if (family == Family::O7 && f.p() == 2)
        throw PolarError("O(7,q) with q even is isomorphic to Sp(6,q); build sp6 instead");
      GFMatrix quad(d, d);
      for (int i = 0; i < 6; i += 2) quad.at(i, i + 1) = 1;
      if (family == Family::O7) quad.at(6, 6) = 1;
      if (family == Family::O8minus) {
        // x^2 + b xy + c y^2 with t^2 + b t + c irreducible.
        bool found = false;
        for (unsigned b = 0; b < f.q() && !found; ++b)
          for (unsigned c = 1; c < f.q() && !found; ++c) {
            bool root = false;
            for (unsigned t = 0; t < f.q() && !root; ++t) {
              Elem tt = static_cast<Elem>(t);
              Elem v = f.add(f.add(f.mul(tt, tt), f.mul(static_cast<Elem>(b), tt)), static_cast<Elem>(c));
              root = v == 0;
            }
            if (!root) {
              quad.at(6, 6) = 1;
              quad.at(6, 7) = static_cast<Elem>(b);
              quad.at(7, 7) = static_cast<Elem>(c);
              found = true;
            }
          }
      }
      set_orthogonal(spec, f, std::move(quad));
      break;
    }
    case Family::U6:
    case Family::U7: {
      if (!f.has_conjugation()) throw PolarError("Hermitian families need a square q, got " + f.name());
      spec.gram = GFMatrix::identity(d);
      spec.hermitian = true;
      break;
    }
  }
  return spec;
}

// ---------------------------------------------------------------- space

namespace {

std::string basis_key(std::span<const Vec> rows, int dim) {
  std::string k;
  k.push_back(static_cast<char>(dim));
  for (const Vec& r : rows)
    for (int c = 0; c < dim; ++c) k.push_back(static_cast<char>(r[c]));
  return k;
}

template <std::size_t K>
std::array<Vec, K> rows_of(const Subspace& s) {
  std::array<Vec, K> out{};
  for (std::size_t i = 0; i < K; ++i) out[i] = s.basis().row(static_cast<int>(i));
  return out;
}

template <std::size_t K>
bool code_less(const Field& f, int dim, const std::array<Vec, K>& a, const std::array<Vec, K>& b) {
  for (std::size_t i = 0; i < K; ++i) {
    auto ca = encode(f, a[i], dim);
    auto cb = encode(f, b[i], dim);
    if (ca != cb) return ca < cb;
  }
  return false;
}

// All normalized points of the span of the given rows.
std::vector<Vec> projective_points(const Field& f, std::span<const Vec> rows, int dim) {
  std::vector<Vec> out;
  const unsigned q = f.q();
  std::size_t total = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) total *= q;
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t c = code;
    Vec v{};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Elem coef = static_cast<Elem>(c % q);
      c /= q;
      if (coef == 0) continue;
      for (int k = 0; k < dim; ++k) v[k] = f.add(v[k], f.mul(coef, rows[i][k]));
    }
    if (!normalize(f, v, dim)) continue;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(),
            [&](const Vec& a, const Vec& b) { return encode(f, a, dim) < encode(f, b, dim); });
  out.erase(std::unique(out.begin(), out.end(),
                        [&](const Vec& a, const Vec& b) { return encode(f, a, dim) == encode(f, b, dim); }),
            out.end());
  return out;
}

}  // namespace

PolarSpace PolarSpace::build(Family family, unsigned q, const BuildOptions& opts) {
  Field field = Field::of_order(q);
  FormSpec form = standard_form(family, field);
  const int d = form.dim;
  SchemeParams params{q, family_two_e(family)};
  params.validate();
  if (params.num_points() > opts.max_points || params.num_lines() > opts.max_lines)
    throw PolarError("enumeration of " + to_string(family) + " over GF(" + std::to_string(q) +
                     ") exceeds the configured size budget");

  std::vector<Vec> points;
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec v = decode(field, code, d);
    int lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    if (form.isotropic(field, v)) points.push_back(v);
  }

  std::unordered_map<std::uint64_t, int> lookup;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) lookup[encode(field, points[i], d)] = i;

  // Each line is emitted once, from its two smallest points.
  std::vector<LineBasis> lines;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(points.size()); ++j) {
      if (form.bilinear(field, points[i], points[j]) != 0) continue;
      bool first_pair = true;
      for (unsigned c = 1; c < q && first_pair; ++c) {
        Vec v{};
        for (int k = 0; k < d; ++k) v[k] = field.add(points[i][k], field.mul(static_cast<Elem>(c), points[j][k]));
        normalize(field, v, d);
        auto it = lookup.find(encode(field, v, d));
        if (it == lookup.end()) throw std::logic_error("line with a non-isotropic point");
        if (it->second < j) first_pair = false;
      }
      if (!first_pair) continue;
      std::array<Vec, 2> rows = {points[i], points[j]};
      lines.push_back(rows_of<2>(span_of(field, rows, d)));
    }
  }
  std::sort(lines.begin(), lines.end(),
            [&](const LineBasis& a, const LineBasis& b) { return code_less(field, d, a, b); });

  std::set<std::string> plane_keys;
  std::vector<PlaneBasis> planes;
  for (const LineBasis& l : lines) {
    Vec w0 = form.dual(field, l[0]);
    Vec w1 = form.dual(field, l[1]);
    for (const Vec& p : points) {
      Elem b0 = 0, b1 = 0;
      for (int k = 0; k < d; ++k) {
        b0 = field.add(b0, field.mul(p[k], w0[k]));
        b1 = field.add(b1, field.mul(p[k], w1[k]));
      }
      if (b0 != 0 || b1 != 0) continue;
      std::array<Vec, 3> rows = {l[0], l[1], p};
      Subspace s = span_of(field, rows, d);
      if (s.dim() != 3) continue;
      if (plane_keys.insert(s.key()).second) planes.push_back(rows_of<3>(s));
    }
  }
  std::sort(planes.begin(), planes.end(),
            [&](const PlaneBasis& a, const PlaneBasis& b) { return code_less(field, d, a, b); });

  PolarSpace space(std::move(field), std::move(form));
  space.two_e_ = params.two_e;
  space.assemble(std::move(points), std::move(lines), std::move(planes));
  return space;
}

PolarSpace PolarSpace::from_bases(Family family, unsigned q, std::vector<Vec> points, std::vector<LineBasis> lines,
                                  std::vector<PlaneBasis> planes) {
  Field field = Field::of_order(q);
  FormSpec form = standard_form(family, field);
  const int d = form.dim;
  for (const Vec& p : points) {
    Vec v = p;
    if (!normalize(field, v, d) || v != p || !form.isotropic(field, p))
      throw PolarError("stored point is not a normalized isotropic vector");
  }
  auto check_canonical = [&](std::span<const Vec> rows) {
    Subspace s = span_of(field, rows, d);
    if (s.dim() != static_cast<int>(rows.size())) throw PolarError("stored basis is degenerate");
    for (int i = 0; i < s.dim(); ++i)
      if (s.basis().row(i) != rows[i]) throw PolarError("stored basis is not in canonical form");
    for (const Vec& a : rows)
      for (const Vec& b : rows)
        if (!form.isotropic(field, a) || form.bilinear(field, a, b) != 0)
          throw PolarError("stored subspace is not totally isotropic");
  };
  for (const auto& l : lines) check_canonical(l);
  for (const auto& p : planes) check_canonical(p);
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (!code_less(field, d, lines[i - 1], lines[i])) throw PolarError("stored lines are out of order");
  for (std::size_t i = 1; i < planes.size(); ++i)
    if (!code_less(field, d, planes[i - 1], planes[i])) throw PolarError("stored planes are out of order");

  PolarSpace space(std::move(field), std::move(form));
  space.two_e_ = family_two_e(family);
  space.assemble(std::move(points), std::move(lines), std::move(planes));
  return space;
}

void PolarSpace::assemble(std::vector<Vec> points, std::vector<LineBasis> lines, std::vector<PlaneBasis> planes) {
  const int d = form_.dim;
  points_ = std::move(points);
  lines_ = std::move(lines);
  planes_ = std::move(planes);

  SchemeParams prm = params();
  if (Integer(static_cast<unsigned long>(points_.size())) != prm.num_points() ||
      Integer(static_cast<unsigned long>(lines_.size())) != prm.num_lines() ||
      Integer(static_cast<unsigned long>(planes_.size())) != prm.num_planes())
    throw PolarError("enumerated counts of " + name() + " disagree with the closed forms");

  point_lookup_.clear();
  for (int i = 0; i < num_points(); ++i) point_lookup_[encode(field_, points_[i], d)] = i;

  line_points_.assign(lines_.size(), {});
  point_lines_.assign(points_.size(), {});
  line_duals_.resize(lines_.size());
  line_lookup_.clear();
  for (int l = 0; l < num_lines(); ++l) {
    line_lookup_[basis_key(lines_[l], d)] = l;
    line_duals_[l] = {form_.dual(field_, lines_[l][0]), form_.dual(field_, lines_[l][1])};
    for (const Vec& v : projective_points(field_, lines_[l], d)) {
      int p = point_index(v);
      if (p < 0) throw PolarError("line contains a non-isotropic point");
      line_points_[l].push_back(p);
      point_lines_[p].push_back(l);
    }
    std::sort(line_points_[l].begin(), line_points_[l].end());
  }

  plane_lines_.assign(planes_.size(), {});
  plane_points_.assign(planes_.size(), {});
  line_planes_.assign(lines_.size(), {});
  plane_lookup_.clear();
  for (int pl = 0; pl < num_planes(); ++pl) {
    plane_lookup_[basis_key(planes_[pl], d)] = pl;
    for (const Vec& v : projective_points(field_, planes_[pl], d)) plane_points_[pl].push_back(point_index(v));
    std::sort(plane_points_[pl].begin(), plane_points_[pl].end());
    const auto& pts = plane_points_[pl];
    for (int p : pts)
      for (int l : point_lines_[p]) {
        const auto& lp = line_points_[l];
        bool inside = std::all_of(lp.begin(), lp.end(),
                                  [&](int x) { return std::binary_search(pts.begin(), pts.end(), x); });
        if (inside) plane_lines_[pl].push_back(l);
      }
    auto& pls = plane_lines_[pl];
    std::sort(pls.begin(), pls.end());
    pls.erase(std::unique(pls.begin(), pls.end()), pls.end());
    for (int l : pls) line_planes_[l].push_back(pl);
  }

  // Incidence regularity.
  const Integer per_point = prm.lines_per_point();
  const unsigned q = field_.q();
  const Integer planes_per_line = as_integer(prm.qe(0) + 1, "planes per line");
  for (int p = 0; p < num_points(); ++p)
    if (Integer(static_cast<unsigned long>(point_lines_[p].size())) != per_point)
      throw PolarError("point pencil size mismatch");
  for (int l = 0; l < num_lines(); ++l) {
    if (line_points_[l].size() != q + 1) throw PolarError("line size mismatch");
    if (Integer(static_cast<unsigned long>(line_planes_[l].size())) != planes_per_line)
      throw PolarError("planes per line mismatch");
  }
  for (int pl = 0; pl < num_planes(); ++pl)
    if (plane_lines_[pl].size() != q * q + q + 1) throw PolarError("lines per plane mismatch");
}

std::string PolarSpace::fingerprint() const {
  return to_string(family()) + ":" + std::to_string(field_.p()) + ":" + std::to_string(field_.h());
}

std::string PolarSpace::name() const { return to_string(family()) + "_q" + std::to_string(q()); }

Subspace PolarSpace::point_subspace(int i) const { return span_of(field_, std::span<const Vec>(&points_[i], 1), dim()); }
Subspace PolarSpace::line_subspace(int i) const { return span_of(field_, lines_[i], dim()); }
Subspace PolarSpace::plane_subspace(int i) const { return span_of(field_, planes_[i], dim()); }

int PolarSpace::point_index(Vec v) const {
  if (!normalize(field_, v, dim())) return -1;
  auto it = point_lookup_.find(encode(field_, v, dim()));
  return it == point_lookup_.end() ? -1 : it->second;
}

int PolarSpace::line_index(const Subspace& s) const {
  if (s.dim() != 2 || s.ambient() != dim()) return -1;
  auto rows = rows_of<2>(s);
  auto it = line_lookup_.find(basis_key(rows, dim()));
  return it == line_lookup_.end() ? -1 : it->second;
}

int PolarSpace::plane_index(const Subspace& s) const {
  if (s.dim() != 3 || s.ambient() != dim()) return -1;
  auto rows = rows_of<3>(s);
  auto it = plane_lookup_.find(basis_key(rows, dim()));
  return it == plane_lookup_.end() ? -1 : it->second;
}

bool PolarSpace::collinear(int p1, int p2) const {
  return form_.bilinear(field_, points_[p1], points_[p2]) == 0;
}

Subspace PolarSpace::perp(const Subspace& s) const {
  GFMatrix w(s.dim(), dim());
  for (int r = 0; r < s.dim(); ++r) {
    Vec d = form_.dual(field_, s.basis().row(r));
    for (int c = 0; c < dim(); ++c) w.at(r, c) = d[c];
  }
  return rref_canonicalize(field_, null_space(field_, w));
}

namespace {

int gram_block_rank(const Field& f, int d, const LineBasis& l, const std::array<Vec, 2>& m_duals) {
  Elem b[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Elem s = 0;
      for (int k = 0; k < d; ++k) s = f.add(s, f.mul(l[i][k], m_duals[j][k]));
      b[i][j] = s;
    }
  if (b[0][0] == 0 && b[0][1] == 0 && b[1][0] == 0 && b[1][1] == 0) return 0;
  return f.sub(f.mul(b[0][0], b[1][1]), f.mul(b[0][1], b[1][0])) != 0 ? 2 : 1;
}

}  // namespace

Relation PolarSpace::classify_pair(int l, int m) const {
  int s = 0;
  if (l == m) {
    s = 2;
  } else {
    const auto& a = line_points_[l];
    const auto& b = line_points_[m];
    for (int x : a)
      if (std::binary_search(b.begin(), b.end(), x)) {
        s = 1;
        break;
      }
  }
  int t = 2 - gram_block_rank(field_, dim(), lines_[l], line_duals_[m]);
  return relation_from_dims(s, t);
}

Relation classify_subspaces(const PolarSpace& space, const Subspace& l, const Subspace& m) {
  int s = intersect_dim(space.field(), l, m).dim;
  int t = intersect_dim(space.field(), l, space.perp(m)).dim;
  return relation_from_dims(s, t);
}

// ---------------------------------------------------------------- table

RelationTable::RelationTable(const PolarSpace& space, unsigned threads, std::size_t max_lines) {
  n_ = space.num_lines();
  if (static_cast<std::size_t>(n_) > max_lines)
    throw PolarError("relation table for n=" + std::to_string(n_) + " exceeds the configured limit");
  constexpr std::uint8_t kUnset = 0xF;
  packed_.assign((static_cast<std::size_t>(n_) * n_ + 1) / 2, 0xFF);
  for (int p = 0; p < space.num_points(); ++p) {
    auto ls = space.point_lines(p);
    for (int a : ls)
      for (int b : ls) set(a, b, static_cast<std::uint8_t>(space.classify_pair(a, b)));
  }
  // Writes to neighbouring nibbles share bytes, so fill row pairs per worker.
  auto fill_rows = [&](int begin, int end) {
    for (int a = begin; a < end; ++a)
      for (int b = 0; b < n_; ++b) {
        std::size_t k = static_cast<std::size_t>(a) * n_ + b;
        std::uint8_t cur = (packed_[k >> 1] >> ((k & 1) * 4)) & 0xF;
        if (cur != kUnset) continue;
        set(a, b, static_cast<std::uint8_t>(space.classify_pair(a, b)));
      }
  };
  // Chunks of rows only share bytes at their ends when n is odd.
  unsigned nthreads = std::max(1u, threads);
  if (nthreads == 1 || n_ % 2 != 0) {
    fill_rows(0, n_);
  } else {
    std::vector<std::thread> pool;
    int chunk = n_ / static_cast<int>(nthreads) + 1;
    for (int begin = 0; begin < n_; begin += chunk) pool.emplace_back(fill_rows, begin, std::min(n_, begin + chunk));
    for (auto& t : pool) t.join();
  }
}

std::array<int, kNumClasses> RelationTable::census(int x) const {
  std::array<int, kNumClasses> c{};
  for (int y = 0; y < n_; ++y) ++c[index((*this)(x, y))];
  return c;
}

Adjacency build_adjacency(const RelationTable& table) {
  Adjacency adj;
  for (auto& a : adj) a.assign(table.size(), {});
  for (int x = 0; x < table.size(); ++x)
    for (int y = 0; y < table.size(); ++y) adj[index(table(x, y))][x].push_back(y);
  return adj;
}

}  // namespace rank3
