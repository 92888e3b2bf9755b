#include "rank3/constructions.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace rank3 {

namespace {

Elem dot(const Field& f, const Vec& x, const Vec& w, int d) {
  Elem s = 0;
  for (int i = 0; i < d; ++i)
    if (x[i] && w[i]) s = f.add(s, f.mul(x[i], w[i]));
  return s;
}

std::uint64_t ambient_size(const Field& f, int d) {
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= f.q();
  return total;
}

// Calls fn(v) for the normalized representative of every projective point
// of GF(q)^d, in code order.
template <class Fn>
void for_each_projective_point(const Field& f, int d, Fn fn) {
  const std::uint64_t total = ambient_size(f, d);
  for (std::uint64_t c = 1; c < total; ++c) {
    Vec v = decode(f, c, d);
    int lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    if (!fn(v)) return;
  }
}

Elem quadric_value(const Field& f, const Vec& diag, const Vec& x) {
  Elem s = 0;
  for (int i = 0; i < 6; i += 2) s = f.add(s, f.mul(x[i], x[i + 1]));
  for (int i = 0; i < 6; ++i)
    if (diag[i]) s = f.add(s, f.mul(diag[i], f.mul(x[i], x[i])));
  return s;
}

Integer integer_of(const Rational& r) { return as_integer(r, "count"); }

void classify(const PolarSpace& space, Section& s) {
  s.num_points = static_cast<int>(section_points(space, s).size());
  s.num_lines = static_cast<int>(section_line_indices(space, s).size());
  s.num_planes = 0;
  for (int pl = 0; pl < space.num_planes(); ++pl) {
    bool inside = true;
    for (const Vec& b : space.plane_basis(pl)) inside = inside && section_contains(space, s, b);
    s.num_planes += inside;
  }
  const SchemeParams prm = space.params();
  const Rational q = prm.q;
  Integer rank3 = integer_of((prm.qe(0) + 1) * (prm.qe(1) + 1) * (q * q + q + 1));
  Integer quad = integer_of((prm.qe(1) + 1) * (prm.qe(2) + 1));
  if (s.num_planes > 0 && s.num_lines == rank3) s.type = SectionType::Rank3;
  else if (s.num_planes == 0 && s.num_lines == quad) s.type = SectionType::Quadrangle;
  else s.type = SectionType::Other;
}

bool even_symplectic(const PolarSpace& space) { return space.family() == Family::Sp6 && space.q() % 2 == 0; }

}  // namespace

std::string to_string(SectionType t) {
  switch (t) {
    case SectionType::Rank3: return "rank3";
    case SectionType::Quadrangle: return "quadrangle";
    case SectionType::Degenerate: return "degenerate";
    case SectionType::Other: return "other";
  }
  return "?";
}

bool section_contains(const PolarSpace& space, const Section& s, const Vec& x) {
  const Field& f = space.field();
  if (s.kind == Section::Kind::Quadric) return quadric_value(f, s.diag, x) == 0;
  return dot(f, x, space.form().dual(f, s.normal), space.dim()) == 0;
}

std::vector<int> section_points(const PolarSpace& space, const Section& s) {
  std::vector<int> out;
  for (int p = 0; p < space.num_points(); ++p)
    if (section_contains(space, s, space.point(p))) out.push_back(p);
  return out;
}

std::vector<int> section_line_indices(const PolarSpace& space, const Section& s) {
  // On a totally isotropic line the section condition is additive (the
  // quadric restricts to a semilinear map), so both basis vectors suffice.
  std::vector<int> out;
  for (int l = 0; l < space.num_lines(); ++l) {
    const auto& b = space.line_basis(l);
    if (section_contains(space, s, b[0]) && section_contains(space, s, b[1])) out.push_back(l);
  }
  return out;
}

Section hyperplane_section(const PolarSpace& space, const Vec& normal) {
  Section s;
  s.kind = Section::Kind::Hyperplane;
  s.normal = normal;
  if (!normalize(space.field(), s.normal, space.dim())) throw ConstructionError("zero normal vector");
  classify(space, s);
  if (space.form().isotropic(space.field(), s.normal)) s.type = SectionType::Degenerate;
  return s;
}

Section quadric_section(const PolarSpace& space, const Vec& diag) {
  if (!even_symplectic(space)) throw ConstructionError("quadric sections are only used for Sp6 with q even");
  Section s;
  s.kind = Section::Kind::Quadric;
  s.diag = diag;
  classify(space, s);
  return s;
}

Section find_section(const PolarSpace& space, SectionType type) {
  const Field& f = space.field();
  std::optional<Section> found;
  if (even_symplectic(space) && type != SectionType::Degenerate) {
    const std::uint64_t total = ambient_size(f, 6);
    for (std::uint64_t c = 0; c < total && !found; ++c) {
      Section s = quadric_section(space, decode(f, c, 6));
      if (s.type == type) found = s;
    }
  } else {
    for_each_projective_point(f, space.dim(), [&](const Vec& a) {
      bool degenerate = space.form().isotropic(f, a);
      if (degenerate != (type == SectionType::Degenerate)) return true;
      Section s = hyperplane_section(space, a);
      if (s.type == type) found = s;
      return !found;
    });
  }
  if (!found) throw ConstructionError("no " + to_string(type) + " section in " + space.name());
  return *found;
}

LineSet plane_lines(const PolarSpace& space, int plane) {
  auto ls = space.plane_lines(plane);
  return make_line_set(space, {ls.begin(), ls.end()}, "plane_" + std::to_string(plane));
}

LineSet point_pencil(const PolarSpace& space, int point, PencilMode mode) {
  if (mode == PencilMode::Through) {
    auto ls = space.point_lines(point);
    return make_line_set(space, {ls.begin(), ls.end()}, "pencil_" + std::to_string(point));
  }
  const Field& f = space.field();
  Vec w = space.form().dual(f, space.point(point));
  std::vector<int> out;
  for (int l = 0; l < space.num_lines(); ++l) {
    const auto& b = space.line_basis(l);
    if (dot(f, b[0], w, space.dim()) || dot(f, b[1], w, space.dim())) continue;
    auto pts = space.line_points(l);
    if (std::find(pts.begin(), pts.end(), point) != pts.end()) continue;
    out.push_back(l);
  }
  return make_line_set(space, std::move(out), "perp_avoiding_" + std::to_string(point));
}

std::map<int, Integer> weighted_pencil(const PolarSpace& space, int point) {
  Integer qe = integer_of(space.params().qe(0));
  std::map<int, Integer> w;
  for (int l : point_pencil(space, point, PencilMode::Through).lines) w[l] = qe + 1;
  for (int l : point_pencil(space, point, PencilMode::PerpAvoiding).lines) w[l] = 1;
  return w;
}

LineSet hyperplane_section_lines(const PolarSpace& space, const Section& s) {
  if (s.type != SectionType::Rank3 && s.type != SectionType::Quadrangle)
    throw ConstructionError("section is " + to_string(s.type) + "; need a rank 3 or quadrangle section");
  return make_line_set(space, section_line_indices(space, s), "section_" + to_string(s.type));
}

// ---------------------------------------------------------------- ovoids

void validate_ovoid(const PolarSpace& space, const OvoidSet& o) {
  if (o.fingerprint != space.fingerprint()) throw ConstructionError("ovoid belongs to another space");
  Integer want = integer_of(space.params().qe(2) + 1);
  if (Integer(static_cast<long>(o.points.size())) != want)
    throw ConstructionError("ovoid has " + std::to_string(o.points.size()) + " points, expected " + want.get_str());
  for (std::size_t i = 0; i < o.points.size(); ++i)
    for (std::size_t j = i + 1; j < o.points.size(); ++j)
      if (space.collinear(o.points[i], o.points[j])) throw ConstructionError("two ovoid points are collinear");
  std::vector<char> in(space.num_points(), 0);
  for (int p : o.points) in[p] = 1;
  for (int pl = 0; pl < space.num_planes(); ++pl) {
    int c = 0;
    for (int p : space.plane_points(pl)) c += in[p];
    if (c != 1) throw ConstructionError("a plane meets the ovoid in " + std::to_string(c) + " points");
  }
}

namespace {

// W = <e1, e2, u, v> with Q(su + tv) = s^2 + b st + c t^2 anisotropic.
std::array<Vec, 4> elliptic_frame(const PolarSpace& space) {
  if (space.family() != Family::O6plus) throw ConstructionError("elliptic ovoids are built in O6plus only");
  const Field& f = space.field();
  for (unsigned b = 0; b < f.q(); ++b)
    for (unsigned c = 0; c < f.q(); ++c) {
      bool root = false;
      for (unsigned x = 0; x < f.q() && !root; ++x) {
        Elem xx = static_cast<Elem>(x);
        root = f.add(f.add(f.mul(xx, xx), f.mul(static_cast<Elem>(b), xx)), static_cast<Elem>(c)) == 0;
      }
      if (root) continue;
      Vec e1{}, e2{}, u{}, v{};
      e1[0] = 1;
      e2[1] = 1;
      u[2] = 1;
      u[3] = 1;
      v[3] = static_cast<Elem>(b);
      v[4] = 1;
      v[5] = static_cast<Elem>(c);
      return {e1, e2, u, v};
    }
  throw ConstructionError("no irreducible quadratic found");
}

}  // namespace

OvoidSet elliptic_ovoid(const PolarSpace& space) {
  auto frame = elliptic_frame(space);
  const Field& f = space.field();
  std::set<int> pts;
  const std::uint64_t total = ambient_size(f, 4);
  for (std::uint64_t c = 1; c < total; ++c) {
    Vec coef = decode(f, c, 4);
    Vec x{};
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 6; ++i) x[i] = f.add(x[i], f.mul(coef[k], frame[k][i]));
    if (!space.form().isotropic(f, x)) continue;
    int idx = space.point_index(x);
    if (idx < 0) throw ConstructionError("singular vector is not a point of the space");
    pts.insert(idx);
  }
  OvoidSet o{space.fingerprint(), {pts.begin(), pts.end()}};
  validate_ovoid(space, o);
  return o;
}

Section ovoid_host_section(const PolarSpace& space) {
  auto frame = elliptic_frame(space);
  Subspace w = span_of(space.field(), frame, 6);
  Subspace perp = space.perp(w);
  Section s = hyperplane_section(space, perp.basis().row(0));
  if (s.type != SectionType::Quadrangle) throw ConstructionError("ovoid host section is not a quadrangle");
  return s;
}

PencilUnion pencil_union(const PolarSpace& space, const OvoidSet& o) {
  validate_ovoid(space, o);
  std::vector<int> lines;
  for (int p : o.points)
    for (int l : space.point_lines(p)) lines.push_back(l);
  std::sort(lines.begin(), lines.end());
  if (std::adjacent_find(lines.begin(), lines.end()) != lines.end())
    throw ConstructionError("pencils of the ovoid points overlap");
  const SchemeParams prm = space.params();
  PencilUnion u;
  u.lines = make_line_set(space, std::move(lines), "pencil_union");
  u.formula_size = integer_of((Rational(prm.q) + 1) * (prm.qe(1) + 1) * (prm.qe(2) + 1));
  return u;
}

int validate_m_ovoid(const PolarSpace& space, const Section& section, const std::vector<int>& points) {
  if (section.type != SectionType::Quadrangle) throw ConstructionError("m-ovoids live in a quadrangle section");
  std::vector<char> in(space.num_points(), 0);
  for (int p : points) {
    if (p < 0 || p >= space.num_points()) throw ConstructionError("point index out of range");
    if (!section_contains(space, section, space.point(p))) throw ConstructionError("point outside the section");
    if (in[p]) throw ConstructionError("duplicate point");
    in[p] = 1;
  }
  int m = -1;
  for (int l : section_line_indices(space, section)) {
    int c = 0;
    for (int p : space.line_points(l)) c += in[p];
    if (m < 0) m = c;
    else if (c != m) throw ConstructionError("section lines meet the set in different numbers of points");
  }
  if (m <= 0) throw ConstructionError("not an m-ovoid with m > 0");
  return m;
}

MOvoidLift m_ovoid_lift(const PolarSpace& space, const Section& section, const std::vector<int>& points) {
  if (space.q() % 2 == 0) throw ConstructionError("the m-ovoid lift needs q odd");
  MOvoidLift r;
  r.m = validate_m_ovoid(space, section, points);
  std::vector<char> in(space.num_points(), 0), sec(space.num_points(), 0);
  for (int p : points) in[p] = 1;
  for (int p : section_points(space, section)) sec[p] = 1;
  std::vector<int> lines;
  for (int l = 0; l < space.num_lines(); ++l) {
    int hits = 0, last = -1;
    for (int p : space.line_points(l))
      if (sec[p]) {
        ++hits;
        last = p;
      }
    if (hits == 1 && in[last]) lines.push_back(l);
  }
  const SchemeParams prm = space.params();
  r.formula_size = integer_of(Rational(r.m) * Rational(prm.q) * (prm.qe(1) + 1) * (prm.qe(2) + 1));
  r.lines = make_line_set(space, std::move(lines), "m_ovoid_lift");
  if (Integer(r.lines.size()) != r.formula_size)
    throw ConstructionError("lift has " + std::to_string(r.lines.size()) + " lines, expected " +
                            r.formula_size.get_str());
  return r;
}

// ---------------------------------------------------------------- spread

namespace {

// GF(q^3) as GF(q)[t]/(t^3 + c2 t^2 + c1 t + c0).
class Cubic {
 public:
  using E = std::array<Elem, 3>;

  explicit Cubic(const Field& f) : f_(f) {
    for (unsigned code = 0; code < f.q() * f.q() * f.q(); ++code) {
      c_ = {static_cast<Elem>(code % f.q()), static_cast<Elem>(code / f.q() % f.q()),
            static_cast<Elem>(code / (f.q() * f.q()))};
      if (c_[0] == 0) continue;
      bool root = false;
      for (unsigned x = 0; x < f.q() && !root; ++x) {
        Elem e = static_cast<Elem>(x);
        Elem v = f.add(f.add(f.add(f.mul(e, f.mul(e, e)), f.mul(c_[2], f.mul(e, e))), f.mul(c_[1], e)), c_[0]);
        root = v == 0;
      }
      if (!root) return;
    }
    throw ConstructionError("no irreducible cubic");
  }

  E mul(const E& a, const E& b) const {
    Elem r[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
    for (int k = 4; k >= 3; --k) {
      Elem top = r[k];
      r[k] = 0;
      for (int i = 0; i < 3; ++i) r[k - 3 + i] = f_.sub(r[k - 3 + i], f_.mul(top, c_[i]));
    }
    return {r[0], r[1], r[2]};
  }
  E add(const E& a, const E& b) const { return {f_.add(a[0], b[0]), f_.add(a[1], b[1]), f_.add(a[2], b[2])}; }
  E sub(const E& a, const E& b) const { return {f_.sub(a[0], b[0]), f_.sub(a[1], b[1]), f_.sub(a[2], b[2])}; }
  E frobenius(const E& a) const {
    E r{1, 0, 0};
    for (unsigned i = 0; i < f_.q(); ++i) r = mul(r, a);
    return r;
  }
  Elem trace(const E& a) const {
    E a1 = frobenius(a);
    E s = add(add(a, a1), frobenius(a1));
    if (s[1] || s[2]) throw std::logic_error("trace left the base field");
    return s[0];
  }
  static E basis(int k) {
    E e{0, 0, 0};
    e[k] = 1;
    return e;
  }
  E from_code(unsigned c) const {
    return {static_cast<Elem>(c % f_.q()), static_cast<Elem>(c / f_.q() % f_.q()),
            static_cast<Elem>(c / (f_.q() * f_.q()))};
  }

 private:
  const Field& f_;
  E c_{};
};

}  // namespace

SpreadLines symplectic_spread_lines(const PolarSpace& space) {
  if (space.family() != Family::Sp6) throw ConstructionError("the symplectic spread needs Sp6");
  const Field& f = space.field();
  Cubic k(f);
  using E = Cubic::E;
  // Coordinates over GF(q): (a_0, a_1, a_2, b_0, b_1, b_2) for (a, b).
  auto split = [](const Vec& x) { return std::pair<E, E>{E{x[0], x[1], x[2]}, E{x[3], x[4], x[5]}}; };
  auto form = [&](const Vec& x, const Vec& y) {
    auto [a, b] = split(x);
    auto [c, d] = split(y);
    return k.trace(k.sub(k.mul(a, d), k.mul(b, c)));
  };

  // Symplectic basis e_i, f_i with T(e_i, f_i) = 1.
  std::vector<Vec> rest;
  for (int i = 0; i < 6; ++i) {
    Vec v{};
    v[i] = 1;
    rest.push_back(v);
  }
  std::array<Vec, 3> es, fs;
  for (int i = 0; i < 3; ++i) {
    Vec e = rest[0];
    std::size_t j = 1;
    while (j < rest.size() && form(e, rest[j]) == 0) ++j;
    if (j == rest.size()) throw std::logic_error("trace form is degenerate");
    Vec g = rest[j];
    Elem s = f.inv(form(e, g));
    for (int c = 0; c < 6; ++c) g[c] = f.mul(g[c], s);
    std::vector<Vec> next;
    for (std::size_t r = 1; r < rest.size(); ++r) {
      if (r == j) continue;
      Vec v = rest[r];
      Elem vf = form(v, g), ve = form(v, e);
      for (int c = 0; c < 6; ++c) v[c] = f.add(f.sub(v[c], f.mul(vf, e[c])), f.mul(ve, g[c]));
      next.push_back(v);
    }
    es[i] = e;
    fs[i] = g;
    rest = next;
  }
  auto image = [&](const Vec& x) {
    Vec y{};
    for (int i = 0; i < 3; ++i) {
      y[2 * i] = form(x, fs[i]);
      y[2 * i + 1] = f.neg(form(x, es[i]));
    }
    return y;
  };
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Vec x{}, y{};
      x[i] = 1;
      y[j] = 1;
      if (space.form().bilinear(f, image(x), image(y)) != form(x, y))
        throw std::logic_error("symplectic basis change is not an isometry");
    }

  auto add_plane = [&](const std::array<Vec, 3>& rows, std::vector<int>& planes) {
    std::array<Vec, 3> img{image(rows[0]), image(rows[1]), image(rows[2])};
    int idx = space.plane_index(span_of(f, img, 6));
    if (idx < 0) throw ConstructionError("spread element is not a plane of the space");
    planes.push_back(idx);
  };
  SpreadLines out;
  const unsigned q3 = f.q() * f.q() * f.q();
  for (unsigned c = 0; c < q3; ++c) {
    E m = k.from_code(c);
    std::array<Vec, 3> rows;
    for (int t = 0; t < 3; ++t) {
      E x = Cubic::basis(t);
      E mx = k.mul(m, x);
      rows[t] = Vec{x[0], x[1], x[2], mx[0], mx[1], mx[2]};
    }
    add_plane(rows, out.planes);
  }
  std::array<Vec, 3> vertical;
  for (int t = 0; t < 3; ++t) {
    vertical[t] = Vec{};
    vertical[t][3 + t] = 1;
  }
  add_plane(vertical, out.planes);

  std::vector<int> covered;
  std::vector<int> lines;
  for (int pl : out.planes) {
    for (int p : space.plane_points(pl)) covered.push_back(p);
    for (int l : space.plane_lines(pl)) lines.push_back(l);
  }
  std::sort(covered.begin(), covered.end());
  if (std::adjacent_find(covered.begin(), covered.end()) != covered.end() ||
      static_cast<int>(covered.size()) != space.num_points())
    throw ConstructionError("spread planes do not partition the points");
  std::sort(out.planes.begin(), out.planes.end());
  out.lines = make_line_set(space, std::move(lines), "symplectic_spread");
  return out;
}

// ---------------------------------------------------------------- hexagon

namespace {

struct Octonion {
  Elem a = 0;
  std::array<Elem, 3> u{};
  std::array<Elem, 3> v{};
  Elem b = 0;
  bool zero() const { return a == 0 && b == 0 && u == std::array<Elem, 3>{} && v == std::array<Elem, 3>{}; }
};

// Zorn vector-matrix product.
Octonion multiply(const Field& f, const Octonion& x, const Octonion& y) {
  auto dot3 = [&](const std::array<Elem, 3>& p, const std::array<Elem, 3>& r) {
    return f.add(f.add(f.mul(p[0], r[0]), f.mul(p[1], r[1])), f.mul(p[2], r[2]));
  };
  auto cross = [&](const std::array<Elem, 3>& p, const std::array<Elem, 3>& r) {
    return std::array<Elem, 3>{f.sub(f.mul(p[1], r[2]), f.mul(p[2], r[1])),
                               f.sub(f.mul(p[2], r[0]), f.mul(p[0], r[2])),
                               f.sub(f.mul(p[0], r[1]), f.mul(p[1], r[0]))};
  };
  Octonion z;
  z.a = f.add(f.mul(x.a, y.a), dot3(x.u, y.v));
  z.b = f.add(f.mul(x.b, y.b), dot3(x.v, y.u));
  auto vv = cross(x.v, y.v);
  auto uu = cross(x.u, y.u);
  for (int i = 0; i < 3; ++i) {
    z.u[i] = f.sub(f.add(f.mul(x.a, y.u[i]), f.mul(y.b, x.u[i])), vv[i]);
    z.v[i] = f.add(f.add(f.mul(y.a, x.v[i]), f.mul(x.b, y.v[i])), uu[i]);
  }
  return z;
}

// The trace-zero singular octonion over a point of O7 (x0..x6 = u0 v0 u1 v1
// u2 v2 a) or, for Sp6 with q even, the lift of (u0 v0 u1 v1 u2 v2) with
// a = sqrt(u.v).
Octonion lift(const PolarSpace& space, const Vec& x) {
  const Field& f = space.field();
  Octonion o;
  for (int i = 0; i < 3; ++i) {
    o.u[i] = x[2 * i];
    o.v[i] = x[2 * i + 1];
  }
  if (space.family() == Family::O7) {
    o.a = x[6];
    o.b = f.neg(x[6]);
  } else {
    Elem uv = 0;
    for (int i = 0; i < 3; ++i) uv = f.add(uv, f.mul(o.u[i], o.v[i]));
    o.a = f.pow(uv, f.q() / 2);
    o.b = o.a;
  }
  return o;
}

}  // namespace

LineSet hexagon_lines(const PolarSpace& space) {
  const bool ok = (space.family() == Family::O7 && space.q() % 2 == 1) ||
                  (space.family() == Family::Sp6 && space.q() % 2 == 0);
  if (!ok) throw ConstructionError("the hexagon is built in O7 (q odd) or Sp6 (q even)");
  const Field& f = space.field();
  std::vector<int> lines;
  for (int l = 0; l < space.num_lines(); ++l) {
    const auto& b = space.line_basis(l);
    Octonion x = lift(space, b[0]), y = lift(space, b[1]);
    if (multiply(f, x, y).zero() && multiply(f, y, x).zero()) lines.push_back(l);
  }
  const Integer q = space.q();
  Integer want = (q * q * q + 1) * (q * q + q + 1);
  if (Integer(static_cast<long>(lines.size())) != want)
    throw ConstructionError("hexagon has " + std::to_string(lines.size()) + " lines, expected " + want.get_str());
  return make_line_set(space, std::move(lines), "hexagon");
}

int incidence_girth(const PolarSpace& space, const LineSet& y) {
  // Vertices: lines 0..k-1 of Y, then the covered points.
  std::vector<int> pts = covered_points(space, y);
  const int k = y.size();
  const int v = k + static_cast<int>(pts.size());
  std::vector<std::vector<int>> adj(v);
  for (int i = 0; i < k; ++i)
    for (int p : space.line_points(y.lines[i])) {
      int pi = k + static_cast<int>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
      adj[i].push_back(pi);
      adj[pi].push_back(i);
    }
  int best = 0;
  std::vector<int> dist(v), parent(v);
  for (int s = 0; s < v; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> bfs;
    dist[s] = 0;
    parent[s] = -1;
    bfs.push(s);
    while (!bfs.empty()) {
      int x = bfs.front();
      bfs.pop();
      for (int w : adj[x]) {
        if (dist[w] < 0) {
          dist[w] = dist[x] + 1;
          parent[w] = x;
          bfs.push(w);
        } else if (w != parent[x]) {
          int len = dist[x] + dist[w] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------- two-weight

std::vector<int> covered_points(const PolarSpace& space, const LineSet& y) {
  std::vector<int> pts;
  for (int l : y.lines)
    for (int p : space.line_points(l)) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

TwoWeightProfile two_weight_profile(const LineScheme& ls, const LineSet& y) {
  const PolarSpace& space = ls.space();
  const Family fam = space.family();
  if (fam != Family::Sp6 && fam != Family::U7 && fam != Family::O8minus)
    throw ConstructionError("two-weight profiles need Sp6, U7 or O8minus");
  const Field& f = space.field();
  const SchemeParams prm = space.params();
  auto pts = covered_points(space, y);
  if (static_cast<long>(pts.size()) != static_cast<long>(y.size()) * (space.q() + 1))
    throw ConstructionError("lines of Y are not pairwise disjoint");
  if (!y.empty() && dual_distribution(ls, y)[1] != 0) throw ConstructionError("Y is not orthogonal to V10");

  TwoWeightProfile r;
  r.m = Rational(y.size()) / (prm.qe(2) + 1);
  r.expected_high = integer_of(r.m * (Rational(prm.q) + 1) * (prm.qe(1) + 1));
  r.expected_low = r.expected_high - integer_of(prm.qe(1));
  std::vector<char> covered(space.num_points(), 0);
  for (int p : pts) covered[p] = 1;
  r.matches = true;
  for_each_projective_point(f, space.dim(), [&](const Vec& a) {
    Vec w = space.form().dual(f, a);
    int count = 0;
    for (int p : pts) count += dot(f, space.point(p), w, space.dim()) == 0;
    ++r.histogram[count];
    int idx = space.form().isotropic(f, a) ? space.point_index(a) : -1;
    Integer want = (idx >= 0 && covered[idx]) ? r.expected_low : r.expected_high;
    if (y.empty()) want = 0;
    if (Integer(count) != want) r.matches = false;
    return true;
  });
  return r;
}

SrgParameters srg_parameters(const Rational& m, const SchemeParams& prm) {
  prm.validate();
  const Rational q = prm.q;
  SrgParameters s;
  s.v = integer_of(prm.qme(2, 4));
  s.k = m * (prm.qe(2) + 1) * (q * q - 1);
  s.r = m * (q * q - 1);
  s.s = s.r - prm.qe(2);
  s.mu = s.k + s.r * s.s;
  s.lambda = s.mu + s.r + s.s;
  s.integral = is_integer(s.k) && is_integer(s.r) && is_integer(s.s) && is_integer(s.mu) && s.mu >= 0 &&
               is_integer(s.lambda) && s.lambda >= 0;
  return s;
}

GraphCheck cayley_graph_check(const PolarSpace& space, const std::vector<int>& points) {
  const Field& f = space.field();
  const int d = space.dim();
  const std::uint64_t v = ambient_size(f, d);
  if (v > 4096) throw ConstructionError("graph too large for an explicit check");
  std::vector<char> conn(v, 0);
  for (int p : points)
    for (unsigned lam = 1; lam < f.q(); ++lam) {
      Vec x = space.point(p);
      for (int i = 0; i < d; ++i) x[i] = f.mul(x[i], static_cast<Elem>(lam));
      conn[encode(f, x, d)] = 1;
    }
  std::vector<std::uint64_t> c;
  for (std::uint64_t x = 0; x < v; ++x)
    if (conn[x]) c.push_back(x);
  GraphCheck g;
  g.v = static_cast<int>(v);
  g.k = static_cast<int>(c.size());
  g.strongly_regular = true;
  // Common neighbours of 0 and y: #{c in C : c - y in C}.
  for (std::uint64_t y = 1; y < v; ++y) {
    Vec yv = decode(f, y, d);
    int common = 0;
    for (std::uint64_t cc : c) {
      Vec cv = decode(f, cc, d);
      for (int i = 0; i < d; ++i) cv[i] = f.sub(cv[i], yv[i]);
      common += conn[encode(f, cv, d)];
    }
    int& slot = conn[y] ? g.lambda : g.mu;
    if (slot < 0) slot = common;
    else if (slot != common) g.strongly_regular = false;
  }
  return g;
}

}  // namespace rank3
