#include "rank3/lp.hpp"

#include <algorithm>
#include <sstream>

#include "rank3/analysis.hpp"

namespace rank3 {

namespace {

// Calls fn(subset) for every k-subset of {0..m-1}.
template <class Fn>
void for_each_subset(int m, int k, Fn fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Rows of G x <= h; returns the solution of the rows in `active` taken as
// equalities, or nullopt if they are singular.
std::optional<std::vector<Rational>> solve_active(const std::vector<std::vector<Rational>>& g,
                                                  const std::vector<Rational>& h, const std::vector<int>& active) {
  const int k = static_cast<int>(active.size());
  RationalMatrix m(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) m(r, c) = g[active[r]][c];
  RationalMatrix inv;
  try {
    inv = m.inverse();
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  std::vector<Rational> x(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) x[r] += inv(r, c) * h[active[c]];
  return x;
}

bool feasible(const std::vector<std::vector<Rational>>& g, const std::vector<Rational>& h,
              const std::vector<Rational>& x) {
  for (std::size_t r = 0; r < g.size(); ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < x.size(); ++c) s += g[r][c] * x[c];
    if (s > h[r]) return false;
  }
  return true;
}

// max c.x subject to g x <= h over a bounded polytope containing a vertex.
// Returns the optimum and all optimal vertices.
std::pair<Rational, std::vector<std::vector<Rational>>> vertex_optimum(const std::vector<std::vector<Rational>>& g,
                                                                       const std::vector<Rational>& h,
                                                                       const std::vector<Rational>& c) {
  const int k = static_cast<int>(c.size());
  std::optional<Rational> best;
  std::vector<std::vector<Rational>> argmax;
  for_each_subset(static_cast<int>(g.size()), k, [&](const std::vector<int>& active) {
    auto x = solve_active(g, h, active);
    if (!x || !feasible(g, h, *x)) return;
    Rational v = 0;
    for (int i = 0; i < k; ++i) v += c[i] * (*x)[i];
    if (!best || v > *best) {
      best = v;
      argmax.assign(1, *x);
    } else if (v == *best && std::find(argmax.begin(), argmax.end(), *x) == argmax.end()) {
      argmax.push_back(*x);
    }
  });
  if (!best) throw LPError("polytope has no vertex");
  return {*best, argmax};
}

std::vector<int> free_relations(const std::vector<int>& forbidden) {
  std::vector<int> out;
  for (int i = 1; i < kNumClasses; ++i)
    if (std::find(forbidden.begin(), forbidden.end(), i) == forbidden.end()) out.push_back(i);
  return out;
}

std::vector<int> normalized(std::vector<int> f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  for (int i : f)
    if (i < 1 || i >= kNumClasses) throw std::invalid_argument("forbidden relations must be among R10..R21");
  if (f.empty() || f.size() == kNumClasses - 1)
    throw std::invalid_argument("forbidden set must be nonempty and proper");
  return f;
}

}  // namespace

std::vector<int> parse_forbidden(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    if (tok[0] == 'r') tok[0] = 'R';
    out.push_back(index(parse_relation(tok)));
  }
  return normalized(out);
}

std::string forbidden_string(const std::vector<int>& forbidden) {
  std::string s;
  for (int i : forbidden) s += (s.empty() ? "" : ",") + to_string(kRelations[i]);
  return s;
}

LPResult delsarte_lp_bound(const SchemeTables& t, const std::vector<int>& forbidden_in) {
  LPResult r;
  r.instance = {t.params, normalized(forbidden_in)};
  const std::vector<int> vars = free_relations(r.instance.forbidden);
  const int k = static_cast<int>(vars.size());

  // Primal: -sum_i Q_ij x_i <= Q_0j, -x_i <= 0.
  std::vector<std::vector<Rational>> g;
  std::vector<Rational> h;
  for (int j = 0; j < kNumClasses; ++j) {
    std::vector<Rational> row(k);
    for (int c = 0; c < k; ++c) row[c] = -t.Q(vars[c], j);
    g.push_back(row);
    h.push_back(t.Q(0, j));
  }
  for (int c = 0; c < k; ++c) {
    std::vector<Rational> row(k);
    row[c] = -1;
    g.push_back(row);
    h.push_back(0);
  }
  auto [best, vertices] = vertex_optimum(g, h, std::vector<Rational>(k, Rational(1)));
  r.optimum = best + 1;
  r.optimal_vertices = static_cast<int>(vertices.size());
  auto distribution = [&](const std::vector<Rational>& x) {
    Distribution a{};
    a[0] = 1;
    for (int c = 0; c < k; ++c) a[vars[c]] = x[c];
    return a;
  };
  r.a = distribution(vertices.front());
  r.aq = dual_distribution(t, r.a);
  for (int j = 1; j < kNumClasses; ++j) {
    bool zero = std::all_of(vertices.begin(), vertices.end(),
                            [&](const std::vector<Rational>& x) { return dual_distribution(t, distribution(x))[j] == 0; });
    if (zero) r.tight.push_back(j);
  }

  // Dual: min sum_j Q_0j y_j with sum_j (-Q_ij) y_j >= 1 and y >= 0, written
  // as max of the negated objective.
  std::vector<std::vector<Rational>> dg;
  std::vector<Rational> dh;
  for (int c = 0; c < k; ++c) {
    std::vector<Rational> row(kNumClasses);
    for (int j = 0; j < kNumClasses; ++j) row[j] = t.Q(vars[c], j);
    dg.push_back(row);
    dh.push_back(-1);
  }
  for (int j = 0; j < kNumClasses; ++j) {
    std::vector<Rational> row(kNumClasses);
    row[j] = -1;
    dg.push_back(row);
    dh.push_back(0);
  }
  std::vector<Rational> obj(kNumClasses);
  for (int j = 0; j < kNumClasses; ++j) obj[j] = -t.Q(0, j);
  auto [dbest, dvert] = vertex_optimum(dg, dh, obj);
  for (int j = 0; j < kNumClasses; ++j) r.dual[j] = dvert.front()[j];
  r.dual_bound = 1 - dbest;
  if (r.dual_bound != r.optimum || !verify_certificate(t, r))
    throw std::logic_error("LP certificate does not match the primal optimum");
  return r;
}

LPResult delsarte_lp_bound(const LPInstance& inst) { return delsarte_lp_bound(make_tables(inst.params), inst.forbidden); }

bool verify_certificate(const SchemeTables& t, const LPResult& r) {
  if (r.a[0] != 1) return false;
  Rational sum = 0;
  for (int i = 0; i < kNumClasses; ++i) {
    if (r.a[i] < 0) return false;
    sum += r.a[i];
  }
  for (int i : r.instance.forbidden)
    if (r.a[i] != 0) return false;
  if (sum != r.optimum) return false;
  for (int j = 0; j < kNumClasses; ++j) {
    Rational s = 0;
    for (int i = 0; i < kNumClasses; ++i) s += r.a[i] * t.Q(i, j);
    if (s < 0) return false;
  }
  Rational bound = 1;
  for (int j = 0; j < kNumClasses; ++j) {
    if (r.dual[j] < 0) return false;
    bound += r.dual[j] * t.Q(0, j);
  }
  for (int i : free_relations(r.instance.forbidden)) {
    Rational s = 0;
    for (int j = 0; j < kNumClasses; ++j) s -= r.dual[j] * t.Q(i, j);
    if (s < 1) return false;
  }
  return bound == r.optimum;
}

std::optional<Rational> closed_form_bound(const SchemeParams& prm, const std::vector<int>& forbidden_in) {
  const std::vector<int> f = normalized(forbidden_in);
  const Rational q = prm.q;
  const Rational th = q * q + q + 1;
  const Rational nu = prm.qe(2) + 1;
  const Rational qe1 = prm.qe(1);
  const bool e0 = prm.two_e == 0;
  using V = std::vector<int>;
  auto r11_r20 = [&]() -> Rational { return nu * (prm.qe(2) + q * q * q + q - 1) / (qe1 + 2 * q - 1); };

  if (f == V{1} || f == V{1, 3}) return Rational((qe1 + 1) * nu);
  if (f == V{2}) return Rational(nu * th);
  if (f == V{3}) {
    if (!e0 || prm.q == 2) return Rational((qe1 + 1) * nu);
    return r11_r20();
  }
  if (f == V{1, 2}) return Rational(th * nu / (q + 1));
  if (f == V{1, 4}) {
    if (!e0 || prm.q == 2) return Rational(th * (qe1 + 1) * (qe1 + 2 * q - 1) / (prm.qe(2) + q * q * q + q - 1));
    return Rational((2 * q * q + q - 1) / (q - 1));
  }
  if (f == V{2, 3}) return r11_r20();
  if (f == V{2, 4}) return th;
  if (f == V{1, 3, 4}) return Rational(qe1 + 1);
  return std::nullopt;
}

std::vector<std::vector<int>> all_forbidden_sets() {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < 15; ++mask) {
    std::vector<int> f;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) f.push_back(i + 1);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace rank3
