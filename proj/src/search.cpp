#include "rank3/search.hpp"

#include "rank3/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <array>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

namespace rank3 {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Complete: return "complete";
    case SearchStatus::NodeLimit: return "node_limit";
    case SearchStatus::TimeLimit: return "time_limit";
    case SearchStatus::ResultCap: return "result_cap";
  }
  return "?";
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Witness: return "witness";
    case ProbeVerdict::None: return "none";
    case ProbeVerdict::Unknown: return "unknown";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Shared bookkeeping for one search: node counter, deadline and results.
class Budget {
 public:
  Budget(const SearchBudget& b, std::size_t stop_after) : b_(b), stop_after_(stop_after), start_(Clock::now()) {}

  // False once any limit is hit.
  bool tick() {
    std::uint64_t n = ++nodes_;
    if (n > b_.max_nodes) return stop(SearchStatus::NodeLimit);
    if ((n & 1023) == 0 && seconds() > b_.max_seconds) return stop(SearchStatus::TimeLimit);
    return !stopped();
  }
  bool stopped() const { return status_.load() != kRunning; }
  // Returns false when the search should stop.
  bool add(std::vector<int> set) {
    std::lock_guard<std::mutex> lock(mu_);
    if (stopped()) return false;
    results_.push_back(std::move(set));
    if (results_.size() < stop_after_) return true;
    if (stop_after_ >= b_.max_results) stop(SearchStatus::ResultCap);
    else status_.store(kDone);
    return false;
  }
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  SearchStats stats() const {
    SearchStats s;
    s.nodes = std::min<std::uint64_t>(nodes_.load(), b_.max_nodes);
    s.seconds = seconds();
    int st = status_.load();
    s.status = (st == kRunning || st == kDone) ? SearchStatus::Complete : static_cast<SearchStatus>(st);
    return s;
  }
  std::vector<std::vector<int>> take() { return std::move(results_); }

 private:
  static constexpr int kRunning = -1;
  static constexpr int kDone = -2;
  bool stop(SearchStatus s) {
    int expected = kRunning;
    status_.compare_exchange_strong(expected, static_cast<int>(s));
    return false;
  }

  SearchBudget b_;
  std::size_t stop_after_;
  Clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<int> status_{kRunning};
  std::mutex mu_;
  std::vector<std::vector<int>> results_;
};

// Linear conditions on the degree vector d(v) = (d_0..d_4) of every vertex:
// sum_i c_i d_i(v) = rhs.
struct Row {
  std::array<long long, kNumClasses> c{};
  long long rhs = 0;
};

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

std::vector<Row> support_rows(const SchemeTables& t, const std::vector<int>& support, long long size) {
  std::vector<Row> rows;
  for (int k = 1; k < kNumClasses; ++k) {
    if (std::find(support.begin(), support.end(), k) != support.end()) continue;
    Integer lcm = 1;
    for (int i = 0; i < kNumClasses; ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.Q(i, k).get_den_mpz_t());
    Row r;
    for (int i = 0; i < kNumClasses; ++i) {
      Rational v = t.Q(i, k) * lcm;
      r.c[i] = v.get_num().get_si();
    }
    rows.push_back(r);
  }
  Row sum;
  sum.c.fill(1);
  sum.rhs = size;
  rows.push_back(sum);
  return rows;
}

// Arithmetic modulo a prime. A 0/1 solution of the integer system also
// solves it mod p, so every value forced mod p is forced for real.
constexpr std::uint64_t kPrime = 2147483647;
std::uint32_t mod_of(long long v) {
  long long r = v % static_cast<long long>(kPrime);
  return static_cast<std::uint32_t>(r < 0 ? r + static_cast<long long>(kPrime) : r);
}
std::uint32_t mul(std::uint64_t a, std::uint64_t b) { return static_cast<std::uint32_t>(a * b % kPrime); }
std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return a >= b ? a - b : static_cast<std::uint32_t>(a + kPrime - b); }
std::uint32_t inverse(std::uint32_t a) {
  std::uint64_t r = 1, b = a, e = kPrime - 2;
  for (; e; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return static_cast<std::uint32_t>(r);
}

// x_w = off[w] + sum_f coef[w][f] z_f over the `dim` remaining parameters.
struct Affine {
  int stride = 0, dim = 0;
  std::vector<std::uint32_t> coef, off;
};

struct State {
  std::vector<std::int8_t> status;  // -1 undecided, 0 out, 1 in
  std::vector<std::array<int, kNumClasses>> cnt, und;
  std::vector<std::array<int, kNumClasses>> lo, hi;  // degree bounds after propagation
  int undecided = 0;
  Affine lin;  // empty when the linear layer is off
};

class Engine {
 public:
  Engine(const LineScheme& ls, std::vector<Row> rows, const std::vector<int>& support, long long size)
      : n_(ls.n()), rows_(std::move(rows)), rel_(std::size_t(n_) * n_) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) rel_[std::size_t(a) * n_ + b] = static_cast<std::uint8_t>(index(ls.relation(a, b)));
    build_linear(ls.tables(), support, size);
  }

  State initial() const {
    State s;
    s.status.assign(n_, -1);
    s.cnt.assign(n_, {});
    s.und.assign(n_, {});
    s.lo.assign(n_, {});
    s.hi.assign(n_, {});
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) ++s.und[a][rel(a, b)];
    s.undecided = n_;
    s.lin = lin0_;
    return s;
  }

  // Applies forced decisions to a fixpoint; false on contradiction.
  bool propagate(State& s, std::vector<std::pair<int, int>> queue) const {
    while (true) {
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto [v, val] = queue[qi];
        if (s.status[v] >= 0) {
          if (s.status[v] != val) return false;
          continue;
        }
        assign(s, v, val);
        if (!s.lin.coef.empty() && !fix(s.lin, v, val)) return false;
      }
      queue.clear();
      if (!determined(s, queue)) return false;
      for (int u = 0; u < n_; ++u)
        if (!check(s, u, queue)) return false;
      if (queue.empty()) return true;
    }
  }

  // Branches inside the most constrained neighbourhood of a chosen vertex:
  // the class R_i of u in Y whose undecided part has the fewest vertices
  // while some of them are forced either way.
  int pick(const State& s) const {
    int best_u = -1, best_i = 0, best = n_ + 1;
    for (int u = 0; u < n_; ++u) {
      if (s.status[u] != 1) continue;
      for (int i = 1; i < kNumClasses; ++i) {
        int und = s.und[u][i];
        if (und == 0 || und >= best) continue;
        bool bound = s.lo[u][i] > s.cnt[u][i] || s.hi[u][i] < s.cnt[u][i] + und;
        if (bound) best_u = u, best_i = i, best = und;
      }
    }
    for (int v = 0; v < n_; ++v)
      if (s.status[v] < 0 && (best_u < 0 || rel(best_u, v) == best_i)) return v;
    return -1;
  }

  std::vector<int> members(const State& s) const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (s.status[v] == 1) out.push_back(v);
    return out;
  }

  int n() const { return n_; }

 private:
  int rel(int a, int b) const { return rel_[std::size_t(a) * n_ + b]; }

  // Parameterizes <1> + sum_{j in support} V_j mod p by a column basis of
  // the scaled idempotents, then imposes the size. Skipped when too large.
  void build_linear(const SchemeTables& t, const std::vector<int>& support, long long size) {
    std::size_t target = 1;
    for (int j : support) target += t.multiplicities[j].get_ui();
    if (std::size_t(n_) * target > kMaxLinearEntries) return;
    std::vector<std::vector<std::uint32_t>> basis;  // reduced, with pivots
    std::vector<int> pivots;
    auto insert = [&](std::vector<std::uint32_t> v) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint32_t c = v[pivots[b]];
        if (c == 0) continue;
        for (int u = 0; u < n_; ++u)
          if (basis[b][u]) v[u] = sub(v[u], mul(c, basis[b][u]));
      }
      int piv = -1;
      for (int u = 0; u < n_ && piv < 0; ++u)
        if (v[u]) piv = u;
      if (piv < 0) return;
      std::uint32_t inv = inverse(v[piv]);
      for (auto& x : v) x = mul(x, inv);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint32_t c = basis[b][piv];
        if (c == 0) continue;
        for (int u = 0; u < n_; ++u)
          if (v[u]) basis[b][u] = sub(basis[b][u], mul(c, v[u]));
      }
      basis.push_back(std::move(v));
      pivots.push_back(piv);
    };
    insert(std::vector<std::uint32_t>(n_, 1));
    for (int j : support) {
      Integer lcm = 1;
      for (int i = 0; i < kNumClasses; ++i) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.Q(i, j).get_den_mpz_t());
      std::array<std::uint32_t, kNumClasses> c{};
      for (int i = 0; i < kNumClasses; ++i) c[i] = mod_of(Rational(t.Q(i, j) * lcm).get_num().get_si());
      for (int w = 0; w < n_ && basis.size() < target; ++w) {
        std::vector<std::uint32_t> col(n_);
        for (int u = 0; u < n_; ++u) col[u] = c[rel(u, w)];
        insert(std::move(col));
      }
    }
    Affine& a = lin0_;
    a.stride = a.dim = static_cast<int>(basis.size());
    a.coef.assign(std::size_t(n_) * a.stride, 0);
    a.off.assign(n_, 0);
    for (int u = 0; u < n_; ++u)
      for (int f = 0; f < a.dim; ++f) a.coef[std::size_t(u) * a.stride + f] = basis[f][u];
    std::vector<std::uint32_t> g(a.dim, 0);
    for (int u = 0; u < n_; ++u)
      for (int f = 0; f < a.dim; ++f) g[f] = static_cast<std::uint32_t>((g[f] + a.coef[std::size_t(u) * a.stride + f]) % kPrime);
    if (!impose(a, g, mod_of(size))) unsat_ = true;
  }

  // Imposes g.z = r (with no offset) and eliminates one parameter.
  static bool impose(Affine& a, const std::vector<std::uint32_t>& g, std::uint32_t r) {
    int c = -1;
    for (int f = 0; f < a.dim && c < 0; ++f)
      if (g[f]) c = f;
    if (c < 0) return r == 0;
    const std::uint32_t inv = inverse(g[c]);
    const std::size_t rows = a.off.size();
    for (std::size_t u = 0; u < rows; ++u) {
      std::uint32_t* row = &a.coef[u * a.stride];
      if (std::uint32_t k = row[c]) {
        std::uint32_t t = mul(k, inv);
        a.off[u] = static_cast<std::uint32_t>((a.off[u] + std::uint64_t(t) * r) % kPrime);
        for (int f = 0; f < a.dim; ++f)
          if (g[f]) row[f] = sub(row[f], mul(t, g[f]));
      }
      row[c] = row[a.dim - 1];
      row[a.dim - 1] = 0;
    }
    --a.dim;
    return true;
  }

  // Records x_v = val in the affine layer.
  static bool fix(Affine& a, int v, int val) {
    std::vector<std::uint32_t> g(a.coef.begin() + std::size_t(v) * a.stride,
                                 a.coef.begin() + std::size_t(v) * a.stride + a.dim);
    return impose(a, g, sub(static_cast<std::uint32_t>(val), a.off[v]));
  }

  // Queues undecided vertices whose value no longer depends on a parameter.
  bool determined(const State& s, std::vector<std::pair<int, int>>& queue) const {
    if (unsat_) return false;
    const Affine& a = s.lin;
    if (a.coef.empty()) return true;
    for (int w = 0; w < n_; ++w) {
      if (s.status[w] >= 0) continue;
      const std::uint32_t* row = &a.coef[std::size_t(w) * a.stride];
      if (std::any_of(row, row + a.dim, [](std::uint32_t x) { return x != 0; })) continue;
      if (a.off[w] > 1) return false;
      queue.emplace_back(w, static_cast<int>(a.off[w]));
    }
    return true;
  }

  void assign(State& s, int v, int val) const {
    s.status[v] = static_cast<std::int8_t>(val);
    --s.undecided;
    for (int u = 0; u < n_; ++u) {
      int r = rel(u, v);
      --s.und[u][r];
      if (val) ++s.cnt[u][r];
    }
  }

  // Bounds-consistency on the rows of vertex u; queues forced decisions.
  bool check(State& s, int u, std::vector<std::pair<int, int>>& queue) const {
    std::array<long long, kNumClasses> lo, hi;
    for (int i = 0; i < kNumClasses; ++i) {
      lo[i] = s.cnt[u][i];
      hi[i] = s.cnt[u][i] + s.und[u][i];
    }
    for (int round = 0, changed = 1; changed && round < 8; ++round) {
      changed = 0;
      for (const Row& r : rows_) {
        long long mn = 0, mx = 0;
        for (int i = 0; i < kNumClasses; ++i) {
          long long c = r.c[i];
          mn += c > 0 ? c * lo[i] : c * hi[i];
          mx += c > 0 ? c * hi[i] : c * lo[i];
        }
        if (r.rhs < mn || r.rhs > mx) return false;
        for (int i = 0; i < kNumClasses; ++i) {
          long long c = r.c[i];
          if (c == 0 || lo[i] == hi[i]) continue;
          long long omn = mn - (c > 0 ? c * lo[i] : c * hi[i]);
          long long omx = mx - (c > 0 ? c * hi[i] : c * lo[i]);
          long long a = r.rhs - omx, b = r.rhs - omn;  // c * d_i in [a, b]
          long long nlo = c > 0 ? ceil_div(a, c) : ceil_div(b, c);
          long long nhi = c > 0 ? floor_div(b, c) : floor_div(a, c);
          if (nlo > lo[i]) lo[i] = nlo, changed = 1;
          if (nhi < hi[i]) hi[i] = nhi, changed = 1;
          if (lo[i] > hi[i]) return false;
        }
      }
    }
    for (int i = 0; i < kNumClasses; ++i) {
      s.lo[u][i] = static_cast<int>(lo[i]);
      s.hi[u][i] = static_cast<int>(hi[i]);
    }
    for (int i = 0; i < kNumClasses; ++i) {
      if (s.und[u][i] == 0) continue;
      int val = -1;
      if (lo[i] == s.cnt[u][i] + s.und[u][i]) val = 1;
      else if (hi[i] == s.cnt[u][i]) val = 0;
      if (val < 0) continue;
      if (i == 0) {
        queue.emplace_back(u, val);
        continue;
      }
      for (int w = 0; w < n_; ++w)
        if (s.status[w] < 0 && rel(u, w) == i) queue.emplace_back(w, val);
    }
    return true;
  }

  static constexpr std::size_t kMaxLinearEntries = 1 << 20;

  int n_;
  std::vector<Row> rows_;
  std::vector<std::uint8_t> rel_;
  Affine lin0_;
  bool unsat_ = false;
};

void dfs(const Engine& e, State s, std::vector<std::pair<int, int>> forced, Budget& budget) {
  if (!budget.tick()) return;
  if (!e.propagate(s, std::move(forced))) return;
  int v = e.pick(s);
  if (v < 0) {
    budget.add(e.members(s));
    return;
  }
  for (int val : {1, 0}) {
    if (budget.stopped()) return;
    dfs(e, s, {{v, val}}, budget);
  }
}

// Splits the tree at a shallow depth and hands subtrees to worker threads.
void run(const Engine& e, Budget& budget, unsigned threads) {
  State root = e.initial();
  if (threads <= 1) {
    dfs(e, std::move(root), {}, budget);
    return;
  }
  struct Task {
    State s;
    std::vector<std::pair<int, int>> forced;
  };
  std::vector<Task> frontier{{std::move(root), {}}};
  const std::size_t want = threads * 8;
  while (frontier.size() < want && !budget.stopped()) {
    std::vector<Task> next;
    bool split = false;
    for (Task& t : frontier) {
      if (!budget.tick()) break;
      if (!e.propagate(t.s, std::move(t.forced))) continue;
      int v = e.pick(t.s);
      if (v < 0) {
        budget.add(e.members(t.s));
        continue;
      }
      split = true;
      next.push_back({t.s, {{v, 1}}});
      next.push_back({std::move(t.s), {{v, 0}}});
    }
    frontier = std::move(next);
    if (!split) break;
  }
  std::atomic<std::size_t> idx{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i; (i = idx++) < frontier.size();) {
        if (budget.stopped()) return;
        dfs(e, frontier[i].s, frontier[i].forced, budget);
      }
    });
  for (auto& t : pool) t.join();
}

std::vector<int> normalized_support(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int j : s)
    if (j < 1 || j >= kNumClasses) throw std::invalid_argument("support must be a subset of {10, 11, 20, 21}");
  return s;
}

}  // namespace

SearchResult enumerate_regular_sets(const LineScheme& ls, int j, const Integer& size, const SearchBudget& budget,
                                    unsigned threads) {
  const int n = ls.n();
  if (size < 0 || size > n) throw std::invalid_argument("size outside [0, n]");
  DegreeTable t = degree_table(ls.tables(), j, size);
  if (size > 0 && size < n && !(t.integral() && t.nonnegative() && t.bounded()))
    throw std::invalid_argument("predicted degrees are not nonnegative integers");
  const bool flip = 2 * size > n;
  const long long target = flip ? n - size.get_si() : size.get_si();

  Engine e(ls, support_rows(ls.tables(), {j}, target), {j}, target);
  Budget b(budget, budget.max_results);
  run(e, b, threads);
  SearchResult r;
  r.stats = b.stats();
  for (auto& lines : b.take()) {
    LineSet y = make_line_set(ls.space(), std::move(lines));
    r.sets.push_back(flip ? complement(ls.space(), y) : y);
  }
  std::sort(r.sets.begin(), r.sets.end(), [](const LineSet& a, const LineSet& b) { return a.lines < b.lines; });
  return r;
}

ProbeResult feasibility_probe(const LineScheme& ls, std::vector<int> support, const Integer& size,
                              const SearchBudget& budget, unsigned threads) {
  support = normalized_support(support);
  if (size < 0 || size > ls.n()) throw std::invalid_argument("size outside [0, n]");
  Engine e(ls, support_rows(ls.tables(), support, size.get_si()), support, size.get_si());
  Budget b(budget, std::min<std::size_t>(1, budget.max_results));
  run(e, b, threads);
  ProbeResult r;
  r.stats = b.stats();
  auto found = b.take();
  if (!found.empty()) {
    r.verdict = ProbeVerdict::Witness;
    r.witness = make_line_set(ls.space(), std::move(found.front()), "witness");
    r.stats.status = SearchStatus::Complete;
  } else {
    r.verdict = r.stats.complete() ? ProbeVerdict::None : ProbeVerdict::Unknown;
  }
  return r;
}

// ---------------------------------------------------------------- exact cover

SpreadSearchResult line_spread_search(const PolarSpace& space, const std::optional<Section>& section,
                                      const SearchBudget& budget) {
  std::vector<int> pts, lines;
  if (section) {
    pts = section_points(space, *section);
    lines = section_line_indices(space, *section);
  } else {
    pts.resize(space.num_points());
    std::iota(pts.begin(), pts.end(), 0);
    lines.resize(space.num_lines());
    std::iota(lines.begin(), lines.end(), 0);
  }
  if (pts.size() % (space.q() + 1) != 0)
    throw std::invalid_argument(std::to_string(pts.size()) + " points cannot be partitioned into lines of size " +
                                std::to_string(space.q() + 1));
  std::vector<int> col(space.num_points(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) col[pts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> by_point(pts.size());
  for (int l : lines)
    for (int p : space.line_points(l)) by_point[col[p]].push_back(l);

  Budget b(budget, 1);
  std::vector<char> covered(pts.size(), 0);
  std::vector<int> chosen;
  auto free_line = [&](int l) {
    for (int p : space.line_points(l))
      if (covered[col[p]]) return false;
    return true;
  };
  std::function<bool()> go = [&]() -> bool {
    if (!b.tick()) return false;
    int best = -1, best_count = 1 << 30;
    for (std::size_t c = 0; c < pts.size(); ++c) {
      if (covered[c]) continue;
      int k = 0;
      for (int l : by_point[c]) k += free_line(l);
      if (k < best_count) best = static_cast<int>(c), best_count = k;
      if (k == 0) return false;
    }
    if (best < 0) return true;
    for (int l : by_point[best]) {
      if (!free_line(l)) continue;
      for (int p : space.line_points(l)) covered[col[p]] = 1;
      chosen.push_back(l);
      if (go()) return true;
      chosen.pop_back();
      for (int p : space.line_points(l)) covered[col[p]] = 0;
      if (b.stopped()) return false;
    }
    return false;
  };
  SpreadSearchResult r;
  if (go()) r.spread = make_line_set(space, chosen, "line_spread");
  r.stats = b.stats();
  if (r.spread) r.stats.status = SearchStatus::Complete;
  return r;
}

// ---------------------------------------------------------------- packing

namespace {

// Maximum clique by branch and bound with a greedy colouring bound.
class MaxClique {
 public:
  MaxClique(std::vector<std::vector<char>> adj, Budget& b) : adj_(std::move(adj)), b_(b) {}

  std::vector<int> solve() {
    std::vector<int> all(adj_.size());
    std::iota(all.begin(), all.end(), 0);
    std::sort(all.begin(), all.end(), [&](int x, int y) { return degree(x) > degree(y); });
    std::vector<int> current;
    expand(current, all);
    return best_;
  }

 private:
  int degree(int v) const { return static_cast<int>(std::count(adj_[v].begin(), adj_[v].end(), 1)); }

  void expand(std::vector<int>& current, std::vector<int> cand) {
    if (!b_.tick()) return;
    // Colour classes in order; colour[k] bounds the clique from cand[k..].
    std::vector<int> order, colour;
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      std::size_t c = 0;
      while (c < classes.size() &&
             std::any_of(classes[c].begin(), classes[c].end(), [&](int w) { return adj_[v][w]; }))
        ++c;
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) {
        order.push_back(v);
        colour.push_back(static_cast<int>(c) + 1);
      }
    for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
      if (current.size() + colour[k] <= best_.size()) return;
      int v = order[k];
      current.push_back(v);
      std::vector<int> next;
      for (int i = 0; i < k; ++i)
        if (adj_[v][order[i]]) next.push_back(order[i]);
      if (next.empty()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      if (b_.stopped()) return;
    }
  }

  std::vector<std::vector<char>> adj_;
  Budget& b_;
  std::vector<int> best_;
};

}  // namespace

PackingResult disjoint_section_packing(const PolarSpace& space, const SearchBudget& budget) {
  if (space.family() != Family::O6plus) throw std::invalid_argument("section packings are defined for O6plus");
  const Field& f = space.field();
  PackingResult r;
  std::vector<std::vector<int>> line_sets;
  const int d = space.dim();
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= f.q();
  for (std::uint64_t c = 1; c < total; ++c) {
    Vec a = decode(f, c, d);
    int lead = 0;
    while (a[lead] == 0) ++lead;
    if (a[lead] != 1 || space.form().isotropic(f, a)) continue;
    Section s = hyperplane_section(space, a);
    if (s.type != SectionType::Quadrangle) continue;
    r.candidates.push_back(s);
    line_sets.push_back(section_line_indices(space, s));
  }
  const std::size_t m = line_sets.size();
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x + 1; y < m; ++y) {
      std::vector<int> common;
      std::set_intersection(line_sets[x].begin(), line_sets[x].end(), line_sets[y].begin(), line_sets[y].end(),
                            std::back_inserter(common));
      adj[x][y] = adj[y][x] = common.empty();
    }
  Budget b(budget, budget.max_results);
  MaxClique mc(std::move(adj), b);
  r.chosen = mc.solve();
  std::sort(r.chosen.begin(), r.chosen.end());
  std::vector<int> lines;
  for (int c : r.chosen) lines.insert(lines.end(), line_sets[c].begin(), line_sets[c].end());
  r.lines = make_line_set(space, std::move(lines), "section_packing");
  r.stats = b.stats();
  return r;
}

}  // namespace rank3
