#include "rank3/scheme.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace rank3 {

std::string eigenspace_name(int j) {
  static const char* names[] = {"V00", "V10", "V11", "V20", "V21"};
  if (j < 0 || j >= kNumClasses) throw std::out_of_range("eigenspace index");
  return names[j];
}

int parse_eigenspace(const std::string& s) {
  for (int j = 0; j < kNumClasses; ++j)
    if (eigenspace_name(j) == s || eigenspace_name(j).substr(1) == s) return j;
  throw std::invalid_argument("unknown eigenspace: " + s);
}

RationalMatrix p_matrix(const SchemeParams& prm) {
  prm.validate();
  const Rational q = prm.q;
  const Rational qe = prm.qe(0);
  RationalMatrix P(kNumClasses);
  const Rational row[kNumClasses][kNumClasses] = {
      {1, q * (q + 1) * (qe + 1), prm.qe(2) * (q + 1), prm.qe(3) * (q + 1) * (qe + 1), prm.qme(2, 5)},
      {1, prm.qe(1) + q * q + q - 1, q * (prm.qe(1) - 1), q * (prm.qe(2) - prm.qe(1) - qe - q), -prm.qe(3)},
      {1, -(qe + 1), qe * (q * q + 1), -prm.qe(2) * (qe + 1), prm.qme(2, 2)},
      {1, (q - 1) * (q + 1), -q * (q + 1), -(q - 1) * q * (q + 1), q * q * q},
      {1, -(qe + 1), qe - q, q * (qe + 1), -prm.qe(1)},
  };
  for (int j = 0; j < kNumClasses; ++j)
    for (int i = 0; i < kNumClasses; ++i) P(j, i) = row[j][i];
  return P;
}

RationalMatrix q_matrix_closed_form(const SchemeParams& prm, bool as_printed) {
  prm.validate();
  const Rational q = prm.q;
  const Rational qe = prm.qe(0);
  const Rational th = q * q + q + 1;
  const Rational eta = prm.qe(1) + q * q + q - 1;
  const Rational nu = prm.qe(2) + 1;
  const Rational a = qe + q;       // q^e + q
  const Rational b = qe + q * q;   // q^e + q^2
  const Rational q1 = prm.qe(1);
  RationalMatrix Q(kNumClasses);
  const Rational row[kNumClasses][kNumClasses] = {
      {1, q1 * th * (q1 + 1) / a, q * q * (q + 1) * nu / a, prm.qme(2, 1) * th * nu / b, prm.qe(3) * th * nu / b},
      {1, qe * th * eta * (q1 + 1) / ((q + 1) * (qe + 1) * a), -q * nu / a,
       (q - 1) * prm.qme(2, 0) * th * nu / ((qe + 1) * b), -prm.qe(2) * th * nu / ((q + 1) * b)},
      {1, th * (q1 - 1) * (q1 + 1) / ((q + 1) * a), (q * q + 1) * nu / a, -qe * th * nu / b,
       q * th * (qe - q) * nu / ((q + 1) * b)},
      {1, (as_printed ? Rational(q * eta) : Rational(prm.qe(2) - q1 - qe - q)) * th * (q1 + 1) / (q * (q + 1) * (qe + 1) * a), -q * nu / a,
       -(q - 1) * prm.qe(-1) * th * nu / ((qe + 1) * b), q * th * nu / ((q + 1) * b)},
      {1, -th * (q1 + 1) / (q * a), (q + 1) * nu / (q * a), th * nu / (q * b), -th * nu / (q * b)},
  };
  for (int i = 0; i < kNumClasses; ++i)
    for (int j = 0; j < kNumClasses; ++j) {
      Q(i, j) = row[i][j];
      Q(i, j).canonicalize();
    }
  return Q;
}

RationalMatrix q_matrix(const SchemeParams& prm, const RationalMatrix& P) {
  const Rational n = Rational(prm.num_lines());
  RationalMatrix Q = P.inverse().scaled(n);
  RationalMatrix closed = q_matrix_closed_form(prm);
  for (int i = 0; i < kNumClasses; ++i)
    for (int j = 0; j < kNumClasses; ++j)
      if (Q(i, j) != closed(i, j))
        throw SchemeError("Q mismatch at (" + to_string(kRelations[i]) + "," + eigenspace_name(j) +
                          "): inverse gives " + to_string(Q(i, j)) + ", closed form " + to_string(closed(i, j)));
  return Q;
}

SchemeTables make_tables(const SchemeParams& prm) {
  SchemeTables t;
  t.params = prm;
  t.n = prm.num_lines();
  t.P = p_matrix(prm);
  t.Q = q_matrix(prm, t.P);
  Rational total = 0;
  for (int j = 0; j < kNumClasses; ++j) {
    t.multiplicities[j] = as_integer(t.Q(0, j), "multiplicity");
    if (t.multiplicities[j] <= 0) throw SchemeError("nonpositive multiplicity");
    total += t.Q(0, j);
  }
  if (total != Rational(t.n)) throw SchemeError("multiplicities do not sum to n");
  return t;
}

// ---------------------------------------------------------------- verify

namespace {

using Wide = __int128;

Wide checked_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("scheme verification overflow");
  return r;
}

Wide checked_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("scheme verification overflow");
  return r;
}

Wide to_wide(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("scheme verification overflow");
  return static_cast<Wide>(z.get_si());
}

using Vector = std::vector<Wide>;

// out[i][u] = sum_{v : (u,v) in R_i} x[v], for all five relations at once.
std::array<Vector, kNumClasses> apply_all(const RelationTable& table, const Vector& x, unsigned threads) {
  const int n = table.size();
  std::array<Vector, kNumClasses> out;
  for (auto& o : out) o.assign(n, 0);
  auto rows = [&](int begin, int end) {
    for (int u = begin; u < end; ++u) {
      Wide acc[kNumClasses] = {0, 0, 0, 0, 0};
      for (int v = 0; v < n; ++v) acc[index(table(u, v))] += x[v];
      for (int i = 0; i < kNumClasses; ++i) out[i][u] = acc[i];
    }
  };
  unsigned nt = std::max(1u, threads);
  if (nt == 1) {
    rows(0, n);
  } else {
    std::vector<std::thread> pool;
    int chunk = n / static_cast<int>(nt) + 1;
    for (int b = 0; b < n; b += chunk) pool.emplace_back(rows, b, std::min(n, b + chunk));
    for (auto& t : pool) t.join();
  }
  return out;
}

Integer column_denominator_lcm(const RationalMatrix& Q, int j) {
  Integer l = 1;
  for (int i = 0; i < kNumClasses; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), Q(i, j).get_den().get_mpz_t());
  return l;
}

// w = D_j * n * E_j x given all A_i x.
Vector scaled_projection(const std::array<Vector, kNumClasses>& ax, const RationalMatrix& Q, int j, const Integer& d) {
  const std::size_t n = ax[0].size();
  Vector w(n, 0);
  for (int i = 0; i < kNumClasses; ++i) {
    Wide c = to_wide(Integer(Q(i, j) * d));
    for (std::size_t u = 0; u < n; ++u) w[u] = checked_add(w[u], checked_mul(c, ax[i][u]));
  }
  return w;
}

}  // namespace

bool SchemeReport::pass() const {
  if (!valencies_match || !projectors_sum_to_identity || !projectors_idempotent) return false;
  return std::all_of(checks.begin(), checks.end(), [](const ProjectorCheck& c) { return c.pass; });
}

SchemeReport verify_scheme(const RelationTable& table, const SchemeTables& tables, int vectors, std::uint64_t seed,
                           unsigned threads) {
  const int n = table.size();
  if (Integer(n) != tables.n) throw SchemeError("table size does not match the scheme parameters");
  SchemeReport rep;
  rep.vectors = vectors;

  // Valencies are the same for every line; check them all.
  rep.valencies_match = true;
  for (int x = 0; x < n; ++x) {
    auto c = table.census(x);
    if (x == 0) rep.census = c;
    for (int i = 0; i < kNumClasses; ++i)
      if (Integer(c[i]) != tables.valency(i)) rep.valencies_match = false;
  }

  for (int i = 1; i < kNumClasses; ++i)
    for (int j = 0; j < kNumClasses; ++j) rep.checks.push_back({i, j, true});
  rep.projectors_sum_to_identity = true;
  rep.projectors_idempotent = true;

  std::array<Integer, kNumClasses> d;
  Integer l = 1;
  for (int j = 0; j < kNumClasses; ++j) {
    d[j] = column_denominator_lcm(tables.Q, j);
    Integer nd = tables.n * d[j];
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), nd.get_mpz_t());
  }
  const Wide wn = to_wide(tables.n);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int k = 0; k < vectors; ++k) {
    Vector x(n);
    for (auto& v : x) v = entry(rng);
    auto ax = apply_all(table, x, threads);

    Vector sum(n, 0);
    for (int j = 0; j < kNumClasses; ++j) {
      Vector w = scaled_projection(ax, tables.Q, j, d[j]);
      Wide factor = to_wide(Integer(l / (tables.n * d[j])));
      for (int u = 0; u < n; ++u) sum[u] = checked_add(sum[u], checked_mul(factor, w[u]));

      auto aw = apply_all(table, w, threads);
      for (int i = 1; i < kNumClasses; ++i) {
        Wide ev = to_wide(as_integer(tables.P(j, i), "eigenvalue"));
        bool ok = true;
        for (int u = 0; u < n && ok; ++u) ok = aw[i][u] == checked_mul(ev, w[u]);
        if (!ok) rep.checks[(i - 1) * kNumClasses + j].pass = false;
      }
      // E_m w = [m == j] w, scaled by n D_m on both sides.
      for (int m = 0; m < kNumClasses; ++m) {
        Vector ew = scaled_projection(aw, tables.Q, m, d[m]);
        Wide dm = to_wide(d[m]);
        for (int u = 0; u < n; ++u) {
          Wide expect = m == j ? checked_mul(checked_mul(wn, dm), w[u]) : 0;
          if (ew[u] != expect) {
            rep.projectors_idempotent = false;
            break;
          }
        }
      }
    }
    Wide wl = to_wide(l);
    for (int u = 0; u < n; ++u)
      if (sum[u] != checked_mul(wl, x[u])) rep.projectors_sum_to_identity = false;
  }
  return rep;
}

}  // namespace rank3
