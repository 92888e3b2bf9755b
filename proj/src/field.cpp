#include "rank3/field.hpp"

#include <map>

namespace rank3 {

namespace {

// Conway polynomials, constant term first.
const std::map<unsigned, std::vector<unsigned>>& conway_table() {
  static const std::map<unsigned, std::vector<unsigned>> table = {
      {4, {1, 1, 1}},          {8, {1, 1, 0, 1}},     {16, {1, 1, 0, 0, 1}},
      {32, {1, 0, 1, 0, 0, 1}}, {9, {2, 2, 1}},        {27, {1, 2, 0, 1}},
      {25, {2, 4, 1}},
  };
  return table;
}

std::vector<unsigned> digits(unsigned v, unsigned p, unsigned h) {
  std::vector<unsigned> d(h);
  for (unsigned i = 0; i < h; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned q) {
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) break;
    unsigned h = 0;
    unsigned r = q;
    while (r % p == 0) {
      r /= p;
      ++h;
    }
    if (r != 1) break;
    return {p, h};
  }
  throw FieldError("unsupported field: " + std::to_string(q) + " is not a prime power");
}

Field Field::of_order(unsigned q) {
  auto [p, h] = prime_power(q);
  return make(p, h);
}

Field Field::make(unsigned p, unsigned h) {
  if (!is_prime(p)) throw FieldError("unsupported field: p=" + std::to_string(p) + " is not prime");
  if (h < 1 || h > 5) throw FieldError("unsupported field: degree " + std::to_string(h));
  unsigned q = 1;
  for (unsigned i = 0; i < h; ++i) q *= p;
  if (q > kMaxOrder) throw FieldError("unsupported field: q=" + std::to_string(q) + " exceeds cap");

  Field f;
  f.p_ = p;
  f.h_ = h;
  f.q_ = q;
  if (h == 1) {
    f.modulus_ = {0, 1};
  } else {
    auto it = conway_table().find(q);
    if (it == conway_table().end()) throw FieldError("unsupported field: no reduction polynomial for q=" + std::to_string(q));
    f.modulus_ = it->second;
  }

  f.add_.resize(q * q);
  f.mul_.resize(q * q);
  f.neg_.resize(q);
  for (unsigned a = 0; a < q; ++a) {
    auto da = digits(a, p, h);
    std::vector<unsigned> dn(h);
    for (unsigned i = 0; i < h; ++i) dn[i] = (p - da[i]) % p;
    f.neg_[a] = static_cast<Elem>(undigits(dn, p));
    for (unsigned b = 0; b < q; ++b) {
      auto db = digits(b, p, h);
      std::vector<unsigned> ds(h);
      for (unsigned i = 0; i < h; ++i) ds[i] = (da[i] + db[i]) % p;
      f.add_[a * q + b] = static_cast<Elem>(undigits(ds, p));

      // Schoolbook product, then reduce by the monic modulus from the top.
      std::vector<unsigned> prod(2 * h - 1, 0);
      for (unsigned i = 0; i < h; ++i)
        for (unsigned j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (unsigned k = 2 * h - 1; k-- > h;) {
        unsigned c = prod[k];
        if (c == 0) continue;
        for (unsigned i = 0; i <= h; ++i)
          prod[k - h + i] = (prod[k - h + i] + (p - c) * f.modulus_[i]) % p;
      }
      if (h == 1) {
        f.mul_[a * q + b] = static_cast<Elem>((a * b) % p);
      } else {
        prod.resize(h);
        f.mul_[a * q + b] = static_cast<Elem>(undigits(prod, p));
      }
    }
  }

  f.inv_.assign(q, 0);
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (f.mul_[a * q + b] == 1) f.inv_[a] = static_cast<Elem>(b);

  f.conj_.resize(q);
  unsigned r = f.has_conjugation() ? f.conjugation_order() : 1;
  for (unsigned a = 0; a < q; ++a) f.conj_[a] = f.pow(static_cast<Elem>(a), r);
  return f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("division by zero in " + name());
  return inv_[a];
}

Elem Field::pow(Elem a, unsigned k) const {
  Elem r = 1;
  Elem b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

unsigned Field::conjugation_order() const {
  if (!has_conjugation()) throw FieldError(name() + " has no conjugation");
  unsigned r = 1;
  for (unsigned i = 0; i < h_ / 2; ++i) r *= p_;
  return r;
}

bool Field::is_square(Elem a) const {
  if (a == 0) return true;
  for (unsigned b = 1; b < q_; ++b)
    if (mul(static_cast<Elem>(b), static_cast<Elem>(b)) == a) return true;
  return false;
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

}  // namespace rank3
