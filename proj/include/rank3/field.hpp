#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rank3 {

/// A field element, encoded as the integer sum_i c_i p^i of its coefficient
/// vector over GF(p) in the polynomial basis 1, x, ..., x^{h-1}.
using Elem = std::uint8_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// GF(q), q = p^h <= 32, with full addition and multiplication tables.
///
/// Extension fields use the Conway polynomial for q, so element encodings
/// are stable across builds. When h is even the field carries the
/// involution x -> x^{sqrt q} used by Hermitian forms.
class Field {
 public:
  static constexpr unsigned kMaxOrder = 32;

  /// Throws FieldError for non-prime p or an unsupported q.
  static Field make(unsigned p, unsigned h);
  /// Accepts any supported prime power q.
  static Field of_order(unsigned q);

  unsigned p() const { return p_; }
  unsigned h() const { return h_; }
  unsigned q() const { return q_; }
  /// Coefficients of the monic reduction polynomial, constant term first.
  std::span<const unsigned> modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, unsigned k) const;

  bool has_conjugation() const { return h_ % 2 == 0; }
  /// sqrt(q) when the field has a conjugation.
  unsigned conjugation_order() const;
  /// x^{sqrt q}; identity when there is no conjugation.
  Elem conj(Elem a) const { return conj_[a]; }

  bool is_square(Elem a) const;
  /// Lifts an integer into the prime subfield.
  Elem from_int(long long v) const;
  std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.h_ == b.h_;
  }

 private:
  Field() = default;

  unsigned p_ = 0;
  unsigned h_ = 0;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> conj_;
};

bool is_prime(unsigned n);

/// Splits q into (p, h) with q = p^h; throws FieldError if q is no prime power.
std::pair<unsigned, unsigned> prime_power(unsigned q);

}  // namespace rank3
