#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "frobsurf/error.hpp"

namespace frobsurf {

/// Packed polynomial-basis element: digit i (base p) is the coefficient of a^i,
/// where a is the class of X modulo the field's defining polynomial.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^n) in polynomial basis over the deterministic modulus (first monic
/// irreducible of degree n, higher coefficients compared first).
///
/// Every field also carries a distinguished primitive element chosen so that
/// alpha_n^((p^n-1)/(p^m-1)) is a conjugate of alpha_m for every m | n.  The
/// inclusion GF(p^m) -> GF(p^n) sending alpha_m^i to alpha_n^(i(p^n-1)/(p^m-1))
/// is then a ring map, and composing two inclusions gives the third.
///
/// Fields are interned: equal (p, n) always yields the same object.
class Field {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 20;

  /// Interned GF(p^n).  NotPrime, DegreeTooLarge when p^n > kMaxSize.
  static FieldPtr get(std::uint32_t p, unsigned n);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  std::uint32_t size() const { return q_; }
  /// Coefficients c_0..c_n of the monic modulus.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The class of X ("a" in polynomial literals).
  Elem generator() const { return gen_; }
  Elem primitive() const { return exp_[1]; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// a^(p^k), the k-fold absolute Frobenius.
  Elem frobenius(Elem a, unsigned k = 1) const;
  /// Unique b with b^p = a.
  Elem pth_root(Elem a) const;

  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t i) const { return exp_[i % (q_ - 1)]; }

  Elem from_int(long long v) const;
  bool in_prime_field(Elem a) const { return a < p_; }
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> d) const;

  /// Polynomial in "a" with the algebra grammar's literal syntax, e.g. "2*a^2+a+1".
  std::string to_string(Elem a) const;

  bool is_subfield_of(const Field& other) const {
    return p_ == other.p_ && other.n_ % n_ == 0;
  }
  /// Image under the canonical inclusion; NotAnExtension if no inclusion exists.
  Elem embed_into(Elem a, const Field& target) const;
  FieldPtr extension(unsigned k) const { return get(p_, n_ * k); }

  /// Roots in this field of a polynomial with coefficients in GF(p) (low to high).
  std::vector<Elem> prime_poly_roots(std::span<const std::uint32_t> coeffs) const;

  Field(std::uint32_t p, unsigned n);  // use get()

 private:
  Elem add_digits(Elem a, Elem b) const;
  Elem slow_mul(Elem a, Elem b) const;
  Elem slow_pow(Elem a, std::uint64_t e) const;
  void choose_primitive();

  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
  Elem gen_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<std::uint16_t> add_table_;
};

bool is_prime(std::uint64_t n);

/// Checked constructor: GF(p^e) with 1 <= e <= 12.
FieldPtr make_field(std::uint32_t p, unsigned e);

/// Value-semantic element with its field attached; mixing fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {}

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  FieldElement inv() const { return {field_, field_->inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
  FieldElement embed(const FieldPtr& target) const;

  bool operator==(const FieldElement& o) const {
    return field_.get() == o.field_.get() && value_ == o.value_;
  }
  std::string to_string() const { return field_->to_string(value_); }

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr field_;
  Elem value_;
};

}  // namespace frobsurf
