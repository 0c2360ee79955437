#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobsurf/field.hpp"

namespace frobsurf {

using Exponents = std::array<std::uint32_t, 4>;
using Coords = std::array<Elem, 4>;

struct Term {
  Exponents exps;
  Elem coeff;
};

/// Graded lexicographic order with X0 > X1 > X2 > X3; true when a comes first.
bool grlex_before(const Exponents& a, const Exponents& b);

/// Sparse homogeneous polynomial in X0..X3.  Terms are kept in grlex order
/// (largest first) with nonzero coefficients; the zero polynomial has
/// degree -1.
class Poly {
 public:
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}

  /// Combines like terms and drops zeros.  NotHomogeneous if the surviving
  /// terms disagree on total degree.
  static Poly from_terms(FieldPtr field, std::vector<Term> terms);
  static Poly variable(FieldPtr field, int i);
  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, const Exponents& e, Elem c);

  const FieldPtr& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return degree_; }
  Elem coeff(const Exponents& e) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(Elem c) const;
  Poly pow(unsigned k) const;
  bool operator==(const Poly& o) const;

  /// Same polynomial with coefficients pushed into an extension field.
  Poly embedded(const FieldPtr& ext) const;

  /// Value at raw coordinates; the coordinates must live in field().
  Elem eval(const Coords& x) const;

  /// Substitutes X_i -> sum_j m[i][j] Y_j (m over field()).
  Poly substitute_linear(const std::array<std::array<Elem, 4>, 4>& m) const;

  /// Canonical text form accepted by parse_poly.
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Term> terms_;
  int degree_ = -1;
};

Poly partial_derivative(const Poly& f, int i);

/// h = X0^q f_0 + X1^q f_1 + X2^q f_2 + X3^q f_3.
Poly build_h(const Poly& f, std::uint64_t q);
inline Poly build_h(const Poly& f) { return build_h(f, f.field()->size()); }

/// Multivariate division of g by the single divisor f under grlex.
struct DivisionResult {
  Poly quotient;
  Poly remainder;
};
DivisionResult divide(const Poly& g, const Poly& f);

/// g in (f)?  ZeroDivisor when f = 0.
bool divides(const Poly& f, const Poly& g);

/// Evaluates f at a point whose coordinates live in an extension of f's field.
FieldElement evaluate(const Poly& f, const std::array<FieldElement, 4>& point);

/// Parses the polynomial grammar.  `generator` overrides the value of the
/// literal "a" (used for job files that declare their own modulus).
Poly parse_poly(std::string_view text, const FieldPtr& field,
                std::optional<Elem> generator = std::nullopt);

/// Semicolon-separated list of polys.
std::vector<Poly> parse_system(std::string_view text, const FieldPtr& field,
                               std::optional<Elem> generator = std::nullopt);

}  // namespace frobsurf
