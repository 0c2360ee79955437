#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "frobsurf/geometry.hpp"

namespace frobsurf {

/// Power series in t known modulo t^precision.  Coefficients past the
/// precision are unknown, so an all-zero series has order ">= precision"
/// (ord() returns nullopt) rather than a definite order.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(FieldPtr field, std::size_t precision);
  TruncatedSeries(FieldPtr field, std::vector<Elem> coeffs, std::size_t precision);

  static TruncatedSeries constant(FieldPtr field, Elem c, std::size_t precision);
  /// c + t.
  static TruncatedSeries shifted_parameter(FieldPtr field, Elem c, std::size_t precision);

  const FieldPtr& field() const { return field_; }
  std::size_t precision() const { return c_.size(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Elem>& coeffs() const { return c_; }

  std::optional<std::size_t> ord() const;
  bool is_zero() const { return !ord().has_value(); }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(Elem c) const;
  TruncatedSeries truncated(std::size_t precision) const;
  /// Multiplicative inverse; DivisionByZero unless the constant term is nonzero.
  TruncatedSeries inverse() const;
  TruncatedSeries embedded(const FieldPtr& ext) const;

  bool operator==(const TruncatedSeries& o) const;

 private:
  void check_same(const TruncatedSeries& o) const;

  FieldPtr field_;
  std::vector<Elem> c_;
};

/// binom(n, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// D^(i): coefficient m of the result is binom(m+i, i) c_{m+i}; precision drops by i.
TruncatedSeries hasse_derivative(const TruncatedSeries& s, std::size_t i);

/// s^q computed as sum a_k^q t^(kq).  q must be a power of the characteristic.
/// The result keeps the input's precision unless `precision` is given
/// (at most q times the input's).
TruncatedSeries frobenius_series(const TruncatedSeries& s, std::uint64_t q,
                                 std::optional<std::size_t> precision = std::nullopt);

/// g(x0(t), .., x3(t)) for series over a common field.
TruncatedSeries compose(const Poly& g, const std::array<TruncatedSeries, 4>& x);

struct LocalChart {
  ProjectivePoint P;
  int patch = 0;      // coordinate fixed to 1
  int parameter = 0;  // coordinate equal to P's value plus t
  std::uint64_t q = 0;  // size of the curve's field; the twist uses this power
  std::array<TruncatedSeries, 4> x;
  std::array<TruncatedSeries, 4> twisted;
  std::size_t precision() const { return x[0].precision(); }
};

struct ChartOptions {
  /// Preferred affine coordinate for t; falls through to the next usable one.
  std::optional<int> parameter;
  /// Strict: fail with NoTransverseCoordinate instead of falling through.
  bool strict_parameter = false;
};

/// Default truncation 2(q + delta(d + q - 1)).
std::size_t default_truncation(std::uint64_t q, int delta, int d);

/// Power-series chart of C at a smooth point P (Jacobian rank 2), solved by
/// Newton iteration on two equations with an invertible 2x2 minor; every
/// defining poly of C is checked to vanish to full precision.
LocalChart parametrize_curve(const CurveSpec& C, const ProjectivePoint& P, std::size_t T,
                             const ChartOptions& opts = {});

TruncatedSeries evaluate_on_chart(const Poly& g, const LocalChart& chart);

/// ord_t g(chart); nullopt means ">= T".  SingularPoint when P is singular on C.
std::optional<std::size_t> intersection_multiplicity(const CurveSpec& C, const Poly& g,
                                                     const ProjectivePoint& P, std::size_t T,
                                                     const ChartOptions& opts = {});

/// Kernel of the rows (x(0), D^(j1)x(0), D^(j2)x(0)); RankDeficient otherwise.
Coords osculating_plane(const LocalChart& chart, std::size_t j1, std::size_t j2);

}  // namespace frobsurf
