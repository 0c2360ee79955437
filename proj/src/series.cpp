#include "frobsurf/series.hpp"

#include <algorithm>

namespace frobsurf {

TruncatedSeries::TruncatedSeries(FieldPtr field, std::size_t precision)
    : field_(std::move(field)), c_(precision, 0) {}

TruncatedSeries::TruncatedSeries(FieldPtr field, std::vector<Elem> coeffs, std::size_t precision)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  c_.resize(precision, 0);
}

TruncatedSeries TruncatedSeries::constant(FieldPtr field, Elem c, std::size_t precision) {
  TruncatedSeries s(std::move(field), precision);
  if (precision) s.c_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::shifted_parameter(FieldPtr field, Elem c, std::size_t precision) {
  TruncatedSeries s = constant(std::move(field), c, precision);
  if (precision > 1) s.c_[1] = 1;
  return s;
}

std::optional<std::size_t> TruncatedSeries::ord() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return i;
  return std::nullopt;
}

void TruncatedSeries::check_same(const TruncatedSeries& o) const {
  if (field_.get() != o.field_.get()) throw Error(Errc::FieldMismatch, "series over different fields");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r(field_, std::min(precision(), o.precision()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_->add(c_[i], o.c_[i]);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r(field_, std::min(precision(), o.precision()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_->sub(c_[i], o.c_[i]);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_same(o);
  const Field& F = *field_;
  const std::size_t n = std::min(precision(), o.precision());
  TruncatedSeries r(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (o.c_[j]) r.c_[i + j] = F.add(r.c_[i + j], F.mul(c_[i], o.c_[j]));
  }
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(field_, precision());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->neg(c_[i]);
  return r;
}

TruncatedSeries TruncatedSeries::scaled(Elem c) const {
  TruncatedSeries r(field_, precision());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->mul(c_[i], c);
  return r;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t precision) const {
  return TruncatedSeries(field_, std::vector<Elem>(c_.begin(), c_.begin() + std::min(precision, c_.size())),
                         std::min(precision, c_.size()));
}

TruncatedSeries TruncatedSeries::inverse() const {
  const Field& F = *field_;
  if (c_.empty() || c_[0] == 0) throw Error(Errc::DivisionByZero, "series with zero constant term");
  const std::size_t n = c_.size();
  TruncatedSeries r(field_, n);
  const Elem inv0 = F.inv(c_[0]);
  r.c_[0] = inv0;
  for (std::size_t m = 1; m < n; ++m) {
    Elem acc = 0;
    for (std::size_t j = 1; j <= m; ++j)
      if (c_[j]) acc = F.add(acc, F.mul(c_[j], r.c_[m - j]));
    r.c_[m] = F.neg(F.mul(acc, inv0));
  }
  return r;
}

TruncatedSeries TruncatedSeries::embedded(const FieldPtr& ext) const {
  if (ext.get() == field_.get()) return *this;
  TruncatedSeries r(ext, precision());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->embed_into(c_[i], *ext);
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return field_.get() == o.field_.get() && c_ == o.c_;
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n || k) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // binom(ni, ki) mod p with ni < p: numerator and denominator are units.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = num * ((ni - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    result = result * (num * inv % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

TruncatedSeries hasse_derivative(const TruncatedSeries& s, std::size_t i) {
  const Field& F = *s.field();
  const std::size_t n = s.precision() > i ? s.precision() - i : 0;
  std::vector<Elem> out(n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    const Elem c = s.coeff(m + i);
    if (c == 0) continue;
    const std::uint32_t b = binomial_mod_p(m + i, i, F.characteristic());
    out[m] = F.mul(c, F.from_int(b));
  }
  return TruncatedSeries(s.field(), std::move(out), n);
}

TruncatedSeries frobenius_series(const TruncatedSeries& s, std::uint64_t q,
                                 std::optional<std::size_t> precision) {
  const Field& F = *s.field();
  const std::size_t n = std::min<std::uint64_t>(precision.value_or(s.precision()), q * s.precision());
  std::vector<Elem> out(n, 0);
  for (std::size_t k = 0; k * q < n; ++k) out[k * q] = F.pow(s.coeff(k), q);
  return TruncatedSeries(s.field(), std::move(out), n);
}

TruncatedSeries compose(const Poly& g0, const std::array<TruncatedSeries, 4>& x) {
  const FieldPtr& field = x[0].field();
  const Poly g = g0.field().get() == field.get() ? g0 : g0.embedded(field);
  std::size_t n = x[0].precision();
  for (const auto& s : x) n = std::min(n, s.precision());
  TruncatedSeries acc(field, n);
  if (g.is_zero()) return acc;
  const int d = g.degree();
  std::array<std::vector<TruncatedSeries>, 4> pw;
  for (int j = 0; j < 4; ++j) {
    pw[j].push_back(TruncatedSeries::constant(field, 1, n));
    for (int e = 1; e <= d; ++e) {
      bool used = false;
      for (const auto& t : g.terms()) used |= static_cast<int>(t.exps[j]) >= e;
      if (!used) break;
      pw[j].push_back(pw[j].back() * x[j].truncated(n));
    }
  }
  for (const auto& t : g.terms()) {
    TruncatedSeries m = TruncatedSeries::constant(field, t.coeff, n);
    for (int j = 0; j < 4; ++j)
      if (t.exps[j]) m = m * pw[j][t.exps[j]];
    acc = acc + m;
  }
  return acc;
}

std::size_t default_truncation(std::uint64_t q, int delta, int d) {
  return static_cast<std::size_t>(2 * (q + static_cast<std::uint64_t>(delta) * (d + q - 1)));
}

namespace {

std::array<Elem, 3> cross(const Field& F, const std::array<Elem, 3>& a, const std::array<Elem, 3>& b) {
  return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])), F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
          F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

}  // namespace

LocalChart parametrize_curve(const CurveSpec& C, const ProjectivePoint& P, std::size_t T,
                             const ChartOptions& opts) {
  if (T < 2) throw Error(Errc::TruncationTooSmall, "chart precision must be at least 2");
  const FieldPtr& field = P.field;
  const Field& F = *field;
  if (!C.field()->is_subfield_of(F)) throw Error(Errc::FieldMismatch, "point not over an extension of the curve's field");
  std::vector<Poly> polys;
  for (const auto& g : C.polys)
    if (!g.is_zero()) polys.push_back(g.field().get() == field.get() ? g : g.embedded(field));

  const int rank = jacobian_rank(polys, P);
  if (rank < 2) throw Error(Errc::SingularPoint, "Jacobian rank " + std::to_string(rank) + " at " + P.to_string());
  if (rank > 2) throw Error(Errc::DimensionMismatch, "Jacobian rank " + std::to_string(rank) + " at " + P.to_string() + ": isolated point");

  int patch = 0;
  while (P.coords[patch] == 0) ++patch;
  std::array<int, 3> aff{};
  for (int j = 0, k = 0; j < 4; ++j)
    if (j != patch) aff[k++] = j;

  // Affine Jacobian rows (columns aff) and the tangent direction.
  std::vector<std::array<Elem, 3>> rows;
  std::vector<std::array<Poly, 3>> partials;
  for (const auto& g : polys) {
    std::array<Poly, 3> d{partial_derivative(g, aff[0]), partial_derivative(g, aff[1]), partial_derivative(g, aff[2])};
    rows.push_back({d[0].eval(P.coords), d[1].eval(P.coords), d[2].eval(P.coords)});
    partials.push_back(std::move(d));
  }
  std::array<Elem, 3> tangent{0, 0, 0};
  for (std::size_t i = 0; i < rows.size() && tangent == std::array<Elem, 3>{0, 0, 0}; ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      tangent = cross(F, rows[i], rows[j]);
      if (tangent != std::array<Elem, 3>{0, 0, 0}) break;
    }

  int par_slot = -1;
  if (opts.parameter) {
    for (int k = 0; k < 3; ++k)
      if (aff[k] == *opts.parameter && tangent[k] != 0) par_slot = k;
    if (par_slot < 0 && opts.strict_parameter)
      throw Error(Errc::NoTransverseCoordinate, "X" + std::to_string(*opts.parameter) + " is not a local parameter at " + P.to_string());
  }
  for (int k = 0; k < 3 && par_slot < 0; ++k)
    if (tangent[k] != 0) par_slot = k;
  if (par_slot < 0) throw Error(Errc::NoTransverseCoordinate, "no affine coordinate is a local parameter");

  // Unknown coordinates and two equations with invertible minor on them.
  std::array<int, 2> slot{};
  for (int k = 0, m = 0; k < 3; ++k)
    if (k != par_slot) slot[m++] = k;
  int ea = -1, eb = -1;
  for (std::size_t i = 0; i < rows.size() && ea < 0; ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Elem minor = F.sub(F.mul(rows[i][slot[0]], rows[j][slot[1]]), F.mul(rows[i][slot[1]], rows[j][slot[0]]));
      if (minor != 0) {
        ea = static_cast<int>(i);
        eb = static_cast<int>(j);
        break;
      }
    }
  if (ea < 0) throw Error(Errc::NoTransverseCoordinate, "no invertible 2x2 minor");

  LocalChart chart;
  chart.P = P;
  chart.patch = patch;
  chart.parameter = aff[par_slot];
  chart.q = C.field()->size();

  std::array<TruncatedSeries, 4> x{TruncatedSeries(field, 1), TruncatedSeries(field, 1), TruncatedSeries(field, 1),
                                   TruncatedSeries(field, 1)};
  for (int j = 0; j < 4; ++j) x[j] = TruncatedSeries::constant(field, P.coords[j], 1);
  const int ua = aff[slot[0]], ub = aff[slot[1]];
  std::size_t cur = 1;
  while (cur < T) {
    const std::size_t next = std::min(2 * cur, T);
    for (int j = 0; j < 4; ++j) {
      if (j == chart.parameter) x[j] = TruncatedSeries::shifted_parameter(field, P.coords[j], next);
      else x[j] = TruncatedSeries(field, x[j].coeffs(), next);
    }
    const TruncatedSeries G0 = compose(polys[ea], x), G1 = compose(polys[eb], x);
    const TruncatedSeries J00 = compose(partials[ea][slot[0]], x), J01 = compose(partials[ea][slot[1]], x);
    const TruncatedSeries J10 = compose(partials[eb][slot[0]], x), J11 = compose(partials[eb][slot[1]], x);
    const TruncatedSeries inv_det = (J00 * J11 - J01 * J10).inverse();
    const TruncatedSeries da = (J11 * G0 - J01 * G1) * inv_det;
    const TruncatedSeries db = (J00 * G1 - J10 * G0) * inv_det;
    x[ua] = x[ua] - da;
    x[ub] = x[ub] - db;
    cur = next;
  }
  for (const auto& g : polys)
    if (!compose(g, x).is_zero())
      throw Error(Errc::DimensionMismatch, "defining equations do not all vanish on the branch at " + P.to_string());
  chart.x = x;
  for (int j = 0; j < 4; ++j) chart.twisted[j] = frobenius_series(x[j], chart.q);
  return chart;
}

TruncatedSeries evaluate_on_chart(const Poly& g, const LocalChart& chart) {
  if (!g.field()->is_subfield_of(*chart.P.field))
    throw Error(Errc::FieldMismatch, "poly not over a subfield of the chart's field");
  return compose(g, chart.x);
}

std::optional<std::size_t> intersection_multiplicity(const CurveSpec& C, const Poly& g,
                                                     const ProjectivePoint& P, std::size_t T,
                                                     const ChartOptions& opts) {
  return evaluate_on_chart(g, parametrize_curve(C, P, T, opts)).ord();
}

Coords osculating_plane(const LocalChart& chart, std::size_t j1, std::size_t j2) {
  if (j2 >= chart.precision()) throw Error(Errc::TruncationTooSmall, "order beyond chart precision");
  std::vector<std::vector<Elem>> rows(3, std::vector<Elem>(4));
  for (int i = 0; i < 4; ++i) {
    rows[0][i] = chart.x[i].coeff(0);
    rows[1][i] = chart.x[i].coeff(j1);
    rows[2][i] = chart.x[i].coeff(j2);
  }
  auto v = kernel_vector(*chart.P.field, rows);
  if (!v) throw Error(Errc::RankDeficient, "rows (x, D^(j1)x, D^(j2)x) do not have rank 3");
  return *v;
}

}  // namespace frobsurf
