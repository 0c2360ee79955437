#include "frobsurf/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "frobsurf/upoly.hpp"

namespace frobsurf {

namespace {

using upoly::UPoly;

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Embeds polys into `target` when they live in a subfield.
std::vector<Poly> lift_all(std::span<const Poly> polys, const FieldPtr& target) {
  std::vector<Poly> out;
  out.reserve(polys.size());
  for (const auto& g : polys) out.push_back(g.field().get() == target.get() ? g : g.embedded(target));
  return out;
}

Coords normalize(const Field& F, Coords c) {
  for (int i = 0; i < 4; ++i) {
    if (c[i] == 0) continue;
    const Elem s = F.inv(c[i]);
    for (int j = i; j < 4; ++j) c[j] = F.mul(c[j], s);
    return c;
  }
  throw Error(Errc::DimensionMismatch, "zero vector is not a projective point");
}

// Restriction of one poly to a patch: terms with X_j, j < patch, vanish and
// X_patch = 1.  Each kept term remembers exponents of the outer free
// coordinates and of X3.
struct PatchTerm {
  std::array<std::uint32_t, 3> outer;  // exponents of X_{patch+1} .. X_2 (unused slots 0)
  std::uint32_t last;
  Elem coeff;
};

struct PatchPoly {
  std::vector<PatchTerm> terms;
  std::uint32_t max_last = 0;
  std::uint32_t max_outer = 0;
};

PatchPoly restrict_to_patch(const Poly& g, int patch) {
  PatchPoly r;
  for (const auto& t : g.terms()) {
    bool dead = false;
    for (int j = 0; j < patch; ++j)
      if (t.exps[j] > 0) dead = true;
    if (dead) continue;
    PatchTerm pt{{0, 0, 0}, 0, t.coeff};
    if (patch < 3) {
      for (int j = patch + 1; j < 3; ++j) {
        pt.outer[j - patch - 1] = t.exps[j];
        r.max_outer = std::max(r.max_outer, t.exps[j]);
      }
      pt.last = t.exps[3];
      r.max_last = std::max(r.max_last, pt.last);
    }
    r.terms.push_back(pt);
  }
  return r;
}

}  // namespace

ProjectivePoint ProjectivePoint::make(FieldPtr field, Coords c) {
  ProjectivePoint P;
  P.coords = normalize(*field, c);
  P.field = std::move(field);
  return P;
}

std::string ProjectivePoint::to_string() const {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ':';
    s += field->to_string(coords[i]);
  }
  return s + ")";
}

ProjectivePoint ProjectivePoint::embedded(const FieldPtr& ext) const {
  if (ext.get() == field.get()) return *this;
  ProjectivePoint P;
  P.field = ext;
  for (int i = 0; i < 4; ++i) P.coords[i] = field->embed_into(coords[i], *ext);
  return P;
}

ProjectivePoint ProjectivePoint::frobenius(std::uint64_t q) const {
  Coords c;
  for (int i = 0; i < 4; ++i) c[i] = field->pow(coords[i], q);
  return make(field, c);
}

unsigned ProjectivePoint::field_of_definition_degree() const {
  const unsigned n = field->degree();
  for (unsigned m = 1; m <= n; ++m) {
    if (n % m) continue;
    bool fixed = true;
    for (Elem c : coords)
      if (field->frobenius(c, m) != c) fixed = false;
    if (fixed) return m;
  }
  return n;
}

std::uint64_t projective_space_size(std::uint64_t Q) { return Q * Q * Q + Q * Q + Q + 1; }

void for_each_point(const FieldPtr& base, std::span<const Poly> polys, unsigned k,
                    const std::function<void(const ProjectivePoint&)>& fn, std::uint64_t budget) {
  if (k == 0) throw Error(Errc::DimensionMismatch, "extension degree must be positive");
  const std::uint64_t q = base->size();
  const unsigned abs_deg = base->degree() * k;
  if (ipow(base->characteristic(), abs_deg) > Field::kMaxSize || ipow(ipow(q, k), 3) > budget)
    throw Error(Errc::BudgetExceeded, "enumeration of P^3 over GF(" + std::to_string(q) + "^" +
                                          std::to_string(k) + ") exceeds the point budget");
  const FieldPtr ext = Field::get(base->characteristic(), abs_deg);
  const Field& F = *ext;
  const Elem Q = F.size();
  const std::vector<Poly> lifted = lift_all(polys, ext);
  for (const auto& g : lifted)
    if (!g.field()->is_subfield_of(F)) throw Error(Errc::FieldMismatch, "poly not over a subfield");

  for (int patch = 0; patch < 4; ++patch) {
    std::vector<PatchPoly> pp;
    pp.reserve(lifted.size());
    for (const auto& g : lifted) pp.push_back(restrict_to_patch(g, patch));

    Coords c{0, 0, 0, 0};
    c[patch] = 1;
    if (patch == 3) {
      bool ok = true;
      for (const auto& r : pp) {
        Elem acc = 0;
        for (const auto& t : r.terms) acc = F.add(acc, t.coeff);
        if (acc != 0) ok = false;
      }
      if (ok) fn(ProjectivePoint{ext, c});
      continue;
    }

    const int n_outer = 2 - patch;  // free coordinates besides X3
    std::uint32_t max_outer = 0, max_last = 0;
    for (const auto& r : pp) {
      max_outer = std::max(max_outer, r.max_outer);
      max_last = std::max(max_last, r.max_last);
    }
    std::vector<std::vector<Elem>> pw(2, std::vector<Elem>(max_outer + 1, 1));
    std::vector<UPoly> uni(pp.size());
    std::uint64_t outer_count = ipow(Q, n_outer);
    for (std::uint64_t idx = 0; idx < outer_count; ++idx) {
      // Outer coordinates in increasing order, the earlier coordinate slowest.
      std::uint64_t rest = idx;
      for (int j = n_outer - 1; j >= 0; --j) {
        const Elem v = static_cast<Elem>(rest % Q);
        rest /= Q;
        c[patch + 1 + j] = v;
        for (std::uint32_t e = 1; e <= max_outer; ++e) pw[j][e] = F.mul(pw[j][e - 1], v);
      }
      for (std::size_t i = 0; i < pp.size(); ++i) {
        UPoly& u = uni[i];
        u.assign(max_last + 1, 0);
        for (const auto& t : pp[i].terms) {
          Elem m = t.coeff;
          for (int j = 0; j < n_outer; ++j) m = F.mul(m, pw[j][t.outer[j]]);
          u[t.last] = F.add(u[t.last], m);
        }
        upoly::trim(u);
      }
      // Candidate X3 values: roots of the sparsest nonzero restriction when
      // the field is large, otherwise every value.
      int pivot = -1;
      for (std::size_t i = 0; i < uni.size(); ++i) {
        if (uni[i].empty()) continue;
        if (pivot < 0 || uni[i].size() < uni[pivot].size()) pivot = static_cast<int>(i);
      }
      auto check = [&](Elem x) {
        for (std::size_t i = 0; i < uni.size(); ++i)
          if (static_cast<int>(i) != pivot && upoly::eval(F, uni[i], x) != 0) return false;
        return true;
      };
      if (pivot >= 0 && Q > 64) {
        for (Elem x : upoly::roots(F, uni[pivot])) {
          if (!check(x)) continue;
          c[3] = x;
          fn(ProjectivePoint{ext, c});
        }
      } else {
        for (Elem x = 0; x < Q; ++x) {
          if (pivot >= 0 && upoly::eval(F, uni[pivot], x) != 0) continue;
          if (!check(x)) continue;
          c[3] = x;
          fn(ProjectivePoint{ext, c});
        }
      }
    }
  }
}

std::vector<ProjectivePoint> enumerate_points(const FieldPtr& base, std::span<const Poly> polys,
                                              unsigned k, std::uint64_t budget) {
  std::vector<ProjectivePoint> out;
  for_each_point(base, polys, k, [&](const ProjectivePoint& P) { out.push_back(P); }, budget);
  return out;
}

std::uint64_t count_points(const FieldPtr& base, std::span<const Poly> polys, unsigned k,
                           std::uint64_t budget) {
  std::uint64_t n = 0;
  for_each_point(base, polys, k, [&](const ProjectivePoint&) { ++n; }, budget);
  return n;
}

int matrix_rank(const Field& F, std::vector<std::vector<Elem>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Elem inv = F.inv(rows[rank][col]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Elem factor = F.mul(rows[r][col], inv);
      for (std::size_t j = col; j < cols; ++j)
        rows[r][j] = F.sub(rows[r][j], F.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

std::optional<Coords> kernel_vector(const Field& F, std::vector<std::vector<Elem>> rows) {
  // Reduced row echelon form, then the first free column gives the kernel vector.
  std::array<int, 4> pivot_row{-1, -1, -1, -1};
  std::size_t rank = 0;
  for (int col = 0; col < 4 && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Elem inv = F.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Elem factor = rows[r][col];
      for (int j = 0; j < 4; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(factor, rows[rank][j]));
    }
    pivot_row[col] = static_cast<int>(rank);
    ++rank;
  }
  if (rank != 3) return std::nullopt;
  int free_col = 0;
  while (pivot_row[free_col] >= 0) ++free_col;
  Coords v{0, 0, 0, 0};
  v[free_col] = 1;
  for (int col = 0; col < 4; ++col)
    if (pivot_row[col] >= 0) v[col] = F.neg(rows[pivot_row[col]][free_col]);
  return normalize(F, v);
}

int jacobian_rank(std::span<const Poly> polys, const ProjectivePoint& P) {
  const Field& F = *P.field;
  std::vector<std::vector<Elem>> rows;
  for (const auto& g : lift_all(polys, P.field)) {
    if (g.eval(P.coords) != 0)
      throw Error(Errc::PointNotOnVariety, "point " + P.to_string() + " is not on the variety");
    std::vector<Elem> row(4);
    for (int i = 0; i < 4; ++i) row[i] = partial_derivative(g, i).eval(P.coords);
    rows.push_back(std::move(row));
  }
  return matrix_rank(F, std::move(rows));
}

bool is_smooth_point(std::span<const Poly> polys, const ProjectivePoint& P, int expected_codim) {
  return jacobian_rank(polys, P) == expected_codim;
}

Coords tangent_plane(const Surface& S, const ProjectivePoint& P) {
  const Poly g = S.f.field().get() == P.field.get() ? S.f : S.f.embedded(P.field);
  if (g.eval(P.coords) != 0)
    throw Error(Errc::PointNotOnVariety, "point " + P.to_string() + " is not on the surface");
  Coords grad;
  for (int i = 0; i < 4; ++i) grad[i] = partial_derivative(g, i).eval(P.coords);
  if (grad == Coords{0, 0, 0, 0})
    throw Error(Errc::SingularPoint, "surface is singular at " + P.to_string());
  return normalize(*P.field, grad);
}

Line Line::through(const FieldPtr& field, const Coords& a, const Coords& b) {
  const Field& F = *field;
  std::array<Coords, 2> m{a, b};
  int row = 0;
  for (int col = 0; col < 4 && row < 2; ++col) {
    int piv = row;
    while (piv < 2 && m[piv][col] == 0) ++piv;
    if (piv == 2) continue;
    std::swap(m[piv], m[row]);
    const Elem inv = F.inv(m[row][col]);
    for (auto& x : m[row]) x = F.mul(x, inv);
    const int other = 1 - row;
    if (m[other][col] != 0) {
      const Elem factor = m[other][col];
      for (int j = 0; j < 4; ++j) m[other][j] = F.sub(m[other][j], F.mul(factor, m[row][j]));
    }
    ++row;
  }
  if (row < 2) throw Error(Errc::DimensionMismatch, "points do not span a line");
  return Line{field, m};
}

std::string Line::key() const {
  std::string s = "[";
  for (int r = 0; r < 2; ++r) {
    if (r) s += ';';
    for (int i = 0; i < 4; ++i) {
      if (i) s += ',';
      s += field->to_string(rows[r][i]);
    }
  }
  return s + "]";
}

std::array<Elem, 6> Line::plucker() const {
  const Field& F = *field;
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::array<Elem, 6> p{};
  for (int k = 0; k < 6; ++k) {
    const int i = pairs[k][0], j = pairs[k][1];
    p[k] = F.sub(F.mul(rows[0][i], rows[1][j]), F.mul(rows[0][j], rows[1][i]));
  }
  for (int k = 0; k < 6; ++k) {
    if (p[k] == 0) continue;
    const Elem s = F.inv(p[k]);
    for (int j = k; j < 6; ++j) p[j] = F.mul(p[j], s);
    break;
  }
  return p;
}

std::vector<ProjectivePoint> Line::rational_points() const {
  const Field& F = *field;
  std::vector<ProjectivePoint> out;
  out.push_back(ProjectivePoint::make(field, rows[0]));
  for (Elem t = 0; t < F.size(); ++t) {
    Coords c;
    for (int i = 0; i < 4; ++i) c[i] = F.add(F.mul(t, rows[0][i]), rows[1][i]);
    out.push_back(ProjectivePoint::make(field, c));
  }
  return out;
}

std::array<Poly, 2> Line::equations() const {
  // Kernel of the 2x4 matrix, extended by the two non-pivot directions.
  const Field& F = *field;
  std::array<int, 2> piv{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 4; ++c)
      if (rows[r][c] != 0) {
        piv[r] = c;
        break;
      }
  std::vector<Poly> forms;
  for (int free = 0; free < 4; ++free) {
    if (free == piv[0] || free == piv[1]) continue;
    std::vector<Term> terms;
    terms.push_back({{0, 0, 0, 0}, 1});
    terms.back().exps[free] = 1;
    for (int r = 0; r < 2; ++r) {
      Term t{{0, 0, 0, 0}, F.neg(rows[r][free])};
      t.exps[piv[r]] = 1;
      terms.push_back(t);
    }
    forms.push_back(Poly::from_terms(field, terms));
  }
  return {forms[0], forms[1]};
}

std::vector<Line> enumerate_lines(const FieldPtr& field) {
  const Field& F = *field;
  const Elem q = F.size();
  if (q > 16) throw Error(Errc::BudgetExceeded, "line enumeration limited to q <= 16");
  std::vector<Line> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      // Free slots: row 0 at columns > i other than j, row 1 at columns > j.
      std::vector<std::pair<int, int>> slots;
      for (int c = i + 1; c < 4; ++c)
        if (c != j) slots.push_back({0, c});
      for (int c = j + 1; c < 4; ++c) slots.push_back({1, c});
      const std::uint64_t total = ipow(q, static_cast<unsigned>(slots.size()));
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Line L{field, {}};
        L.rows[0] = {0, 0, 0, 0};
        L.rows[1] = {0, 0, 0, 0};
        L.rows[0][i] = 1;
        L.rows[1][j] = 1;
        std::uint64_t rest = idx;
        for (std::size_t s = slots.size(); s-- > 0;) {
          L.rows[slots[s].first][slots[s].second] = static_cast<Elem>(rest % q);
          rest /= q;
        }
        out.push_back(L);
      }
    }
  }
  return out;
}

bool line_contained(std::span<const Poly> polys, const Line& L) {
  for (const auto& g0 : polys) {
    FieldPtr target = g0.field();
    Line line = L;
    if (L.field.get() != target.get()) {
      if (L.field->is_subfield_of(*target)) {
        for (auto& r : line.rows)
          for (auto& x : r) x = L.field->embed_into(x, *target);
        line.field = target;
      } else {
        target = L.field;
      }
    }
    const Poly g = g0.field().get() == target.get() ? g0 : g0.embedded(target);
    const Field& F = *target;
    // X_k = rows[0][k] + t rows[1][k]; the binary form vanishes iff this
    // univariate polynomial does.
    const int d = g.degree();
    if (d < 0) continue;
    std::array<std::vector<UPoly>, 4> powers;
    for (int k = 0; k < 4; ++k) {
      powers[k].push_back(UPoly{1});
      const UPoly lin = [&] {
        UPoly u{line.rows[0][k], line.rows[1][k]};
        upoly::trim(u);
        return u;
      }();
      for (int e = 1; e <= d; ++e) powers[k].push_back(upoly::mul(F, powers[k].back(), lin));
    }
    UPoly acc;
    for (const auto& t : g.terms()) {
      UPoly m{t.coeff};
      for (int k = 0; k < 4; ++k)
        if (t.exps[k]) m = upoly::mul(F, m, powers[k][t.exps[k]]);
      acc = upoly::add(F, acc, m);
    }
    if (!acc.empty()) return false;
  }
  return true;
}

namespace {

using Mat4 = std::array<std::array<Elem, 4>, 4>;

Mat4 random_invertible(const Field& F, std::mt19937_64& rng) {
  for (;;) {
    Mat4 m;
    std::vector<std::vector<Elem>> rows;
    for (auto& r : m) {
      for (auto& x : r) x = static_cast<Elem>(rng() % F.size());
      rows.emplace_back(r.begin(), r.end());
    }
    if (matrix_rank(F, rows) == 4) return m;
  }
}

}  // namespace

std::vector<ProjectivePoint> sample_points(std::span<const Poly> polys, const FieldPtr& ext,
                                           std::size_t want, std::mt19937_64& rng,
                                           std::uint64_t budget) {
  const Field& F = *ext;
  const std::uint64_t Q = F.size();
  std::vector<ProjectivePoint> out;
  if (want == 0) return out;
  const std::vector<Poly> lifted = lift_all(polys, ext);

  if (Q * Q * Q <= std::min<std::uint64_t>(budget, 4'000'000)) {
    // Small enough to list everything; a seeded Fisher-Yates pass picks the sample.
    out = enumerate_points(ext, lifted, 1, budget);
    for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng() % i]);
    if (out.size() > want) out.resize(want);
    return out;
  }

  // Random coordinates Y with X = M Y, affine chart Y0 = 1.
  const Mat4 M = random_invertible(F, rng);
  std::vector<Poly> moved;
  int dmax = 0;
  for (const auto& g : lifted) {
    moved.push_back(g.substitute_linear(M));
    dmax = std::max(dmax, g.degree());
  }
  std::set<Coords> seen;
  auto emit = [&](Elem y1, Elem y2, Elem z) {
    const std::array<Elem, 4> y{1, y1, y2, z};
    Coords x{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) x[i] = F.add(x[i], F.mul(M[i][j], y[j]));
    ProjectivePoint P = ProjectivePoint::make(ext, x);
    if (seen.insert(P.coords).second) out.push_back(P);
  };
  // z-values over (y1, y2) where every poly vanishes; nullopt if the whole fiber does.
  auto fiber = [&](Elem y1, Elem y2) -> std::optional<std::vector<Elem>> {
    UPoly common;
    bool any = false;
    for (const auto& g : moved) {
      UPoly u(g.degree() + 1, 0);
      for (const auto& t : g.terms()) {
        const Elem m = F.mul(t.coeff, F.mul(F.pow(y1, t.exps[1]), F.pow(y2, t.exps[2])));
        u[t.exps[3]] = F.add(u[t.exps[3]], m);
      }
      upoly::trim(u);
      if (u.empty()) continue;
      common = any ? upoly::gcd(F, common, u) : upoly::monic(F, u);
      any = true;
    }
    if (!any) return std::nullopt;
    return upoly::roots(F, common);
  };

  const std::size_t n_pts = static_cast<std::size_t>(dmax) * dmax + 1;
  if (moved.size() >= 2 && n_pts <= Q) {
    // Curves: a random plane y1 = c meets the curve in finitely many points;
    // their y2-values are roots of a resultant in z of two generic combinations.
    auto rand_nonzero = [&] { return static_cast<Elem>(1 + rng() % (Q - 1)); };
    const std::uint64_t max_planes = 16 * want + 64;
    for (std::uint64_t attempt = 0; attempt < max_planes && out.size() < want; ++attempt) {
      const Elem y1 = static_cast<Elem>(rng() % Q);
      std::vector<Elem> l1(moved.size()), l2(moved.size());
      for (auto& x : l1) x = rand_nonzero();
      for (auto& x : l2) x = rand_nonzero();
      auto combo = [&](const std::vector<Elem>& lambda, Elem y2) {
        UPoly u(dmax + 1, 0);
        for (std::size_t i = 0; i < moved.size(); ++i)
          for (const auto& t : moved[i].terms()) {
            const Elem c = F.mul(lambda[i], F.mul(t.coeff, F.mul(F.pow(y1, t.exps[1]), F.pow(y2, t.exps[2]))));
            u[t.exps[3]] = F.add(u[t.exps[3]], c);
          }
        upoly::trim(u);
        return u;
      };
      std::vector<Elem> xs(n_pts), vals(n_pts);
      bool generic = true;
      for (std::size_t k = 0; k < n_pts && generic; ++k) {
        xs[k] = static_cast<Elem>(k);
        UPoly a = combo(l1, xs[k]), b = combo(l2, xs[k]);
        if (upoly::deg(a) != dmax || upoly::deg(b) != dmax) generic = false;
        else vals[k] = upoly::resultant(F, a, b);
      }
      if (!generic) continue;
      UPoly R = upoly::interpolate(F, xs, vals);
      if (R.empty()) continue;
      for (Elem y2 : upoly::roots(F, R)) {
        auto zs = fiber(y1, y2);
        if (!zs) continue;
        for (Elem z : *zs) emit(y1, y2, z);
        if (out.size() >= want) break;
      }
    }
  } else {
    const std::uint64_t max_fibers = 64 * want + 4 * Q;
    for (std::uint64_t attempt = 0; attempt < max_fibers && out.size() < want; ++attempt) {
      const Elem y1 = static_cast<Elem>(rng() % Q), y2 = static_cast<Elem>(rng() % Q);
      auto zs = fiber(y1, y2);
      if (!zs) zs = std::vector<Elem>{static_cast<Elem>(rng() % Q)};
      for (Elem z : *zs) {
        emit(y1, y2, z);
        if (out.size() >= want) break;
      }
    }
  }
  if (out.size() > want) out.resize(want);
  return out;
}

std::optional<int> plane_section_size(std::span<const Poly> polys, const FieldPtr& ext,
                                      const std::array<std::array<Elem, 3>, 4>& plane) {
  const Field& F = *ext;
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = plane[i][j];
  // Restricted polys in plane coordinates (Y0, Y1, Y2); affine chart Y0 = 1
  // with y = Y1, z = Y2.
  std::vector<Poly> restricted;
  int dmax = 0;
  for (const auto& g : lift_all(polys, ext)) {
    Poly r = g.substitute_linear(m);
    if (r.is_zero()) continue;
    dmax = std::max(dmax, r.degree());
    restricted.push_back(std::move(r));
  }
  if (restricted.empty()) return std::nullopt;
  if (restricted.size() == 1) return std::nullopt;

  // Generic combinations G = sum lambda_i g_i(1, y, z), as polys in z with
  // coefficients evaluated at y.
  std::mt19937_64 rng(0xd15c);
  auto rand_nonzero = [&] { return static_cast<Elem>(1 + rng() % (F.size() - 1)); };
  const std::size_t n_pts = static_cast<std::size_t>(dmax) * dmax + 1;
  if (n_pts > F.size()) throw Error(Errc::BudgetExceeded, "field too small for plane section");
  std::vector<Elem> ys(n_pts);
  std::iota(ys.begin(), ys.end(), Elem{0});

  auto combo_at = [&](const std::vector<Elem>& lambda, Elem y) {
    UPoly u(dmax + 1, 0);
    for (std::size_t i = 0; i < restricted.size(); ++i) {
      for (const auto& t : restricted[i].terms()) {
        const Elem c = F.mul(lambda[i], F.mul(t.coeff, F.pow(y, t.exps[1])));
        u[t.exps[2]] = F.add(u[t.exps[2]], c);
      }
    }
    upoly::trim(u);
    return u;
  };

  UPoly common;
  bool have = false;
  for (int pair = 0; pair < 3; ++pair) {
    std::vector<Elem> l1(restricted.size()), l2(restricted.size());
    for (auto& x : l1) x = rand_nonzero();
    for (auto& x : l2) x = rand_nonzero();
    std::vector<Elem> vals(n_pts);
    bool degenerate = false;
    for (std::size_t k = 0; k < n_pts; ++k) {
      UPoly a = combo_at(l1, ys[k]), b = combo_at(l2, ys[k]);
      // Leading z-coefficients are constants; a dropped degree means the
      // chart is not generic for this plane.
      if (upoly::deg(a) != dmax || upoly::deg(b) != dmax) {
        degenerate = true;
        break;
      }
      vals[k] = upoly::resultant(F, a, b);
    }
    if (degenerate) throw Error(Errc::DegenerateCurve, "non-generic plane coordinates");
    UPoly R = upoly::interpolate(F, ys, vals);
    common = have ? upoly::gcd(F, common, R) : R;
    have = true;
  }
  if (common.empty()) return std::nullopt;
  return upoly::radical_degree(F, common);
}

int estimate_degree(const CurveSpec& C, const DegreeEstimateOptions& opts) {
  if (C.polys.empty()) throw Error(Errc::DimensionMismatch, "curve with no equations");
  std::vector<Poly> polys;
  for (const auto& g : C.polys)
    if (!g.is_zero()) polys.push_back(g);
  if (polys.size() < 2) throw Error(Errc::DimensionMismatch, "one equation defines a surface");
  if (C.complete_asserted && polys.size() == 2) return polys[0].degree() * polys[1].degree();

  const FieldPtr base = C.field();
  std::uint64_t prod = 1;
  int dmax = 0;
  for (const auto& g : polys) {
    prod *= static_cast<std::uint64_t>(g.degree());
    dmax = std::max(dmax, g.degree());
  }
  const std::uint64_t need = std::max<std::uint64_t>(2 * prod, static_cast<std::uint64_t>(dmax) * dmax + 1);
  unsigned k = 1;
  while (ipow(base->size(), k) <= need) {
    ++k;
    if (ipow(base->characteristic(), base->degree() * k) > Field::kMaxSize)
      throw Error(Errc::BudgetExceeded, "no extension large enough for plane sections");
  }
  const FieldPtr ext = base->extension(k);
  const Field& F = *ext;
  std::mt19937_64 rng(opts.seed);
  int best = -1;
  int infinite = 0, attempts = 0;
  for (int trial = 0; trial < opts.trials; ++trial) {
    std::array<std::array<Elem, 3>, 4> plane{};
    for (;;) {
      std::vector<std::vector<Elem>> cols(3, std::vector<Elem>(4));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) {
          plane[i][j] = static_cast<Elem>(rng() % F.size());
          cols[j][i] = plane[i][j];
        }
      if (matrix_rank(F, cols) == 3) break;
    }
    ++attempts;
    std::optional<int> n;
    try {
      n = plane_section_size(polys, ext, plane);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateCurve) throw;
      --trial;
      if (attempts > 4 * opts.trials) throw;
      continue;
    }
    if (!n) {
      ++infinite;
      continue;
    }
    best = std::max(best, *n);
  }
  if (best < 0 && infinite > 0)
    throw Error(Errc::DimensionMismatch, "plane sections are infinite; not a curve");
  if (best <= 0)
    throw Error(Errc::DimensionMismatch, "plane sections are empty; the system does not cut out a curve");
  return best;
}

}  // namespace frobsurf
