#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "frobsurf/poly.hpp"

namespace frobsurf {

inline constexpr std::uint64_t kDefaultPointBudget = 100'000'000;

/// Point of P^3 over some GF(q^k), normalized so its first nonzero coordinate is 1.
struct ProjectivePoint {
  FieldPtr field;
  Coords coords{};

  /// Normalizes; DimensionMismatch if every coordinate is zero.
  static ProjectivePoint make(FieldPtr field, Coords c);

  std::string to_string() const;
  /// The same point viewed in a larger field.
  ProjectivePoint embedded(const FieldPtr& ext) const;
  /// Coordinatewise q-power map.
  ProjectivePoint frobenius(std::uint64_t q) const;
  /// Smallest GF(p^m) containing all coordinates, reported as m.
  unsigned field_of_definition_degree() const;

  bool operator==(const ProjectivePoint& o) const {
    return field.get() == o.field.get() && coords == o.coords;
  }
};

struct Surface {
  Poly f;
  bool irreducible_asserted = false;

  int degree() const { return f.degree(); }
  const FieldPtr& field() const { return f.field(); }
};

struct CurveSpec {
  std::string name;
  std::vector<Poly> polys;
  std::optional<int> delta;
  bool irreducible_asserted = false;
  /// The system cuts out exactly the curve.
  bool complete_asserted = false;

  const FieldPtr& field() const { return polys.front().field(); }
};

/// F_q-line of P^3 stored as the reduced row echelon basis of its 2-dim subspace.
struct Line {
  FieldPtr field;
  std::array<Coords, 2> rows{};

  /// Canonical line through two distinct points over `field`.
  static Line through(const FieldPtr& field, const Coords& a, const Coords& b);

  std::string key() const;
  /// (p01, p02, p03, p12, p13, p23), first nonzero entry 1.
  std::array<Elem, 6> plucker() const;
  /// The q+1 rational points, first row's point first.
  std::vector<ProjectivePoint> rational_points() const;
  /// Two linear forms over `field` cutting out the line.
  std::array<Poly, 2> equations() const;
};

/// Calls fn for every point of V(polys) in P^3(GF(q^k)), patch by patch
/// (X0 = 1; X0 = 0, X1 = 1; ...), each patch in increasing coordinate order.
/// BudgetExceeded when q^(3k) > budget.
void for_each_point(const FieldPtr& base, std::span<const Poly> polys, unsigned k,
                    const std::function<void(const ProjectivePoint&)>& fn,
                    std::uint64_t budget = kDefaultPointBudget);

std::vector<ProjectivePoint> enumerate_points(const FieldPtr& base, std::span<const Poly> polys,
                                              unsigned k,
                                              std::uint64_t budget = kDefaultPointBudget);

std::uint64_t count_points(const FieldPtr& base, std::span<const Poly> polys, unsigned k,
                           std::uint64_t budget = kDefaultPointBudget);

/// |P^3(GF(Q))| = Q^3 + Q^2 + Q + 1.
std::uint64_t projective_space_size(std::uint64_t Q);

/// Rank of the Jacobian of `polys` at P.  PointNotOnVariety if some poly is nonzero at P.
int jacobian_rank(std::span<const Poly> polys, const ProjectivePoint& P);
bool is_smooth_point(std::span<const Poly> polys, const ProjectivePoint& P, int expected_codim);

/// Gradient of f at P, normalized; SingularPoint if it vanishes.
Coords tangent_plane(const Surface& S, const ProjectivePoint& P);

/// Every F_q-line once, ordered by pivot columns then free entries.
std::vector<Line> enumerate_lines(const FieldPtr& field);

/// Exact test: each poly restricted to the line is the zero binary form.
bool line_contained(std::span<const Poly> polys, const Line& L);

/// Random points of V(polys) over `ext` (polys over a subfield).  Small
/// fields are enumerated exhaustively; larger ones are searched fiber by
/// fiber after a random change of coordinates.  Returns at most `want`
/// distinct points.
std::vector<ProjectivePoint> sample_points(std::span<const Poly> polys, const FieldPtr& ext,
                                           std::size_t want, std::mt19937_64& rng,
                                           std::uint64_t budget = kDefaultPointBudget);

struct DegreeEstimateOptions {
  int trials = 8;
  std::uint64_t seed = 1;
};

/// Degree of a curve: d1*d2 for an asserted complete intersection, else the
/// largest number of distinct geometric points seen in random plane sections.
int estimate_degree(const CurveSpec& C, const DegreeEstimateOptions& opts = {});

/// Distinct geometric points of V(polys) inside the plane image of `plane`
/// (a 4x3 parametrization over `ext`).  nullopt when the section is not finite.
std::optional<int> plane_section_size(std::span<const Poly> polys, const FieldPtr& ext,
                                      const std::array<std::array<Elem, 3>, 4>& plane);

/// Rank of a small matrix over F (Gaussian elimination).
int matrix_rank(const Field& F, std::vector<std::vector<Elem>> rows);
/// A nonzero kernel vector of a 3x4 (or smaller) matrix of rank 3, normalized.
std::optional<Coords> kernel_vector(const Field& F, std::vector<std::vector<Elem>> rows);

}  // namespace frobsurf
