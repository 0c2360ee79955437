#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "frobsurf/catalog.hpp"
#include "frobsurf/geometry.hpp"
#include "random_poly.hpp"

using namespace frobsurf;

namespace {

std::vector<Poly> polys_of(const std::string& text, const FieldPtr& F) {
  std::vector<Poly> out;
  std::size_t start = 0;
  for (;;) {
    const auto semi = text.find(';', start);
    out.push_back(parse_poly(text.substr(start, semi - start), F));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

// Per-point oracle: count points by evaluating at every normalized vector.
std::uint64_t oracle_count(const std::vector<Poly>& polys, const Field& F) {
  std::uint64_t n = 0;
  for (const auto& c : testsupport::all_points(F)) {
    bool on = true;
    for (const auto& g : polys)
      if (g.eval(c) != 0) on = false;
    n += on;
  }
  return n;
}

}  // namespace

TEST_CASE("point enumeration basics") {
  auto F5 = make_field(5, 1), F2 = make_field(2, 1), F3 = make_field(3, 1);
  CHECK(count_points(F5, polys_of("X2; X3", F5), 1) == 6);
  CHECK(count_points(F2, std::vector<Poly>{}, 1) == 15);
  CHECK(count_points(F3, polys_of("X0; X1", F3), 1) == 4);
  CHECK(count_points(F2, std::vector<Poly>{}, 2) == projective_space_size(4));
  CHECK(count_points(F3, std::vector<Poly>{}, 2) == projective_space_size(9));
  auto pts = enumerate_points(F5, polys_of("X2; X3", F5), 1);
  CHECK(pts.front().to_string() == "(1:0:0:0)");
  CHECK(pts.back().to_string() == "(0:1:0:0)");
  CHECK_THROWS_AS(count_points(F5, std::vector<Poly>{}, 4, 1000), Error);
}

TEST_CASE("enumeration agrees with the per-point oracle") {
  std::mt19937_64 rng(21);
  for (auto F : {make_field(2, 1), make_field(3, 1), make_field(2, 2), make_field(5, 1)}) {
    for (int i = 0; i < 6; ++i) {
      std::vector<Poly> polys{testsupport::random_poly(F, 2 + rng() % 2, rng)};
      if (i % 2) polys.push_back(testsupport::random_poly(F, 1 + rng() % 3, rng));
      CHECK(count_points(F, polys, 1) == oracle_count(polys, *F));
    }
  }
}

TEST_CASE("large-field enumeration by root finding matches brute force") {
  // GF(81) takes the root-finding path; GF(3^4) points checked pointwise on a sample.
  auto F3 = make_field(3, 1);
  auto polys = polys_of(catalog::kTwistedCubic, F3);
  // A twisted cubic over GF(Q) has Q+1 points.
  CHECK(count_points(F3, polys, 4) == 82);
  CHECK(count_points(F3, polys, 2) == 10);
  auto F2 = make_field(2, 1);
  auto Fq = make_field(2, 7);
  CHECK(count_points(F2, polys_of(catalog::kTwistedCubic, F2), 7) == 129);
  (void)Fq;
}

TEST_CASE("points over F_q embed into points over extensions") {
  auto F3 = make_field(3, 1);
  auto polys = polys_of(catalog::kSingularCubicGF3, F3);
  auto base = enumerate_points(F3, polys, 1);
  auto ext = enumerate_points(F3, polys, 2);
  std::set<Coords> big;
  for (const auto& P : ext) big.insert(P.coords);
  for (const auto& P : base) CHECK(big.count(P.embedded(ext.front().field).coords) == 1);
}

TEST_CASE("smoothness and tangent planes") {
  auto F5 = make_field(5, 1);
  auto quad = parse_poly("X0*X3 - X1*X2", F5);
  auto P = ProjectivePoint::make(F5, {1, 0, 0, 0});
  CHECK(is_smooth_point(std::vector<Poly>{quad}, P, 1));
  CHECK(tangent_plane(Surface{quad, true}, P) == Coords{0, 0, 0, 1});
  auto cone = parse_poly("X1^2 - X0*X2", F5);
  auto V = ProjectivePoint::make(F5, {0, 0, 0, 1});
  CHECK_FALSE(is_smooth_point(std::vector<Poly>{cone}, V, 1));
  CHECK_THROWS_AS(tangent_plane(Surface{cone, false}, V), Error);
  CHECK_THROWS_AS(is_smooth_point(std::vector<Poly>{quad}, ProjectivePoint::make(F5, {1, 0, 0, 1}), 1), Error);
  auto plane = parse_poly("X3", F5);
  CHECK(tangent_plane(Surface{plane, true}, ProjectivePoint::make(F5, {1, 2, 3, 0})) == Coords{0, 0, 0, 1});
}

TEST_CASE("singular quartic over GF(2) has singular points") {
  auto F2 = make_field(2, 1);
  auto f = parse_poly(catalog::kSingularQuarticGF2, F2);
  std::vector<std::string> sing;
  for (const auto& P : enumerate_points(F2, std::vector<Poly>{f}, 1))
    if (!is_smooth_point(std::vector<Poly>{f}, P, 1)) sing.push_back(P.to_string());
  CHECK(sing == std::vector<std::string>{"(1:0:1:0)", "(0:1:1:0)"});
}

TEST_CASE("Frobenius image on tangent plane iff h vanishes") {
  for (unsigned k : {1u, 2u}) {
    auto F4 = make_field(2, 2);
    Surface S{parse_poly(catalog::kCubicGF4, F4), true};
    Poly h = build_h(S.f);
    for (const auto& P : enumerate_points(F4, std::vector<Poly>{S.f}, k)) {
      if (!is_smooth_point(std::vector<Poly>{S.f}, P, 1)) continue;
      const Coords T = tangent_plane(S, P);
      // q-power map of the raw coordinates, paired with the tangent plane.
      const Field& F = *P.field;
      Elem pair = 0;
      for (int i = 0; i < 4; ++i) pair = F.add(pair, F.mul(T[i], F.pow(P.coords[i], 4)));
      CHECK((pair == 0) == (h.embedded(P.field).eval(P.coords) == 0));
    }
  }
}

TEST_CASE("line enumeration counts and Pluecker relation") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 35}, {3, 130}, {5, 806}}) {
    auto F = make_field(p, 1);
    auto lines = enumerate_lines(F);
    CHECK(lines.size() == n);
    std::set<std::string> keys;
    std::set<std::array<Elem, 6>> pl;
    for (const auto& L : lines) {
      keys.insert(L.key());
      auto x = L.plucker();
      pl.insert(x);
      const Elem rel = F->add(F->sub(F->mul(x[0], x[5]), F->mul(x[1], x[4])), F->mul(x[2], x[3]));
      CHECK(rel == 0);
      CHECK(L.rational_points().size() == p + 1);
      auto pts = L.rational_points();
      CHECK(Line::through(F, pts[1].coords, pts[2].coords).key() == L.key());
    }
    CHECK(keys.size() == n);
    CHECK(pl.size() == n);
  }
  CHECK_THROWS_AS(enumerate_lines(make_field(17, 1)), Error);
}

TEST_CASE("line equations cut out the line") {
  auto F3 = make_field(3, 1);
  for (const auto& L : enumerate_lines(F3)) {
    auto eqs = L.equations();
    CHECK(line_contained(std::vector<Poly>{eqs[0], eqs[1]}, L));
    CHECK(count_points(F3, std::vector<Poly>{eqs[0], eqs[1]}, 1) == 4);
  }
}

TEST_CASE("line containment: exact test vs per-point oracle") {
  auto F2 = make_field(2, 1);
  auto X = [&](const char* s) { return parse_poly(s, F2); };
  Line L = Line::through(F2, {1, 0, 0, 0}, {0, 1, 0, 0});
  CHECK(line_contained(std::vector<Poly>{X("X3")}, L));
  // X0^2*X1 + X0*X1^2 vanishes at the three F_2-points of {X2=X3=0} but not on the line.
  Poly g = X("X0^2*X1 + X0*X1^2");
  bool all_points_zero = true;
  for (const auto& P : L.rational_points()) all_points_zero &= g.eval(P.coords) == 0;
  CHECK(all_points_zero);
  CHECK_FALSE(line_contained(std::vector<Poly>{g}, L));

  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    Poly f = testsupport::random_poly(F2, 2, rng);
    if (f.is_zero()) continue;
    for (const auto& M : enumerate_lines(F2)) {
      bool pts_zero = true;
      for (const auto& P : M.rational_points()) pts_zero &= f.eval(P.coords) == 0;
      // Degree 2 <= q: per-point vanishing is necessary but only sufficient when deg < q+1.
      CHECK(line_contained(std::vector<Poly>{f}, M) == pts_zero);
    }
  }
}

TEST_CASE("lines in Phi^S of the fixed surfaces") {
  auto count_lines = [](const char* text, std::uint32_t p) {
    auto F = make_field(p, 1);
    Poly f = parse_poly(text, F);
    std::vector<Poly> phi{f, build_h(f)};
    int n = 0;
    for (const auto& L : enumerate_lines(F)) n += line_contained(phi, L);
    return n;
  };
  CHECK(count_lines(catalog::kCubicGF5, 5) == 15);
  CHECK(count_lines(catalog::kSingularCubicGF3, 3) == 1);
  CHECK(count_lines(catalog::kSingularQuarticGF2, 2) == 4);
}

TEST_CASE("golden point counts") {
  auto F5 = make_field(5, 1);
  Poly f = parse_poly(catalog::kCubicGF5, F5);
  CHECK(count_points(F5, std::vector<Poly>{f}, 1) == 51);
  CHECK(count_points(F5, std::vector<Poly>{f, build_h(f)}, 1) == 51);
  std::vector<Poly> sextic{f, parse_poly(catalog::kSexticQuadricGF5, F5), parse_poly(catalog::kSexticCubicGF5, F5)};
  // The printed auxiliary equations meet the cubic in only four F_5-points.
  CHECK(count_points(F5, sextic, 1) == 4);
}

TEST_CASE("sampling finds points on the variety") {
  std::mt19937_64 rng(99);
  auto F3 = make_field(3, 1);
  auto polys = polys_of(catalog::kTwistedCubic, F3);
  for (unsigned k : {2u, 5u, 8u}) {
    auto ext = F3->extension(k);
    auto pts = sample_points(polys, ext, 10, rng);
    CHECK(pts.size() == 10);
    std::set<Coords> distinct;
    for (const auto& P : pts) {
      distinct.insert(P.coords);
      for (const auto& g : polys) CHECK(g.embedded(ext).eval(P.coords) == 0);
    }
    CHECK(distinct.size() == pts.size());
  }
}

TEST_CASE("estimate_degree") {
  auto F5 = make_field(5, 1);
  CurveSpec line{"L", polys_of("X2; X3", F5)};
  CHECK(estimate_degree(line) == 1);
  CurveSpec ci{"Q", polys_of("X0*X3 - X1*X2; X0^2 + X1^2 - X2^2 - 3*X3^2", F5)};
  CHECK(estimate_degree(ci) == 4);
  ci.complete_asserted = true;
  CHECK(estimate_degree(ci) == 4);
  CurveSpec tc{"T", polys_of(catalog::kTwistedCubic, F5)};
  CHECK(estimate_degree(tc) == 3);
  auto F2 = make_field(2, 1);
  CurveSpec tc2{"T", polys_of(catalog::kTwistedCubic, F2)};
  CHECK(estimate_degree(tc2) == 3);
  Poly f = parse_poly(catalog::kCubicGF5, F5);
  CurveSpec phi{"phi", {f, build_h(f)}};
  CHECK(estimate_degree(phi) == 21);
  CurveSpec surf{"S", {f, f.scaled(2)}};
  CHECK_THROWS_AS(estimate_degree(surf), Error);
}
