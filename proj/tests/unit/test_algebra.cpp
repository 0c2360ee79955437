#include <random>
#include <set>

#include "doctest.h"
#include "frobsurf/poly.hpp"
#include "random_poly.hpp"

using namespace frobsurf;

namespace {

// Schoolbook oracle: multiply digit vectors and reduce by the monic modulus.
std::vector<std::uint32_t> naive_mul(const Field& F, Elem a, Elem b) {
  const auto p = F.characteristic();
  const unsigned n = F.degree();
  auto da = F.digits(a), db = F.digits(b);
  std::vector<std::uint32_t> prod(2 * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto& m = F.modulus();
  for (unsigned k = 2 * n - 1; k >= n; --k) {
    const std::uint32_t c = prod[k];
    if (c == 0) continue;
    for (unsigned i = 0; i <= n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * m[i]) % p;
  }
  prod.resize(n);
  return prod;
}

// First monic irreducible of degree n over GF(p), scanning coefficient
// vectors with the highest non-leading coefficient most significant.
std::vector<std::uint32_t> first_irreducible(std::uint32_t p, unsigned n) {
  auto has_root_or_factor = [&](const std::vector<std::uint32_t>& f) {
    // Trial division by every monic poly of degree 1..n/2.
    for (unsigned d = 1; d <= n / 2; ++d) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> g(d + 1, 0);
        g[d] = 1;
        std::uint64_t r = idx;
        for (unsigned i = 0; i < d; ++i) {
          g[i] = r % p;
          r /= p;
        }
        std::vector<std::uint32_t> rem = f;
        for (int k = static_cast<int>(n); k >= static_cast<int>(d); --k) {
          const std::uint32_t c = rem[k];
          if (!c) continue;
          for (unsigned i = 0; i <= d; ++i) rem[k - d + i] = (rem[k - d + i] + (p - c) * g[i]) % p;
        }
        bool zero = true;
        for (unsigned i = 0; i < d; ++i)
          if (rem[i]) zero = false;
        if (zero) return true;
      }
    }
    return false;
  };
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> f(n + 1, 0);
    f[n] = 1;
    std::uint64_t r = idx;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = r % p;
      r /= p;
    }
    if (!has_root_or_factor(f)) return f;
  }
  return {};
}

}  // namespace

TEST_CASE("make_field picks the deterministic modulus") {
  CHECK(make_field(2, 1)->size() == 2);
  auto F4 = make_field(2, 2);
  CHECK(F4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {2, 6}})
    CHECK(make_field(p, n)->modulus() == first_irreducible(p, n));
  CHECK(make_field(3, 2).get() == make_field(3, 2).get());
}

TEST_CASE("make_field rejects bad input") {
  CHECK_THROWS_AS(make_field(4, 1), Error);
  try {
    make_field(4, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrime);
  }
  try {
    make_field(2, 13);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeTooLarge);
  }
  try {
    make_field(1021, 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeTooLarge);
  }
}

TEST_CASE("multiplication agrees with the schoolbook oracle") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {2, 4}, {3, 2}, {5, 2}, {3, 3}}) {
    auto F = make_field(p, n);
    for (Elem a = 0; a < F->size(); ++a)
      for (Elem b = 0; b < F->size(); ++b) REQUIRE(F->digits(F->mul(a, b)) == naive_mul(*F, a, b));
  }
}

TEST_CASE("field axioms and Frobenius") {
  auto F4 = make_field(2, 2);
  const Elem g = F4->generator();
  CHECK(F4->mul(g, F4->mul(g, g)) == 1);
  CHECK(F4->inv(1) == 1);
  auto F9 = make_field(3, 2);
  for (Elem a = 0; a < 9; ++a) {
    CHECK(F9->pow(a, 9) == a);
    CHECK(F9->pow(F9->pth_root(a), 3) == a);
    if (a) CHECK(F9->mul(a, F9->inv(a)) == 1);
    for (Elem b = 0; b < 9; ++b) CHECK(F9->sub(F9->add(a, b), b) == a);
  }
  CHECK_THROWS_AS(F9->inv(0), Error);
  FieldElement x(F4, g), y(F9, 1);
  CHECK_THROWS_AS(x + y, Error);
}

TEST_CASE("embeddings are ring maps and path independent") {
  auto F2 = make_field(2, 1), F4 = make_field(2, 2), F16 = make_field(2, 4), F256 = make_field(2, 8);
  CHECK(F2->embed_into(0, *F4) == 0);
  CHECK(F2->embed_into(1, *F4) == 1);
  const Elem img = F4->embed_into(F4->generator(), *F16);
  // Root of X^2+X+1 in GF(16).
  CHECK(F16->add(F16->add(F16->mul(img, img), img), 1) == 0);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      CHECK(F4->embed_into(F4->add(a, b), *F16) == F16->add(F4->embed_into(a, *F16), F4->embed_into(b, *F16)));
      CHECK(F4->embed_into(F4->mul(a, b), *F16) == F16->mul(F4->embed_into(a, *F16), F4->embed_into(b, *F16)));
    }
  for (Elem a = 0; a < 4; ++a)
    CHECK(F16->embed_into(F4->embed_into(a, *F16), *F256) == F4->embed_into(a, *F256));
  auto F9 = make_field(3, 2), F729 = make_field(3, 6), F27 = make_field(3, 3);
  for (Elem a = 0; a < 9; ++a) {
    const Elem direct = F9->embed_into(a, *F729);
    CHECK(F729->pow(direct, 9) == direct);
  }
  for (Elem a = 0; a < 27; ++a) CHECK(F729->pow(F27->embed_into(a, *F729), 27) == F27->embed_into(a, *F729));
  CHECK_THROWS_AS(F4->embed_into(1, *make_field(2, 3)), Error);
}

TEST_CASE("parse_poly examples") {
  auto F4 = make_field(2, 2);
  Poly f = parse_poly("X0^3 + X1^3 + X2^2*X3", F4);
  CHECK(f.to_string() == "X0^3+X1^3+X2^2*X3");
  auto F5 = make_field(5, 1);
  Poly g = parse_poly("-X0^2*X3 + 3*X2^3", F5);
  CHECK(g.coeff({2, 0, 0, 1}) == 4);
  CHECK(g.coeff({0, 0, 3, 0}) == 3);
  CHECK(parse_poly("x0 X1 + 7 X2*X3", F5) == parse_poly("X0*X1+2*X2*X3", F5));
  CHECK(parse_poly("a*X0 + a^2*X1", F4).coeff({0, 1, 0, 0}) == F4->mul(F4->generator(), F4->generator()));

  auto code_of = [&](const char* text, const FieldPtr& F) {
    try {
      parse_poly(text, F);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Usage;
  };
  CHECK(code_of("X0 + X1^2", F5) == Errc::NotHomogeneous);
  CHECK(code_of("X0 + X4", F5) == Errc::UnknownVariable);
  CHECK(code_of("X0 + a*X1", F5) == Errc::BadFieldLiteral);
  CHECK(code_of("X0 + * X1", F5) == Errc::SyntaxError);
  CHECK(code_of("(X0", F5) == Errc::SyntaxError);
}

TEST_CASE("parse/serialize round trip") {
  std::mt19937_64 rng(11);
  for (auto F : {make_field(2, 1), make_field(3, 1), make_field(5, 1), make_field(2, 2), make_field(3, 2)}) {
    for (int i = 0; i < 40; ++i) {
      Poly f = testsupport::random_poly(F, 1 + rng() % 4, rng);
      const std::string s = f.to_string();
      Poly back = parse_poly(s, F);
      CHECK(back == f);
      CHECK(back.to_string() == s);
    }
  }
}

TEST_CASE("partial derivatives in characteristic p") {
  auto F2 = make_field(2, 1), F4 = make_field(2, 2);
  CHECK(partial_derivative(parse_poly("X2^2*X3", F2), 2).is_zero());
  CHECK(partial_derivative(parse_poly("X0^3", F4), 0) == parse_poly("X0^2", F4));
}

TEST_CASE("Euler identity on random polys") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = make_field(p, 1);
    for (int i = 0; i < 60; ++i) {
      const unsigned d = 1 + rng() % 5;
      Poly f = testsupport::random_poly(F, d, rng);
      if (f.is_zero()) continue;
      Poly lhs(F);
      for (int j = 0; j < 4; ++j) {
        Poly t = Poly::variable(F, j) * partial_derivative(f, j);
        if (!t.is_zero()) lhs = lhs.is_zero() ? t : lhs + t;
      }
      CHECK(lhs == f.scaled(F->from_int(d)));
    }
  }
}

TEST_CASE("build_h examples") {
  auto F4 = make_field(2, 2);
  Poly f = parse_poly("X0^3 + X1^3 + X2^2*X3", F4);
  Poly h = build_h(f);
  CHECK(h == parse_poly("X0^6 + X1^6 + X2^2*X3^4", F4));
  CHECK_FALSE(divides(f, h));
  Poly herm = parse_poly("X0^3+X1^3+X2^3+X3^3", F4);
  CHECK(build_h(herm) == herm * herm);
  CHECK(divides(herm, build_h(herm)));
  auto F7 = make_field(7, 1);
  CHECK(build_h(Poly::variable(F7, 0)) == parse_poly("X0^7", F7));
}

TEST_CASE("build_h degree and Frobenius-gradient identity") {
  std::mt19937_64 rng(3);
  auto F3 = make_field(3, 1);
  const auto pts = testsupport::all_points(*F3);
  for (int i = 0; i < 20; ++i) {
    Poly f = testsupport::random_poly(F3, 3, rng);
    if (f.is_zero()) continue;
    Poly h = build_h(f, 3);
    CHECK((h.is_zero() || h.degree() == 3 + 3 - 1));
    for (const auto& P : pts)
      for (int j = 0; j < 4; ++j)
        CHECK(partial_derivative(h, j).eval(P) == F3->mul(2, partial_derivative(f, j).eval(P)));
  }
}

TEST_CASE("divides against exhaustive quotient search") {
  auto F2 = make_field(2, 1);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned df = 1 + rng() % 2, dq = 1 + rng() % 2;
    Poly f = testsupport::random_poly(F2, df, rng);
    if (f.is_zero()) continue;
    Poly g = (trial % 2) ? f * testsupport::random_poly(F2, dq, rng) : testsupport::random_poly(F2, df + dq, rng);
    if (g.is_zero()) continue;
    const auto mons = testsupport::monomials_of_degree(dq);
    bool found = false;
    for (std::uint64_t mask = 0; mask < (1ull << mons.size()) && !found; ++mask) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < mons.size(); ++k)
        if (mask >> k & 1) terms.push_back({mons[k], 1});
      if (terms.empty()) continue;
      if (f * Poly::from_terms(F2, terms) == g) found = true;
    }
    CHECK(divides(f, g) == found);
  }
  CHECK_THROWS_AS(divides(Poly(F2), Poly::variable(F2, 0)), Error);
}

TEST_CASE("division identity g = q f + r") {
  std::mt19937_64 rng(9);
  auto F5 = make_field(5, 1);
  for (int i = 0; i < 30; ++i) {
    Poly f = testsupport::random_poly(F5, 2, rng), g = testsupport::random_poly(F5, 4, rng);
    if (f.is_zero() || g.is_zero()) continue;
    auto [quo, rem] = divide(g, f);
    Poly back = quo.is_zero() ? rem : (rem.is_zero() ? quo * f : quo * f + rem);
    CHECK(back == g);
  }
}

TEST_CASE("evaluate over extensions") {
  auto F4 = make_field(2, 2), F16 = make_field(2, 4);
  Poly f = parse_poly("X0^3 + X1^3 + X2^2*X3", F4);
  std::array<FieldElement, 4> P{FieldElement(F4, 1), FieldElement(F4, 1), FieldElement(F4, 0), FieldElement(F4, 0)};
  CHECK(evaluate(f, P).is_zero());
  CHECK(evaluate(parse_poly("X1^3", F4), {FieldElement(F4, 1), FieldElement(F4, 0), FieldElement(F4, 0), FieldElement(F4, 0)}).is_zero());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    std::array<FieldElement, 4> x{FieldElement(F16, rng() % 16), FieldElement(F16, rng() % 16),
                                  FieldElement(F16, rng() % 16), FieldElement(F16, rng() % 16)};
    FieldElement lambda(F16, 1 + rng() % 15);
    std::array<FieldElement, 4> y{x[0] * lambda, x[1] * lambda, x[2] * lambda, x[3] * lambda};
    CHECK(evaluate(f, y) == evaluate(f, x) * lambda.pow(3));
  }
  CHECK_THROWS_AS(evaluate(f, {FieldElement(make_field(3, 1), 1), FieldElement(make_field(3, 1), 0),
                               FieldElement(make_field(3, 1), 0), FieldElement(make_field(3, 1), 0)}),
                  Error);
}
