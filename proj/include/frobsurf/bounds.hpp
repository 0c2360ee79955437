#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace frobsurf {

using Rational = boost::rational<std::int64_t>;

/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& r);
std::int64_t floor_of(const Rational& r);
/// floor(sqrt(n)) by integer Newton iteration.
std::uint64_t isqrt(std::uint64_t n);

struct MainBound {
  Rational value;
  std::int64_t floor = 0;
};
/// delta(d + q - 1)/2.  BadDegree unless d > 1 and delta >= 1.
MainBound main_bound(std::int64_t delta, std::int64_t d, std::int64_t q);

std::int64_t homma_bound(std::int64_t delta, std::int64_t q);

/// floor((2(nu1 + nu2)(g - 1) + delta(q + 3)) / 3).
std::int64_t stohr_voloch_bound(std::int64_t delta, std::int64_t q, std::int64_t g, std::int64_t nu1,
                                std::int64_t nu2);
/// The expression drawn in the comparison figure: 4(g - 1) + delta(q + 3)/3.
Rational stohr_voloch_figure_expression(std::int64_t delta, std::int64_t q, std::int64_t g);

std::int64_t serre_weil_bound(std::int64_t g, std::int64_t q);

struct HarrisBound {
  std::int64_t branched = 0;    // switches to a smaller d when delta <= d(d-1)
  std::int64_t unbranched = 0;  // pi(delta, d)
};
/// NonIntegerResult if the formula ever leaves the integers.
HarrisBound harris_genus_bound(std::int64_t delta, std::int64_t d);
Rational harris_pi(std::int64_t delta, std::int64_t d);

std::int64_t weierstrass_divisor_degree(const std::array<std::int64_t, 4>& eps, std::int64_t g,
                                        std::int64_t delta);

struct BoundReport {
  std::int64_t q = 0, d = 0, delta = 0;
  std::int64_t genus_bound = 0;
  bool genus_given = false;
  HarrisBound harris;
  std::int64_t nu1 = 1, nu2 = 2;
  MainBound main;
  std::int64_t homma = 0;
  std::int64_t stohr_voloch = 0;
  Rational stohr_voloch_figure;
  std::int64_t serre_weil = 0;
  std::string winner;  // "|" joins ties
  std::vector<std::string> notes;
};

/// g defaults to the unbranched Harris value, nu to (1, 2).
BoundReport compare(std::int64_t delta, std::int64_t d, std::int64_t q,
                    std::optional<std::int64_t> g = std::nullopt,
                    std::optional<std::array<std::int64_t, 2>> nu = std::nullopt);

inline constexpr const char* kBoundsCsvHeader = "delta,main,main_floor,homma,sv,serre_weil,winner";
std::string csv_row(const BoundReport& r);
/// Header plus one row per delta = 1..q.
std::string figure_csv(std::int64_t q, std::int64_t d);

}  // namespace frobsurf
