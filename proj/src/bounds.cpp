#include "frobsurf/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "frobsurf/error.hpp"

namespace frobsurf {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor_of(const Rational& r) {
  // boost keeps the denominator positive
  const std::int64_t n = r.numerator(), d = r.denominator();
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  std::uint64_t x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

MainBound main_bound(std::int64_t delta, std::int64_t d, std::int64_t q) {
  if (d <= 1) throw Error(Errc::BadDegree, "surface degree must exceed 1");
  if (delta < 1) throw Error(Errc::BadDegree, "curve degree must be positive");
  MainBound b;
  b.value = Rational(delta * (d + q - 1), 2);
  b.floor = floor_of(b.value);
  return b;
}

std::int64_t homma_bound(std::int64_t delta, std::int64_t q) { return q * (delta - 1) + 1; }

std::int64_t stohr_voloch_bound(std::int64_t delta, std::int64_t q, std::int64_t g, std::int64_t nu1,
                                std::int64_t nu2) {
  return floor_of(Rational(2 * (nu1 + nu2) * (g - 1) + delta * (q + 3), 3));
}

Rational stohr_voloch_figure_expression(std::int64_t delta, std::int64_t q, std::int64_t g) {
  return Rational(4 * (g - 1)) + Rational(delta * (q + 3), 3);
}

std::int64_t serre_weil_bound(std::int64_t g, std::int64_t q) {
  return q + 1 + g * static_cast<std::int64_t>(isqrt(4 * static_cast<std::uint64_t>(q)));
}

Rational harris_pi(std::int64_t delta, std::int64_t d) {
  const std::int64_t eps = ((-delta) % d + d) % d;
  const Rational dl(delta), dd(d), e(eps);
  return dl / 2 * (dl / dd + dd - 4) + 1 - e / 2 * (dd - e - 1 + e / dd);
}

HarrisBound harris_genus_bound(std::int64_t delta, std::int64_t d) {
  if (d < 2 || delta < 1) throw Error(Errc::BadDegree, "need d >= 2 and delta >= 1");
  auto integral = [](const Rational& r) {
    if (r.denominator() != 1) throw Error(Errc::NonIntegerResult, "genus bound " + to_string(r));
    return r.numerator();
  };
  HarrisBound h;
  h.unbranched = integral(harris_pi(delta, d));
  h.branched = delta > d * (d - 1) ? h.unbranched : integral(harris_pi(delta, (delta - 1) / d + 1));
  return h;
}

std::int64_t weierstrass_divisor_degree(const std::array<std::int64_t, 4>& eps, std::int64_t g,
                                        std::int64_t delta) {
  return (eps[1] + eps[2] + eps[3]) * (2 * g - 2) + 4 * delta;
}

BoundReport compare(std::int64_t delta, std::int64_t d, std::int64_t q, std::optional<std::int64_t> g,
                    std::optional<std::array<std::int64_t, 2>> nu) {
  BoundReport r;
  r.q = q;
  r.d = d;
  r.delta = delta;
  r.main = main_bound(delta, d, q);
  r.harris = harris_genus_bound(delta, d);
  r.genus_given = g.has_value();
  r.genus_bound = g.value_or(r.harris.unbranched);
  if (nu) {
    r.nu1 = (*nu)[0];
    r.nu2 = (*nu)[1];
  }
  r.homma = homma_bound(delta, q);
  r.stohr_voloch = stohr_voloch_bound(delta, q, r.genus_bound, r.nu1, r.nu2);
  r.stohr_voloch_figure = stohr_voloch_figure_expression(delta, q, r.genus_bound);
  r.serre_weil = serre_weil_bound(r.genus_bound, q);

  const std::array<std::pair<const char*, std::int64_t>, 4> all{
      {{"main", r.main.floor}, {"homma", r.homma}, {"sv", r.stohr_voloch}, {"serre_weil", r.serre_weil}}};
  std::int64_t best = all[0].second;
  for (const auto& [name, v] : all) best = std::min(best, v);
  for (const auto& [name, v] : all)
    if (v == best) r.winner += (r.winner.empty() ? "" : "|") + std::string(name);

  if (r.main.value.denominator() != 1)
    r.notes.push_back("main bound " + to_string(r.main.value) + " is not an integer; floor " +
                      std::to_string(r.main.floor));
  if (delta == 11 && d == 5 && q == 9)
    r.notes.push_back("published value for this case is 72; exact floor is 71");
  if (!r.genus_given && r.harris.branched != r.harris.unbranched)
    r.notes.push_back("genus bound: unbranched " + std::to_string(r.harris.unbranched) + " used, branched " +
                      std::to_string(r.harris.branched));
  if (r.nu1 + r.nu2 == 3 && r.stohr_voloch_figure != Rational(2 * 3 * (r.genus_bound - 1) + delta * (q + 3), 3))
    r.notes.push_back("figure expression for the Stohr-Voloch bound gives " + to_string(r.stohr_voloch_figure));
  return r;
}

std::string csv_row(const BoundReport& r) {
  std::ostringstream os;
  os << r.delta << ',' << to_string(r.main.value) << ',' << r.main.floor << ',' << r.homma << ','
     << r.stohr_voloch << ',' << r.serre_weil << ',' << r.winner;
  return os.str();
}

std::string figure_csv(std::int64_t q, std::int64_t d) {
  std::string out = std::string(kBoundsCsvHeader) + "\n";
  for (std::int64_t delta = 1; delta <= q; ++delta) out += csv_row(compare(delta, d, q)) + "\n";
  return out;
}

}  // namespace frobsurf
