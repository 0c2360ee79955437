#include "frobsurf/upoly.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace frobsurf::upoly {

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const UPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

UPoly add(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

UPoly sub(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

UPoly scale(const Field& F, const UPoly& a, Elem c) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

UPoly monic(const Field& F, const UPoly& a) {
  const int d = deg(a);
  if (d < 0) return {};
  UPoly r = scale(F, a, F.inv(a[d]));
  r.resize(d + 1);
  return r;
}

void divmod(const Field& F, const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
  const int db = deg(b);
  if (db < 0) throw Error(Errc::DivisionByZero, "univariate division by zero");
  rem = a;
  trim(rem);
  quot.assign(rem.size() > static_cast<std::size_t>(db) ? rem.size() - db : 0, 0);
  const Elem lead_inv = F.inv(b[db]);
  for (int k = deg(rem); k >= db; k = deg(rem)) {
    const Elem c = F.mul(rem[k], lead_inv);
    quot[k - db] = c;
    for (int i = 0; i <= db; ++i) rem[k - db + i] = F.sub(rem[k - db + i], F.mul(c, b[i]));
    trim(rem);
  }
  trim(quot);
}

UPoly mod(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(F, a, b, q, r);
  return r;
}

UPoly quotient(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(F, a, b, q, r);
  return q;
}

UPoly gcd(const Field& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

UPoly derivative(const Field& F, const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i % F.characteristic())));
  trim(r);
  return r;
}

UPoly powmod(const Field& F, UPoly base, std::uint64_t e, const UPoly& m) {
  UPoly result = {1};
  base = mod(F, base, m);
  result = mod(F, result, m);
  while (e > 0) {
    if (e & 1) result = mod(F, mul(F, result, base), m);
    e >>= 1;
    if (e) base = mod(F, mul(F, base, base), m);
  }
  return result;
}

Elem eval(const Field& F, const UPoly& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

namespace {

void split_linear_product(const Field& F, const UPoly& r, std::mt19937_64& rng, std::vector<Elem>& out) {
  const int d = deg(r);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(F.neg(F.div(r[0], r[1])));
    return;
  }
  for (;;) {
    const Elem delta = static_cast<Elem>(rng() % F.size());
    UPoly w;
    if (F.characteristic() == 2) {
      // Absolute trace of delta*x modulo r.
      UPoly term = mod(F, UPoly{0, delta}, r);
      w = term;
      for (unsigned i = 1; i < F.degree(); ++i) {
        term = mod(F, mul(F, term, term), r);
        w = add(F, w, term);
      }
    } else {
      w = powmod(F, UPoly{delta, 1}, (F.size() - 1) / 2, r);
      w = sub(F, w, UPoly{1});
    }
    UPoly g = gcd(F, r, w);
    const int dg = deg(g);
    if (dg > 0 && dg < d) {
      split_linear_product(F, g, rng, out);
      split_linear_product(F, quotient(F, r, g), rng, out);
      return;
    }
  }
}

UPoly pth_root_poly(const Field& F, const UPoly& a) {
  const std::size_t p = F.characteristic();
  UPoly r((a.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = F.pth_root(a[i]);
  trim(r);
  return r;
}

}  // namespace

std::vector<Elem> roots(const Field& F, const UPoly& a) {
  UPoly m = monic(F, a);
  const int d = deg(m);
  if (d <= 0) return {};
  std::vector<Elem> out;
  if (F.size() <= 64) {
    for (Elem x = 0; x < F.size(); ++x)
      if (eval(F, m, x) == 0) out.push_back(x);
    return out;
  }
  UPoly xq = powmod(F, UPoly{0, 1}, F.size(), m);
  UPoly r = gcd(F, m, sub(F, xq, UPoly{0, 1}));
  std::mt19937_64 rng(0x5eed);
  split_linear_product(F, r, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

int radical_degree(const Field& F, const UPoly& a) {
  UPoly f = monic(F, a);
  if (deg(f) <= 0) return 0;
  UPoly d = derivative(F, f);
  if (d.empty()) return radical_degree(F, pth_root_poly(F, f));
  UPoly c = gcd(F, f, d);
  UPoly w = quotient(F, f, c);
  int total = 0;
  while (deg(w) > 0) {
    UPoly y = gcd(F, w, c);
    UPoly z = quotient(F, w, y);
    total += std::max(0, deg(z));
    w = y;
    c = quotient(F, c, y);
  }
  if (deg(c) > 0) total += radical_degree(F, pth_root_poly(F, c));
  return total;
}

Elem resultant(const Field& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  Elem res = 1;
  for (;;) {
    const int da = deg(a), db = deg(b);
    if (db == 0) return F.mul(res, F.pow(b[0], static_cast<std::uint64_t>(da)));
    if (da == 0) return F.mul(res, F.pow(a[0], static_cast<std::uint64_t>(db)));
    UPoly r = mod(F, a, b);
    if (r.empty()) return 0;
    const int dr = deg(r);
    if ((da % 2 == 1) && (db % 2 == 1)) res = F.neg(res);
    res = F.mul(res, F.pow(b[db], static_cast<std::uint64_t>(da - dr)));
    a = std::move(b);
    b = std::move(r);
  }
}

UPoly interpolate(const Field& F, std::span<const Elem> xs, std::span<const Elem> ys) {
  UPoly result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UPoly basis = {1};
    Elem denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = mul(F, basis, UPoly{F.neg(xs[j]), 1});
      denom = F.mul(denom, F.sub(xs[i], xs[j]));
    }
    result = add(F, result, scale(F, basis, F.div(ys[i], denom)));
  }
  return result;
}

}  // namespace frobsurf::upoly
