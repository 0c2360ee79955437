#include "frobsurf/orders.hpp"

#include <algorithm>
#include <random>

namespace frobsurf {

int curve_degree(const CurveSpec& C) {
  if (C.delta) return *C.delta;
  return estimate_degree(C);
}

std::size_t order_truncation(const CurveSpec& C, const OrderOptions& opts) {
  if (opts.truncation) return opts.truncation;
  return 2 * (C.field()->size() + static_cast<std::size_t>(curve_degree(C))) + 8;
}

std::vector<ChartSample> sample_charts(const CurveSpec& C, const OrderOptions& opts) {
  const std::size_t T = order_truncation(C, opts);
  const FieldPtr& base = C.field();
  std::mt19937_64 rng(opts.seed);
  std::vector<ChartSample> out;
  for (unsigned m = 1; m <= opts.max_ext; ++m) {
    std::uint64_t size = 1;
    for (unsigned i = 0; i < base->degree() * m; ++i) size *= base->characteristic();
    if (size > Field::kMaxSize) break;
    const FieldPtr ext = base->extension(m);
    const auto pts = sample_points(C.polys, ext, static_cast<std::size_t>(3 * opts.trials), rng, opts.point_budget);
    int kept = 0;
    for (const auto& P : pts) {
      if (kept >= opts.trials) break;
      // Only points genuinely new at this level; smaller fields were sampled already.
      if (m > 1 && P.field_of_definition_degree() < ext->degree()) continue;
      try {
        out.push_back({parametrize_curve(C, P, T), m});
        ++kept;
      } catch (const Error& e) {
        if (e.code() != Errc::SingularPoint && e.code() != Errc::DimensionMismatch &&
            e.code() != Errc::NoTransverseCoordinate)
          throw;
      }
    }
  }
  return out;
}

Orders4 point_orders(const LocalChart& chart, std::optional<int> delta) {
  const Field& F = *chart.P.field;
  Orders4 j{};
  int found = 0;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t m = 0; m < chart.precision() && found < 4; ++m) {
    std::vector<Elem> v(4);
    for (int i = 0; i < 4; ++i) v[i] = chart.x[i].coeff(m);
    auto trial = basis;
    trial.push_back(v);
    if (matrix_rank(F, trial) > static_cast<int>(basis.size())) {
      basis = std::move(trial);
      j[found++] = m;
    }
  }
  if (found < 4) {
    if (delta && chart.precision() > static_cast<std::size_t>(*delta))
      throw Error(Errc::DegenerateCurve, "osculating rank stays below 4 at " + chart.P.to_string());
    throw Error(Errc::TruncationTooSmall, "rank below 4 within the chart precision");
  }
  return j;
}

GenericOrders generic_orders_on(const std::vector<ChartSample>& charts, std::optional<int> delta) {
  if (charts.empty()) throw Error(Errc::NoSmoothPointFound, "no smooth point sampled");
  GenericOrders g;
  bool first = true;
  for (const auto& cs : charts) {
    const Orders4 j = point_orders(cs.chart, delta);
    g.samples.push_back({cs.chart.P.to_string(), cs.ext_degree, j});
    if (first || j < g.eps) g.eps = j;
    first = false;
  }
  return g;
}

GenericOrders generic_orders(const CurveSpec& C, const OrderOptions& opts) {
  return generic_orders_on(sample_charts(C, opts), curve_degree(C));
}

TruncatedSeries frobenius_wronskian(const LocalChart& chart, std::size_t a, std::size_t b) {
  std::array<std::array<TruncatedSeries, 4>, 4> M;
  for (int i = 0; i < 4; ++i) {
    M[0][i] = chart.twisted[i];
    M[1][i] = chart.x[i];
    M[2][i] = hasse_derivative(chart.x[i], a);
    M[3][i] = hasse_derivative(chart.x[i], b);
  }
  const FieldPtr& field = chart.P.field;
  std::size_t n = chart.precision();
  for (const auto& row : M)
    for (const auto& s : row) n = std::min(n, s.precision());
  TruncatedSeries det(field, n);
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int k = i + 1; k < 4; ++k) inversions += perm[i] > perm[k];
    TruncatedSeries term = M[0][perm[0]].truncated(n);
    for (int r = 1; r < 4; ++r) term = term * M[r][perm[r]];
    det = (inversions % 2) ? det - term : det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

FrobeniusOrders frobenius_orders_on(const std::vector<ChartSample>& charts, const Orders4& eps) {
  if (charts.empty()) throw Error(Errc::NoSmoothPointFound, "no smooth point sampled");
  const std::array<Orders2, 3> candidates{Orders2{eps[1], eps[2]}, Orders2{eps[1], eps[3]}, Orders2{eps[2], eps[3]}};
  FrobeniusOrders out;
  for (const auto& cand : candidates) {
    for (const auto& cs : charts) {
      if (!frobenius_wronskian(cs.chart, cand[0], cand[1]).is_zero()) {
        out.nu = cand;
        return out;
      }
    }
    out.probabilistic = true;
    out.notes.push_back("(" + std::to_string(cand[0]) + "," + std::to_string(cand[1]) +
                        ") vanishes to full precision on all " + std::to_string(charts.size()) + " charts");
  }
  throw Error(Errc::AllCandidatesVanish, "every candidate Frobenius Wronskian vanished on the sampled charts");
}

FrobeniusOrders frobenius_orders(const CurveSpec& C, const Orders4& eps, const OrderOptions& opts) {
  return frobenius_orders_on(sample_charts(C, opts), eps);
}

std::pair<int, std::size_t> q_deleted_order(const Orders4& eps, const Orders2& nu) {
  if (nu[0] >= nu[1]) throw Error(Errc::InconsistentProfile, "nu must be increasing");
  int missing = -1, hits = 0;
  for (int i = 1; i <= 3; ++i) {
    if (eps[i] == nu[0] || eps[i] == nu[1]) ++hits;
    else missing = i;
  }
  if (hits != 2 || missing < 0) throw Error(Errc::InconsistentProfile, "Frobenius orders are not generic orders");
  return {missing, eps[missing]};
}

DegeneracyResult is_degenerate(const CurveSpec& C, const OrderOptions& opts) {
  const FieldPtr& base = C.field();
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
  std::size_t best_found = 0;
  for (unsigned m = 1; m <= opts.max_ext; ++m) {
    std::uint64_t size = 1;
    for (unsigned i = 0; i < base->degree() * m; ++i) size *= base->characteristic();
    if (size > Field::kMaxSize) break;
    const FieldPtr ext = base->extension(m);
    const Field& F = *ext;
    auto pts = sample_points(C.polys, ext, 8, rng, opts.point_budget);
    best_found = std::max(best_found, pts.size());
    const bool last = m == opts.max_ext;
    if (pts.size() < 5 && !(last && pts.size() >= 4)) continue;

    std::vector<std::vector<Elem>> rows;
    for (const auto& P : pts) rows.emplace_back(P.coords.begin(), P.coords.end());
    DegeneracyResult r;
    r.ext_degree = m;
    if (matrix_rank(F, rows) == 4) {
      // Greedy spanning subset as the certificate.
      std::vector<std::vector<Elem>> span;
      for (std::size_t i = 0; i < pts.size() && span.size() < 4; ++i) {
        auto trial = span;
        trial.push_back(rows[i]);
        if (matrix_rank(F, trial) > static_cast<int>(span.size())) {
          span = trial;
          r.spanning_points.push_back(pts[i].to_string());
        }
      }
      return r;
    }
    // Common plane through every sample: the first three independent rows fix it
    // (fewer than three means the samples are collinear; extend by unit vectors).
    std::vector<std::vector<Elem>> basis;
    for (const auto& row : rows) {
      auto trial = basis;
      trial.push_back(row);
      if (matrix_rank(F, trial) > static_cast<int>(basis.size())) basis = trial;
    }
    for (int e = 0; e < 4 && basis.size() < 3; ++e) {
      std::vector<Elem> unit(4, 0);
      unit[e] = 1;
      auto trial = basis;
      trial.push_back(unit);
      if (matrix_rank(F, trial) > static_cast<int>(basis.size())) basis = trial;
    }
    const Coords plane = *kernel_vector(F, basis);
    std::vector<Term> terms;
    for (int i = 0; i < 4; ++i) {
      Exponents e{0, 0, 0, 0};
      e[i] = 1;
      terms.push_back({e, plane[i]});
    }
    const Poly H = Poly::from_terms(ext, terms);
    // Chart evidence at a smooth sample.
    const std::size_t T = order_truncation(C, opts);
    for (const auto& P : pts) {
      try {
        const LocalChart chart = parametrize_curve(C, P, T);
        if (!evaluate_on_chart(H, chart).is_zero()) break;  // plane is a coincidence
        r.degenerate = true;
        r.plane = plane;
        return r;
      } catch (const Error& e) {
        if (e.code() != Errc::SingularPoint && e.code() != Errc::DimensionMismatch &&
            e.code() != Errc::NoTransverseCoordinate)
          throw;
      }
    }
  }
  if (best_found < 4) throw Error(Errc::TooFewPoints, "fewer than four points found on the curve");
  return {};
}

namespace {

bool is_power_of(std::size_t x, std::uint32_t p, int* e = nullptr) {
  if (x < p) return false;
  int k = 0;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  if (e) *e = k;
  return x == 1;
}

}  // namespace

bool validate_order_sequence(const Orders4& eps, std::uint32_t p) {
  if (eps[0] != 0 || eps[1] != 1) return false;
  const std::size_t a = eps[2], b = eps[3];
  if (!(a < b)) return false;
  if (a == 2 && b == 3 && p > 3) return true;
  if (a == 2 && p > 2 && is_power_of(b, p)) return true;
  if (is_power_of(a, p)) {
    if (b == 2 * a) return true;
    if (b == a + 1) return true;
    if (p > 2 && is_power_of(b, p)) return true;
  }
  return false;
}

std::vector<std::string> profile_alarms(const OrderProfile& prof, std::uint32_t p) {
  std::vector<std::string> alarms;
  if (prof.degenerate || !prof.eps) return alarms;
  const Orders4& eps = *prof.eps;
  if (eps[0] != 0 || eps[1] != 1) alarms.push_back("generic orders do not start 0,1");
  for (int i = 0; i < 3; ++i)
    if (eps[i] >= eps[i + 1]) alarms.push_back("generic orders not increasing");
  if (eps[3] > static_cast<std::size_t>(prof.delta)) alarms.push_back("generic order exceeds the degree");
  if (!validate_order_sequence(eps, p)) alarms.push_back("order sequence not admissible");
  for (const auto& s : prof.evidence)
    for (int i = 0; i < 4; ++i)
      if (s.j[i] < eps[i]) alarms.push_back("point orders below generic orders at " + s.point);
  if (prof.nu) {
    const Orders2& nu = *prof.nu;
    try {
      q_deleted_order(eps, nu);
    } catch (const Error&) {
      alarms.push_back("Frobenius orders not among generic orders");
    }
    if (nu[0] > 1 && prof.delta <= static_cast<int>(prof.q))
      alarms.push_back("non-degenerate curve with nu1 > 1 and degree at most q");
    if (nu[0] > 1 && prof.delta <= static_cast<int>(prof.q)) {
      int e1 = 0, e2 = 0;
      const bool shape = is_power_of(nu[0], p, &e1) && (is_power_of(nu[1], p, &e2) || nu[1] == 2 * nu[0]);
      if (!shape) alarms.push_back("Frobenius orders of unexpected shape");
    }
    if (p > 3 && !prof.frobenius_classical && prof.classical)
      alarms.push_back("Frobenius non-classical but classical in characteristic > 3");
  }
  return alarms;
}

OrderProfile order_profile(const CurveSpec& C, const OrderOptions& opts) {
  OrderProfile prof;
  prof.q = C.field()->size();
  prof.delta = curve_degree(C);
  prof.seed = opts.seed;
  prof.truncation = order_truncation(C, opts);
  CurveSpec Cd = C;
  Cd.delta = prof.delta;
  const DegeneracyResult deg = is_degenerate(Cd, opts);
  prof.degenerate = deg.degenerate;
  prof.plane = deg.plane;
  if (deg.degenerate) {
    prof.notes.push_back("curve lies in a plane; orders not computed");
    return prof;
  }
  const auto charts = sample_charts(Cd, opts);
  const GenericOrders g = generic_orders_on(charts, prof.delta);
  prof.eps = g.eps;
  prof.evidence = g.samples;
  prof.classical = g.eps == Orders4{0, 1, 2, 3};
  const FrobeniusOrders fo = frobenius_orders_on(charts, g.eps);
  prof.nu = fo.nu;
  prof.nu_probabilistic = fo.probabilistic;
  prof.notes.insert(prof.notes.end(), fo.notes.begin(), fo.notes.end());
  prof.frobenius_classical = fo.nu == Orders2{1, 2};
  try {
    auto [I, eI] = q_deleted_order(g.eps, fo.nu);
    prof.deleted_index = I;
    prof.deleted_order = eI;
  } catch (const Error&) {
  }
  if (opts.genus) {
    std::size_t special = 0;
    for (const auto& s : g.samples) special += s.j != g.eps;
    const long long wdeg = (static_cast<long long>(g.eps[1] + g.eps[2] + g.eps[3])) * (2LL * *opts.genus - 2) + 4LL * prof.delta;
    if (static_cast<long long>(special) > wdeg) prof.alarms.push_back("more special points sampled than the Weierstrass divisor allows");
  }
  auto more = profile_alarms(prof, C.field()->characteristic());
  prof.alarms.insert(prof.alarms.end(), more.begin(), more.end());
  return prof;
}

nlohmann::json to_json(const OrderProfile& prof, const Field& F) {
  nlohmann::json j;
  j["delta"] = prof.delta;
  j["q"] = prof.q;
  j["degenerate"] = prof.degenerate;
  if (prof.plane) {
    std::vector<std::string> pl;
    for (Elem c : *prof.plane) pl.push_back(F.to_string(c));
    j["plane"] = pl;
  }
  if (prof.eps) j["eps"] = *prof.eps;
  if (prof.nu) j["nu"] = *prof.nu;
  if (prof.deleted_index) j["deleted_index"] = *prof.deleted_index;
  if (prof.deleted_order) j["deleted_order"] = *prof.deleted_order;
  j["classical"] = prof.classical;
  j["frobenius_classical"] = prof.frobenius_classical;
  j["nu_probabilistic"] = prof.nu_probabilistic;
  j["seed"] = prof.seed;
  j["truncation"] = prof.truncation;
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& s : prof.evidence) ev.push_back({{"point", s.point}, {"ext", s.ext_degree}, {"j", s.j}});
  j["evidence"] = ev;
  j["alarms"] = prof.alarms;
  j["notes"] = prof.notes;
  return j;
}

}  // namespace frobsurf
