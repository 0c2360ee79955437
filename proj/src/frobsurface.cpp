#include "frobsurf/frobsurface.hpp"

#include <random>
#include <set>

namespace frobsurf {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Rank-2 linear part of a system, as the line it cuts out.
std::optional<Line> linear_line(const CurveSpec& C) {
  const Field& F = *C.field();
  std::vector<std::vector<Elem>> rows;
  for (const auto& g : C.polys) {
    if (g.degree() != 1) continue;
    std::vector<Elem> r(4, 0);
    for (int i = 0; i < 4; ++i) {
      Exponents e{0, 0, 0, 0};
      e[i] = 1;
      r[i] = g.coeff(e);
    }
    rows.push_back(r);
  }
  if (matrix_rank(F, rows) != 2) return std::nullopt;
  std::vector<std::vector<Elem>> basis;
  for (const auto& r : rows) {
    auto trial = basis;
    trial.push_back(r);
    if (matrix_rank(F, trial) > static_cast<int>(basis.size())) basis = trial;
  }
  std::vector<Coords> kernel;
  for (int i = 0; i < 4 && kernel.size() < 2; ++i) {
    std::vector<Elem> unit(4, 0);
    unit[i] = 1;
    auto m = basis;
    m.push_back(unit);
    if (matrix_rank(F, m) != 3) continue;
    auto v = kernel_vector(F, m);
    if (!v) continue;
    std::vector<std::vector<Elem>> test;
    for (const auto& k : kernel) test.emplace_back(k.begin(), k.end());
    test.emplace_back(v->begin(), v->end());
    if (matrix_rank(F, test) == static_cast<int>(test.size())) kernel.push_back(*v);
  }
  if (kernel.size() < 2) return std::nullopt;
  return Line::through(C.field(), kernel[0], kernel[1]);
}

bool surface_fc_unchecked(const Surface& S, const Poly& h) { return !h.is_zero() && !divides(S.f, h); }

}  // namespace

FcResult frobenius_classicality(const Surface& S) {
  if (!S.irreducible_asserted)
    throw Error(Errc::IrreducibilityNotAsserted, "the divisibility test needs an irreducible surface");
  FcResult r;
  const Poly h = build_h(S.f);
  if (h.is_zero()) {
    r.h_zero = true;
    r.warnings.push_back("h is identically zero; f may not be irreducible");
    return r;
  }
  r.classical = !divides(S.f, h);
  return r;
}

int phi_degree(const Surface& S) {
  const int d = S.degree();
  return d * (d + static_cast<int>(S.field()->size()) - 1);
}

CurveSpec phi_curve(const Surface& S) {
  if (!is_frobenius_classical(S)) throw Error(Errc::FrobeniusNonClassical, "Phi^S is the whole surface");
  CurveSpec C;
  C.name = "Phi";
  C.polys = {S.f, build_h(S.f)};
  C.delta = phi_degree(S);
  C.complete_asserted = true;
  return C;
}

std::vector<Line> lines_in_phi(const Surface& S) {
  const std::vector<Poly> sys{S.f, build_h(S.f)};
  std::vector<Line> out;
  for (const auto& L : enumerate_lines(S.field()))
    if (line_contained(sys, L)) out.push_back(L);
  return out;
}

SingularSearch find_singular_points(const Surface& S, unsigned max_ext, std::uint64_t budget) {
  std::vector<Poly> sys{S.f};
  for (int i = 0; i < 4; ++i) {
    Poly g = partial_derivative(S.f, i);
    if (!g.is_zero()) sys.push_back(g);
  }
  const std::uint64_t q = S.field()->size();
  SingularSearch out;
  for (unsigned k = 1; k <= max_ext; ++k) {
    if (ipow(q, 3 * k) > budget) break;
    auto pts = enumerate_points(S.field(), sys, k, budget);
    if (!pts.empty()) {
      out.ext_degree = k;
      out.points = std::move(pts);
      return out;
    }
  }
  return out;
}

const char* to_string(Containment c) {
  switch (c) {
    case Containment::Contained: return "Contained";
    case Containment::NotContained: return "NotContained";
    default: return "Unknown";
  }
}

ContainmentVerdict curve_in_phi(const Surface& S, const CurveSpec& C, const ContainmentOptions& opts) {
  const Poly h = build_h(S.f);
  const FieldPtr& base = S.field();
  ContainmentVerdict v;

  // Ideal membership: some generator of C divides h, or S itself lies in Phi^S.
  for (const auto& g : C.polys) {
    if (g.degree() > 0 && (h.is_zero() || divides(g, h))) {
      v.verdict = Containment::Contained;
      v.certificate = "ideal";
      v.detail = "h is a multiple of " + g.to_string();
      return v;
    }
  }
  if (h.is_zero() || divides(S.f, h)) {
    v.verdict = Containment::Contained;
    v.certificate = "ideal";
    v.detail = "f divides h, so Phi^S is all of S";
    v.assertions.push_back("curve lies on S");
    return v;
  }
  if (auto L = linear_line(C)) {
    const std::vector<Poly> hs{h};
    if (line_contained(hs, *L)) {
      v.verdict = Containment::Contained;
      v.certificate = "ideal";
      v.detail = "h vanishes identically on the line " + L->key();
      return v;
    }
  }

  const int delta = curve_degree(C);
  if (!C.delta) v.assertions.push_back("curve degree estimated as " + std::to_string(delta));
  v.bezout_threshold = static_cast<std::uint64_t>(delta) * static_cast<std::uint64_t>(h.degree());
  const bool bezout_ok = C.irreducible_asserted && C.complete_asserted;
  const std::uint64_t q = base->size();
  std::mt19937_64 rng(opts.seed);

  for (unsigned k = 1; k <= opts.max_ext; ++k) {
    if (ipow(base->characteristic(), base->degree() * k) > Field::kMaxSize) break;
    const FieldPtr ext = base->extension(k);
    const Poly fe = S.f.embedded(ext), he = h.embedded(ext);
    std::vector<ProjectivePoint> pts;
    const bool exhaustive = ipow(q, 3 * k) <= opts.point_budget;
    if (exhaustive)
      pts = enumerate_points(base, C.polys, k, opts.point_budget);
    else
      pts = sample_points(C.polys, ext, v.bezout_threshold + 1, rng, opts.point_budget);
    std::uint64_t on_phi = 0;
    for (const auto& P : pts) {
      if (fe.eval(P.coords) != 0)
        throw Error(Errc::PointNotOnVariety, "curve point " + P.to_string() + " is not on the surface");
      if (he.eval(P.coords) != 0) {
        v.verdict = Containment::NotContained;
        v.certificate = "witness";
        v.witness = P;
        v.ext_degree = k;
        v.points_on_phi = on_phi;
        v.detail = "h(P) != 0";
        return v;
      }
      ++on_phi;
    }
    v.points_on_phi = std::max(v.points_on_phi, on_phi);
    v.ext_degree = k;
    if (on_phi > v.bezout_threshold) {
      if (bezout_ok) {
        v.verdict = Containment::Contained;
        v.certificate = "bezout";
        v.assertions.push_back("curve irreducible");
        v.assertions.push_back("system complete");
        v.detail = std::to_string(on_phi) + " points on Phi^S over GF(" + std::to_string(ext->size()) +
                   ") exceed " + std::to_string(v.bezout_threshold);
        return v;
      }
      v.detail = "point count exceeds the Bezout threshold but irreducibility/completeness not asserted";
      break;
    }
  }

  // Series evidence.
  OrderOptions oo;
  oo.seed = opts.seed;
  oo.trials = opts.charts;
  oo.max_ext = std::min(opts.max_ext, 4u);
  oo.point_budget = opts.point_budget;
  oo.truncation = default_truncation(q, delta, S.degree());
  CurveSpec Cd = C;
  Cd.delta = delta;
  std::size_t zero_charts = 0;
  for (const auto& cs : sample_charts(Cd, oo)) {
    const auto s = evaluate_on_chart(h, cs.chart);
    if (!s.is_zero()) {
      v.verdict = Containment::NotContained;
      v.certificate = "series";
      v.witness = cs.chart.P;
      v.detail = "h has order " + std::to_string(*s.ord()) + " along the chart";
      return v;
    }
    ++zero_charts;
  }
  v.verdict = Containment::Unknown;
  v.certificate = "series";
  if (v.detail.empty())
    v.detail = "h vanishes to precision " + std::to_string(oo.truncation) + " on " + std::to_string(zero_charts) +
               " charts";
  return v;
}

BoundCheck verify_bound(const Surface& S, const CurveSpec& C, const ContainmentOptions& opts) {
  BoundCheck b;
  FcResult fc;
  try {
    fc = frobenius_classicality(S);
  } catch (const Error& e) {
    if (e.code() == Errc::IrreducibilityNotAsserted)
      throw Error(Errc::HypothesisNotMet, "surface irreducibility not asserted");
    throw;
  }
  if (!fc.classical) throw Error(Errc::HypothesisNotMet, "surface is Frobenius non-classical");
  if (S.degree() <= 1) throw Error(Errc::HypothesisNotMet, "surface degree must exceed 1");
  if (!C.irreducible_asserted) throw Error(Errc::HypothesisNotMet, "curve irreducibility not asserted");
  b.containment = curve_in_phi(S, C, opts);
  if (b.containment.verdict == Containment::Contained)
    throw Error(Errc::HypothesisNotMet, "curve is a component of Phi^S");
  if (b.containment.verdict == Containment::Unknown)
    throw Error(Errc::HypothesisNotMet, "containment in Phi^S undecided");
  b.assertions = {"surface irreducible", "curve irreducible", "surface normal (not checked)"};
  b.delta = curve_degree(C);
  const auto mb = main_bound(b.delta, S.degree(), static_cast<std::int64_t>(S.field()->size()));
  b.exact = mb.value;
  b.B = mb.floor;
  b.N = count_points(C.field(), C.polys, 1);
  b.holds = static_cast<std::int64_t>(b.N) <= b.B;
  b.tight = static_cast<std::int64_t>(b.N) == b.B;
  b.contradiction = !b.holds && C.complete_asserted;
  return b;
}

Classification classify(const CurveSpec& C, const Surface& S, const OrderOptions& oopts,
                        const ContainmentOptions& copts) {
  Classification cls;
  cls.containment = curve_in_phi(S, C, copts);
  cls.profile = order_profile(C, oopts);
  cls.alarms = cls.profile.alarms;
  const bool s_fc = surface_fc_unchecked(S, build_h(S.f));
  if (cls.profile.degenerate) {
    cls.nu1_class = "degenerate";
  } else if (cls.profile.nu) {
    const bool big = (*cls.profile.nu)[0] > 1;
    cls.nu1_class = big ? "nu1>1" : "nu1=1";
    if (s_fc) {
      if (big)
        cls.predicted = Containment::Contained;
      else if (!cls.profile.frobenius_classical)
        cls.predicted = Containment::NotContained;
    }
  }
  if (cls.predicted && cls.containment.verdict != Containment::Unknown &&
      *cls.predicted != cls.containment.verdict)
    cls.alarms.push_back(std::string("CONTRADICTION: orders predict ") + to_string(*cls.predicted) +
                         ", containment test says " + to_string(cls.containment.verdict));
  return cls;
}

const char* to_string(Applicability a) {
  switch (a) {
    case Applicability::Applicable: return "Applicable";
    case Applicability::ApplicableUnderConjecture: return "ApplicableUnderConjecture";
    default: return "NotApplicable";
  }
}

ApplicabilityDecision bound_applicability(const Classification& cls, const Surface& S, bool assume_conjecture) {
  const auto q = static_cast<int>(S.field()->size());
  const OrderProfile& p = cls.profile;
  if (!surface_fc_unchecked(S, build_h(S.f)))
    return {Applicability::NotApplicable, "surface is Frobenius non-classical"};
  if (p.degenerate) return {Applicability::NotApplicable, "degenerate curve: plane curves are out of scope"};
  if (cls.containment.verdict == Containment::Contained)
    return {Applicability::NotApplicable, "curve is a component of Phi^S"};
  if (cls.containment.verdict == Containment::NotContained)
    return {Applicability::Applicable, "direct NotContained verdict (" + cls.containment.certificate + ")"};
  if (p.nu && (*p.nu)[0] > 1) return {Applicability::NotApplicable, "nu1 > 1: component of Phi^S"};
  if (p.nu && !p.frobenius_classical)
    return {Applicability::Applicable, "non-degenerate Frobenius non-classical with nu1 = 1"};
  if (p.frobenius_classical && p.delta > 2 && p.delta <= q) {
    if (assume_conjecture)
      return {Applicability::ApplicableUnderConjecture, "Frobenius classical with 2 < delta <= q"};
    return {Applicability::NotApplicable, "Frobenius classical with 2 < delta <= q; needs the conjecture"};
  }
  return {Applicability::NotApplicable, "no rule decides this curve"};
}

SurfaceReport surface_report(const Surface& S, const SurfaceReportOptions& opts) {
  SurfaceReport r;
  r.q = S.field()->size();
  r.d = S.degree();
  const Poly h = build_h(S.f);
  r.h = h.is_zero() ? "0" : h.to_string();
  if (S.irreducible_asserted) {
    auto fc = frobenius_classicality(S);
    r.frobenius_classical = fc.classical;
    r.warnings = fc.warnings;
  } else {
    r.frobenius_classical = surface_fc_unchecked(S, h);
    r.warnings.push_back("irreducibility not asserted; classicality read off f | h only");
  }
  const std::vector<Poly> surf{S.f};
  const std::vector<Poly> phi{S.f, h};
  for (unsigned k = 1; k <= opts.max_k; ++k) {
    try {
      r.surface_points[k] = count_points(S.field(), surf, k, opts.point_budget);
      if (r.frobenius_classical) r.phi_points[k] = count_points(S.field(), phi, k, opts.point_budget);
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      r.warnings.push_back("point counts stop at k = " + std::to_string(k - 1));
      break;
    }
  }
  if (!r.frobenius_classical) return r;
  r.phi_degree = phi_degree(S);
  if (opts.lines && r.q <= 16) {
    for (const auto& L : lines_in_phi(S)) r.contained_lines.push_back(L.key());
    r.residual_degree = *r.phi_degree - static_cast<int>(r.contained_lines.size());
    r.residual_flagged = !r.contained_lines.empty();
  }
  return r;
}

nlohmann::json to_json(const SurfaceReport& r) {
  nlohmann::json j;
  j["q"] = r.q;
  j["d"] = r.d;
  j["h"] = r.h;
  j["frobenius_classical"] = r.frobenius_classical;
  j["phi_degree"] = r.phi_degree ? nlohmann::json(*r.phi_degree) : nlohmann::json(nullptr);
  nlohmann::json sp = nlohmann::json::object(), pp = nlohmann::json::object();
  for (auto [k, n] : r.surface_points) sp[std::to_string(k)] = n;
  for (auto [k, n] : r.phi_points) pp[std::to_string(k)] = n;
  j["surface_points"] = sp;
  j["phi_points"] = pp;
  j["contained_lines"] = r.contained_lines;
  j["residual_degree"] = r.residual_degree ? nlohmann::json(*r.residual_degree) : nlohmann::json(nullptr);
  j["residual_multiplicities_unknown"] = r.residual_flagged;
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::json to_json(const ContainmentVerdict& v) {
  nlohmann::json j;
  j["verdict"] = to_string(v.verdict);
  j["certificate"] = v.certificate;
  if (v.witness) j["witness"] = v.witness->to_string();
  j["ext_degree"] = v.ext_degree;
  j["points_on_phi"] = v.points_on_phi;
  j["bezout_threshold"] = v.bezout_threshold;
  j["assertions"] = v.assertions;
  j["detail"] = v.detail;
  return j;
}

nlohmann::json to_json(const BoundCheck& b) {
  return {{"N", b.N},
          {"B", b.B},
          {"exact", to_string(b.exact)},
          {"delta", b.delta},
          {"holds", b.holds},
          {"tight", b.tight},
          {"contradiction", b.contradiction},
          {"containment", to_json(b.containment)},
          {"assertions", b.assertions}};
}

nlohmann::json to_json(const Classification& c, const Field& F) {
  nlohmann::json j;
  j["profile"] = to_json(c.profile, F);
  j["containment"] = to_json(c.containment);
  j["predicted"] = c.predicted ? nlohmann::json(to_string(*c.predicted)) : nlohmann::json(nullptr);
  j["nu1_class"] = c.nu1_class;
  j["alarms"] = c.alarms;
  return j;
}

}  // namespace frobsurf
