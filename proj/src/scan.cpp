#include "frobsurf/scan.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace frobsurf {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > UINT64_MAX / b) return UINT64_MAX;
    r *= b;
  }
  return r;
}

// All normalized linear forms over F.
std::vector<Poly> linear_forms(const FieldPtr& F) {
  const Elem Q = F->size();
  std::vector<Poly> out;
  for (int lead = 0; lead < 4; ++lead) {
    const int free = 3 - lead;
    const std::uint64_t n = ipow(Q, free);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      std::vector<Term> terms;
      Exponents le{0, 0, 0, 0};
      le[lead] = 1;
      terms.push_back({le, 1});
      std::uint64_t rest = idx;
      for (int j = 3; j > lead; --j) {
        const Elem c = static_cast<Elem>(rest % Q);
        rest /= Q;
        Exponents e{0, 0, 0, 0};
        e[j] = 1;
        if (c) terms.push_back({e, c});
      }
      out.push_back(Poly::from_terms(F, terms));
    }
  }
  return out;
}

bool point_on_some_line(const ProjectivePoint& P, const std::vector<std::array<Poly, 2>>& eqs) {
  for (const auto& e : eqs)
    if (e[0].embedded(P.field).eval(P.coords) == 0 && e[1].embedded(P.field).eval(P.coords) == 0) return true;
  return false;
}

}  // namespace

const char* to_string(ConjectureFlag f) {
  switch (f) {
    case ConjectureFlag::Consistent: return "Consistent";
    case ConjectureFlag::NeedsCAS: return "NeedsCAS";
    default: return "CandidateCounterexample";
  }
}

nlohmann::json to_json(const ScanRecord& r) {
  nlohmann::json pts = nlohmann::json::object();
  for (auto [k, n] : r.points) pts[std::to_string(k)] = n;
  return {{"key", r.key},
          {"q", r.q},
          {"d", r.d},
          {"fc", r.fc},
          {"phi_degree", r.phi_degree},
          {"lines", r.lines},
          {"residual_degree", r.residual_degree},
          {"points", pts},
          {"flag", to_string(r.flag)},
          {"assertions", r.assertions}};
}

std::string to_jsonl(const ScanRecord& r) { return to_json(r).dump() + "\n"; }

std::vector<Exponents> monomials_of_degree(int d) {
  std::vector<Exponents> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      for (int c = d - a - b; c >= 0; --c)
        out.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c),
                       static_cast<std::uint32_t>(d - a - b - c)});
  std::sort(out.begin(), out.end(), grlex_before);
  return out;
}

std::uint64_t family_size(std::uint64_t q, int d) {
  const unsigned M = static_cast<unsigned>((d + 3) * (d + 2) * (d + 1) / 6);
  const std::uint64_t top = ipow(q, M);
  if (top == UINT64_MAX) return UINT64_MAX;
  return (top - 1) / (q - 1);
}

Poly surface_at(const FieldPtr& F, int d, std::uint64_t index) {
  const auto mons = monomials_of_degree(d);
  const std::size_t M = mons.size();
  const std::uint64_t Q = F->size();
  // Leading position M-1 comes first (one vector), then M-2 (Q vectors), ...
  std::size_t lead = M - 1;
  for (;;) {
    const std::uint64_t block = ipow(Q, static_cast<unsigned>(M - 1 - lead));
    if (index < block) break;
    index -= block;
    if (lead == 0) throw Error(Errc::DimensionMismatch, "surface index past the family");
    --lead;
  }
  std::vector<Term> terms{{mons[lead], 1}};
  for (std::size_t j = M - 1; j > lead; --j) {
    const Elem c = static_cast<Elem>(index % Q);
    index /= Q;
    if (c) terms.push_back({mons[j], c});
  }
  return Poly::from_terms(F, terms);
}

std::string surface_key(const Poly& f) {
  std::string key;
  bool first = true;
  for (const auto& m : monomials_of_degree(f.degree())) {
    if (!first) key += ',';
    key += f.field()->to_string(f.coeff(m));
    first = false;
  }
  return key;
}

void enumerate_surfaces(const ScanConfig& cfg, const std::function<void(std::uint64_t, const Poly&)>& fn,
                        std::uint64_t start) {
  const FieldPtr F = make_field(cfg.p, cfg.e);
  const std::uint64_t n = family_size(F->size(), cfg.d);
  if (n > cfg.max_surfaces)
    throw Error(Errc::BudgetExceeded, "family of " + std::to_string(n) + " surfaces exceeds the scan budget");
  for (std::uint64_t i = start; i < n; ++i) fn(i, surface_at(F, cfg.d, i));
}

bool quadric_is_irreducible(const Poly& f) {
  if (f.degree() != 2) throw Error(Errc::BadDegree, "quadric expected");
  const FieldPtr ext = f.field()->extension(2);
  const Poly fe = f.embedded(ext);
  // cached per field: the forms only depend on it
  static thread_local std::map<const Field*, std::vector<Poly>> cache;
  auto it = cache.find(ext.get());
  if (it == cache.end()) it = cache.emplace(ext.get(), linear_forms(ext)).first;
  for (const auto& L : it->second)
    if (divides(L, fe)) return false;
  return true;
}

ScanRecord analyze_surface(const Poly& f, const ScanConfig& cfg) {
  const FieldPtr& F = f.field();
  ScanRecord r;
  r.key = surface_key(f);
  r.q = F->size();
  r.d = f.degree();
  const Poly h = build_h(f);
  r.fc = !h.is_zero() && !divides(f, h);
  if (r.fc) r.phi_degree = r.d * (r.d + static_cast<int>(r.q) - 1);

  if (r.d == 2 && cfg.irreducible_only) {
    if (!quadric_is_irreducible(f)) {
      r.assertions.push_back("reducible over GF(q^2): not analyzed");
      r.residual_degree = r.phi_degree;
      return r;
    }
    r.assertions.push_back("irreducible (checked)");
  } else {
    r.assertions.push_back("irreducible (assumed)");
  }
  if (cfg.smooth_only) {
    Surface S{f, true};
    if (find_singular_points(S, cfg.max_k, cfg.point_budget).ext_degree) {
      r.assertions.push_back("singular: not analyzed");
      r.residual_degree = r.phi_degree;
      return r;
    }
    r.assertions.push_back("no singular point over GF(q^k), k <= " + std::to_string(cfg.max_k));
  }
  if (!r.fc) {
    r.assertions.push_back("Frobenius non-classical: Phi^S is the whole surface");
    return r;
  }

  const std::vector<Poly> phi{f, h};
  std::vector<std::array<Poly, 2>> eqs;
  if (r.q <= 16) {
    for (const auto& L : lines_in_phi(Surface{f, true})) {
      r.lines.push_back(L.key());
      eqs.push_back(L.equations());
    }
  } else {
    r.assertions.push_back("line search skipped for q > 16");
  }
  r.residual_degree = r.phi_degree - static_cast<int>(r.lines.size());
  if (!r.lines.empty()) r.assertions.push_back("line multiplicities not computed; each line counted once");

  bool off_lines = false;
  for (unsigned k = 1; k <= cfg.max_k; ++k) {
    if (ipow(ipow(r.q, k), 3) > cfg.point_budget) break;
    std::uint64_t n = 0;
    for_each_point(
        F, phi, k,
        [&](const ProjectivePoint& P) {
          ++n;
          if (r.residual_degree == 0 && !off_lines && !point_on_some_line(P, eqs)) off_lines = true;
        },
        cfg.point_budget);
    r.points[k] = n;
  }

  if (r.residual_degree == 0) {
    if (off_lines) {
      r.flag = ConjectureFlag::NeedsCAS;
      r.assertions.push_back("residual degree 0 but points of Phi^S lie off the lines");
    } else {
      r.assertions.push_back("Phi^S is the union of its F_q-lines (checked on points)");
    }
  } else if (r.q < 3) {
    r.assertions.push_back("non-degenerate curves have degree >= 3 > q");
  } else if (r.residual_degree < 3) {
    r.assertions.push_back("residual degree below 3 leaves no non-degenerate component");
  } else {
    r.flag = ConjectureFlag::NeedsCAS;
  }
  return r;
}

nlohmann::json to_json(const ScanSummary& s) {
  nlohmann::json deg = nlohmann::json::object();
  for (auto [d, n] : s.phi_degrees) deg[std::to_string(d)] = n;
  return {{"processed", s.processed},         {"irreducible", s.irreducible},
          {"frobenius_classical", s.frobenius_classical}, {"flags", s.flags},
          {"phi_degrees", deg},               {"resumed_from", s.resumed_from}};
}

namespace {

void tally(ScanSummary& s, const ScanRecord& r) {
  ++s.processed;
  const bool reducible = std::any_of(r.assertions.begin(), r.assertions.end(),
                                     [](const std::string& a) { return a.rfind("reducible", 0) == 0; });
  if (!reducible) ++s.irreducible;
  if (r.fc) {
    ++s.frobenius_classical;
    ++s.phi_degrees[r.phi_degree];
  }
  ++s.flags[to_string(r.flag)];
}

ScanSummary summary_from_json(const nlohmann::json& j) {
  ScanSummary s;
  s.processed = j.at("processed");
  s.irreducible = j.at("irreducible");
  s.frobenius_classical = j.at("frobenius_classical");
  for (auto& [k, v] : j.at("flags").items()) s.flags[k] = v;
  for (auto& [k, v] : j.at("phi_degrees").items()) s.phi_degrees[std::stoi(k)] = v;
  return s;
}

}  // namespace

ScanSummary scan_conjecture(const ScanConfig& cfg, const std::function<void(const ScanRecord&)>& sink) {
  const FieldPtr F = make_field(cfg.p, cfg.e);
  const std::uint64_t n = family_size(F->size(), cfg.d);
  if (n > cfg.max_surfaces)
    throw Error(Errc::BudgetExceeded, "family of " + std::to_string(n) + " surfaces exceeds the scan budget");

  ScanSummary summary;
  std::uint64_t start = 0;
  std::ofstream out;
  const std::string ckpt = cfg.out + ".ckpt";
  if (!cfg.out.empty()) {
    std::uintmax_t keep = 0;
    if (cfg.resume && std::filesystem::exists(ckpt)) {
      std::ifstream in(ckpt);
      nlohmann::json j;
      try {
        in >> j;
        start = j.at("next_index");
        keep = j.at("bytes");
        summary = summary_from_json(j.at("summary"));
      } catch (const std::exception& e) {
        throw Error(Errc::IoError, "unreadable checkpoint " + ckpt + ": " + e.what());
      }
      summary.resumed_from = start;
      // drop anything written after the checkpoint
      if (std::filesystem::exists(cfg.out)) std::filesystem::resize_file(cfg.out, keep);
      out.open(cfg.out, std::ios::binary | std::ios::app);
    } else {
      out.open(cfg.out, std::ios::binary | std::ios::trunc);
    }
    if (!out) throw Error(Errc::IoError, "cannot write " + cfg.out);
  }

  auto checkpoint = [&](std::uint64_t next) {
    if (cfg.out.empty()) return;
    out.flush();
    nlohmann::json j{{"next_index", next},
                     {"bytes", static_cast<std::uint64_t>(out.tellp())},
                     {"summary", to_json(summary)}};
    std::ofstream c(ckpt, std::ios::trunc);
    c << j.dump() << "\n";
    if (!c) throw Error(Errc::IoError, "cannot write " + ckpt);
  };

  const unsigned jobs = std::max(1u, cfg.jobs);
  const std::uint64_t batch = 64 * jobs;
  std::uint64_t since_ckpt = 0;
  for (std::uint64_t lo = start; lo < n; lo += batch) {
    const std::uint64_t hi = std::min(n, lo + batch);
    std::vector<ScanRecord> recs(hi - lo);
    std::atomic<std::uint64_t> next{lo};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto worker = [&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < hi;) {
        try {
          recs[i - lo] = analyze_surface(surface_at(F, cfg.d, i), cfg);
        } catch (...) {
          std::lock_guard lock(fail_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) {
      checkpoint(lo);
      std::rethrow_exception(failure);
    }
    for (const auto& r : recs) {
      tally(summary, r);
      if (out.is_open()) out << to_jsonl(r);
      if (sink) sink(r);
    }
    since_ckpt += hi - lo;
    if (since_ckpt >= cfg.checkpoint_every) {
      checkpoint(hi);
      since_ckpt = 0;
    }
  }
  if (out.is_open()) {
    checkpoint(n);
    out.close();
  }
  return summary;
}

void export_records(const std::vector<ScanRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  for (const auto& r : records) out << to_jsonl(r);
  if (!out) throw Error(Errc::IoError, "write failed: " + path);
}

}  // namespace frobsurf
