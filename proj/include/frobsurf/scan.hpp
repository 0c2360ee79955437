#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsurf/frobsurface.hpp"
#include "json.hpp"

namespace frobsurf {

struct ScanConfig {
  std::uint32_t p = 2;
  unsigned e = 1;
  int d = 2;
  std::uint64_t point_budget = kDefaultPointBudget;
  unsigned max_k = 2;  // Phi^S point counts over GF(q^k), k <= max_k
  std::uint64_t max_surfaces = 2'000'000;
  std::uint64_t seed = 1;
  bool irreducible_only = true;  // quadrics: reducible forms get a stub record
  bool smooth_only = false;
  std::string out;  // JSONL path; empty keeps records in memory only
  std::uint64_t checkpoint_every = 10'000;
  bool resume = false;
  unsigned jobs = 1;
};

enum class ConjectureFlag { Consistent, NeedsCAS, CandidateCounterexample };
const char* to_string(ConjectureFlag f);

struct ScanRecord {
  std::string key;
  std::uint64_t q = 0;
  int d = 0;
  bool fc = false;
  int phi_degree = 0;
  std::vector<std::string> lines;
  int residual_degree = 0;
  std::map<unsigned, std::uint64_t> points;
  ConjectureFlag flag = ConjectureFlag::Consistent;
  std::vector<std::string> assertions;
};

nlohmann::json to_json(const ScanRecord& r);
/// One line of JSONL, keys sorted.
std::string to_jsonl(const ScanRecord& r);

/// Monomials of degree d in grlex order, largest first.
std::vector<Exponents> monomials_of_degree(int d);

/// (q^M - 1)/(q - 1) with M = C(d+3, 3).
std::uint64_t family_size(std::uint64_t q, int d);

/// The surface with the given index in canonical order: coefficient vectors
/// (over the grlex monomials) with leading coefficient 1, increasing lexicographically.
Poly surface_at(const FieldPtr& F, int d, std::uint64_t index);
std::string surface_key(const Poly& f);

/// Calls fn(index, f) over the family from `start`.  BudgetExceeded when too large.
void enumerate_surfaces(const ScanConfig& cfg, const std::function<void(std::uint64_t, const Poly&)>& fn,
                        std::uint64_t start = 0);

/// f is not a product of two linear forms over the algebraic closure
/// (searched over GF(q^2), which holds every such factor).
bool quadric_is_irreducible(const Poly& f);

/// Full analysis of one surface.
ScanRecord analyze_surface(const Poly& f, const ScanConfig& cfg);

struct ScanSummary {
  std::uint64_t processed = 0;
  std::uint64_t irreducible = 0;
  std::uint64_t frobenius_classical = 0;
  std::map<std::string, std::uint64_t> flags;
  std::map<int, std::uint64_t> phi_degrees;  // over FC records
  std::uint64_t resumed_from = 0;
};

nlohmann::json to_json(const ScanSummary& s);

/// Scans the whole family; writes JSONL to cfg.out (with checkpoints) when set.
/// `sink` sees every record in canonical order.
ScanSummary scan_conjecture(const ScanConfig& cfg,
                            const std::function<void(const ScanRecord&)>& sink = nullptr);

void export_records(const std::vector<ScanRecord>& records, const std::string& path);

}  // namespace frobsurf
