#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsurf/bounds.hpp"
#include "frobsurf/orders.hpp"
#include "json.hpp"

namespace frobsurf {

struct FcResult {
  bool classical = false;
  bool h_zero = false;
  std::vector<std::string> warnings;
};

/// f does not divide h.  IrreducibilityNotAsserted unless S asserts it.
FcResult frobenius_classicality(const Surface& S);
inline bool is_frobenius_classical(const Surface& S) { return frobenius_classicality(S).classical; }

/// {f, h} with delta d(d+q-1).  FrobeniusNonClassical otherwise.
CurveSpec phi_curve(const Surface& S);
/// d(d + q - 1).
int phi_degree(const Surface& S);

/// F_q-lines lying on V(f, h).
std::vector<Line> lines_in_phi(const Surface& S);

/// Singular points of S over the smallest GF(q^k), k <= max_ext, that has any.
struct SingularSearch {
  unsigned ext_degree = 0;  // 0: none found within the budget
  std::vector<ProjectivePoint> points;
};
SingularSearch find_singular_points(const Surface& S, unsigned max_ext = 4,
                                    std::uint64_t budget = kDefaultPointBudget);

enum class Containment { Contained, NotContained, Unknown };
const char* to_string(Containment c);

struct ContainmentOptions {
  unsigned max_ext = 6;
  std::uint64_t point_budget = kDefaultPointBudget;
  std::uint64_t seed = 1;
  int charts = 3;  // charts tried for series evidence
};

struct ContainmentVerdict {
  Containment verdict = Containment::Unknown;
  /// "witness" | "ideal" | "bezout" | "series"
  std::string certificate;
  std::optional<ProjectivePoint> witness;
  unsigned ext_degree = 0;
  std::uint64_t points_on_phi = 0;  // distinct points of C seen with h = 0
  std::uint64_t bezout_threshold = 0;
  std::vector<std::string> assertions;  // the hypotheses the verdict consumed
  std::string detail;
};

/// Is the curve a component of Phi^S?
ContainmentVerdict curve_in_phi(const Surface& S, const CurveSpec& C, const ContainmentOptions& opts = {});

struct BoundCheck {
  std::uint64_t N = 0;
  std::int64_t B = 0;
  Rational exact;
  int delta = 0;
  bool holds = false;
  bool tight = false;
  /// Bound violated on input with every hypothesis asserted.
  bool contradiction = false;
  ContainmentVerdict containment;
  std::vector<std::string> assertions;
};

/// N = #C(F_q) against floor(delta(d+q-1)/2).  HypothesisNotMet names the failed premise.
BoundCheck verify_bound(const Surface& S, const CurveSpec& C, const ContainmentOptions& opts = {});

struct Classification {
  OrderProfile profile;
  ContainmentVerdict containment;
  /// Contained / NotContained when the orders imply it.
  std::optional<Containment> predicted;
  std::string nu1_class;  // "nu1=1", "nu1>1", or "degenerate"
  std::vector<std::string> alarms;
};

/// Orders of C plus where it sits relative to Phi^S; disagreements become alarms.
Classification classify(const CurveSpec& C, const Surface& S, const OrderOptions& oopts = {},
                        const ContainmentOptions& copts = {});

enum class Applicability { Applicable, ApplicableUnderConjecture, NotApplicable };
const char* to_string(Applicability a);

struct ApplicabilityDecision {
  Applicability decision = Applicability::NotApplicable;
  std::string rule;
};
ApplicabilityDecision bound_applicability(const Classification& cls, const Surface& S, bool assume_conjecture);

struct SurfaceReportOptions {
  unsigned max_k = 2;
  std::uint64_t point_budget = kDefaultPointBudget;
  bool lines = true;
};

struct SurfaceReport {
  std::uint64_t q = 0;
  int d = 0;
  bool frobenius_classical = false;
  std::optional<int> phi_degree;
  std::map<unsigned, std::uint64_t> surface_points;
  std::map<unsigned, std::uint64_t> phi_points;
  std::vector<std::string> contained_lines;
  std::optional<int> residual_degree;
  bool residual_flagged = false;  // line multiplicities not computed
  std::string h;
  std::vector<std::string> warnings;
};

SurfaceReport surface_report(const Surface& S, const SurfaceReportOptions& opts = {});

nlohmann::json to_json(const SurfaceReport& r);
nlohmann::json to_json(const ContainmentVerdict& v);
nlohmann::json to_json(const BoundCheck& b);
nlohmann::json to_json(const Classification& c, const Field& F);

}  // namespace frobsurf
