#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobsurf/series.hpp"
#include "json.hpp"

namespace frobsurf {

using Orders4 = std::array<std::size_t, 4>;
using Orders2 = std::array<std::size_t, 2>;

struct OrderOptions {
  int trials = 5;          // smooth points kept per extension degree
  unsigned max_ext = 6;    // extension degrees 1..max_ext are sampled
  std::uint64_t seed = 1;
  std::size_t truncation = 0;  // 0: 2(q + delta) + 8
  std::uint64_t point_budget = kDefaultPointBudget;
  std::optional<int> genus;    // enables the Weierstrass-count check
};

struct ChartSample {
  LocalChart chart;
  unsigned ext_degree = 1;
};

struct OrderSample {
  std::string point;
  unsigned ext_degree = 1;
  Orders4 j{};
};

/// Degree used for bounds and truncations: the asserted delta, else estimated.
int curve_degree(const CurveSpec& C);
std::size_t order_truncation(const CurveSpec& C, const OrderOptions& opts);

/// Charts at random smooth points over GF(q^m), m = 1..max_ext.
std::vector<ChartSample> sample_charts(const CurveSpec& C, const OrderOptions& opts);

/// Rank jumps of the coefficient vectors of x(t).  DegenerateCurve when the
/// rank stays below 4 past the curve degree, TruncationTooSmall otherwise.
Orders4 point_orders(const LocalChart& chart, std::optional<int> delta = std::nullopt);

struct GenericOrders {
  Orders4 eps{};
  std::vector<OrderSample> samples;
};
GenericOrders generic_orders(const CurveSpec& C, const OrderOptions& opts = {});
GenericOrders generic_orders_on(const std::vector<ChartSample>& charts, std::optional<int> delta);

/// det(twisted x, x, D^(a)x, D^(b)x) as a series.
TruncatedSeries frobenius_wronskian(const LocalChart& chart, std::size_t a, std::size_t b);

struct FrobeniusOrders {
  Orders2 nu{};
  /// Every rejected candidate pair was judged zero from truncated series only.
  bool probabilistic = false;
  std::vector<std::string> notes;
};
FrobeniusOrders frobenius_orders(const CurveSpec& C, const Orders4& eps, const OrderOptions& opts = {});
FrobeniusOrders frobenius_orders_on(const std::vector<ChartSample>& charts, const Orders4& eps);

/// (I, eps_I): the generic order missing from nu.  InconsistentProfile if nu is not inside eps.
std::pair<int, std::size_t> q_deleted_order(const Orders4& eps, const Orders2& nu);

struct DegeneracyResult {
  bool degenerate = false;
  std::optional<Coords> plane;               // when degenerate
  std::vector<std::string> spanning_points;  // when not degenerate
  unsigned ext_degree = 1;
};
DegeneracyResult is_degenerate(const CurveSpec& C, const OrderOptions& opts = {});

/// Membership in the list of admissible order sequences of space curves.
bool validate_order_sequence(const Orders4& eps, std::uint32_t p);

struct OrderProfile {
  int delta = 0;
  std::uint64_t q = 0;
  bool degenerate = false;
  std::optional<Coords> plane;
  std::optional<Orders4> eps;
  std::optional<Orders2> nu;
  std::optional<int> deleted_index;
  std::optional<std::size_t> deleted_order;
  bool classical = false;
  bool frobenius_classical = false;
  bool nu_probabilistic = false;
  std::uint64_t seed = 0;
  std::size_t truncation = 0;
  std::vector<OrderSample> evidence;
  std::vector<std::string> alarms;
  std::vector<std::string> notes;
};

OrderProfile order_profile(const CurveSpec& C, const OrderOptions& opts = {});

/// Checks a finished profile against the structural facts every profile must satisfy.
std::vector<std::string> profile_alarms(const OrderProfile& prof, std::uint32_t p);

nlohmann::json to_json(const OrderProfile& prof, const Field& F);

}  // namespace frobsurf
