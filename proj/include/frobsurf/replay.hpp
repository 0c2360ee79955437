#pragma once

#include <string>
#include <vector>

#include "frobsurf/frobsurface.hpp"
#include "frobsurf/jobfile.hpp"
#include "json.hpp"

namespace frobsurf {

/// Built-in job file text for "2.2", "4.6", "4.8", "4.9".  Usage error otherwise.
const std::string& builtin_job(const std::string& id);
std::vector<std::string> builtin_job_ids();

struct ReplayCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReplayOptions {
  std::uint64_t seed = 1;
  unsigned max_ext = 6;
  int trials = 5;
  std::uint64_t point_budget = kDefaultPointBudget;
};

struct ReplayResult {
  std::string id;
  std::vector<ReplayCheck> checks;
  std::vector<std::string> notes;
  std::vector<std::string> alarms;  // consistency alarms raised along the way
  nlohmann::json report;

  bool passed() const;
};

ReplayResult run_replay(const std::string& id, const ReplayOptions& opts = {});

}  // namespace frobsurf
