#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "numrad/ensembles.hpp"
#include "numrad/inequalities.hpp"
#include "numrad/settings.hpp"

namespace numrad {

// Families whose draws meet the entry's precondition and arity.
std::vector<Family> applicable_families(const CatalogEntry& e);

struct SweepConfig {
  EnsembleSpec spec;
  std::uint64_t trials = 100;
  std::vector<std::string> entries;  // empty: every entry the family can feed
  unsigned threads = 1;
  Settings settings;
  EvalParams params;
};

struct TrialRecord {
  std::uint64_t trial;
  BoundReport report;
};

// Key is the id, with the sign appended for signed entries ("I-FH+").
std::string report_key(const BoundReport& r);

struct SweepSummary {
  std::string key;
  std::string id;
  Sign sign = Sign::none;
  std::uint64_t trials = 0;
  std::uint64_t applicable = 0;
  std::uint64_t violations = 0;
  double min_slack = 0.0;
  double mean_slack = 0.0;
  double max_slack = 0.0;
  // Fraction of trials (both applicable, same inputs) where this rhs is
  // strictly below the other key's rhs.
  std::map<std::string, double> tighter_than;
};

struct SweepResult {
  EnsembleSpec spec;
  std::uint64_t trials = 0;
  std::vector<TrialRecord> records;  // ordered by trial, then entry order
  std::vector<SweepSummary> summaries;

  std::uint64_t violations() const;
};

// Entries the family can feed, in catalog order.
std::vector<std::string> default_entries(Family f);

// Deterministic regardless of config.threads.
SweepResult run_sweep(const SweepConfig& config);

// Pure fold of the records.
std::vector<SweepSummary> summarize(const std::vector<TrialRecord>& records,
                                    const std::vector<std::string>& entry_order);

std::string sweep_to_json(const SweepResult& r);
std::string sweep_to_csv(const SweepResult& r);

}  // namespace numrad
