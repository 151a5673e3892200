#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiectl/control.hpp"

namespace tiectl {

struct BenchConfig {
  std::vector<std::string> rules;          // rule spec texts
  std::vector<std::string> profile_files;  // loaded with read_file
  int random_profiles = 0;                 // impartial culture instances
  int m = 4;
  int n = 7;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
  std::string candidate;  // empty: the first candidate of every instance
  bool parallel = true;   // instances run on OpenMP threads
};

struct BenchRecord {
  std::string rule;
  std::string source;
  int m = 0;
  std::int64_t n = 0;
  std::string candidate;
  std::string status;  // "yes", "no", "budget" or "error: ..."
  std::uint64_t nodes_explored = 0;
  double wall_ms = 0;
};

struct BenchReport {
  std::vector<BenchRecord> records;

  struct Summary {
    double p50 = 0, p90 = 0, p99 = 0, max = 0;
  };
  Summary wall_ms() const;
  Summary nodes() const;

  /// Deterministic JSON; with include_times = false it depends only on the config.
  std::string to_json(bool include_times = true) const;
};

BenchReport bench_control(const BenchConfig& config);

}  // namespace tiectl
