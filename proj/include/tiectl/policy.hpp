#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tiectl/profile.hpp"
#include "tiectl/tie_event.hpp"

namespace tiectl {

struct TieBreakPolicy {
  enum class Kind { Linear, Orientation, Log };
  Kind kind = Kind::Linear;
  std::vector<CandidateId> order;                               // Linear, most preferred first
  std::vector<std::pair<CandidateId, CandidateId>> directions;  // Orientation, (winner, loser)
  std::vector<Decision> log;                                    // Log

  static TieBreakPolicy linear(std::vector<CandidateId> order);
  static TieBreakPolicy orientation(std::vector<std::pair<CandidateId, CandidateId>> directions);
  static TieBreakPolicy decisions(std::vector<Decision> log);
};

/// `linear:a,b,c`, `orient:a>c;c>b` or `log:eliminate b;pick p;keep x;orient a>b`.
TieBreakPolicy parse_policy(std::string_view text, const std::vector<Candidate>& candidates);
std::string format_policy(const TieBreakPolicy& policy, const std::vector<Candidate>& candidates);

std::string format_decision(const Decision& d, const std::vector<Candidate>& candidates);
/// Same as format_policy on a log policy: `log:` followed by `;`-separated decisions.
std::string format_log(const std::vector<Decision>& log, const std::vector<Candidate>& candidates);

/// Answers one event. `cursor` is the log position and only moves for log policies.
Decision resolve(const TieBreakPolicy& policy, const TieEvent& event, std::size_t& cursor);

class PolicyResolver : public Resolver {
 public:
  explicit PolicyResolver(TieBreakPolicy policy) : policy_(std::move(policy)) {}
  Decision resolve(const TieEvent& event) override { return tiectl::resolve(policy_, event, cursor_); }
  std::size_t consumed() const { return cursor_; }
  const TieBreakPolicy& policy() const { return policy_; }

 private:
  TieBreakPolicy policy_;
  std::size_t cursor_ = 0;
};

struct PolicyDiagnostics {
  bool ok = true;
  std::vector<std::string> problems;
  /// Orientation only: whether the directions contain no directed cycle.
  std::optional<bool> transitive;
};

/// Linear: must be a permutation of `candidates`. Orientation: must be
/// consistent, and, when `pm` is given, cover every tied pair inside `candidates`.
PolicyDiagnostics validate_policy(const TieBreakPolicy& policy, CandidateSet candidates,
                                  const PairwiseMatrix* pm = nullptr);

}  // namespace tiectl
