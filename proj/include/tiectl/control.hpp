#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiectl/machine.hpp"
#include "tiectl/rules.hpp"

namespace tiectl {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct ControlAnswer {
  bool controllable = false;
  std::optional<std::vector<Decision>> witness;
  std::uint64_t nodes_explored = 0;
  std::string method;
};

/// p is controllable iff it is among the co-winners; the witness is the final pick.
ControlAnswer control_single_stage(const RuleSpec& spec, const Profile& profile, CandidateId p);

/// Depth-first search over tie decisions with a failure memo. Throws
/// BudgetExceeded once more than `budget` tie events have been expanded.
ControlAnswer control_search(const RuleMachine& machine, CandidateId p, std::uint64_t budget = kDefaultBudget);
ControlAnswer control_search(const RuleSpec& spec, const Profile& profile, CandidateId p,
                             std::uint64_t budget = kDefaultBudget);

/// Same answer and witness as control_search; the tree is split into a
/// frontier whose subtrees run on OpenMP threads against a shared memo.
/// `threads` <= 0 uses the OpenMP default.
ControlAnswer control_search_parallel(const RuleMachine& machine, CandidateId p,
                                      std::uint64_t budget = kDefaultBudget, int threads = 0);
ControlAnswer control_search_parallel(const RuleSpec& spec, const Profile& profile, CandidateId p,
                                      std::uint64_t budget = kDefaultBudget, int threads = 0);

/// Every candidate some tie-breaking makes the winner. With `parallel` the
/// candidates are searched concurrently.
CandidateSet put_winners(const RuleSpec& spec, const Profile& profile, std::uint64_t budget = kDefaultBudget,
                         bool parallel = true);

/// Winner sets per subtree; requires every candidate on exactly one leaf.
ControlAnswer control_cup_linear(const MajorityRelation& relation, const CupSchedule& schedule, CandidateId p);

/// Tries every orientation of the tied pairs (only acyclic ones with
/// require_transitive) and replays the cup under each. Works with repeated labels.
ControlAnswer control_cup_orientations(const MajorityRelation& relation, const CupSchedule& schedule, CandidateId p,
                                      bool require_transitive);

/// Orients every pairwise tie (p wins its own) so that no rival out-scores p
/// under Copeland. The witness replays under `copeland:...,orient_ties`.
/// With require_transitive the orientation must come from a linear order.
ControlAnswer control_copeland_orientation(const Profile& profile, CandidateId p, bool require_transitive);

struct AlphaInterval {
  bool empty = true;
  Rational lower{0};
  Rational upper{1};
  bool lower_open = false;
  bool upper_open = false;

  bool contains(const Rational& a) const;
};

/// The alpha values in [0,1] for which p is a Copeland^alpha co-winner.
AlphaInterval choose_alpha(const Profile& profile, CandidateId p);

/// Runs the rule against the log; throws ResolverError if the log does not
/// match the events (including unused trailing entries).
CandidateId replay_witness(const RuleMachine& machine, const std::vector<Decision>& log);
CandidateId replay_witness(const RuleSpec& spec, const Profile& profile, const std::vector<Decision>& log);

/// Hyb(Plurality_k, Plurality) by enumerating elimination choices when k is
/// small, or target survivor sets when m-k is small.
ControlAnswer control_bounded_hybrid(const Profile& profile, int k, CandidateId p, int bound = 6);

}  // namespace tiectl
