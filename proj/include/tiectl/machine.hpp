#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tiectl/profile.hpp"
#include "tiectl/rule_spec.hpp"
#include "tiectl/tie_event.hpp"

namespace tiectl {

/// Everything a paused rule needs to resume. Plain data so the control search
/// can copy, compare and hash it.
struct ExecState {
  int stage = 0;  // hybrid: 0 first stage, 1 second stage
  int phase = 0;
  int round = 0;
  CandidateSet alive;
  // survivor selection in progress: `kept` is settled, `pool` still selectable
  CandidateSet kept;
  CandidateSet pool;
  int slots = 0;
  CandidateId last_pick = -1;
  std::vector<CandidateId> node_winner;  // cup nodes / cup_1 groups
  std::vector<std::int8_t> orient;       // per pair: 0 unknown, 1 lower id wins, 2 higher id wins
  CandidateId winner = -1;

  friend bool operator==(const ExecState&, const ExecState&) = default;
};

struct ExecStateHash {
  std::size_t operator()(const ExecState& s) const noexcept;
};

/// Either the finished winner or the next tie the rule is waiting on.
struct Step {
  bool finished = false;
  CandidateId winner = -1;
  TieEvent event;
};

/// A rule as a resumable process: advance() runs until the next tie (or the
/// end), apply() feeds the answer back in.
class RuleMachine {
 public:
  virtual ~RuleMachine() = default;

  virtual ExecState start() const = 0;
  virtual Step advance(ExecState& state) const = 0;
  /// Validates `d` against `event` and applies it.
  virtual void apply(ExecState& state, const TieEvent& event, const Decision& d) const = 0;

  /// Conservative: false only when no continuation from `state` can make p win.
  virtual bool may_still_win(const ExecState& state, CandidateId p) const;

  virtual int num_candidates() const = 0;
};

/// Machines that can also run on a subset of the candidates (hybrid stage 2).
class SubsetMachine : public RuleMachine {
 public:
  ExecState start() const override { return start_on(CandidateSet::first(num_candidates())); }
  virtual ExecState start_on(CandidateSet alive) const = 0;
};

std::unique_ptr<RuleMachine> make_machine(const RuleSpec& spec, const Profile& profile);
std::unique_ptr<RuleMachine> make_cup_machine(const MajorityRelation& relation, const CupSchedule& schedule);

/// Index of the unordered pair {i,j} in ExecState::orient.
inline std::size_t pair_index(int m, CandidateId i, CandidateId j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j);
}

/// Runs a machine to completion, asking `resolver` at every tie.
Trace run(const RuleMachine& machine, Resolver& resolver);

}  // namespace tiectl
