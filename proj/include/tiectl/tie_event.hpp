#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tiectl/candidate_set.hpp"

namespace tiectl {

enum class TieKind { EliminateOne, SelectWinner, OrientPair, SelectSurvivor };

/// Verb used in decision logs: eliminate / pick / orient / keep.
std::string_view verb(TieKind kind);

/// A point where the rule cannot continue without a choice. `tied` is sorted
/// ascending; for OrientPair it is the two candidates of the match.
struct TieEvent {
  std::string stage;
  TieKind kind = TieKind::SelectWinner;
  std::vector<CandidateId> tied;

  friend bool operator==(const TieEvent&, const TieEvent&) = default;
};

/// For OrientPair, `choice` beats `other`. Every other kind leaves `other` at -1.
struct Decision {
  TieKind kind = TieKind::SelectWinner;
  CandidateId choice = -1;
  CandidateId other = -1;

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct Trace {
  std::vector<std::pair<TieEvent, Decision>> events;
  CandidateId winner = -1;

  std::vector<Decision> decisions() const;
};

class Resolver {
 public:
  virtual ~Resolver() = default;
  virtual Decision resolve(const TieEvent& event) = 0;
};

/// Throws ResolverError unless `d` is a legal answer to `event`.
void check_decision(const TieEvent& event, const Decision& d);

}  // namespace tiectl
