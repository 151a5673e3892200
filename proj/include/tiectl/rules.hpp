#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tiectl/machine.hpp"

namespace tiectl {

/// Co-winners of a rule whose only tie is the final pick (RuleSpec::single_stage()).
CandidateSet single_stage_winners(const RuleSpec& spec, const Profile& profile);

struct KemenyResult {
  std::int64_t score = 0;
  std::vector<std::vector<CandidateId>> rankings;  // lexicographic order
};
KemenyResult kemeny_optimal_rankings(const Profile& profile, int bound = 6);

/// Copeland^alpha after fixing some tied pairs; each entry is (winner, loser).
CandidateSet copeland_with_orientation(const Profile& profile,
                                       const std::vector<std::pair<CandidateId, CandidateId>>& orientation,
                                       const Rational& alpha, bool second_order = false);

/// Copeland^alpha scores on a relation, with `orient` (ExecState layout, may be
/// empty) fixing some ties. Scores are whole wins plus alpha per remaining tie.
std::vector<Rational> copeland_scores(const MajorityRelation& relation, CandidateSet alive,
                                      const std::vector<std::int8_t>& orient, const Rational& alpha);

Trace stv(const Profile& profile, Resolver& resolver);
Trace baldwin(const Profile& profile, Resolver& resolver);
Trace coombs(const Profile& profile, bool simplified, Resolver& resolver);
Trace plurality_runoff(const Profile& profile, Resolver& resolver);
Trace cup(const MajorityRelation& relation, const CupSchedule& schedule, Resolver& resolver);
Trace hybrid(const RuleSpec& hybrid_spec, const Profile& profile, Resolver& resolver);
Trace run_rule(const RuleSpec& spec, const Profile& profile, Resolver& resolver);

}  // namespace tiectl
