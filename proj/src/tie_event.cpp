#include "tiectl/tie_event.hpp"

#include <algorithm>

#include "tiectl/error.hpp"

namespace tiectl {

std::string_view verb(TieKind kind) {
  switch (kind) {
    case TieKind::EliminateOne: return "eliminate";
    case TieKind::SelectWinner: return "pick";
    case TieKind::OrientPair: return "orient";
    case TieKind::SelectSurvivor: return "keep";
  }
  return "?";
}

std::vector<Decision> Trace::decisions() const {
  std::vector<Decision> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.second);
  return out;
}

void check_decision(const TieEvent& event, const Decision& d) {
  if (d.kind != event.kind) {
    throw ResolverError("expected a '" + std::string(verb(event.kind)) + "' decision at " + event.stage +
                        ", got '" + std::string(verb(d.kind)) + "'");
  }
  const auto member = [&](CandidateId c) {
    return std::find(event.tied.begin(), event.tied.end(), c) != event.tied.end();
  };
  if (!member(d.choice)) {
    throw ResolverError("decision at " + event.stage + " names a candidate outside the tied set");
  }
  if (event.kind == TieKind::OrientPair) {
    if (d.other == d.choice || !member(d.other)) {
      throw ResolverError("orientation at " + event.stage + " does not match the tied pair");
    }
  }
}

}  // namespace tiectl
