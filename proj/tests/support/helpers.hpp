#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tiectl/control.hpp"
#include "tiectl/policy.hpp"
#include "tiectl/profile.hpp"

namespace th {

using namespace tiectl;

// make({"a","b","c"}, {{2, "a>b>c"}, {1, "b>c>a"}})
inline Profile make(const std::vector<std::string>& names, const std::vector<std::pair<int, std::string>>& votes) {
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < names.size(); ++i) cands.push_back({static_cast<CandidateId>(i), names[i]});
  std::vector<Ballot> ballots;
  for (const auto& [w, text] : votes) {
    Ballot b;
    b.weight = w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '>')) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == tok) b.ranking.push_back(static_cast<CandidateId>(i));
      }
    }
    ballots.push_back(std::move(b));
  }
  return Profile(std::move(cands), std::move(ballots));
}

inline std::vector<std::string> names(const Profile& p, CandidateSet s) {
  std::vector<std::string> out;
  s.for_each([&](CandidateId c) { out.push_back(p.name(c)); });
  return out;
}

// Resolver that records events and answers from a fixed list of choices.
class Scripted : public Resolver {
 public:
  explicit Scripted(std::vector<Decision> answers = {}) : answers_(std::move(answers)) {}
  Decision resolve(const TieEvent& e) override {
    seen.push_back(e);
    if (next_ < answers_.size()) return answers_[next_++];
    Decision d{e.kind, e.tied.front(), -1};
    if (e.kind == TieKind::OrientPair) d.other = e.tied[1];
    return d;
  }
  std::vector<TieEvent> seen;

 private:
  std::vector<Decision> answers_;
  std::size_t next_ = 0;
};

inline bool replays_to(const RuleMachine& machine, const ControlAnswer& a, CandidateId p) {
  return a.controllable && a.witness && replay_witness(machine, *a.witness) == p;
}

}  // namespace th
