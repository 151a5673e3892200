#include <algorithm>

#include "tiectl/error.hpp"
#include "tiectl/rules.hpp"

namespace tiectl {

CandidateSet copeland_winners_oriented(const MajorityRelation& rel, CandidateSet alive,
                                       const std::vector<std::int8_t>& orient, const Rational& alpha,
                                       bool second_order);

std::size_t ExecStateHash::operator()(const ExecState& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(s.stage) << 32 | static_cast<std::uint32_t>(s.phase));
  mix(static_cast<std::uint64_t>(s.round) << 32 | static_cast<std::uint32_t>(s.slots));
  mix(s.alive.bits());
  mix(s.kept.bits());
  mix(s.pool.bits());
  mix(static_cast<std::uint64_t>(s.last_pick + 1) << 32 | static_cast<std::uint32_t>(s.winner + 1));
  for (CandidateId c : s.node_winner) mix(static_cast<std::uint64_t>(c + 1));
  std::uint64_t acc = 0;
  int n = 0;
  for (std::int8_t o : s.orient) {
    acc = acc << 2 | static_cast<std::uint64_t>(o);
    if (++n == 32) {
      mix(acc);
      acc = 0;
      n = 0;
    }
  }
  mix(acc);
  return static_cast<std::size_t>(h);
}

bool RuleMachine::may_still_win(const ExecState& s, CandidateId p) const {
  if (s.winner >= 0) return s.winner == p;
  if (!s.alive.contains(p)) return false;
  if (s.slots > 0 && !(s.kept | s.pool).contains(p)) return false;
  return true;
}

namespace {

Step tie(std::string stage, TieKind kind, CandidateSet tied) {
  Step st;
  st.event.stage = std::move(stage);
  st.event.kind = kind;
  st.event.tied = tied.members();
  return st;
}

Step done(CandidateId winner) {
  Step st;
  st.finished = true;
  st.winner = winner;
  return st;
}

std::string round_label(const char* rule, int round) { return std::string(rule) + " round " + std::to_string(round + 1); }

// One implementation of apply for every machine; rule-specific follow-up
// happens in the next advance().
void apply_decision(ExecState& s, const TieEvent& event, const Decision& d, int m) {
  check_decision(event, d);
  switch (d.kind) {
    case TieKind::EliminateOne:
      s.alive.erase(d.choice);
      ++s.round;
      break;
    case TieKind::SelectWinner:
      s.winner = d.choice;
      break;
    case TieKind::SelectSurvivor:
      if (!s.pool.contains(d.choice)) throw ResolverError("survivor choice is no longer selectable");
      s.kept.insert(d.choice);
      s.pool.erase(d.choice);
      --s.slots;
      s.last_pick = d.choice;
      break;
    case TieKind::OrientPair: {
      auto& o = s.orient.at(pair_index(m, d.choice, d.other));
      if (o != 0) throw ResolverError("pair oriented twice");
      o = d.choice < d.other ? 1 : 2;
      break;
    }
  }
}

void begin_selection(ExecState& s, CandidateSet settled, CandidateSet boundary, int total) {
  s.kept = settled;
  s.pool = boundary;
  s.slots = total - settled.size();
  s.last_pick = -1;
}

// True once the selection is complete; the survivors are then in s.kept.
bool selection_finished(ExecState& s) {
  if (s.slots > 0 && s.pool.size() > s.slots) return false;
  if (s.slots > 0) s.kept = s.kept | s.pool;
  s.pool = CandidateSet();
  s.slots = 0;
  s.last_pick = -1;
  return true;
}

CandidateSet min_set(const std::vector<std::int64_t>& scores, CandidateSet among) {
  CandidateSet out;
  std::int64_t best = 0;
  among.for_each([&](CandidateId c) {
    if (out.empty() || scores[c] < best) {
      best = scores[c];
      out = CandidateSet{c};
    } else if (scores[c] == best) {
      out.insert(c);
    }
  });
  return out;
}

CandidateSet max_set(const std::vector<std::int64_t>& scores, CandidateSet among) {
  CandidateSet out;
  std::int64_t best = 0;
  among.for_each([&](CandidateId c) {
    if (out.empty() || scores[c] > best) {
      best = scores[c];
      out = CandidateSet{c};
    } else if (scores[c] == best) {
      out.insert(c);
    }
  });
  return out;
}

class ProfileMachine : public SubsetMachine {
 public:
  explicit ProfileMachine(const Profile& profile) : profile_(profile) {}
  int num_candidates() const override { return profile_.num_candidates(); }
  ExecState start_on(CandidateSet alive) const override {
    ExecState s;
    s.alive = alive;
    return s;
  }
  void apply(ExecState& s, const TieEvent& e, const Decision& d) const override {
    apply_decision(s, e, d, num_candidates());
  }

 protected:
  std::int64_t n() const { return profile_.num_voters(); }
  Profile profile_;
};

class SingleStageMachine : public ProfileMachine {
 public:
  SingleStageMachine(const RuleSpec& spec, const Profile& profile) : ProfileMachine(profile), spec_(spec) {}

  Step advance(ExecState& s) const override {
    if (s.winner >= 0) return done(s.winner);
    CandidateSet w;
    if (s.alive == profile_.all()) {
      w = single_stage_winners(spec_, profile_);
    } else {
      const auto ids = s.alive.members();
      single_stage_winners(spec_, restrict(profile_, s.alive)).for_each([&](CandidateId c) { w.insert(ids[c]); });
    }
    if (w.size() == 1) {
      s.winner = w.front();
      return done(s.winner);
    }
    return tie("co-winners", TieKind::SelectWinner, w);
  }

 private:
  RuleSpec spec_;
};

class StvMachine : public ProfileMachine {
 public:
  using ProfileMachine::ProfileMachine;
  Step advance(ExecState& s) const override {
    while (true) {
      if (s.winner >= 0) return done(s.winner);
      if (s.alive.size() == 1) return done(s.winner = s.alive.front());
      const auto scores = plurality_scores(profile_, s.alive);
      CandidateSet top = max_set(scores, s.alive);
      if (2 * scores[top.front()] > n()) return done(s.winner = top.front());
      if (s.alive.size() == 2) return tie(round_label("stv", s.round), TieKind::SelectWinner, s.alive);
      CandidateSet low = min_set(scores, s.alive);
      if (low.size() > 1) return tie(round_label("stv", s.round), TieKind::EliminateOne, low);
      s.alive.erase(low.front());
      ++s.round;
    }
  }
};

class BaldwinMachine : public ProfileMachine {
 public:
  using ProfileMachine::ProfileMachine;
  Step advance(ExecState& s) const override {
    while (true) {
      if (s.winner >= 0) return done(s.winner);
      if (s.alive.size() == 1) return done(s.winner = s.alive.front());
      CandidateSet low = min_set(borda_scores(profile_, s.alive), s.alive);
      if (low.size() > 1) return tie(round_label("baldwin", s.round), TieKind::EliminateOne, low);
      s.alive.erase(low.front());
      ++s.round;
    }
  }
};

class CoombsMachine : public ProfileMachine {
 public:
  CoombsMachine(const Profile& profile, bool simplified) : ProfileMachine(profile), simplified_(simplified) {}
  Step advance(ExecState& s) const override {
    while (true) {
      if (s.winner >= 0) return done(s.winner);
      if (s.alive.size() == 1) return done(s.winner = s.alive.front());
      if (!simplified_) {
        const auto first = plurality_scores(profile_, s.alive);
        CandidateSet majority;
        s.alive.for_each([&](CandidateId c) {
          if (2 * first[c] >= n()) majority.insert(c);
        });
        if (majority.size() == 1) return done(s.winner = majority.front());
        if (majority.size() > 1) return tie(round_label("coombs", s.round), TieKind::SelectWinner, majority);
      }
      CandidateSet most_vetoed = max_set(veto_scores(profile_, s.alive), s.alive);
      if (most_vetoed.size() > 1) return tie(round_label("coombs", s.round), TieKind::EliminateOne, most_vetoed);
      s.alive.erase(most_vetoed.front());
      ++s.round;
    }
  }

 private:
  bool simplified_;
};

class RunoffMachine : public ProfileMachine {
 public:
  explicit RunoffMachine(const Profile& profile) : ProfileMachine(profile), pm_(pairwise_matrix(profile)) {}
  Step advance(ExecState& s) const override {
    while (true) {
      if (s.winner >= 0) return done(s.winner);
      if (s.phase == 0) {
        if (s.alive.size() == 1) return done(s.winner = s.alive.front());
        const auto scores = plurality_scores(profile_, s.alive);
        CandidateSet top = max_set(scores, s.alive);
        if (2 * scores[top.front()] > n()) return done(s.winner = top.front());
        if (s.alive.size() == 2) {
          s.phase = 2;
          continue;
        }
        if (top.size() >= 2) begin_selection(s, CandidateSet(), top, 2);
        else begin_selection(s, top, max_set(scores, s.alive - top), 2);
        s.phase = 1;
      }
      if (s.phase == 1) {
        if (!selection_finished(s)) return tie("runoff qualification", TieKind::SelectSurvivor, s.pool);
        s.alive = s.kept;
        s.kept = CandidateSet();
        s.phase = 2;
      }
      const CandidateId a = s.alive.front();
      const CandidateId b = (s.alive - CandidateSet{a}).front();
      if (pm_.beats(a, b)) return done(s.winner = a);
      if (pm_.beats(b, a)) return done(s.winner = b);
      return tie("runoff final", TieKind::SelectWinner, s.alive);
    }
  }

 private:
  PairwiseMatrix pm_;
};

class CopelandOrientMachine : public ProfileMachine {
 public:
  CopelandOrientMachine(const RuleSpec& spec, const Profile& profile)
      : ProfileMachine(profile),
        spec_(spec),
        rel_(MajorityRelation::from_pairwise(pairwise_matrix(profile), profile.candidates())) {}

  ExecState start_on(CandidateSet alive) const override {
    ExecState s = ProfileMachine::start_on(alive);
    const auto m = static_cast<std::size_t>(num_candidates());
    s.orient.assign(m * m, 0);
    return s;
  }

  Step advance(ExecState& s) const override {
    if (s.winner >= 0) return done(s.winner);
    const int m = num_candidates();
    for (CandidateId i : s.alive.members()) {
      for (CandidateId j = i + 1; j < m; ++j) {
        if (s.alive.contains(j) && rel_.tied(i, j) && s.orient[pair_index(m, i, j)] == 0) {
          return tie("copeland tie " + rel_.name(i) + "-" + rel_.name(j), TieKind::OrientPair, CandidateSet{i, j});
        }
      }
    }
    CandidateSet w = copeland_winners_oriented(rel_, s.alive, s.orient, spec_.alpha, spec_.second_order);
    if (w.size() == 1) return done(s.winner = w.front());
    return tie("co-winners", TieKind::SelectWinner, w);
  }

 private:
  RuleSpec spec_;
  MajorityRelation rel_;
};

class CupMachine : public RuleMachine {
 public:
  CupMachine(const MajorityRelation& rel, const CupSchedule& schedule) : rel_(rel), schedule_(schedule) {
    if (schedule_.nodes.empty()) throw InvalidArgument("empty cup schedule");
    CandidateSet labelled;
    for (const auto& node : schedule_.nodes) {
      if (node.leaf()) {
        if (node.label < 0 || node.label >= rel_.size()) throw InvalidArgument("schedule leaf names an unknown candidate");
        labelled.insert(node.label);
      }
    }
    if (labelled != CandidateSet::first(rel_.size())) {
      throw InvalidArgument("every candidate must label at least one schedule leaf");
    }
  }

  int num_candidates() const override { return rel_.size(); }

  ExecState start() const override {
    ExecState s;
    s.alive = CandidateSet::first(rel_.size());
    s.node_winner.assign(schedule_.nodes.size(), -1);
    s.orient.assign(static_cast<std::size_t>(rel_.size()) * rel_.size(), 0);
    return s;
  }

  Step advance(ExecState& s) const override {
    const int m = rel_.size();
    for (std::size_t i = 0; i < schedule_.nodes.size(); ++i) {
      if (s.node_winner[i] >= 0) continue;
      const auto& node = schedule_.nodes[i];
      if (node.leaf()) {
        s.node_winner[i] = node.label;
        continue;
      }
      const CandidateId a = s.node_winner[node.left];
      const CandidateId b = s.node_winner[node.right];
      const int c = rel_.compare(a, b);
      if (a == b || c > 0) {
        s.node_winner[i] = a;
      } else if (c < 0) {
        s.node_winner[i] = b;
      } else {
        std::int8_t o = s.orient[pair_index(m, a, b)];
        if (o == 0) return tie("match " + std::to_string(i + 1), TieKind::OrientPair, CandidateSet{a, b});
        s.node_winner[i] = o == 1 ? std::min(a, b) : std::max(a, b);
      }
    }
    s.winner = s.node_winner.back();
    return done(s.winner);
  }

  void apply(ExecState& s, const TieEvent& e, const Decision& d) const override {
    apply_decision(s, e, d, rel_.size());
  }

  bool may_still_win(const ExecState& s, CandidateId p) const override {
    if (s.winner >= 0) return s.winner == p;
    // p is still in the running if it holds an unresolved leaf or is the
    // current winner of a node whose parent has not been played.
    std::vector<char> parent_done(schedule_.nodes.size(), 0);
    for (std::size_t i = 0; i < schedule_.nodes.size(); ++i) {
      const auto& node = schedule_.nodes[i];
      if (!node.leaf() && s.node_winner[i] >= 0) parent_done[node.left] = parent_done[node.right] = 1;
    }
    for (std::size_t i = 0; i < schedule_.nodes.size(); ++i) {
      const auto& node = schedule_.nodes[i];
      if (s.node_winner[i] < 0) {
        if (node.leaf() && node.label == p) return true;
      } else if (s.node_winner[i] == p && !parent_done[i]) {
        return true;
      }
    }
    return false;
  }

 private:
  MajorityRelation rel_;
  CupSchedule schedule_;
};

std::unique_ptr<SubsetMachine> make_subset_machine(const RuleSpec& spec, const Profile& profile) {
  if (spec.single_stage()) return std::make_unique<SingleStageMachine>(spec, profile);
  switch (spec.kind) {
    case RuleKind::Copeland: return std::make_unique<CopelandOrientMachine>(spec, profile);
    case RuleKind::Stv: return std::make_unique<StvMachine>(profile);
    case RuleKind::Baldwin: return std::make_unique<BaldwinMachine>(profile);
    case RuleKind::Coombs: return std::make_unique<CoombsMachine>(profile, spec.simplified);
    case RuleKind::PluralityRunoff: return std::make_unique<RunoffMachine>(profile);
    default: break;
  }
  throw InvalidArgument("rule '" + to_string(spec) + "' cannot run on a candidate subset");
}

class HybridMachine : public RuleMachine {
 public:
  HybridMachine(const RuleSpec& spec, const Profile& profile)
      : spec_(spec),
        profile_(profile),
        rel_(MajorityRelation::from_pairwise(pairwise_matrix(profile), profile.candidates())),
        inner_(make_subset_machine(*spec.stage2, profile)) {
    const int m = profile_.num_candidates();
    if (spec_.stage1 == Stage1Kind::PluralityK && spec_.k >= m) {
      throw InvalidArgument("hybrid needs fewer rounds than candidates (k < m)");
    }
    if (spec_.stage1 == Stage1Kind::Cup1) {
      CandidateSet seen;
      for (const auto& g : *spec_.pairing) {
        if (g.empty() || g.size() > 2) throw InvalidArgument("pairing groups hold one or two candidates");
        for (CandidateId c : g) {
          if (c < 0 || c >= m || seen.contains(c)) throw InvalidArgument("pairing must list every candidate once");
          seen.insert(c);
        }
      }
      if (seen != profile_.all()) throw InvalidArgument("pairing must list every candidate once");
    }
  }

  int num_candidates() const override { return profile_.num_candidates(); }

  ExecState start() const override {
    ExecState s;
    s.alive = profile_.all();
    if (spec_.stage1 == Stage1Kind::Cup1) {
      s.node_winner.assign(spec_.pairing->size(), -1);
      const auto m = static_cast<std::size_t>(num_candidates());
      s.orient.assign(m * m, 0);
    }
    return s;
  }

  Step advance(ExecState& s) const override {
    if (s.stage == 0) {
      std::optional<Step> paused = advance_stage1(s);
      if (paused) return *paused;
    }
    Step st = inner_->advance(s);
    if (!st.finished) st.event.stage = "stage 2 " + st.event.stage;
    return st;
  }

  void apply(ExecState& s, const TieEvent& e, const Decision& d) const override {
    apply_decision(s, e, d, num_candidates());
  }

  bool may_still_win(const ExecState& s, CandidateId p) const override {
    if (s.stage == 1) return inner_->may_still_win(s, p);
    if (!RuleMachine::may_still_win(s, p)) return false;
    if (spec_.stage1 == Stage1Kind::Cup1) {
      for (std::size_t g = 0; g < s.node_winner.size(); ++g) {
        const auto& group = (*spec_.pairing)[g];
        if (s.node_winner[g] >= 0 && s.node_winner[g] != p &&
            std::find(group.begin(), group.end(), p) != group.end()) {
          return false;
        }
      }
    }
    if (spec_.stage1 == Stage1Kind::VetoHalf && s.phase == 1 && spec_.stage2->kind == RuleKind::Plurality) {
      // Final survivors lie between kept and kept + pool; compare p's best
      // plurality count with each kept rival's guaranteed count.
      const CandidateSet room = s.kept | s.pool;
      const std::int64_t best_p = plurality_scores(profile_, s.kept | CandidateSet{p})[p];
      const auto floor = plurality_scores(profile_, room);
      bool hopeless = false;
      s.kept.for_each([&](CandidateId c) {
        if (c != p && floor[c] > best_p) hopeless = true;
      });
      if (hopeless) return false;
    }
    return true;
  }

 private:
  std::optional<Step> advance_stage1(ExecState& s) const {
    switch (spec_.stage1) {
      case Stage1Kind::VetoHalf: {
        if (s.phase == 0) {
          const auto vetoes = veto_scores(profile_, s.alive);
          const int keep = (s.alive.size() + 1) / 2;
          std::vector<std::int64_t> sorted;
          s.alive.for_each([&](CandidateId c) { sorted.push_back(vetoes[c]); });
          std::sort(sorted.begin(), sorted.end());
          const std::int64_t cut = sorted[keep - 1];
          CandidateSet settled, boundary;
          s.alive.for_each([&](CandidateId c) {
            if (vetoes[c] < cut) settled.insert(c);
            else if (vetoes[c] == cut) boundary.insert(c);
          });
          begin_selection(s, settled, boundary, keep);
          s.phase = 1;
        }
        if (!selection_finished(s)) return tie("stage 1 veto-half", TieKind::SelectSurvivor, s.pool);
        to_stage2(s, s.kept);
        return std::nullopt;
      }
      case Stage1Kind::PluralityK: {
        while (s.round < spec_.k) {
          CandidateSet low = min_set(plurality_scores(profile_, s.alive), s.alive);
          if (low.size() > 1) return tie("stage 1 round " + std::to_string(s.round + 1), TieKind::EliminateOne, low);
          s.alive.erase(low.front());
          ++s.round;
        }
        to_stage2(s, s.alive);
        return std::nullopt;
      }
      case Stage1Kind::Cup1: {
        const int m = num_candidates();
        const auto& groups = *spec_.pairing;
        for (std::size_t g = 0; g < groups.size(); ++g) {
          if (s.node_winner[g] >= 0) continue;
          if (groups[g].size() == 1) {
            s.node_winner[g] = groups[g][0];
            continue;
          }
          const CandidateId a = groups[g][0], b = groups[g][1];
          const int c = rel_.compare(a, b);
          if (c != 0) {
            s.node_winner[g] = c > 0 ? a : b;
            continue;
          }
          std::int8_t o = s.orient[pair_index(m, a, b)];
          if (o == 0) return tie("stage 1 match " + std::to_string(g + 1), TieKind::OrientPair, CandidateSet{a, b});
          s.node_winner[g] = o == 1 ? std::min(a, b) : std::max(a, b);
        }
        CandidateSet winners;
        for (CandidateId w : s.node_winner) winners.insert(w);
        to_stage2(s, winners);
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  void to_stage2(ExecState& s, CandidateSet survivors) const {
    s = inner_->start_on(survivors);
    s.stage = 1;
  }

  RuleSpec spec_;
  Profile profile_;
  MajorityRelation rel_;
  std::unique_ptr<SubsetMachine> inner_;
};

}  // namespace

std::unique_ptr<RuleMachine> make_machine(const RuleSpec& spec, const Profile& profile) {
  switch (spec.kind) {
    case RuleKind::Cup:
      return make_cup_machine(MajorityRelation::from_pairwise(pairwise_matrix(profile), profile.candidates()),
                              *spec.schedule);
    case RuleKind::Hybrid:
      return std::make_unique<HybridMachine>(spec, profile);
    default:
      return make_subset_machine(spec, profile);
  }
}

std::unique_ptr<RuleMachine> make_cup_machine(const MajorityRelation& relation, const CupSchedule& schedule) {
  return std::make_unique<CupMachine>(relation, schedule);
}

Trace run(const RuleMachine& machine, Resolver& resolver) {
  Trace trace;
  ExecState s = machine.start();
  while (true) {
    Step st = machine.advance(s);
    if (st.finished) {
      trace.winner = st.winner;
      return trace;
    }
    Decision d = resolver.resolve(st.event);
    machine.apply(s, st.event, d);
    trace.events.emplace_back(std::move(st.event), d);
  }
}

Trace stv(const Profile& profile, Resolver& resolver) {
  return run(*make_machine(RuleSpec::simple(RuleKind::Stv), profile), resolver);
}

Trace baldwin(const Profile& profile, Resolver& resolver) {
  return run(*make_machine(RuleSpec::simple(RuleKind::Baldwin), profile), resolver);
}

Trace coombs(const Profile& profile, bool simplified, Resolver& resolver) {
  RuleSpec spec = RuleSpec::simple(RuleKind::Coombs);
  spec.simplified = simplified;
  return run(*make_machine(spec, profile), resolver);
}

Trace plurality_runoff(const Profile& profile, Resolver& resolver) {
  return run(*make_machine(RuleSpec::simple(RuleKind::PluralityRunoff), profile), resolver);
}

Trace cup(const MajorityRelation& relation, const CupSchedule& schedule, Resolver& resolver) {
  return run(*make_cup_machine(relation, schedule), resolver);
}

Trace hybrid(const RuleSpec& hybrid_spec, const Profile& profile, Resolver& resolver) {
  if (hybrid_spec.kind != RuleKind::Hybrid) throw InvalidArgument("not a hybrid rule spec");
  return run(*make_machine(hybrid_spec, profile), resolver);
}

Trace run_rule(const RuleSpec& spec, const Profile& profile, Resolver& resolver) {
  return run(*make_machine(spec, profile), resolver);
}

}  // namespace tiectl
