#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "tiectl/control.hpp"
#include "tiectl/error.hpp"
#include "tiectl/policy.hpp"

namespace tiectl {

namespace {

// Dense max-flow on a tiny graph (Edmonds-Karp).
class FlowGraph {
 public:
  explicit FlowGraph(int n) : cap_(n, std::vector<std::int64_t>(n, 0)) {}
  void add(int u, int v, std::int64_t c) { cap_[u][v] += c; }
  std::int64_t max_flow(int s, int t) {
    const int n = static_cast<int>(cap_.size());
    std::int64_t total = 0;
    while (true) {
      std::vector<int> prev(n, -1);
      prev[s] = s;
      std::queue<int> q;
      q.push(s);
      while (!q.empty() && prev[t] < 0) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
          if (prev[v] < 0 && cap_[u][v] > 0) {
            prev[v] = u;
            q.push(v);
          }
        }
      }
      if (prev[t] < 0) return total;
      std::int64_t push = INT64_MAX;
      for (int v = t; v != s; v = prev[v]) push = std::min(push, cap_[prev[v]][v]);
      for (int v = t; v != s; v = prev[v]) {
        cap_[prev[v]][v] -= push;
        cap_[v][prev[v]] += push;
      }
      total += push;
    }
  }
  std::int64_t residual(int u, int v) const { return cap_[u][v]; }

 private:
  std::vector<std::vector<std::int64_t>> cap_;
};

// Orientation resolver keyed on unordered pairs.
class PairResolver : public Resolver {
 public:
  explicit PairResolver(std::map<std::pair<CandidateId, CandidateId>, CandidateId> winners)
      : winners_(std::move(winners)) {}
  Decision resolve(const TieEvent& e) override {
    if (e.kind != TieKind::OrientPair) throw ResolverError("unexpected event at " + e.stage);
    auto it = winners_.find({e.tied[0], e.tied[1]});
    const CandidateId w = it == winners_.end() ? e.tied[0] : it->second;
    return {e.kind, w, w == e.tied[0] ? e.tied[1] : e.tied[0]};
  }

 private:
  std::map<std::pair<CandidateId, CandidateId>, CandidateId> winners_;
};

bool acyclic(const std::vector<CandidateSet>& beats) {
  CandidateSet left = CandidateSet::first(static_cast<int>(beats.size()));
  bool progress = true;
  while (!left.empty() && progress) {
    progress = false;
    for (CandidateId c : left.members()) {
      bool has_in = false;
      left.for_each([&](CandidateId x) { has_in = has_in || beats[x].contains(c); });
      if (!has_in) {
        left.erase(c);
        progress = true;
      }
    }
  }
  return left.empty();
}

}  // namespace

ControlAnswer control_cup_linear(const MajorityRelation& relation, const CupSchedule& schedule, CandidateId p) {
  if (!schedule.single_appearance()) throw InvalidArgument("linear cup algorithm needs each candidate on one leaf");
  const auto machine = make_cup_machine(relation, schedule);  // validates coverage
  if (p < 0 || p >= relation.size()) throw InvalidArgument("distinguished candidate out of range");

  const auto& nodes = schedule.nodes;
  std::vector<CandidateSet> can_win(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (nd.leaf()) {
      can_win[i] = CandidateSet{nd.label};
      continue;
    }
    const CandidateSet l = can_win[nd.left], r = can_win[nd.right];
    CandidateSet w;
    l.for_each([&](CandidateId a) {
      r.for_each([&](CandidateId b) {
        if (relation.compare(a, b) >= 0) w.insert(a);
        if (relation.compare(b, a) >= 0) w.insert(b);
      });
    });
    can_win[i] = w;
  }

  ControlAnswer ans;
  ans.method = "cup-linear";
  ans.nodes_explored = nodes.size();
  ans.controllable = can_win[schedule.root()].contains(p);
  if (!ans.controllable) return ans;

  // Walk down from the root fixing who wins each match.
  std::map<std::pair<CandidateId, CandidateId>, CandidateId> winners;
  std::function<void(int, CandidateId)> assign = [&](int node, CandidateId target) {
    const auto& nd = nodes[node];
    if (nd.leaf()) return;
    int mine = can_win[nd.left].contains(target) ? nd.left : nd.right;
    int theirs = mine == nd.left ? nd.right : nd.left;
    CandidateId opponent = -1;
    can_win[theirs].for_each([&](CandidateId b) {
      if (opponent < 0 && relation.compare(target, b) >= 0) opponent = b;
    });
    if (relation.tied(target, opponent)) winners[{std::min(target, opponent), std::max(target, opponent)}] = target;
    assign(mine, target);
    assign(theirs, opponent);
  };
  assign(schedule.root(), p);

  PairResolver resolver(winners);
  Trace t = run(*machine, resolver);
  if (t.winner != p) throw std::logic_error("cup witness does not reproduce p");
  ans.witness = t.decisions();
  return ans;
}

ControlAnswer control_cup_orientations(const MajorityRelation& relation, const CupSchedule& schedule, CandidateId p,
                                      bool require_transitive) {
  const auto machine = make_cup_machine(relation, schedule);
  if (p < 0 || p >= relation.size()) throw InvalidArgument("distinguished candidate out of range");
  const auto ties = relation.tied_pairs();
  if (ties.size() > 24) throw InvalidArgument("too many tied pairs to enumerate orientations");
  ControlAnswer a;
  a.method = "cup-enumeration";
  for (std::uint64_t mask = 0; mask < (1ULL << ties.size()); ++mask) {
    std::map<std::pair<CandidateId, CandidateId>, CandidateId> winners;
    std::vector<CandidateSet> beats(relation.size());
    for (std::size_t i = 0; i < ties.size(); ++i) {
      auto [x, y] = ties[i];
      const bool flip = (mask >> i) & 1;
      winners[{x, y}] = flip ? y : x;
      beats[flip ? y : x].insert(flip ? x : y);
    }
    if (require_transitive && !acyclic(beats)) continue;
    ++a.nodes_explored;
    PairResolver res(winners);
    Trace t = run(*machine, res);
    if (t.winner == p) {
      a.controllable = true;
      a.witness = t.decisions();
      return a;
    }
  }
  return a;
}

ControlAnswer control_copeland_orientation(const Profile& profile, CandidateId p, bool require_transitive) {
  const int m = profile.num_candidates();
  if (p < 0 || p >= m) throw InvalidArgument("distinguished candidate out of range");
  const auto rel = MajorityRelation::from_pairwise(pairwise_matrix(profile), profile.candidates());

  std::vector<std::int64_t> wins(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (rel.compare(i, j) > 0) ++wins[i];
    }
  }
  std::int64_t p_score = wins[p];
  for (int j = 0; j < m; ++j) {
    if (rel.tied(p, j)) ++p_score;
  }

  std::vector<std::pair<CandidateId, CandidateId>> rival_ties;
  for (auto [i, j] : rel.tied_pairs()) {
    if (i != p && j != p) rival_ties.emplace_back(i, j);
  }

  ControlAnswer ans;
  ans.method = "copeland-orient";
  std::map<std::pair<CandidateId, CandidateId>, CandidateId> winner_of;
  for (int j = 0; j < m; ++j) {
    if (rel.tied(p, j)) winner_of[{std::min(p, j), std::max(p, j)}] = p;
  }
  for (int c = 0; c < m; ++c) {
    if (c != p && wins[c] > p_score) return ans;
  }

  if (!require_transitive) {
    // source -> tie -> endpoint -> sink, endpoint capacity = room below p
    const int e = static_cast<int>(rival_ties.size());
    const int source = 0, sink = 1 + e + m;
    FlowGraph g(sink + 1);
    for (int t = 0; t < e; ++t) {
      g.add(source, 1 + t, 1);
      g.add(1 + t, 1 + e + rival_ties[t].first, 1);
      g.add(1 + t, 1 + e + rival_ties[t].second, 1);
    }
    for (int c = 0; c < m; ++c) {
      if (c != p) g.add(1 + e + c, sink, p_score - wins[c]);
    }
    ans.nodes_explored = static_cast<std::uint64_t>(e);
    if (g.max_flow(source, sink) < e) return ans;
    for (int t = 0; t < e; ++t) {
      auto [a, b] = rival_ties[t];
      // the unit went to whichever endpoint edge is now saturated
      winner_of[{a, b}] = g.residual(1 + t, 1 + e + a) == 0 ? a : b;
    }
  } else {
    // Build the linear order top-down; a rival can go next if beating every
    // still-unplaced tied neighbour keeps it level with p or below.
    CandidateSet left = CandidateSet::first(m) - CandidateSet{p};
    std::vector<CandidateId> order{p};
    while (!left.empty()) {
      CandidateId next = -1;
      left.for_each([&](CandidateId c) {
        if (next >= 0) return;
        std::int64_t s = wins[c];
        left.for_each([&](CandidateId d) {
          if (d != c && rel.tied(c, d)) ++s;
        });
        if (s <= p_score) next = c;
      });
      ++ans.nodes_explored;
      if (next < 0) return ans;
      order.push_back(next);
      left.erase(next);
    }
    std::vector<int> pos(m);
    for (int i = 0; i < m; ++i) pos[order[i]] = i;
    for (auto [a, b] : rival_ties) winner_of[{a, b}] = pos[a] < pos[b] ? a : b;
  }

  ans.controllable = true;
  // Replay through the orient_ties machine to get the witness in event order.
  const auto machine = make_machine(RuleSpec::copeland(Rational(0), false, true), profile);
  class Answerer : public Resolver {
   public:
    Answerer(const std::map<std::pair<CandidateId, CandidateId>, CandidateId>& w, CandidateId p) : w_(w), p_(p) {}
    Decision resolve(const TieEvent& e) override {
      if (e.kind == TieKind::SelectWinner) return {e.kind, p_, -1};
      const CandidateId win = w_.at({e.tied[0], e.tied[1]});
      return {e.kind, win, win == e.tied[0] ? e.tied[1] : e.tied[0]};
    }

   private:
    const std::map<std::pair<CandidateId, CandidateId>, CandidateId>& w_;
    CandidateId p_;
  } answerer(winner_of, p);
  Trace t = run(*machine, answerer);
  if (t.winner != p) throw std::logic_error("copeland witness does not reproduce p");
  ans.witness = t.decisions();
  return ans;
}

bool AlphaInterval::contains(const Rational& a) const {
  if (empty) return false;
  if (a < lower || (lower_open && a == lower)) return false;
  if (a > upper || (upper_open && a == upper)) return false;
  return true;
}

AlphaInterval choose_alpha(const Profile& profile, CandidateId p) {
  const int m = profile.num_candidates();
  if (p < 0 || p >= m) throw InvalidArgument("distinguished candidate out of range");
  const PairwiseMatrix pm = pairwise_matrix(profile);
  const std::int64_t n = profile.num_voters();
  std::vector<std::int64_t> wins(m, 0), ties(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (2 * pm(i, j) > n) ++wins[i];
      else if (2 * pm(i, j) == n) ++ties[i];
    }
  }
  AlphaInterval iv;
  iv.empty = false;
  // wins(p) + a*ties(p) >= wins(c) + a*ties(c)  <=>  a*(ties(p)-ties(c)) >= wins(c)-wins(p)
  for (int c = 0; c < m; ++c) {
    if (c == p) continue;
    const std::int64_t slope = ties[p] - ties[c];
    const std::int64_t need = wins[c] - wins[p];
    if (slope == 0) {
      if (need > 0) iv.empty = true;
    } else if (slope > 0) {
      iv.lower = std::max(iv.lower, Rational(need, slope));
    } else {
      iv.upper = std::min(iv.upper, Rational(need, slope));
    }
  }
  if (iv.lower > iv.upper) iv.empty = true;
  if (iv.empty) {
    iv.lower = Rational(0);
    iv.upper = Rational(0);
  }
  return iv;
}

ControlAnswer control_bounded_hybrid(const Profile& profile, int k, CandidateId p, int bound) {
  const int m = profile.num_candidates();
  if (p < 0 || p >= m) throw InvalidArgument("distinguished candidate out of range");
  if (k < 0 || k >= m) throw InvalidArgument("hybrid needs 0 <= k < m");
  if (std::min(k, m - k) > bound) {
    throw InvalidArgument("both k and m-k exceed the enumeration bound " + std::to_string(bound));
  }

  ControlAnswer ans;
  ans.method = "bounded-hybrid";
  if (k == 0) {
    ans = control_single_stage(RuleSpec::simple(RuleKind::Plurality), profile, p);
    ans.method = "bounded-hybrid";
    return ans;
  }

  auto final_winner_ok = [&](CandidateSet alive, std::vector<Decision>& log) {
    const auto scores = plurality_scores(profile, alive);
    std::int64_t top = 0;
    alive.for_each([&](CandidateId c) { top = std::max(top, scores[c]); });
    if (scores[p] != top) return false;
    int at_top = 0;
    alive.for_each([&](CandidateId c) { at_top += scores[c] == top; });
    if (at_top > 1) log.push_back({TieKind::SelectWinner, p, -1});
    return true;
  };

  // Eliminate only inside `removable`; k rounds of plurality-loser elimination.
  std::set<std::uint64_t> dead;
  std::vector<Decision> log;
  std::function<bool(CandidateSet, CandidateSet)> go = [&](CandidateSet alive, CandidateSet removable) -> bool {
    if (m - alive.size() == k) return final_winner_ok(alive, log);
    if (dead.count(alive.bits())) return false;
    ++ans.nodes_explored;
    const auto scores = plurality_scores(profile, alive);
    std::int64_t low = INT64_MAX;
    alive.for_each([&](CandidateId c) { low = std::min(low, scores[c]); });
    CandidateSet lows;
    alive.for_each([&](CandidateId c) {
      if (scores[c] == low) lows.insert(c);
    });
    const bool tie = lows.size() > 1;
    for (CandidateId c : lows.members()) {
      if (!removable.contains(c)) continue;
      if (tie) log.push_back({TieKind::EliminateOne, c, -1});
      if (go(alive - CandidateSet{c}, removable)) return true;
      if (tie) log.pop_back();
    }
    dead.insert(alive.bits());
    return false;
  };

  const CandidateSet all = profile.all();
  if (k <= bound) {
    ans.controllable = go(all, all - CandidateSet{p});
  } else {
    // enumerate the m-k survivors (p among them), then check reachability
    std::vector<CandidateId> rivals;
    for (int c = 0; c < m; ++c) {
      if (c != p) rivals.push_back(c);
    }
    const int extra = m - k - 1;
    std::vector<int> idx(extra);
    std::function<bool(int, int, CandidateSet)> pick = [&](int from, int depth, CandidateSet chosen) -> bool {
      if (depth == extra) {
        std::vector<Decision> probe;
        if (!final_winner_ok(chosen, probe)) return false;
        dead.clear();
        log.clear();
        return go(all, all - chosen);
      }
      for (int i = from; i < static_cast<int>(rivals.size()); ++i) {
        if (pick(i + 1, depth + 1, chosen | CandidateSet{rivals[i]})) return true;
      }
      return false;
    };
    ans.controllable = pick(0, 0, CandidateSet{p});
  }
  if (ans.controllable) ans.witness = log;
  return ans;
}

}  // namespace tiectl
