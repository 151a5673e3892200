#include <omp.h>

#include <array>
#include <atomic>
#include <climits>
#include <mutex>
#include <unordered_set>

#include "tiectl/control.hpp"
#include "tiectl/error.hpp"
#include "tiectl/policy.hpp"

namespace tiectl {

namespace {

// Candidate answers to one event, in the order the search tries them.
std::vector<Decision> choices(const TieEvent& e, const ExecState& s, CandidateId p) {
  std::vector<Decision> out;
  auto add = [&](CandidateId c, CandidateId other = -1) { out.push_back({e.kind, c, other}); };
  const bool has_p = std::find(e.tied.begin(), e.tied.end(), p) != e.tied.end();
  switch (e.kind) {
    case TieKind::EliminateOne:
      for (CandidateId c : e.tied) {
        if (c != p) add(c);
      }
      break;
    case TieKind::SelectWinner:
      if (has_p) add(p);
      break;
    case TieKind::OrientPair: {
      CandidateId a = e.tied[0], b = e.tied[1];
      if (b == p) std::swap(a, b);
      add(a, b);
      add(b, a);
      break;
    }
    case TieKind::SelectSurvivor: {
      // The kept set is all that matters, so picks go in ascending id order
      // and never jump past an unpicked p.
      const int need = s.slots;
      const auto& pool = e.tied;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        CandidateId c = pool[i];
        if (c <= s.last_pick) continue;
        if (has_p && c > p) break;
        if (static_cast<int>(pool.size() - i - 1) < need - 1) break;
        if (c == p) out.insert(out.begin(), {e.kind, c, -1});
        else add(c);
      }
      break;
    }
  }
  return out;
}

// The search only picks survivors above last_pick, so bounds may ignore the
// pool members below it.
ExecState reachable_view(const ExecState& s) {
  ExecState v = s;
  if (v.slots > 0 && v.last_pick >= 0) v.pool = v.pool - CandidateSet::first(v.last_pick + 1);
  return v;
}

struct Cancelled {};

class SerialMemo {
 public:
  bool contains(const ExecState& s) const { return set_.count(s) > 0; }
  void insert(const ExecState& s) { set_.insert(s); }
  std::size_t size() const { return set_.size(); }

 private:
  std::unordered_set<ExecState, ExecStateHash> set_;
};

// Grow-only set shared by the worker threads.
class SharedMemo {
 public:
  bool contains(const ExecState& s) const {
    const std::size_t h = ExecStateHash{}(s);
    const Shard& sh = shards_[h % kShards];
    std::lock_guard<std::mutex> lock(sh.mu);
    return sh.set.count(s) > 0;
  }
  void insert(const ExecState& s) {
    const std::size_t h = ExecStateHash{}(s);
    Shard& sh = shards_[h % kShards];
    std::lock_guard<std::mutex> lock(sh.mu);
    sh.set.insert(s);
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::mutex mu;
    std::unordered_set<ExecState, ExecStateHash> set;
  };
  std::array<Shard, kShards> shards_;
};

template <typename Memo>
class Searcher {
 public:
  Searcher(const RuleMachine& machine, CandidateId p, std::uint64_t budget, std::atomic<std::uint64_t>& nodes,
           Memo& memo, std::function<bool()> cancelled = {})
      : machine_(machine), p_(p), budget_(budget), nodes_(nodes), memo_(memo), cancelled_(std::move(cancelled)) {}

  bool dfs(ExecState s) {
    Step st = machine_.advance(s);
    if (st.finished) return st.winner == p_;
    if (!machine_.may_still_win(reachable_view(s), p_)) return false;
    if (memo_.contains(s)) return false;
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > budget_) throw BudgetExceeded(n - 1);
    if (cancelled_ && cancelled_()) throw Cancelled{};
    for (const Decision& d : choices(st.event, s, p_)) {
      ExecState child = s;
      machine_.apply(child, st.event, d);
      if (!machine_.may_still_win(reachable_view(child), p_)) continue;
      path.push_back(d);
      if (dfs(std::move(child))) return true;
      path.pop_back();
    }
    memo_.insert(s);
    return false;
  }

  std::vector<Decision> path;

 private:
  const RuleMachine& machine_;
  CandidateId p_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& nodes_;
  Memo& memo_;
  std::function<bool()> cancelled_;
};

void check_candidate(const RuleMachine& machine, CandidateId p) {
  if (p < 0 || p >= machine.num_candidates()) throw InvalidArgument("distinguished candidate out of range");
}

}  // namespace

ControlAnswer control_single_stage(const RuleSpec& spec, const Profile& profile, CandidateId p) {
  if (p < 0 || p >= profile.num_candidates()) throw InvalidArgument("distinguished candidate out of range");
  const CandidateSet w = single_stage_winners(spec, profile);
  ControlAnswer a;
  a.method = "single-stage";
  a.controllable = w.contains(p);
  if (a.controllable) {
    a.witness.emplace();
    if (w.size() > 1) a.witness->push_back({TieKind::SelectWinner, p, -1});
  }
  return a;
}

ControlAnswer control_search(const RuleMachine& machine, CandidateId p, std::uint64_t budget) {
  check_candidate(machine, p);
  std::atomic<std::uint64_t> nodes{0};
  SerialMemo memo;
  Searcher<SerialMemo> search(machine, p, budget, nodes, memo);
  ControlAnswer a;
  a.method = "search";
  a.controllable = search.dfs(machine.start());
  a.nodes_explored = nodes.load();
  if (a.controllable) a.witness = std::move(search.path);
  return a;
}

ControlAnswer control_search(const RuleSpec& spec, const Profile& profile, CandidateId p, std::uint64_t budget) {
  return control_search(*make_machine(spec, profile), p, budget);
}

ControlAnswer control_search_parallel(const RuleMachine& machine, CandidateId p, std::uint64_t budget,
                                      int threads) {
  check_candidate(machine, p);
  if (threads <= 0) threads = omp_get_max_threads();
  std::atomic<std::uint64_t> nodes{0};

  struct Item {
    ExecState state;
    std::vector<Decision> path;
    bool won = false;  // already finished with p as the winner
  };

  // Breadth-first expansion that keeps depth-first order, so the first
  // successful item holds the same witness the serial search would find.
  std::vector<Item> frontier;
  frontier.push_back({machine.start(), {}, false});
  const std::size_t target = static_cast<std::size_t>(threads) * 8;
  for (int depth = 0; depth < 64 && frontier.size() < target; ++depth) {
    std::vector<Item> next;
    bool expanded = false;
    for (Item& item : frontier) {
      if (item.won) {
        next.push_back(std::move(item));
        continue;
      }
      ExecState s = item.state;
      Step st = machine.advance(s);
      if (st.finished) {
        if (st.winner == p) next.push_back({std::move(s), std::move(item.path), true});
        continue;
      }
      if (!machine.may_still_win(reachable_view(s), p)) continue;
      const std::uint64_t n = nodes.fetch_add(1) + 1;
      if (n > budget) throw BudgetExceeded(n - 1);
      expanded = true;
      for (const Decision& d : choices(st.event, s, p)) {
        ExecState child = s;
        machine.apply(child, st.event, d);
        if (!machine.may_still_win(reachable_view(child), p)) continue;
        Item c{std::move(child), item.path, false};
        c.path.push_back(d);
        next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
    if (!expanded) break;
    if (!frontier.empty() && frontier.front().won) break;
  }

  SharedMemo memo;
  std::atomic<long> best{LONG_MAX};
  std::atomic<bool> over_budget{false};
  std::atomic<std::uint64_t> budget_nodes{0};
  std::vector<std::vector<Decision>> found(frontier.size());
  const long count = static_cast<long>(frontier.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < count; ++i) {
    if (i > best.load() || over_budget.load()) continue;
    Item& item = frontier[i];
    if (item.won) {
      found[i] = item.path;
      long cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
      continue;
    }
    Searcher<SharedMemo> search(machine, p, budget, nodes, memo,
                                [&best, &over_budget, i] { return best.load() < i || over_budget.load(); });
    try {
      if (search.dfs(item.state)) {
        found[i] = item.path;
        found[i].insert(found[i].end(), search.path.begin(), search.path.end());
        long cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (const Cancelled&) {
    } catch (const BudgetExceeded& e) {
      budget_nodes.store(e.nodes());
      over_budget.store(true);
    }
  }

  ControlAnswer a;
  a.method = "search";
  a.nodes_explored = nodes.load();
  if (best.load() != LONG_MAX) {
    a.controllable = true;
    a.witness = std::move(found[best.load()]);
    return a;
  }
  if (over_budget.load()) throw BudgetExceeded(budget_nodes.load());
  return a;
}

ControlAnswer control_search_parallel(const RuleSpec& spec, const Profile& profile, CandidateId p,
                                      std::uint64_t budget, int threads) {
  return control_search_parallel(*make_machine(spec, profile), p, budget, threads);
}

CandidateSet put_winners(const RuleSpec& spec, const Profile& profile, std::uint64_t budget, bool parallel) {
  const auto machine = make_machine(spec, profile);
  const int m = profile.num_candidates();
  std::vector<char> wins(m, 0);
  std::atomic<bool> over{false};
  std::atomic<std::uint64_t> over_nodes{0};
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int c = 0; c < m; ++c) {
    try {
      wins[c] = control_search(*machine, c, budget).controllable ? 1 : 0;
    } catch (const BudgetExceeded& e) {
      over_nodes.store(e.nodes());
      over.store(true);
    }
  }
  if (over.load()) throw BudgetExceeded(over_nodes.load());
  CandidateSet out;
  for (int c = 0; c < m; ++c) {
    if (wins[c]) out.insert(c);
  }
  return out;
}

CandidateId replay_witness(const RuleMachine& machine, const std::vector<Decision>& log) {
  PolicyResolver resolver(TieBreakPolicy::decisions(log));
  Trace t = run(machine, resolver);
  if (resolver.consumed() != log.size()) {
    throw ResolverError("decision log has " + std::to_string(log.size() - resolver.consumed()) + " unused entries");
  }
  return t.winner;
}

CandidateId replay_witness(const RuleSpec& spec, const Profile& profile, const std::vector<Decision>& log) {
  return replay_witness(*make_machine(spec, profile), log);
}

}  // namespace tiectl
