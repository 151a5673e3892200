#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace oracle {

namespace {

// ranking restricted to `alive`
std::vector<CandidateId> filtered(const std::vector<CandidateId>& r, const Set& alive) {
  std::vector<CandidateId> out;
  for (CandidateId c : r) {
    if (alive.count(c)) out.push_back(c);
  }
  return out;
}

Set all_of(const Profile& p) {
  Set s;
  for (int c = 0; c < p.num_candidates(); ++c) s.insert(c);
  return s;
}

template <typename T>
Set argmax(const std::map<CandidateId, T>& score) {
  Set out;
  T best{};
  bool first = true;
  for (const auto& [c, v] : score) {
    if (first || v > best) {
      best = v;
      out = {c};
      first = false;
    } else if (v == best) {
      out.insert(c);
    }
  }
  return out;
}

template <typename T>
Set argmin(const std::map<CandidateId, T>& score) {
  std::map<CandidateId, T> neg;
  for (const auto& [c, v] : score) neg[c] = -v;
  return argmax(neg);
}

std::map<CandidateId, std::int64_t> first_places(const Profile& p, const Set& alive) {
  std::map<CandidateId, std::int64_t> s;
  for (CandidateId c : alive) s[c] = 0;
  for (const auto& b : p.ballots()) s[filtered(b.ranking, alive).front()] += b.weight;
  return s;
}

std::map<CandidateId, std::int64_t> last_places(const Profile& p, const Set& alive) {
  std::map<CandidateId, std::int64_t> s;
  for (CandidateId c : alive) s[c] = 0;
  for (const auto& b : p.ballots()) s[filtered(b.ranking, alive).back()] += b.weight;
  return s;
}

std::map<CandidateId, std::int64_t> borda_on(const Profile& p, const Set& alive) {
  std::map<CandidateId, std::int64_t> s;
  for (CandidateId c : alive) s[c] = 0;
  for (const auto& b : p.ballots()) {
    auto r = filtered(b.ranking, alive);
    for (std::size_t i = 0; i < r.size(); ++i) s[r[i]] += b.weight * static_cast<std::int64_t>(r.size() - 1 - i);
  }
  return s;
}

std::map<CandidateId, std::int64_t> approval_prefix(const Profile& p, int k, bool use_cutoff) {
  std::map<CandidateId, std::int64_t> s;
  for (int c = 0; c < p.num_candidates(); ++c) s[c] = 0;
  for (const auto& b : p.ballots()) {
    int lim = k;
    if (use_cutoff && b.approval_cutoff) lim = std::min(lim, *b.approval_cutoff);
    for (int i = 0; i < lim; ++i) s[b.ranking[i]] += b.weight;
  }
  return s;
}

}  // namespace

std::int64_t N(const Profile& p, CandidateId i, CandidateId j) {
  std::int64_t n = 0;
  for (const auto& b : p.ballots()) {
    const auto pi = std::find(b.ranking.begin(), b.ranking.end(), i);
    const auto pj = std::find(b.ranking.begin(), b.ranking.end(), j);
    if (pi < pj) n += b.weight;
  }
  return n;
}

Set scoring(const Profile& p, const std::vector<std::int64_t>& w) {
  std::map<CandidateId, std::int64_t> s;
  for (int c = 0; c < p.num_candidates(); ++c) s[c] = 0;
  for (const auto& b : p.ballots()) {
    for (std::size_t i = 0; i < b.ranking.size(); ++i) s[b.ranking[i]] += b.weight * w[i];
  }
  return argmax(s);
}

Set plurality(const Profile& p) {
  std::vector<std::int64_t> w(p.num_candidates(), 0);
  w[0] = 1;
  return scoring(p, w);
}

Set veto(const Profile& p) {
  std::vector<std::int64_t> w(p.num_candidates(), 1);
  w.back() = 0;
  if (p.num_candidates() == 1) w[0] = 1;
  return scoring(p, w);
}

Set k_approval(const Profile& p, int k) {
  std::vector<std::int64_t> w(p.num_candidates(), 0);
  for (int i = 0; i < k && i < p.num_candidates(); ++i) w[i] = 1;
  return scoring(p, w);
}

Set borda(const Profile& p) { return argmax(borda_on(p, all_of(p))); }

Set black(const Profile& p) {
  const int m = p.num_candidates();
  for (int c = 0; c < m; ++c) {
    bool cw = true;
    for (int j = 0; j < m; ++j) {
      if (j != c && 2 * N(p, c, j) <= p.num_voters()) cw = false;
    }
    if (cw) return {c};
  }
  return borda(p);
}

Set bucklin(const Profile& p, bool simplified) {
  const std::int64_t half = p.num_voters() / 2;
  for (int k = 1; k <= p.num_candidates(); ++k) {
    auto s = approval_prefix(p, k, false);
    Set over;
    for (auto [c, v] : s) {
      if (v > half) over.insert(c);
    }
    if (!over.empty()) return simplified ? over : argmax(s);
  }
  return {};
}

Set fallback(const Profile& p) {
  const std::int64_t half = p.num_voters() / 2;
  for (int k = 1; k <= p.num_candidates(); ++k) {
    Set over;
    for (auto [c, v] : approval_prefix(p, k, true)) {
      if (v > half) over.insert(c);
    }
    if (!over.empty()) return over;
  }
  return argmax(approval_prefix(p, p.num_candidates(), true));
}

Set maximin(const Profile& p) {
  const int m = p.num_candidates();
  std::map<CandidateId, std::int64_t> s;
  for (int i = 0; i < m; ++i) {
    std::int64_t worst = p.num_voters();
    for (int j = 0; j < m; ++j) {
      if (j != i) worst = std::min(worst, N(p, i, j));
    }
    s[i] = worst;
  }
  return argmax(s);
}

Set schulze(const Profile& p) {
  const int m = p.num_candidates();
  auto d = [&](int i, int j) { return N(p, i, j) > N(p, j, i) ? N(p, i, j) : 0; };
  // strongest path by walking every simple path
  std::vector<std::vector<std::int64_t>> best(m, std::vector<std::int64_t>(m, 0));
  std::vector<char> on(m, 0);
  std::function<void(int, int, std::int64_t)> walk = [&](int src, int at, std::int64_t width) {
    for (int nxt = 0; nxt < m; ++nxt) {
      if (on[nxt]) continue;
      const std::int64_t w = std::min(width, d(at, nxt));
      if (w <= 0) continue;
      best[src][nxt] = std::max(best[src][nxt], w);
      on[nxt] = 1;
      walk(src, nxt, w);
      on[nxt] = 0;
    }
  };
  for (int s = 0; s < m; ++s) {
    on.assign(m, 0);
    on[s] = 1;
    walk(s, s, INT64_MAX);
  }
  Set out;
  for (int i = 0; i < m; ++i) {
    bool ok = true;
    for (int j = 0; j < m; ++j) {
      if (j != i && best[j][i] > best[i][j]) ok = false;
    }
    if (ok) out.insert(i);
  }
  return out;
}

Set copeland(const Profile& p, const Rational& alpha) { return copeland_oriented(p, {}, alpha); }

Set copeland_oriented(const Profile& p, const Orientation& o, const Rational& alpha) {
  const int m = p.num_candidates();
  const std::int64_t n = p.num_voters();
  std::map<CandidateId, Rational> s;
  for (int i = 0; i < m; ++i) {
    Rational sc{0};
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const std::int64_t nij = N(p, i, j);
      if (2 * nij > n) {
        sc += 1;
      } else if (2 * nij == n) {
        auto it = o.find({std::min(i, j), std::max(i, j)});
        if (it == o.end()) sc += alpha;
        else if (it->second == i) sc += 1;
      }
    }
    s[i] = sc;
  }
  return argmax(s);
}

Set ranked_pairs(const Profile& p) {
  const int m = p.num_candidates();
  struct Edge {
    int i, j;
    std::int64_t w;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && N(p, i, j) >= N(p, j, i)) edges.push_back({i, j, N(p, i, j)});
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w > b.w; });
  std::vector<std::vector<char>> locked(m, std::vector<char>(m, 0));
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(m, 0);
    std::vector<int> stack{from};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == to) return true;
      if (seen[x]) continue;
      seen[x] = 1;
      for (int y = 0; y < m; ++y) {
        if (locked[x][y]) stack.push_back(y);
      }
    }
    return false;
  };
  for (const Edge& e : edges) {
    if (!reaches(e.j, e.i)) locked[e.i][e.j] = 1;
  }
  Set out;
  for (int c = 0; c < m; ++c) {
    bool top = true;
    for (int x = 0; x < m; ++x) {
      if (locked[x][c]) top = false;
    }
    if (top) out.insert(c);
  }
  return out;
}

Set nanson(const Profile& p) {
  Set alive = all_of(p);
  while (alive.size() > 1) {
    auto s = borda_on(p, alive);
    std::int64_t total = 0;
    for (auto [c, v] : s) total += v;
    Set keep;
    for (auto [c, v] : s) {
      if (v * static_cast<std::int64_t>(alive.size()) >= total) keep.insert(c);
    }
    if (keep.size() == alive.size()) break;
    alive = keep;
  }
  return alive;
}

std::vector<std::vector<CandidateId>> kemeny_rankings(const Profile& p) {
  const int m = p.num_candidates();
  std::vector<CandidateId> r(m);
  std::iota(r.begin(), r.end(), 0);
  std::int64_t best = -1;
  std::vector<std::vector<CandidateId>> out;
  do {
    std::int64_t s = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) s += N(p, r[a], r[b]);
    }
    if (s > best) {
      best = s;
      out = {r};
    } else if (s == best) {
      out.push_back(r);
    }
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

Set kemeny(const Profile& p) {
  Set out;
  for (const auto& r : kemeny_rankings(p)) out.insert(r.front());
  return out;
}

Set put_stv(const Profile& p) {
  Set wins;
  std::function<void(Set)> go = [&](Set alive) {
    auto s = first_places(p, alive);
    for (auto [c, v] : s) {
      if (2 * v > p.num_voters()) {
        wins.insert(c);
        return;
      }
    }
    if (alive.size() == 1) {
      wins.insert(*alive.begin());
      return;
    }
    for (CandidateId c : argmin(s)) {
      Set next = alive;
      next.erase(c);
      go(next);
    }
  };
  go(all_of(p));
  return wins;
}

Set put_baldwin(const Profile& p) {
  Set wins;
  std::function<void(Set)> go = [&](Set alive) {
    if (alive.size() == 1) {
      wins.insert(*alive.begin());
      return;
    }
    for (CandidateId c : argmin(borda_on(p, alive))) {
      Set next = alive;
      next.erase(c);
      go(next);
    }
  };
  go(all_of(p));
  return wins;
}

Set put_coombs(const Profile& p, bool simplified) {
  Set wins;
  std::function<void(Set)> go = [&](Set alive) {
    if (alive.size() == 1) {
      wins.insert(*alive.begin());
      return;
    }
    if (!simplified) {
      Set qualified;
      for (auto [c, v] : first_places(p, alive)) {
        if (2 * v >= p.num_voters()) qualified.insert(c);
      }
      if (!qualified.empty()) {
        wins.insert(qualified.begin(), qualified.end());
        return;
      }
    }
    for (CandidateId c : argmax(last_places(p, alive))) {
      Set next = alive;
      next.erase(c);
      go(next);
    }
  };
  go(all_of(p));
  return wins;
}

Set put_runoff(const Profile& p) {
  const Set all = all_of(p);
  if (all.size() == 1) return all;
  auto s = first_places(p, all);
  for (auto [c, v] : s) {
    if (2 * v > p.num_voters()) return {c};
  }
  Set wins;
  for (CandidateId a : all) {
    for (CandidateId b : all) {
      if (b <= a) continue;
      bool top_two = true;
      for (CandidateId x : all) {
        if (x != a && x != b && (s[x] > s[a] || s[x] > s[b])) top_two = false;
      }
      if (!top_two) continue;
      const std::int64_t ab = N(p, a, b), ba = N(p, b, a);
      if (ab >= ba) wins.insert(a);
      if (ba >= ab) wins.insert(b);
    }
  }
  return wins;
}

Set put_hyb_plurality1(const Profile& p) {
  const Set all = all_of(p);
  Set wins;
  for (CandidateId c : argmin(first_places(p, all))) {
    Set rest = all;
    rest.erase(c);
    for (CandidateId w : argmax(first_places(p, rest))) wins.insert(w);
  }
  return wins;
}

Tree tree_of(const tiectl::CupSchedule& s) {
  std::function<Tree(int)> build = [&](int i) {
    Tree t;
    const auto& nd = s.nodes[i];
    if (nd.leaf()) {
      t.label = nd.label;
    } else {
      t.kids.push_back(build(nd.left));
      t.kids.push_back(build(nd.right));
    }
    return t;
  };
  return build(s.root());
}

int cup_winner(const Tree& t, const Rel& rel, const Orientation& o) {
  if (t.kids.empty()) return t.label;
  const int a = cup_winner(t.kids[0], rel, o), b = cup_winner(t.kids[1], rel, o);
  if (a == b) return a;
  if (rel[a][b] > 0) return a;
  if (rel[a][b] < 0) return b;
  return o.at({std::min(a, b), std::max(a, b)});
}

Set cup_put(const Tree& t, const Rel& rel) {
  // (winner, orientation fixed so far) for every way a subtree can play out
  using Outcome = std::pair<int, Orientation>;
  std::function<std::vector<Outcome>(const Tree&, const Orientation&)> eval = [&](const Tree& node,
                                                                                  const Orientation& o) {
    std::vector<Outcome> out;
    if (node.kids.empty()) {
      out.push_back({node.label, o});
      return out;
    }
    for (const auto& [a, oa] : eval(node.kids[0], o)) {
      for (const auto& [b, ob] : eval(node.kids[1], oa)) {
        if (a == b || rel[a][b] != 0) {
          out.push_back({a == b || rel[a][b] > 0 ? a : b, ob});
          continue;
        }
        const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        auto it = ob.find(key);
        if (it != ob.end()) {
          out.push_back({it->second, ob});
        } else {
          for (int w : {a, b}) {
            Orientation o2 = ob;
            o2[key] = w;
            out.push_back({w, o2});
          }
        }
      }
    }
    return out;
  };
  Set wins;
  for (const auto& [w, o] : eval(t, {})) wins.insert(w);
  return wins;
}

std::vector<Orientation> orientations(const Rel& rel, bool acyclic_only) {
  const int m = static_cast<int>(rel.size());
  std::vector<std::pair<int, int>> ties;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (rel[i][j] == 0) ties.push_back({i, j});
    }
  }
  std::vector<Orientation> out;
  for (std::uint64_t mask = 0; mask < (1ULL << ties.size()); ++mask) {
    Orientation o;
    std::vector<std::vector<int>> adj(m);
    for (std::size_t k = 0; k < ties.size(); ++k) {
      const auto [i, j] = ties[k];
      const int w = (mask >> k) & 1 ? j : i;
      o[ties[k]] = w;
      adj[w].push_back(w == i ? j : i);
    }
    if (acyclic_only) {
      // colour DFS for a cycle
      std::vector<int> colour(m, 0);
      bool cyclic = false;
      std::function<void(int)> dfs = [&](int x) {
        colour[x] = 1;
        for (int y : adj[x]) {
          if (colour[y] == 1) cyclic = true;
          else if (colour[y] == 0) dfs(y);
        }
        colour[x] = 2;
      };
      for (int x = 0; x < m; ++x) {
        if (colour[x] == 0) dfs(x);
      }
      if (cyclic) continue;
    }
    out.push_back(std::move(o));
  }
  return out;
}

Rel rel_of(const tiectl::MajorityRelation& r) {
  const int m = r.size();
  Rel rel(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) rel[i][j] = i == j ? 0 : r.compare(i, j);
  }
  return rel;
}

bool x3c(const tiectl::X3CInstance& inst) {
  const int n = static_cast<int>(inst.sets.size());
  const int need = inst.q / 3;
  for (std::uint64_t pick = 0; pick < (1ULL << n); ++pick) {
    if (std::popcount(pick) != need) continue;
    std::vector<int> cover(inst.q, 0);
    for (int j = 0; j < n; ++j) {
      if ((pick >> j) & 1) {
        for (int e : inst.sets[j]) cover[e]++;
      }
    }
    if (std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; })) return true;
  }
  return false;
}

bool sat(const tiectl::SATInstance& inst) {
  std::vector<int> val(inst.num_vars + 1, 0);
  std::function<bool(int)> go = [&](int v) {
    if (v > inst.num_vars) {
      for (const auto& c : inst.clauses) {
        bool ok = false;
        for (int lit : c) ok = ok || (lit > 0 ? val[lit] == 1 : val[-lit] == 0);
        if (!ok) return false;
      }
      return true;
    }
    for (int b : {0, 1}) {
      val[v] = b;
      if (go(v + 1)) return true;
    }
    return false;
  };
  return go(1);
}

Profile random_profile(std::mt19937_64& rng, int max_m, int max_n, bool weights, bool cutoffs, int min_m) {
  const int m = std::uniform_int_distribution<int>(min_m, max_m)(rng);
  const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  std::vector<tiectl::Candidate> cands;
  for (int i = 0; i < m; ++i) cands.push_back({i, "c" + std::to_string(i + 1)});
  std::vector<tiectl::Ballot> ballots;
  for (int v = 0; v < n; ++v) {
    tiectl::Ballot b;
    b.ranking.resize(m);
    std::iota(b.ranking.begin(), b.ranking.end(), 0);
    std::shuffle(b.ranking.begin(), b.ranking.end(), rng);
    if (weights) b.weight = std::uniform_int_distribution<int>(1, 3)(rng);
    if (cutoffs && std::bernoulli_distribution(0.8)(rng)) {
      b.approval_cutoff = std::uniform_int_distribution<int>(1, m)(rng);
    }
    ballots.push_back(std::move(b));
  }
  return Profile(std::move(cands), std::move(ballots));
}

tiectl::CupSchedule random_schedule(std::mt19937_64& rng, const std::vector<CandidateId>& leaves) {
  if (leaves.size() == 1) return tiectl::CupSchedule::leaf(leaves[0]);
  const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, leaves.size() - 1)(rng);
  std::vector<CandidateId> l(leaves.begin(), leaves.begin() + cut), r(leaves.begin() + cut, leaves.end());
  return tiectl::CupSchedule::match(random_schedule(rng, l), random_schedule(rng, r));
}

tiectl::MajorityRelation random_relation(std::mt19937_64& rng, int m, double tie_prob) {
  std::vector<tiectl::Candidate> cands;
  for (int i = 0; i < m; ++i) cands.push_back({i, "c" + std::to_string(i + 1)});
  tiectl::MajorityRelation rel(cands);
  std::bernoulli_distribution tie(tie_prob), coin(0.5);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (tie(rng)) rel.set_tied(i, j);
      else if (coin(rng)) rel.set_beats(i, j);
      else rel.set_beats(j, i);
    }
  }
  return rel;
}

std::vector<CandidateId> members(tiectl::CandidateSet s) { return s.members(); }

Set to_set(tiectl::CandidateSet s) {
  const auto v = s.members();
  return Set(v.begin(), v.end());
}

}  // namespace oracle
