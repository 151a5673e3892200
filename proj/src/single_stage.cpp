#include <algorithm>
#include <numeric>

#include "tiectl/error.hpp"
#include "tiectl/rules.hpp"

namespace tiectl {

namespace {

template <typename T>
CandidateSet argmax(const std::vector<T>& scores, CandidateSet among) {
  CandidateSet best;
  bool have = false;
  T top{};
  among.for_each([&](CandidateId c) {
    if (!have || scores[c] > top) {
      top = scores[c];
      best = CandidateSet{c};
      have = true;
    } else if (scores[c] == top) {
      best.insert(c);
    }
  });
  return best;
}

WeightVector weights_for(const RuleSpec& spec, int m) {
  switch (spec.kind) {
    case RuleKind::Plurality: return WeightVector::plurality(m);
    case RuleKind::Veto: return WeightVector::veto(m);
    case RuleKind::KApproval: return WeightVector::k_approval(m, spec.k);
    case RuleKind::Borda: return WeightVector::borda(m);
    default: return WeightVector(spec.weights);
  }
}

// k-approval counts for every k at once: prefix[k-1][c]
std::vector<std::vector<std::int64_t>> prefix_counts(const Profile& profile, bool respect_cutoff) {
  const int m = profile.num_candidates();
  std::vector<std::vector<std::int64_t>> counts(m, std::vector<std::int64_t>(m, 0));
  for (const Ballot& b : profile.ballots()) {
    const int limit = respect_cutoff && b.approval_cutoff ? *b.approval_cutoff : m;
    for (int pos = 0; pos < limit; ++pos) {
      for (int k = pos; k < m; ++k) counts[k][b.ranking[pos]] += b.weight;
    }
  }
  return counts;
}

CandidateSet bucklin(const Profile& profile, bool simplified) {
  const std::int64_t threshold = profile.num_voters() / 2;
  const auto counts = prefix_counts(profile, false);
  for (const auto& row : counts) {
    if (*std::max_element(row.begin(), row.end()) <= threshold) continue;
    if (!simplified) return argmax(row, profile.all());
    CandidateSet out;
    for (int c = 0; c < profile.num_candidates(); ++c) {
      if (row[c] > threshold) out.insert(c);
    }
    return out;
  }
  return profile.all();  // unreachable: at k = m everyone has n
}

CandidateSet fallback(const Profile& profile) {
  const std::int64_t threshold = profile.num_voters() / 2;
  const auto counts = prefix_counts(profile, true);
  for (const auto& row : counts) {
    CandidateSet over;
    for (int c = 0; c < profile.num_candidates(); ++c) {
      if (row[c] > threshold) over.insert(c);
    }
    if (!over.empty()) return over;
  }
  return argmax(counts.back(), profile.all());
}

CandidateSet nanson(const Profile& profile) {
  CandidateSet alive = profile.all();
  while (alive.size() > 1) {
    const auto scores = borda_scores(profile, alive);
    std::int64_t total = 0;
    alive.for_each([&](CandidateId c) { total += scores[c]; });
    CandidateSet below;
    alive.for_each([&](CandidateId c) {
      if (scores[c] * alive.size() < total) below.insert(c);
    });
    if (below.empty()) break;
    alive = alive - below;
  }
  return alive;
}

CandidateSet maximin(const Profile& profile) {
  const int m = profile.num_candidates();
  if (m == 1) return profile.all();
  const PairwiseMatrix pm = pairwise_matrix(profile);
  std::vector<std::int64_t> worst(m, 0);
  for (int i = 0; i < m; ++i) {
    std::int64_t w = profile.num_voters();
    for (int j = 0; j < m; ++j) {
      if (j != i) w = std::min(w, pm(i, j));
    }
    worst[i] = w;
  }
  return argmax(worst, profile.all());
}

CandidateSet schulze(const Profile& profile) {
  const int m = profile.num_candidates();
  const PairwiseMatrix pm = pairwise_matrix(profile);
  std::vector<std::vector<std::int64_t>> path(m, std::vector<std::int64_t>(m, 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && pm(i, j) > pm(j, i)) path[i][j] = pm(i, j);
    }
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      if (i == k) continue;
      for (int j = 0; j < m; ++j) {
        if (j == i || j == k) continue;
        path[i][j] = std::max(path[i][j], std::min(path[i][k], path[k][j]));
      }
    }
  }
  CandidateSet out;
  for (int i = 0; i < m; ++i) {
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      if (j != i && path[j][i] > path[i][j]) ok = false;
    }
    if (ok) out.insert(i);
  }
  return out;
}

CandidateSet black(const Profile& profile) {
  const PairwiseMatrix pm = pairwise_matrix(profile);
  const int m = profile.num_candidates();
  for (int c = 0; c < m; ++c) {
    bool condorcet = true;
    for (int j = 0; j < m && condorcet; ++j) {
      if (j != c && !(2 * pm(c, j) > profile.num_voters())) condorcet = false;
    }
    if (condorcet) return CandidateSet{c};
  }
  return argmax(positional_scores(profile, WeightVector::borda(m)), profile.all());
}

CandidateSet copeland_set(const MajorityRelation& rel, CandidateSet alive, const std::vector<std::int8_t>& orient,
                          const Rational& alpha, bool second_order) {
  const auto scores = copeland_scores(rel, alive, orient, alpha);
  CandidateSet best = argmax(scores, alive);
  if (!second_order || best.size() < 2) return best;
  const int m = rel.size();
  std::vector<Rational> defeated(m, Rational(0));
  best.for_each([&](CandidateId i) {
    alive.for_each([&](CandidateId j) {
      if (i == j) return;
      int c = rel.compare(i, j);
      if (c == 0 && !orient.empty()) {
        std::int8_t o = orient[pair_index(m, i, j)];
        if (o != 0) c = ((o == 1) == (i < j)) ? 1 : -1;
      }
      if (c > 0) defeated[i] += scores[j];
    });
  });
  return argmax(defeated, best);
}

CandidateId ranked_pairs(const Profile& profile, const std::vector<std::string>& order_names) {
  const int m = profile.num_candidates();
  std::vector<int> rank(m);
  std::iota(rank.begin(), rank.end(), 0);
  if (!order_names.empty()) {
    // names missing from the profile are skipped so the order still applies
    // after candidates have been eliminated
    CandidateSet seen;
    int pos = 0;
    for (const std::string& name : order_names) {
      auto c = profile.find(name);
      if (!c) continue;
      if (seen.contains(*c)) throw InvalidArgument("ranked pairs order repeats " + name);
      seen.insert(*c);
      rank[*c] = pos++;
    }
    if (seen != profile.all()) throw InvalidArgument("ranked pairs order must list every candidate");
  }
  const PairwiseMatrix pm = pairwise_matrix(profile);
  std::vector<std::pair<CandidateId, CandidateId>> pairs;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && pm(i, j) >= pm(j, i)) pairs.emplace_back(i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    if (pm(a.first, a.second) != pm(b.first, b.second)) return pm(a.first, a.second) > pm(b.first, b.second);
    if (rank[a.first] != rank[b.first]) return rank[a.first] < rank[b.first];
    return rank[a.second] < rank[b.second];
  });
  // reach[i] = set reachable from i through locked edges (including i)
  std::vector<CandidateSet> reach(m);
  for (int i = 0; i < m; ++i) reach[i] = CandidateSet{i};
  CandidateSet beaten;
  for (auto [i, j] : pairs) {
    if (reach[j].contains(i)) continue;
    beaten.insert(j);
    for (int x = 0; x < m; ++x) {
      if (reach[x].contains(i)) reach[x] = reach[x] | reach[j];
    }
  }
  CandidateSet top = profile.all() - beaten;
  return top.front();
}

}  // namespace

std::vector<Rational> copeland_scores(const MajorityRelation& relation, CandidateSet alive,
                                      const std::vector<std::int8_t>& orient, const Rational& alpha) {
  const int m = relation.size();
  std::vector<Rational> scores(m, Rational(0));
  alive.for_each([&](CandidateId i) {
    alive.for_each([&](CandidateId j) {
      if (i == j) return;
      const int c = relation.compare(i, j);
      if (c > 0) {
        scores[i] += 1;
      } else if (c == 0) {
        std::int8_t o = orient.empty() ? 0 : orient[pair_index(m, i, j)];
        if (o == 0) scores[i] += alpha;
        else if ((o == 1) == (i < j)) scores[i] += 1;
      }
    });
  });
  return scores;
}

CandidateSet single_stage_winners(const RuleSpec& spec, const Profile& profile) {
  if (!spec.single_stage()) {
    throw InvalidArgument("rule '" + to_string(spec) + "' has intermediate ties; use a resolver or the search");
  }
  const int m = profile.num_candidates();
  switch (spec.kind) {
    case RuleKind::Scoring:
    case RuleKind::Plurality:
    case RuleKind::Veto:
    case RuleKind::KApproval:
    case RuleKind::Borda:
      return argmax(positional_scores(profile, weights_for(spec, m)), profile.all());
    case RuleKind::Black: return black(profile);
    case RuleKind::Bucklin: return bucklin(profile, spec.simplified);
    case RuleKind::Fallback: return fallback(profile);
    case RuleKind::Nanson: return nanson(profile);
    case RuleKind::Maximin: return maximin(profile);
    case RuleKind::Schulze: return schulze(profile);
    case RuleKind::Copeland: {
      auto rel = MajorityRelation::from_pairwise(pairwise_matrix(profile), profile.candidates());
      return copeland_set(rel, profile.all(), {}, spec.alpha, spec.second_order);
    }
    case RuleKind::RankedPairs: return CandidateSet{ranked_pairs(profile, spec.pair_order)};
    case RuleKind::Kemeny: {
      CandidateSet tops;
      for (const auto& r : kemeny_optimal_rankings(profile, spec.kemeny_bound).rankings) tops.insert(r.front());
      return tops;
    }
    default: break;
  }
  throw InvalidArgument("not a single-stage rule");
}

KemenyResult kemeny_optimal_rankings(const Profile& profile, int bound) {
  const int m = profile.num_candidates();
  if (m > bound) {
    throw InvalidArgument("kemeny exhaustion bound is " + std::to_string(bound) + " candidates, profile has " +
                          std::to_string(m));
  }
  const PairwiseMatrix pm = pairwise_matrix(profile);
  std::vector<CandidateId> r(m);
  std::iota(r.begin(), r.end(), 0);
  KemenyResult out;
  out.score = -1;
  do {
    std::int64_t s = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) s += pm(r[a], r[b]);
    }
    if (s > out.score) {
      out.score = s;
      out.rankings.clear();
    }
    if (s == out.score) out.rankings.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

CandidateSet copeland_with_orientation(const Profile& profile,
                                       const std::vector<std::pair<CandidateId, CandidateId>>& orientation,
                                       const Rational& alpha, bool second_order) {
  const int m = profile.num_candidates();
  auto rel = MajorityRelation::from_pairwise(pairwise_matrix(profile), profile.candidates());
  std::vector<std::int8_t> orient(static_cast<std::size_t>(m) * m, 0);
  for (auto [w, l] : orientation) {
    if (w < 0 || w >= m || l < 0 || l >= m || !rel.tied(w, l)) {
      throw InvalidArgument("orientation names a pair that is not tied");
    }
    orient[pair_index(m, w, l)] = w < l ? 1 : 2;
  }
  return copeland_set(rel, profile.all(), orient, alpha, second_order);
}

// Shared with the machine implementation.
CandidateSet copeland_winners_oriented(const MajorityRelation& rel, CandidateSet alive,
                                       const std::vector<std::int8_t>& orient, const Rational& alpha,
                                       bool second_order) {
  return copeland_set(rel, alive, orient, alpha, second_order);
}

}  // namespace tiectl
