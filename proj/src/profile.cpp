#include "tiectl/profile.hpp"

#include <algorithm>
#include <unordered_set>

#include "tiectl/error.hpp"

namespace tiectl {

namespace {

void check_candidates(const std::vector<Candidate>& candidates) {
  if (candidates.empty()) throw InvalidArgument("an election needs at least one candidate");
  if (candidates.size() > static_cast<std::size_t>(kMaxCandidates)) {
    throw InvalidArgument("at most " + std::to_string(kMaxCandidates) + " candidates are supported");
  }
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (c.id != static_cast<CandidateId>(i)) {
      throw InvalidArgument("candidate ids must be dense and ordered; got id " + std::to_string(c.id) +
                            " at position " + std::to_string(i));
    }
    if (c.name.empty() || c.name.find_first_of("\n\r") != std::string::npos) {
      throw InvalidArgument("candidate " + std::to_string(c.id) + " has an empty or multi-line name");
    }
    if (!names.insert(c.name).second) throw InvalidArgument("duplicate candidate name '" + c.name + "'");
  }
}

}  // namespace

Profile::Profile(std::vector<Candidate> candidates, std::vector<Ballot> ballots)
    : candidates_(std::move(candidates)), ballots_(std::move(ballots)) {
  check_candidates(candidates_);
  const int m = num_candidates();
  for (const Ballot& b : ballots_) {
    if (b.weight <= 0) throw InvalidArgument("ballot weights must be positive");
    if (static_cast<int>(b.ranking.size()) != m) {
      throw InvalidArgument("ballot ranks " + std::to_string(b.ranking.size()) + " of " +
                            std::to_string(m) + " candidates");
    }
    CandidateSet seen;
    for (CandidateId c : b.ranking) {
      if (c < 0 || c >= m) throw InvalidArgument("ballot names unknown candidate id " + std::to_string(c));
      if (seen.contains(c)) throw InvalidArgument("ballot ranks candidate " + name(c) + " twice");
      seen.insert(c);
    }
    if (b.approval_cutoff && (*b.approval_cutoff < 1 || *b.approval_cutoff > m)) {
      throw InvalidArgument("approval cutoff must lie in 1..m");
    }
    num_voters_ += b.weight;
  }
  if (num_voters_ < 1) throw InvalidArgument("a profile needs at least one voter");
}

std::optional<CandidateId> Profile::find(std::string_view name) const {
  for (const Candidate& c : candidates_) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

CandidateId Profile::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw InvalidArgument("unknown candidate '" + std::string(name) + "'");
}

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidArgument("weight vector is empty");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0) throw InvalidArgument("weights must be non-negative");
    if (i > 0 && weights_[i] > weights_[i - 1]) throw InvalidArgument("weights must be non-increasing");
  }
  if (weights_.size() > 1 && !(weights_.front() > weights_.back())) {
    throw InvalidArgument("weight vector is degenerate (w_1 = w_m)");
  }
}

WeightVector WeightVector::plurality(int m) { return k_approval(m, 1); }

WeightVector WeightVector::veto(int m) {
  if (m == 1) return WeightVector({Rational(1)});
  return k_approval(m, m - 1);
}

WeightVector WeightVector::k_approval(int m, int k) {
  if (k < 1) throw InvalidArgument("k-approval needs k >= 1");
  if (m == 1) return WeightVector({Rational(1)});
  if (k >= m) throw InvalidArgument("k-approval with k >= m is degenerate");
  std::vector<Rational> w(m, Rational(0));
  std::fill(w.begin(), w.begin() + k, Rational(1));
  return WeightVector(std::move(w));
}

WeightVector WeightVector::borda(int m) {
  std::vector<Rational> w;
  w.reserve(m);
  for (int i = 0; i < m; ++i) w.emplace_back(m - 1 - i);
  if (m == 1) w.front() = 1;
  return WeightVector(std::move(w));
}

MajorityRelation::MajorityRelation(std::vector<Candidate> candidates)
    : candidates_(std::move(candidates)) {
  check_candidates(candidates_);
  const std::size_t m = candidates_.size();
  outcome_.assign(m * (m - 1) / 2, PairOutcome::Tied);
}

MajorityRelation MajorityRelation::from_pairwise(const PairwiseMatrix& pm, std::vector<Candidate> candidates) {
  MajorityRelation rel(std::move(candidates));
  if (rel.size() != pm.size()) throw InvalidArgument("candidate list does not match the pairwise matrix");
  for (int i = 0; i < pm.size(); ++i) {
    for (int j = i + 1; j < pm.size(); ++j) {
      if (pm.beats(i, j)) rel.set_beats(i, j);
      else if (pm.beats(j, i)) rel.set_beats(j, i);
    }
  }
  return rel;
}

std::size_t MajorityRelation::index(CandidateId i, CandidateId j) const {
  // i < j; rows of the strict upper triangle laid out one after another.
  const std::size_t m = candidates_.size();
  const auto a = static_cast<std::size_t>(i);
  return a * (2 * m - a - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

int MajorityRelation::compare(CandidateId i, CandidateId j) const {
  if (i == j) return 0;
  const bool flip = i > j;
  PairOutcome o = outcome_[flip ? index(j, i) : index(i, j)];
  if (o == PairOutcome::Tied) return 0;
  const int sign = o == PairOutcome::FirstWins ? 1 : -1;
  return flip ? -sign : sign;
}

void MajorityRelation::set_beats(CandidateId winner, CandidateId loser) {
  if (winner == loser) throw InvalidArgument("a candidate cannot beat itself");
  if (winner < loser) outcome_[index(winner, loser)] = PairOutcome::FirstWins;
  else outcome_[index(loser, winner)] = PairOutcome::SecondWins;
}

void MajorityRelation::set_tied(CandidateId i, CandidateId j) {
  if (i == j) throw InvalidArgument("a candidate cannot tie itself");
  outcome_[i < j ? index(i, j) : index(j, i)] = PairOutcome::Tied;
}

std::vector<std::pair<CandidateId, CandidateId>> MajorityRelation::tied_pairs() const {
  std::vector<std::pair<CandidateId, CandidateId>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (compare(i, j) == 0) out.emplace_back(i, j);
    }
  }
  return out;
}

PairwiseMatrix pairwise_matrix(const Profile& profile) {
  const int m = profile.num_candidates();
  PairwiseMatrix pm(m, profile.num_voters());
  for (const Ballot& b : profile.ballots()) {
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) pm.at(b.ranking[x], b.ranking[y]) += b.weight;
    }
  }
  return pm;
}

std::vector<Rational> positional_scores(const Profile& profile, const WeightVector& weights) {
  const int m = profile.num_candidates();
  if (weights.size() != m) {
    throw InvalidArgument("weight vector has length " + std::to_string(weights.size()) + " but m = " +
                          std::to_string(m));
  }
  std::vector<Rational> scores(m, Rational(0));
  for (const Ballot& b : profile.ballots()) {
    for (int pos = 0; pos < m; ++pos) scores[b.ranking[pos]] += weights[pos] * b.weight;
  }
  return scores;
}

Profile restrict(const Profile& profile, CandidateSet survivors) {
  survivors = survivors & profile.all();
  if (survivors.empty()) throw InvalidArgument("cannot restrict to an empty candidate set");
  std::vector<CandidateId> new_id(profile.num_candidates(), -1);
  std::vector<Candidate> candidates;
  for (CandidateId c : survivors.members()) {
    new_id[c] = static_cast<CandidateId>(candidates.size());
    candidates.push_back({new_id[c], profile.name(c)});
  }
  std::vector<Ballot> ballots;
  ballots.reserve(profile.ballots().size());
  for (const Ballot& b : profile.ballots()) {
    Ballot r;
    r.weight = b.weight;
    int approved = 0;
    for (int pos = 0; pos < static_cast<int>(b.ranking.size()); ++pos) {
      CandidateId c = b.ranking[pos];
      if (!survivors.contains(c)) continue;
      r.ranking.push_back(new_id[c]);
      if (b.approval_cutoff && pos < *b.approval_cutoff) ++approved;
    }
    if (b.approval_cutoff) {
      // A cutoff of zero is not representable; an all-eliminated approval set
      // keeps the top survivor approved.
      r.approval_cutoff = std::max(approved, 1);
    }
    ballots.push_back(std::move(r));
  }
  return Profile(std::move(candidates), std::move(ballots));
}

Profile tournament_to_profile(const MajorityRelation& relation) {
  const int m = relation.size();
  std::vector<Ballot> ballots;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || relation.compare(i, j) <= 0) continue;
      std::vector<CandidateId> others;
      for (int c = 0; c < m; ++c) {
        if (c != i && c != j) others.push_back(c);
      }
      Ballot forward;
      forward.ranking = {i, j};
      forward.ranking.insert(forward.ranking.end(), others.begin(), others.end());
      Ballot backward;
      backward.ranking.assign(others.rbegin(), others.rend());
      backward.ranking.push_back(i);
      backward.ranking.push_back(j);
      ballots.push_back(std::move(forward));
      ballots.push_back(std::move(backward));
    }
  }
  if (ballots.empty()) {
    Ballot up, down;
    for (int c = 0; c < m; ++c) up.ranking.push_back(c);
    down.ranking.assign(up.ranking.rbegin(), up.ranking.rend());
    ballots.push_back(std::move(up));
    ballots.push_back(std::move(down));
  }
  return Profile(relation.candidates(), std::move(ballots));
}

std::vector<std::int64_t> plurality_scores(const Profile& profile, CandidateSet alive) {
  std::vector<std::int64_t> scores(profile.num_candidates(), 0);
  if (alive.empty()) return scores;
  for (const Ballot& b : profile.ballots()) {
    for (CandidateId c : b.ranking) {
      if (alive.contains(c)) {
        scores[c] += b.weight;
        break;
      }
    }
  }
  return scores;
}

std::vector<std::int64_t> veto_scores(const Profile& profile, CandidateSet alive) {
  std::vector<std::int64_t> scores(profile.num_candidates(), 0);
  if (alive.empty()) return scores;
  for (const Ballot& b : profile.ballots()) {
    for (auto it = b.ranking.rbegin(); it != b.ranking.rend(); ++it) {
      if (alive.contains(*it)) {
        scores[*it] += b.weight;
        break;
      }
    }
  }
  return scores;
}

std::vector<std::int64_t> borda_scores(const Profile& profile, CandidateSet alive) {
  std::vector<std::int64_t> scores(profile.num_candidates(), 0);
  for (const Ballot& b : profile.ballots()) {
    std::int64_t below = 0;
    for (auto it = b.ranking.rbegin(); it != b.ranking.rend(); ++it) {
      if (!alive.contains(*it)) continue;
      scores[*it] += below * b.weight;
      ++below;
    }
  }
  return scores;
}

}  // namespace tiectl
