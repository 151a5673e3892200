#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiectl/candidate_set.hpp"
#include "tiectl/rational.hpp"

namespace tiectl {

struct Candidate {
  CandidateId id = 0;
  std::string name;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// A strict ranking over every candidate, carried with an integer multiplicity.
struct Ballot {
  std::vector<CandidateId> ranking;
  std::int64_t weight = 1;
  /// Number of approved leading positions (fallback voting only).
  std::optional<int> approval_cutoff;

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

/// Weighted strict-order profile. Immutable after construction; the
/// constructor rejects anything that is not a valid election.
class Profile {
 public:
  Profile(std::vector<Candidate> candidates, std::vector<Ballot> ballots);

  int num_candidates() const { return static_cast<int>(candidates_.size()); }
  std::int64_t num_voters() const { return num_voters_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }
  const std::vector<Ballot>& ballots() const { return ballots_; }
  const std::string& name(CandidateId c) const { return candidates_.at(c).name; }
  CandidateSet all() const { return CandidateSet::first(num_candidates()); }

  std::optional<CandidateId> find(std::string_view name) const;
  /// Like find, but throws InvalidArgument for unknown names.
  CandidateId id_of(std::string_view name) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<Candidate> candidates_;
  std::vector<Ballot> ballots_;
  std::int64_t num_voters_ = 0;
};

/// counts(i, j) = total weight of ballots ranking i above j.
class PairwiseMatrix {
 public:
  PairwiseMatrix(int m, std::int64_t n) : m_(m), n_(n), counts_(static_cast<std::size_t>(m) * m, 0) {}

  int size() const { return m_; }
  std::int64_t voters() const { return n_; }
  std::int64_t operator()(CandidateId i, CandidateId j) const { return counts_[index(i, j)]; }
  std::int64_t& at(CandidateId i, CandidateId j) { return counts_[index(i, j)]; }
  std::int64_t margin(CandidateId i, CandidateId j) const { return (*this)(i, j) - (*this)(j, i); }
  bool beats(CandidateId i, CandidateId j) const { return margin(i, j) > 0; }
  bool tied(CandidateId i, CandidateId j) const { return i != j && margin(i, j) == 0; }

 private:
  std::size_t index(CandidateId i, CandidateId j) const {
    return static_cast<std::size_t>(i) * m_ + j;
  }
  int m_;
  std::int64_t n_;
  std::vector<std::int64_t> counts_;
};

/// Positional scoring weights (w_1..w_m), non-negative and non-increasing.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> weights);

  static WeightVector plurality(int m);
  static WeightVector veto(int m);
  static WeightVector k_approval(int m, int k);
  static WeightVector borda(int m);

  int size() const { return static_cast<int>(weights_.size()); }
  const Rational& operator[](int position) const { return weights_[position]; }
  const std::vector<Rational>& weights() const { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Rational> weights_;
};

enum class PairOutcome : std::int8_t { Tied = 0, FirstWins = 1, SecondWins = 2 };

/// Pairwise majority relation over a named candidate set; ties are explicit.
class MajorityRelation {
 public:
  explicit MajorityRelation(std::vector<Candidate> candidates);
  static MajorityRelation from_pairwise(const PairwiseMatrix& pm, std::vector<Candidate> candidates);

  int size() const { return static_cast<int>(candidates_.size()); }
  const std::vector<Candidate>& candidates() const { return candidates_; }
  const std::string& name(CandidateId c) const { return candidates_.at(c).name; }

  /// +1 when i beats j, -1 when j beats i, 0 when tied (and for i == j).
  int compare(CandidateId i, CandidateId j) const;
  bool tied(CandidateId i, CandidateId j) const { return i != j && compare(i, j) == 0; }
  void set_beats(CandidateId winner, CandidateId loser);
  void set_tied(CandidateId i, CandidateId j);

  /// Unordered tied pairs (i < j) in lexicographic order.
  std::vector<std::pair<CandidateId, CandidateId>> tied_pairs() const;

  friend bool operator==(const MajorityRelation&, const MajorityRelation&) = default;

 private:
  std::size_t index(CandidateId i, CandidateId j) const;
  std::vector<Candidate> candidates_;
  std::vector<PairOutcome> outcome_;  // upper triangle, row-major
};

PairwiseMatrix pairwise_matrix(const Profile& profile);

/// score(c) = sum of weight * w_(position of c).
std::vector<Rational> positional_scores(const Profile& profile, const WeightVector& weights);

/// Filters every ballot to the survivors. Survivor ids are renumbered densely
/// in ascending order, so new id i corresponds to survivors.members()[i].
Profile restrict(const Profile& profile, CandidateSet survivors);

/// McGarvey realization: strict edges get margin 2, ties margin 0, n even.
Profile tournament_to_profile(const MajorityRelation& relation);

// Integer score kernels over the alive sub-electorate, indexed by original id.
// Entries for candidates outside `alive` are zero.
std::vector<std::int64_t> plurality_scores(const Profile& profile, CandidateSet alive);
std::vector<std::int64_t> veto_scores(const Profile& profile, CandidateSet alive);
std::vector<std::int64_t> borda_scores(const Profile& profile, CandidateSet alive);

}  // namespace tiectl
