#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tiectl/formats.hpp"
#include "tiectl/rule_spec.hpp"

namespace tiectl {

/// Exact cover by 3-sets over elements 0..q-1.
struct X3CInstance {
  int q = 0;
  std::vector<std::array<int, 3>> sets;

  int occ(int element) const;
  void validate() const;
};

/// `elements q`, then one `a b c` line per set with 1-based elements.
X3CInstance parse_x3c(std::string_view text);
std::string serialize_x3c(const X3CInstance& inst);

/// 3-CNF; literals are +v / -v with variables numbered from 1.
struct SATInstance {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  void validate() const;
};

/// DIMACS: `c` comments, a `p cnf V C` header, clauses terminated by 0.
SATInstance parse_dimacs(std::string_view text);
std::string serialize_dimacs(const SATInstance& inst);

struct GeneratedElection {
  Profile profile;
  CandidateId p = 0;
  RuleSpec rule;
  int k = 0;  // hybrid rounds, Hyb family only
};

struct GeneratedCup {
  MajorityRelation relation;
  CupSchedule schedule;
  CandidateId p = 0;
};

/// Candidates p, d, b, v_1..v_q, a_1..a_t with t = number of sets.
GeneratedElection gen_baldwin_from_x3c(const X3CInstance& inst);
/// Two-stage veto-half + plurality instance with 2n+8q/3+4 candidates.
GeneratedElection gen_vetoplurality_from_x3c(const X3CInstance& inst);
/// Hyb(Plurality_k, Plurality) instance; T = 0 picks the minimum 3*n*q.
GeneratedElection gen_hybplurality_from_x3c(const X3CInstance& inst, std::int64_t T = 0);
GeneratedCup gen_cup_from_3sat(const SATInstance& inst);

bool solve_x3c_bruteforce(const X3CInstance& inst);
bool solve_3sat_bruteforce(const SATInstance& inst);

/// Impartial culture: n independent uniform rankings, one weight-1 ballot each.
Profile random_profile(int m, int n, std::mt19937_64& rng);
/// Random instance with `num_sets` distinct-element triples; when `plant` is set
/// the first q/3 sets form a partition.
X3CInstance random_x3c(int q, int num_sets, bool plant, std::mt19937_64& rng);
/// Every element in exactly three sets (q sets in total).
X3CInstance random_x3c_exact3(int q, std::mt19937_64& rng);
SATInstance random_3sat(int num_vars, int num_clauses, std::mt19937_64& rng);

}  // namespace tiectl
