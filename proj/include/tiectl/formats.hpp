#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tiectl/profile.hpp"

namespace tiectl {

// On-disk candidate ids are 1-based; everything in memory is 0-based.

Profile parse_profile(std::string_view text);
std::string serialize_profile(const Profile& profile);

// Tournament file: the same `m` / `id,name` header as a profile, followed by
// one line per unordered pair: `i j >` (i beats j), `i j <` or `i j =`.
MajorityRelation parse_tournament(std::string_view text);
std::string serialize_tournament(const MajorityRelation& relation);

/// Binary knockout tree. Nodes are stored children-first, so the root is the
/// last node and a plain forward sweep evaluates the whole cup.
struct CupSchedule {
  struct Node {
    int left = -1;
    int right = -1;
    CandidateId label = -1;  // leaves only
    bool leaf() const { return left < 0; }
    friend bool operator==(const Node&, const Node&) = default;
  };
  std::vector<Node> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  std::vector<CandidateId> leaf_labels() const;
  /// True when no candidate labels two leaves.
  bool single_appearance() const;
  static CupSchedule leaf(CandidateId c);
  static CupSchedule match(const CupSchedule& left, const CupSchedule& right);

  friend bool operator==(const CupSchedule&, const CupSchedule&) = default;
};

/// Nested JSON arrays of 1-based ids, e.g. `[[1,2],[3,4]]`.
CupSchedule parse_schedule(std::string_view text);
std::string serialize_schedule(const CupSchedule& schedule);

/// One round of pairings; each group has one (a bye) or two candidates.
using Pairing = std::vector<std::vector<CandidateId>>;
/// JSON array of groups, e.g. `[[1,2],[3]]`.
Pairing parse_pairing(std::string_view text);
std::string serialize_pairing(const Pairing& pairing);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace tiectl
