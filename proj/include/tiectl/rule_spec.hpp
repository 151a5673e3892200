#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tiectl/formats.hpp"
#include "tiectl/rational.hpp"

namespace tiectl {

enum class RuleKind {
  Scoring,
  Plurality,
  Veto,
  KApproval,
  Borda,
  Black,
  Bucklin,
  Fallback,
  Nanson,
  Maximin,
  Schulze,
  Copeland,
  RankedPairs,
  Kemeny,
  Stv,
  Baldwin,
  Coombs,
  PluralityRunoff,
  Cup,
  Hybrid,
};

enum class Stage1Kind { VetoHalf, PluralityK, Cup1 };

struct RuleSpec {
  RuleKind kind = RuleKind::Plurality;

  std::vector<Rational> weights;  // Scoring
  int k = 1;                      // KApproval; rounds for Hybrid plurality_k
  bool simplified = false;        // Bucklin, Coombs
  Rational alpha{1, 2};           // Copeland
  bool second_order = false;
  bool orient_ties = false;  // Copeland: chair orients pairwise ties one by one
  std::vector<std::string> pair_order;  // RankedPairs; empty means id order
  int kemeny_bound = 6;

  std::shared_ptr<const CupSchedule> schedule;  // Cup

  Stage1Kind stage1 = Stage1Kind::VetoHalf;  // Hybrid
  std::shared_ptr<const Pairing> pairing;
  std::shared_ptr<const RuleSpec> stage2;

  static RuleSpec simple(RuleKind kind);
  static RuleSpec copeland(Rational alpha, bool second_order = false, bool orient_ties = false);
  static RuleSpec cup(CupSchedule schedule);
  static RuleSpec hybrid_veto_half(RuleSpec stage2);
  static RuleSpec hybrid_plurality_k(int k, RuleSpec stage2);
  static RuleSpec hybrid_cup1(Pairing pairing, RuleSpec stage2);

  /// Rules whose only tie is the final choice among co-winners.
  bool single_stage() const;
};

using FileLoader = std::function<std::string(const std::string&)>;

/// Parses the CLI grammar (`stv`, `copeland:a=1/2`, `hybrid:plurality_k=3+plurality`,
/// `cup@schedule.json`, `cup@[[1,2],3]`, ...). `@path` arguments go through `load`.
RuleSpec parse_rule_spec(std::string_view text, const FileLoader& load = read_file);

/// Canonical text; Cup schedules and pairings are written inline.
std::string to_string(const RuleSpec& spec);

}  // namespace tiectl
