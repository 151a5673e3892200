#include "tiectl/cli.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "tiectl/bench.hpp"
#include "tiectl/control.hpp"
#include "tiectl/error.hpp"
#include "tiectl/generators.hpp"
#include "tiectl/policy.hpp"

namespace tiectl {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string rule;
  std::string profile;
  std::string tournament;
  std::string schedule;
  std::string candidate;
  std::string policy;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  bool json = false;

  // control
  std::string method = "auto";
  bool transitive = false;
  int threads = 0;

  // put-winners
  bool serial = false;

  // gen
  std::string family;
  std::string in;
  std::string out;
  std::string schedule_out;
  std::int64_t big_t = 0;
  int m = 4;
  int n = 7;
  int q = 6;
  int sets = 4;
  int vars = 3;
  int clauses = 3;
  bool plant = false;

  // bench
  std::vector<std::string> rules;
  std::vector<std::string> profiles;
  int random = 0;
  bool omit_times = false;
};

// One election as loaded from --profile or --tournament.
struct Election {
  std::optional<Profile> profile;
  std::optional<MajorityRelation> relation;

  const std::vector<Candidate>& candidates() const {
    return profile ? profile->candidates() : relation->candidates();
  }
  const Profile& as_profile() {
    if (!profile) profile = tournament_to_profile(*relation);
    return *profile;
  }
  MajorityRelation as_relation() const {
    if (relation) return *relation;
    return MajorityRelation::from_pairwise(pairwise_matrix(*profile), profile->candidates());
  }
};

Election load_election(const Options& o) {
  Election e;
  if (!o.profile.empty() && !o.tournament.empty()) throw InvalidArgument("give --profile or --tournament, not both");
  if (!o.profile.empty()) e.profile = parse_profile(read_file(o.profile));
  else if (!o.tournament.empty()) e.relation = parse_tournament(read_file(o.tournament));
  else throw InvalidArgument("missing --profile or --tournament");
  return e;
}

RuleSpec load_rule(const Options& o) {
  if (o.rule.empty()) {
    if (o.schedule.empty()) throw InvalidArgument("missing --rule");
    return RuleSpec::cup(parse_schedule(read_file(o.schedule)));
  }
  RuleSpec spec = parse_rule_spec(o.rule);
  if (!o.schedule.empty()) {
    if (spec.kind != RuleKind::Cup) throw InvalidArgument("--schedule only applies to cup rules");
    spec.schedule = std::make_shared<CupSchedule>(parse_schedule(read_file(o.schedule)));
  }
  return spec;
}

std::unique_ptr<RuleMachine> machine_for(const RuleSpec& spec, Election& e) {
  if (spec.kind == RuleKind::Cup && e.relation) return make_cup_machine(*e.relation, *spec.schedule);
  return make_machine(spec, e.as_profile());
}

CandidateId find_candidate(const std::vector<Candidate>& cands, const std::string& name) {
  if (name.empty()) throw InvalidArgument("missing --candidate");
  for (const Candidate& c : cands) {
    if (c.name == name) return c.id;
  }
  throw InvalidArgument("unknown candidate '" + name + "'");
}

Json names_of(CandidateSet s, const std::vector<Candidate>& cands) {
  Json arr = Json::array();
  s.for_each([&](CandidateId c) { arr.push_back(cands[c].name); });
  return arr;
}

void print(const Json& j, bool as_json, std::ostream& out) {
  if (as_json) {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    out << key << ": ";
    if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_array()) {
      bool first = true;
      for (const auto& v : value) {
        out << (first ? "" : ", ") << (v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
      }
    } else {
      out << value.dump();
    }
    out << "\n";
  }
}

Json answer_json(const ControlAnswer& a, const std::vector<Candidate>& cands, const std::string& p) {
  Json j;
  j["candidate"] = p;
  j["controllable"] = a.controllable;
  j["method"] = a.method;
  j["nodes_explored"] = a.nodes_explored;
  if (a.witness) j["witness"] = format_log(*a.witness, cands);
  return j;
}

int cmd_winners(const Options& o, std::ostream& out) {
  Election e = load_election(o);
  const RuleSpec spec = load_rule(o);
  const auto& cands = e.candidates();
  Json j;
  j["rule"] = to_string(spec);
  if (!o.policy.empty()) {
    auto machine = machine_for(spec, e);
    PolicyResolver res(parse_policy(o.policy, cands));
    Trace t = run(*machine, res);
    j["mode"] = "policy";
    j["winner"] = cands[t.winner].name;
    j["ties"] = t.events.size();
    j["decisions"] = format_log(t.decisions(), cands);
  } else if (spec.single_stage()) {
    j["mode"] = "co-winners";
    j["winners"] = names_of(single_stage_winners(spec, e.as_profile()), cands);
  } else {
    j["mode"] = "put";
    CandidateSet w;
    auto machine = machine_for(spec, e);
    for (CandidateId c = 0; c < machine->num_candidates(); ++c) {
      if (control_search(*machine, c, o.budget).controllable) w.insert(c);
    }
    j["winners"] = names_of(w, cands);
  }
  print(j, o.json, out);
  return kExitOk;
}

int cmd_control(const Options& o, std::ostream& out) {
  Election e = load_election(o);
  const RuleSpec spec = load_rule(o);
  const auto& cands = e.candidates();
  const CandidateId p = find_candidate(cands, o.candidate);
  ControlAnswer a;
  std::string method = o.method;
  if (method == "auto") {
    if (spec.single_stage()) method = "single-stage";
    else if (spec.kind == RuleKind::Cup && (o.transitive || !spec.schedule->single_appearance())) method = "cup-enumeration";
    else if (spec.kind == RuleKind::Cup) method = "cup-linear";
    else if (spec.kind == RuleKind::Copeland && spec.orient_ties) method = "copeland-orientation";
    else method = o.threads > 1 ? "parallel" : "search";
  }
  if (o.transitive && method != "cup-enumeration" && method != "copeland-orientation") {
    throw InvalidArgument("--transitive needs a cup or copeland orient_ties rule");
  }
  if (method == "single-stage") {
    if (!spec.single_stage()) throw InvalidArgument("rule is not single-stage");
    a = control_single_stage(spec, e.as_profile(), p);
  } else if (method == "cup-linear" || method == "cup-enumeration") {
    if (spec.kind != RuleKind::Cup) throw InvalidArgument(method + " needs a cup rule");
    a = method == "cup-linear" ? control_cup_linear(e.as_relation(), *spec.schedule, p)
                               : control_cup_orientations(e.as_relation(), *spec.schedule, p, o.transitive);
  } else if (method == "copeland-orientation") {
    if (spec.kind != RuleKind::Copeland) throw InvalidArgument("copeland-orientation needs a copeland rule");
    a = control_copeland_orientation(e.as_profile(), p, o.transitive);
  } else if (method == "bounded-hybrid") {
    if (spec.kind != RuleKind::Hybrid || spec.stage1 != Stage1Kind::PluralityK ||
        spec.stage2->kind != RuleKind::Plurality) {
      throw InvalidArgument("bounded-hybrid needs hybrid:plurality_k=K+plurality");
    }
    a = control_bounded_hybrid(e.as_profile(), spec.k, p);
  } else if (method == "search") {
    a = control_search(*machine_for(spec, e), p, o.budget);
  } else if (method == "parallel") {
    a = control_search_parallel(*machine_for(spec, e), p, o.budget, o.threads);
  } else {
    throw InvalidArgument("unknown --method '" + method + "'");
  }
  Json full{{"rule", to_string(spec)}};
  const Json ans = answer_json(a, cands, o.candidate);
  for (const auto& [k, v] : ans.items()) full[k] = v;
  print(full, o.json, out);
  return a.controllable ? kExitOk : kExitNo;
}

int cmd_put_winners(const Options& o, std::ostream& out) {
  Election e = load_election(o);
  const RuleSpec spec = load_rule(o);
  CandidateSet w;
  if (spec.kind == RuleKind::Cup && e.relation) {
    auto machine = make_cup_machine(*e.relation, *spec.schedule);
    for (CandidateId c = 0; c < machine->num_candidates(); ++c) {
      if (control_search(*machine, c, o.budget).controllable) w.insert(c);
    }
  } else {
    w = put_winners(spec, e.as_profile(), o.budget, !o.serial);
  }
  Json j{{"rule", to_string(spec)}, {"put_winners", names_of(w, e.candidates())}};
  print(j, o.json, out);
  return kExitOk;
}

int cmd_alpha(const Options& o, std::ostream& out) {
  Election e = load_election(o);
  const Profile& prof = e.as_profile();
  const CandidateId p = find_candidate(prof.candidates(), o.candidate);
  const AlphaInterval iv = choose_alpha(prof, p);
  Json j{{"candidate", o.candidate}, {"empty", iv.empty}};
  if (!iv.empty) {
    j["lower"] = to_string(iv.lower);
    j["lower_open"] = iv.lower_open;
    j["upper"] = to_string(iv.upper);
    j["upper_open"] = iv.upper_open;
    j["interval"] = std::string(iv.lower_open ? "(" : "[") + to_string(iv.lower) + "," + to_string(iv.upper) +
                    (iv.upper_open ? ")" : "]");
  }
  print(j, o.json, out);
  return iv.empty ? kExitNo : kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  Election e = load_election(o);
  const RuleSpec spec = load_rule(o);
  const auto& cands = e.candidates();
  if (o.policy.empty()) throw InvalidArgument("missing --policy");
  auto machine = machine_for(spec, e);
  const TieBreakPolicy policy = parse_policy(o.policy, cands);
  PolicyResolver res(policy);
  Trace t = run(*machine, res);
  if (policy.kind == TieBreakPolicy::Kind::Log && res.consumed() != policy.log.size()) {
    throw ResolverError("decision log has " + std::to_string(policy.log.size() - res.consumed()) + " unused entries");
  }
  Json j{{"rule", to_string(spec)}, {"winner", cands[t.winner].name}, {"ties", t.events.size()}};
  Json events = Json::array();
  for (const auto& [ev, d] : t.events) events.push_back(ev.stage + ": " + format_decision(d, cands));
  j["events"] = events;
  int code = kExitOk;
  if (!o.candidate.empty()) {
    const CandidateId p = find_candidate(cands, o.candidate);
    j["candidate_wins"] = t.winner == p;
    if (t.winner != p) code = kExitNo;
  }
  print(j, o.json, out);
  return code;
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw InvalidArgument("missing --out");
  std::mt19937_64 rng(o.seed);
  Json j{{"family", o.family}};
  auto election_out = [&](const GeneratedElection& g) {
    write_file(o.out, serialize_profile(g.profile));
    j["candidate"] = g.profile.name(g.p);
    j["rule"] = to_string(g.rule);
    if (g.rule.kind == RuleKind::Hybrid && g.rule.stage1 == Stage1Kind::PluralityK) j["k"] = g.k;
    j["m"] = g.profile.num_candidates();
    j["n"] = g.profile.num_voters();
  };
  if (o.family == "baldwin-x3c" || o.family == "vetoplurality-x3c" || o.family == "hyb-x3c") {
    if (o.in.empty()) throw InvalidArgument("missing --in");
    const X3CInstance inst = parse_x3c(read_file(o.in));
    if (o.family == "baldwin-x3c") election_out(gen_baldwin_from_x3c(inst));
    else if (o.family == "vetoplurality-x3c") election_out(gen_vetoplurality_from_x3c(inst));
    else election_out(gen_hybplurality_from_x3c(inst, o.big_t));
  } else if (o.family == "cup-3sat") {
    if (o.in.empty()) throw InvalidArgument("missing --in");
    if (o.schedule_out.empty()) throw InvalidArgument("missing --schedule-out");
    const GeneratedCup g = gen_cup_from_3sat(parse_dimacs(read_file(o.in)));
    write_file(o.out, serialize_tournament(g.relation));
    write_file(o.schedule_out, serialize_schedule(g.schedule));
    j["candidate"] = g.relation.name(g.p);
    j["m"] = g.relation.size();
  } else if (o.family == "mcgarvey") {
    if (o.in.empty()) throw InvalidArgument("missing --in");
    const Profile prof = tournament_to_profile(parse_tournament(read_file(o.in)));
    write_file(o.out, serialize_profile(prof));
    j["m"] = prof.num_candidates();
    j["n"] = prof.num_voters();
  } else if (o.family == "random-profile") {
    const Profile prof = random_profile(o.m, o.n, rng);
    write_file(o.out, serialize_profile(prof));
    j["m"] = o.m;
    j["n"] = o.n;
  } else if (o.family == "random-x3c") {
    write_file(o.out, serialize_x3c(random_x3c(o.q, o.sets, o.plant, rng)));
  } else if (o.family == "random-x3c-exact3") {
    write_file(o.out, serialize_x3c(random_x3c_exact3(o.q, rng)));
  } else if (o.family == "random-3sat") {
    write_file(o.out, serialize_dimacs(random_3sat(o.vars, o.clauses, rng)));
  } else {
    throw InvalidArgument("unknown --family '" + o.family + "'");
  }
  j["out"] = o.out;
  if (!o.schedule_out.empty()) j["schedule_out"] = o.schedule_out;
  print(j, o.json, out);
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  BenchConfig cfg;
  cfg.rules = o.rules;
  cfg.profile_files = o.profiles;
  cfg.random_profiles = o.random;
  cfg.m = o.m;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  cfg.candidate = o.candidate;
  cfg.parallel = !o.serial;
  const BenchReport report = bench_control(cfg);
  const std::string text = report.to_json(!o.omit_times);
  if (!o.out.empty()) {
    write_file(o.out, text);
    Json j{{"instances", report.records.size()}, {"out", o.out}};
    print(j, o.json, out);
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Control by tie-breaking: winners, control search and hardness generators", "tiectl"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool election) {
    if (election) {
      sub->add_option("--rule", o.rule, "rule spec, e.g. stv or copeland:a=1/2");
      sub->add_option("--profile", o.profile, "profile file");
      sub->add_option("--tournament", o.tournament, "tournament file");
      sub->add_option("--schedule", o.schedule, "cup schedule file (nested JSON arrays)");
    }
    sub->add_option("--budget", o.budget, "search node budget");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_flag("--json", o.json, "JSON output");
  };

  auto* winners = app.add_subcommand("winners", "co-winners, PUT winners, or the winner under --policy");
  common(winners, true);
  winners->add_option("--policy", o.policy, "linear:..., orient:... or log:...");

  auto* control = app.add_subcommand("control", "can the chair make --candidate win by breaking ties");
  common(control, true);
  control->add_option("--candidate", o.candidate)->required();
  control->add_option("--method", o.method, "auto, search, parallel, single-stage, cup-linear, cup-enumeration, "
                                            "copeland-orientation, bounded-hybrid");
  control->add_flag("--transitive", o.transitive, "only tie-breaking consistent with a linear order");
  control->add_option("--threads", o.threads, "threads for the parallel search");

  auto* put = app.add_subcommand("put-winners", "every candidate some tie-breaking elects");
  common(put, true);
  put->add_flag("--serial", o.serial, "search candidates one at a time");

  auto* gen = app.add_subcommand("gen", "generate instances");
  common(gen, false);
  gen->add_option("--family", o.family,
                  "baldwin-x3c, vetoplurality-x3c, hyb-x3c, cup-3sat, mcgarvey, random-profile, random-x3c, "
                  "random-x3c-exact3, random-3sat")
      ->required();
  gen->add_option("--in", o.in, "X3C or DIMACS input");
  gen->add_option("--out", o.out, "output file")->required();
  gen->add_option("--schedule-out", o.schedule_out, "cup schedule output (cup-3sat)");
  gen->add_option("--T", o.big_t, "hyb-x3c score of p (default 3*n*q)");
  gen->add_option("--m", o.m);
  gen->add_option("--n", o.n);
  gen->add_option("--q", o.q);
  gen->add_option("--sets", o.sets);
  gen->add_option("--vars", o.vars);
  gen->add_option("--clauses", o.clauses);
  gen->add_flag("--plant", o.plant, "random-x3c: the first q/3 sets are a partition");

  auto* alpha = app.add_subcommand("alpha", "alpha values making --candidate a Copeland co-winner");
  common(alpha, true);
  alpha->add_option("--candidate", o.candidate)->required();

  auto* replay = app.add_subcommand("replay", "run the rule under a tie-breaking policy");
  common(replay, true);
  replay->add_option("--policy", o.policy)->required();
  replay->add_option("--candidate", o.candidate, "exit 1 unless this candidate wins");

  auto* bench = app.add_subcommand("bench", "control search over many instances");
  common(bench, false);
  bench->add_option("--rule", o.rules, "rule spec (repeatable)")->required();
  bench->add_option("--profile", o.profiles, "profile file (repeatable)");
  bench->add_option("--random", o.random, "impartial culture profiles to generate");
  bench->add_option("--m", o.m);
  bench->add_option("--n", o.n);
  bench->add_option("--candidate", o.candidate, "candidate name (default: the first)");
  bench->add_option("--out", o.out, "write the report here instead of stdout");
  bench->add_flag("--omit-times", o.omit_times, "leave wall times out of the report");
  bench->add_flag("--serial", o.serial, "one instance at a time");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (winners->parsed()) return cmd_winners(o, out);
    if (control->parsed()) return cmd_control(o, out);
    if (put->parsed()) return cmd_put_winners(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (alpha->parsed()) return cmd_alpha(o, out);
    if (replay->parsed()) return cmd_replay(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tiectl
