#include "tiectl/policy.hpp"

#include <algorithm>

#include "tiectl/error.hpp"

namespace tiectl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    out.push_back(trim(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

CandidateId lookup(std::string_view name, const std::vector<Candidate>& candidates) {
  for (const Candidate& c : candidates) {
    if (c.name == name) return c.id;
  }
  throw ParseError("unknown candidate '" + std::string(name) + "' in policy");
}

std::pair<CandidateId, CandidateId> parse_direction(std::string_view s, const std::vector<Candidate>& candidates) {
  std::size_t gt = s.find('>');
  if (gt == std::string_view::npos) throw ParseError("orientation entries look like 'a>b'");
  return {lookup(trim(s.substr(0, gt)), candidates), lookup(trim(s.substr(gt + 1)), candidates)};
}

Decision parse_one(std::string_view entry, const std::vector<Candidate>& candidates) {
  std::size_t space = entry.find(' ');
  if (space == std::string_view::npos) throw ParseError("log entries look like 'verb name'");
  std::string_view v = entry.substr(0, space);
  std::string_view arg = trim(entry.substr(space + 1));
  Decision d;
  if (v == "eliminate") d.kind = TieKind::EliminateOne;
  else if (v == "pick") d.kind = TieKind::SelectWinner;
  else if (v == "keep") d.kind = TieKind::SelectSurvivor;
  else if (v == "orient") d.kind = TieKind::OrientPair;
  else throw ParseError("unknown log verb '" + std::string(v) + "'");
  if (d.kind == TieKind::OrientPair) {
    std::tie(d.choice, d.other) = parse_direction(arg, candidates);
  } else {
    d.choice = lookup(arg, candidates);
  }
  return d;
}

bool contains(const std::vector<CandidateId>& v, CandidateId c) { return std::find(v.begin(), v.end(), c) != v.end(); }

std::optional<CandidateId> oriented_winner(const TieBreakPolicy& policy, CandidateId a, CandidateId b) {
  for (auto [w, l] : policy.directions) {
    if ((w == a && l == b) || (w == b && l == a)) return w;
  }
  return std::nullopt;
}

}  // namespace

TieBreakPolicy TieBreakPolicy::linear(std::vector<CandidateId> order) {
  TieBreakPolicy p;
  p.kind = Kind::Linear;
  p.order = std::move(order);
  return p;
}

TieBreakPolicy TieBreakPolicy::orientation(std::vector<std::pair<CandidateId, CandidateId>> directions) {
  TieBreakPolicy p;
  p.kind = Kind::Orientation;
  p.directions = std::move(directions);
  return p;
}

TieBreakPolicy TieBreakPolicy::decisions(std::vector<Decision> log) {
  TieBreakPolicy p;
  p.kind = Kind::Log;
  p.log = std::move(log);
  return p;
}

TieBreakPolicy parse_policy(std::string_view text, const std::vector<Candidate>& candidates) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("policy needs a 'linear:', 'orient:' or 'log:' prefix");
  std::string_view head = text.substr(0, colon);
  std::string_view body = trim(text.substr(colon + 1));
  if (head == "linear") {
    std::vector<CandidateId> order;
    for (std::string_view name : split(body, ',')) order.push_back(lookup(name, candidates));
    return TieBreakPolicy::linear(std::move(order));
  }
  if (head == "orient") {
    std::vector<std::pair<CandidateId, CandidateId>> dirs;
    for (std::string_view e : split(body, ';')) {
      if (!e.empty()) dirs.push_back(parse_direction(e, candidates));
    }
    return TieBreakPolicy::orientation(std::move(dirs));
  }
  if (head == "log") {
    std::vector<Decision> log;
    for (std::string_view e : split(body, ';')) {
      if (!e.empty()) log.push_back(parse_one(e, candidates));
    }
    return TieBreakPolicy::decisions(std::move(log));
  }
  throw ParseError("unknown policy kind '" + std::string(head) + "'");
}

std::string format_decision(const Decision& d, const std::vector<Candidate>& candidates) {
  std::string s(verb(d.kind));
  s += ' ';
  s += candidates.at(d.choice).name;
  if (d.kind == TieKind::OrientPair) s += ">" + candidates.at(d.other).name;
  return s;
}

std::string format_log(const std::vector<Decision>& log, const std::vector<Candidate>& candidates) {
  std::string s = "log:";
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (i > 0) s += ';';
    s += format_decision(log[i], candidates);
  }
  return s;
}

std::string format_policy(const TieBreakPolicy& policy, const std::vector<Candidate>& candidates) {
  switch (policy.kind) {
    case TieBreakPolicy::Kind::Linear: {
      std::string s = "linear:";
      for (std::size_t i = 0; i < policy.order.size(); ++i) s += (i ? "," : "") + candidates.at(policy.order[i]).name;
      return s;
    }
    case TieBreakPolicy::Kind::Orientation: {
      std::string s = "orient:";
      for (std::size_t i = 0; i < policy.directions.size(); ++i) {
        if (i > 0) s += ';';
        s += candidates.at(policy.directions[i].first).name + ">" + candidates.at(policy.directions[i].second).name;
      }
      return s;
    }
    case TieBreakPolicy::Kind::Log: return format_log(policy.log, candidates);
  }
  return {};
}

Decision resolve(const TieBreakPolicy& policy, const TieEvent& event, std::size_t& cursor) {
  Decision d;
  d.kind = event.kind;
  switch (policy.kind) {
    case TieBreakPolicy::Kind::Linear: {
      std::vector<CandidateId> ranked;
      for (CandidateId c : policy.order) {
        if (contains(event.tied, c)) ranked.push_back(c);
      }
      if (ranked.size() != event.tied.size()) throw ResolverError("linear order does not cover the tied candidates");
      if (event.kind == TieKind::EliminateOne) {
        d.choice = ranked.back();
      } else {
        d.choice = ranked.front();
        if (event.kind == TieKind::OrientPair) d.other = ranked.back();
      }
      return d;
    }
    case TieBreakPolicy::Kind::Orientation: {
      if (event.tied.size() != 2) {
        throw ResolverError("orientation policies only break ties between two candidates (at " + event.stage + ")");
      }
      const CandidateId a = event.tied[0], b = event.tied[1];
      auto w = oriented_winner(policy, a, b);
      if (!w) throw ResolverError("orientation has no direction for the pair at " + event.stage);
      const CandidateId loser = *w == a ? b : a;
      d.choice = event.kind == TieKind::EliminateOne ? loser : *w;
      if (event.kind == TieKind::OrientPair) d.other = loser;
      return d;
    }
    case TieBreakPolicy::Kind::Log: {
      if (cursor >= policy.log.size()) throw ResolverError("decision log exhausted at " + event.stage);
      d = policy.log[cursor];
      if (d.kind != event.kind) {
        throw ResolverError("decision log mismatch at " + event.stage + ": expected '" +
                            std::string(verb(event.kind)) + "', log has '" + std::string(verb(d.kind)) + "'");
      }
      check_decision(event, d);
      ++cursor;
      return d;
    }
  }
  throw ResolverError("unknown policy");
}

PolicyDiagnostics validate_policy(const TieBreakPolicy& policy, CandidateSet candidates, const PairwiseMatrix* pm) {
  PolicyDiagnostics out;
  auto problem = [&out](std::string msg) {
    out.ok = false;
    out.problems.push_back(std::move(msg));
  };
  switch (policy.kind) {
    case TieBreakPolicy::Kind::Linear: {
      CandidateSet seen;
      for (CandidateId c : policy.order) {
        if (!candidates.contains(c)) problem("order names candidate " + std::to_string(c) + " outside the election");
        else if (seen.contains(c)) problem("order repeats candidate " + std::to_string(c));
        seen.insert(c);
      }
      (candidates - seen).for_each([&](CandidateId c) { problem("order misses candidate " + std::to_string(c)); });
      break;
    }
    case TieBreakPolicy::Kind::Orientation: {
      std::vector<CandidateSet> beats(kMaxCandidates);
      for (auto [w, l] : policy.directions) {
        if (!candidates.contains(w) || !candidates.contains(l) || w == l) {
          problem("direction names candidates outside the election");
          continue;
        }
        if (beats[l].contains(w)) problem("pair oriented both ways");
        beats[w].insert(l);
      }
      if (pm) {
        candidates.for_each([&](CandidateId i) {
          candidates.for_each([&](CandidateId j) {
            if (i < j && j < pm->size() && pm->tied(i, j) && !beats[i].contains(j) && !beats[j].contains(i)) {
              problem("no direction for tied pair " + std::to_string(i) + "," + std::to_string(j));
            }
          });
        });
      }
      // acyclic check by repeatedly peeling candidates with no incoming edge
      CandidateSet left = candidates;
      bool progress = true;
      while (!left.empty() && progress) {
        progress = false;
        for (CandidateId c : left.members()) {
          bool has_in = false;
          left.for_each([&](CandidateId x) {
            if (beats[x].contains(c)) has_in = true;
          });
          if (!has_in) {
            left.erase(c);
            progress = true;
          }
        }
      }
      out.transitive = left.empty();
      break;
    }
    case TieBreakPolicy::Kind::Log:
      for (const Decision& d : policy.log) {
        if (!candidates.contains(d.choice) || (d.kind == TieKind::OrientPair && !candidates.contains(d.other))) {
          problem("log names candidates outside the election");
        }
      }
      break;
  }
  return out;
}

}  // namespace tiectl
