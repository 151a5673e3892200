#include "tiectl/formats.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "tiectl/error.hpp"

namespace tiectl {

namespace {

using nlohmann::json;

struct LineReader {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;

  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = end + 1;
    }
    // trailing blank lines carry no content
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  bool done() const { return pos >= lines.size(); }
  int line_no() const { return static_cast<int>(pos) + 1; }
  std::string_view next(const char* what) {
    if (done()) throw ParseError(std::string("unexpected end of file, expected ") + what, line_no());
    return lines[pos++];
  }
};

std::int64_t parse_int(std::string_view s, int line, const char* what) {
  s = LineReader::trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(s) + "'", line);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

std::vector<Candidate> read_candidates(LineReader& in) {
  int line = in.line_no();
  std::int64_t m = parse_int(in.next("candidate count"), line, "candidate count");
  if (m < 1 || m > kMaxCandidates) {
    throw ParseError("candidate count must lie in 1.." + std::to_string(kMaxCandidates), line);
  }
  std::vector<Candidate> candidates;
  for (std::int64_t i = 0; i < m; ++i) {
    line = in.line_no();
    std::string_view row = in.next("candidate line");
    std::size_t comma = row.find(',');
    if (comma == std::string_view::npos) throw ParseError("candidate line needs 'id,name'", line);
    std::int64_t id = parse_int(row.substr(0, comma), line, "candidate id");
    if (id != i + 1) throw ParseError("candidate ids must be listed as 1..m in order", line);
    std::string name(row.substr(comma + 1));
    if (name.empty()) throw ParseError("empty candidate name", line);
    candidates.push_back({static_cast<CandidateId>(i), std::move(name)});
  }
  return candidates;
}

void write_candidates(std::ostringstream& out, const std::vector<Candidate>& candidates) {
  out << candidates.size() << '\n';
  for (const Candidate& c : candidates) out << (c.id + 1) << ',' << c.name << '\n';
}

CandidateId candidate_ref(std::string_view tok, int m, int line) {
  std::int64_t id = parse_int(tok, line, "candidate id");
  if (id < 1 || id > m) throw ParseError("candidate id " + std::to_string(id) + " out of range", line);
  return static_cast<CandidateId>(id - 1);
}

// json -> schedule, appending nodes children-first
int build_schedule(const json& j, CupSchedule& out, int depth) {
  if (depth > 10000) throw ParseError("schedule nested too deeply");
  CupSchedule::Node node;
  if (j.is_number_integer()) {
    std::int64_t id = j.get<std::int64_t>();
    if (id < 1 || id > kMaxCandidates) throw ParseError("schedule leaf id out of range");
    node.label = static_cast<CandidateId>(id - 1);
  } else if (j.is_array() && j.size() == 2) {
    node.left = build_schedule(j[0], out, depth + 1);
    node.right = build_schedule(j[1], out, depth + 1);
  } else {
    throw ParseError("schedule nodes must be an integer leaf or a 2-element array");
  }
  out.nodes.push_back(node);
  return static_cast<int>(out.nodes.size()) - 1;
}

json schedule_json(const CupSchedule& s, int node) {
  const auto& n = s.nodes[node];
  if (n.leaf()) return n.label + 1;
  return json::array({schedule_json(s, n.left), schedule_json(s, n.right)});
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Profile parse_profile(std::string_view text) {
  LineReader in(text);
  std::vector<Candidate> candidates = read_candidates(in);
  const int m = static_cast<int>(candidates.size());

  int line = in.line_no();
  auto header = split(in.next("voter header"), ',');
  if (header.size() != 3) throw ParseError("voter header must be 'n,n,distinct_ballots'", line);
  std::int64_t n = parse_int(header[0], line, "voter count");
  std::int64_t n2 = parse_int(header[1], line, "voter count");
  std::int64_t distinct = parse_int(header[2], line, "ballot count");
  if (n != n2) throw ParseError("voter header repeats n with two different values", line);

  std::vector<Ballot> ballots;
  std::int64_t total = 0;
  while (!in.done()) {
    line = in.line_no();
    std::string_view row = in.next("ballot");
    if (LineReader::trim(row).empty()) continue;
    std::size_t colon = row.find(':');
    if (colon == std::string_view::npos) throw ParseError("ballot line needs 'weight: ranking'", line);
    Ballot b;
    b.weight = parse_int(row.substr(0, colon), line, "ballot weight");
    if (b.weight <= 0) throw ParseError("ballot weight must be positive", line);
    CandidateSet seen;
    for (std::string_view tok : split(row.substr(colon + 1), ',')) {
      tok = LineReader::trim(tok);
      if (tok == "|") {
        if (b.approval_cutoff) throw ParseError("more than one approval cutoff", line);
        if (b.ranking.empty()) throw ParseError("approval cutoff before any candidate", line);
        b.approval_cutoff = static_cast<int>(b.ranking.size());
        continue;
      }
      CandidateId c = candidate_ref(tok, m, line);
      if (seen.contains(c)) throw ParseError("candidate " + std::to_string(c + 1) + " ranked twice", line);
      seen.insert(c);
      b.ranking.push_back(c);
    }
    if (static_cast<int>(b.ranking.size()) != m) {
      throw ParseError("ballot is not a ranking of all " + std::to_string(m) + " candidates", line);
    }
    total += b.weight;
    ballots.push_back(std::move(b));
  }
  if (ballots.empty()) throw ParseError("profile has no ballots", in.line_no());
  if (total != n) {
    throw ParseError("header says " + std::to_string(n) + " voters but ballots sum to " + std::to_string(total));
  }
  if (distinct != static_cast<std::int64_t>(ballots.size())) {
    throw ParseError("header says " + std::to_string(distinct) + " ballot lines but file has " +
                     std::to_string(ballots.size()));
  }
  try {
    return Profile(std::move(candidates), std::move(ballots));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_profile(const Profile& profile) {
  std::ostringstream out;
  write_candidates(out, profile.candidates());
  out << profile.num_voters() << ',' << profile.num_voters() << ',' << profile.ballots().size() << '\n';
  for (const Ballot& b : profile.ballots()) {
    out << b.weight << ": ";
    for (std::size_t i = 0; i < b.ranking.size(); ++i) {
      if (i > 0) out << ',';
      if (b.approval_cutoff && static_cast<std::size_t>(*b.approval_cutoff) == i) out << "|,";
      out << (b.ranking[i] + 1);
    }
    if (b.approval_cutoff && static_cast<std::size_t>(*b.approval_cutoff) == b.ranking.size()) out << ",|";
    out << '\n';
  }
  return out.str();
}

MajorityRelation parse_tournament(std::string_view text) {
  LineReader in(text);
  MajorityRelation rel(read_candidates(in));
  const int m = rel.size();
  std::vector<char> seen(static_cast<std::size_t>(m) * m, 0);
  int pairs = 0;
  while (!in.done()) {
    int line = in.line_no();
    std::string_view row = LineReader::trim(in.next("pair line"));
    if (row.empty()) continue;
    std::vector<std::string_view> tok;
    for (std::string_view t : split(row, ' ')) {
      if (!t.empty()) tok.push_back(t);
    }
    if (tok.size() != 3) throw ParseError("pair line must be 'i j >', 'i j <' or 'i j ='", line);
    CandidateId i = candidate_ref(tok[0], m, line);
    CandidateId j = candidate_ref(tok[1], m, line);
    if (i == j) throw ParseError("pair line compares a candidate with itself", line);
    char& mark = seen[static_cast<std::size_t>(std::min(i, j)) * m + std::max(i, j)];
    if (mark) throw ParseError("pair listed twice", line);
    mark = 1;
    ++pairs;
    if (tok[2] == ">") rel.set_beats(i, j);
    else if (tok[2] == "<") rel.set_beats(j, i);
    else if (tok[2] == "=") rel.set_tied(i, j);
    else throw ParseError("pair relation must be one of > < =", line);
  }
  if (pairs != m * (m - 1) / 2) {
    throw ParseError("tournament lists " + std::to_string(pairs) + " of " + std::to_string(m * (m - 1) / 2) +
                     " pairs");
  }
  return rel;
}

std::string serialize_tournament(const MajorityRelation& relation) {
  std::ostringstream out;
  write_candidates(out, relation.candidates());
  for (int i = 0; i < relation.size(); ++i) {
    for (int j = i + 1; j < relation.size(); ++j) {
      int c = relation.compare(i, j);
      out << (i + 1) << ' ' << (j + 1) << ' ' << (c > 0 ? '>' : c < 0 ? '<' : '=') << '\n';
    }
  }
  return out.str();
}

std::vector<CandidateId> CupSchedule::leaf_labels() const {
  std::vector<CandidateId> out;
  for (const Node& n : nodes) {
    if (n.leaf()) out.push_back(n.label);
  }
  return out;
}

bool CupSchedule::single_appearance() const {
  CandidateSet seen;
  for (CandidateId c : leaf_labels()) {
    if (seen.contains(c)) return false;
    seen.insert(c);
  }
  return true;
}

CupSchedule CupSchedule::leaf(CandidateId c) {
  CupSchedule s;
  s.nodes.push_back({-1, -1, c});
  return s;
}

CupSchedule CupSchedule::match(const CupSchedule& left, const CupSchedule& right) {
  CupSchedule s = left;
  const int offset = static_cast<int>(s.nodes.size());
  for (Node n : right.nodes) {
    if (!n.leaf()) {
      n.left += offset;
      n.right += offset;
    }
    s.nodes.push_back(n);
  }
  s.nodes.push_back({left.root(), offset + right.root(), -1});
  return s;
}

CupSchedule parse_schedule(std::string_view text) {
  CupSchedule s;
  build_schedule(parse_json(text, "schedule"), s, 0);
  return s;
}

std::string serialize_schedule(const CupSchedule& schedule) {
  if (schedule.nodes.empty()) throw InvalidArgument("empty schedule");
  return schedule_json(schedule, schedule.root()).dump() + "\n";
}

Pairing parse_pairing(std::string_view text) {
  json j = parse_json(text, "pairing");
  if (!j.is_array() || j.empty()) throw ParseError("pairing must be a non-empty array of groups");
  Pairing out;
  for (const json& g : j) {
    if (!g.is_array() || g.empty() || g.size() > 2) throw ParseError("pairing groups hold one or two ids");
    std::vector<CandidateId> group;
    for (const json& id : g) {
      if (!id.is_number_integer() || id.get<std::int64_t>() < 1 || id.get<std::int64_t>() > kMaxCandidates) {
        throw ParseError("pairing ids must be integers in 1..64");
      }
      group.push_back(static_cast<CandidateId>(id.get<std::int64_t>() - 1));
    }
    out.push_back(std::move(group));
  }
  return out;
}

std::string serialize_pairing(const Pairing& pairing) {
  json j = json::array();
  for (const auto& g : pairing) {
    json group = json::array();
    for (CandidateId c : g) group.push_back(c + 1);
    j.push_back(std::move(group));
  }
  return j.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << contents;
}

}  // namespace tiectl
