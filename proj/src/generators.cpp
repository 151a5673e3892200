#include "tiectl/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "tiectl/error.hpp"

namespace tiectl {

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

class ProfileBuilder {
 public:
  explicit ProfileBuilder(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      candidates_.push_back({static_cast<CandidateId>(i), std::move(names[i])});
    }
  }

  int m() const { return static_cast<int>(candidates_.size()); }

  void add(std::vector<CandidateId> ranking, std::int64_t weight) {
    if (weight <= 0) return;
    ballots_.push_back({std::move(ranking), weight, std::nullopt});
  }

  // Listed candidates first, the rest ascending.
  void add_head(const std::vector<CandidateId>& head, std::int64_t weight) {
    std::vector<CandidateId> r = head;
    for (CandidateId c = 0; c < m(); ++c) {
      if (std::find(head.begin(), head.end(), c) == head.end()) r.push_back(c);
    }
    add(std::move(r), weight);
  }

  // (u, v, others ascending) and (others descending, u, v). Per copy, Borda
  // gives u m points, v m-2 and everyone else m-1.
  void gadget(CandidateId u, CandidateId v, std::int64_t weight) {
    std::vector<CandidateId> others;
    for (CandidateId c = 0; c < m(); ++c) {
      if (c != u && c != v) others.push_back(c);
    }
    std::vector<CandidateId> a{u, v};
    a.insert(a.end(), others.begin(), others.end());
    std::vector<CandidateId> b(others.rbegin(), others.rend());
    b.push_back(u);
    b.push_back(v);
    add(std::move(a), weight);
    add(std::move(b), weight);
  }

  Profile build() { return Profile(candidates_, ballots_); }

 private:
  std::vector<Candidate> candidates_;
  std::vector<Ballot> ballots_;
};

void require_sets(const X3CInstance& inst, std::size_t min_sets) {
  inst.validate();
  if (inst.sets.size() < min_sets) {
    throw InvalidArgument("this reduction needs at least " + std::to_string(min_sets) + " sets");
  }
}

}  // namespace

int X3CInstance::occ(int element) const {
  int n = 0;
  for (const auto& s : sets) n += static_cast<int>(std::count(s.begin(), s.end(), element));
  return n;
}

void X3CInstance::validate() const {
  if (q <= 0 || q % 3 != 0) throw InvalidArgument("X3C needs a positive multiple of 3 elements");
  for (const auto& s : sets) {
    for (int e : s) {
      if (e < 0 || e >= q) throw InvalidArgument("X3C set element out of range");
    }
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw InvalidArgument("X3C sets need three distinct elements");
  }
}

X3CInstance parse_x3c(std::string_view text) {
  X3CInstance inst;
  bool header = false;
  int lineno = 0;
  for (const std::string& line : lines_of(text)) {
    ++lineno;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream in(line);
    if (!header) {
      std::string word;
      if (!(in >> word >> inst.q) || word != "elements") throw ParseError("expected 'elements q'", lineno);
      header = true;
      continue;
    }
    std::array<int, 3> s{};
    std::string extra;
    if (!(in >> s[0] >> s[1] >> s[2]) || (in >> extra)) throw ParseError("expected three element ids", lineno);
    for (int& e : s) {
      if (e < 1 || e > inst.q) throw ParseError("element id out of range", lineno);
      --e;
    }
    inst.sets.push_back(s);
  }
  if (!header) throw ParseError("missing 'elements q' header");
  try {
    inst.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return inst;
}

std::string serialize_x3c(const X3CInstance& inst) {
  std::string out = "elements " + std::to_string(inst.q) + "\n";
  for (const auto& s : inst.sets) {
    out += std::to_string(s[0] + 1) + " " + std::to_string(s[1] + 1) + " " + std::to_string(s[2] + 1) + "\n";
  }
  return out;
}

void SATInstance::validate() const {
  if (num_vars < 0) throw InvalidArgument("negative variable count");
  for (const auto& c : clauses) {
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > num_vars) throw InvalidArgument("literal out of range");
    }
  }
}

SATInstance parse_dimacs(std::string_view text) {
  SATInstance inst;
  bool header = false;
  long declared = 0;
  std::vector<int> pending;
  int lineno = 0;
  for (const std::string& line : lines_of(text)) {
    ++lineno;
    if (blank(line)) continue;
    std::istringstream in(line);
    if (line[line.find_first_not_of(" \t")] == 'c') continue;
    if (line[line.find_first_not_of(" \t")] == 'p') {
      std::string p, cnf;
      if (header || !(in >> p >> cnf >> inst.num_vars >> declared) || cnf != "cnf") {
        throw ParseError("bad 'p cnf V C' header", lineno);
      }
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before the 'p cnf' header", lineno);
    int lit;
    while (in >> lit) {
      if (lit == 0) {
        if (pending.size() != 3) throw ParseError("only 3-literal clauses are supported", lineno);
        inst.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        if (std::abs(lit) > inst.num_vars) throw ParseError("literal out of range", lineno);
        pending.push_back(lit);
      }
    }
    if (!in.eof()) throw ParseError("bad literal", lineno);
  }
  if (!header) throw ParseError("missing 'p cnf' header");
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0");
  if (static_cast<long>(inst.clauses.size()) != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(inst.clauses.size()));
  }
  return inst;
}

std::string serialize_dimacs(const SATInstance& inst) {
  std::string out = "p cnf " + std::to_string(inst.num_vars) + " " + std::to_string(inst.clauses.size()) + "\n";
  for (const auto& c : inst.clauses) {
    out += std::to_string(c[0]) + " " + std::to_string(c[1]) + " " + std::to_string(c[2]) + " 0\n";
  }
  return out;
}

GeneratedElection gen_baldwin_from_x3c(const X3CInstance& inst) {
  require_sets(inst, 2);
  const int q = inst.q;
  const int t = static_cast<int>(inst.sets.size());
  std::vector<std::string> names{"p", "d", "b"};
  for (int i = 1; i <= q; ++i) names.push_back("v" + std::to_string(i));
  for (int j = 1; j <= t; ++j) names.push_back("a" + std::to_string(j));
  ProfileBuilder pb(names);
  const std::int64_t m = pb.m();
  const CandidateId p = 0, d = 1, b = 2;
  auto v = [](int i) { return static_cast<CandidateId>(3 + i); };
  auto a = [q](int j) { return static_cast<CandidateId>(3 + q + j); };

  for (int j = 0; j < t; ++j) {
    for (int e : inst.sets[j]) pb.gadget(v(e), a(j), 2 * m);
  }
  for (int i = 0; i < q; ++i) pb.gadget(b, v(i), m);
  pb.gadget(b, p, m * (t + 6));
  for (int i = 0; i < q; ++i) pb.gadget(d, v(i), 2 * m * inst.occ(i) + m * t + 4 * m);
  for (int j = 0; j < t; ++j) pb.gadget(d, a(j), m * t);
  pb.gadget(d, b, 2 * m * (t + 6));

  // padding pair with d last in both
  const std::int64_t pad = static_cast<std::int64_t>(q - 1) * (t + 5);
  std::vector<CandidateId> others;
  for (CandidateId c = 0; c < m; ++c) {
    if (c != d) others.push_back(c);
  }
  std::vector<CandidateId> up = others, down(others.rbegin(), others.rend());
  up.push_back(d);
  down.push_back(d);
  pb.add(std::move(up), pad);
  pb.add(std::move(down), pad);

  GeneratedElection g{pb.build(), p, RuleSpec::simple(RuleKind::Baldwin), 0};
  return g;
}

GeneratedElection gen_vetoplurality_from_x3c(const X3CInstance& inst) {
  require_sets(inst, 1);
  const int q = inst.q, n = static_cast<int>(inst.sets.size()), t = q / 3;
  std::vector<std::string> front, mid, back;
  for (int i = 1; i <= n + q + 1; ++i) front.push_back("d" + std::to_string(i));
  for (int i = n + q + 2; i <= n + 4 * t + 2; ++i) back.push_back("d" + std::to_string(i));
  mid.push_back("p");
  mid.push_back("w");
  for (int i = 1; i <= n; ++i) mid.push_back("s" + std::to_string(i));
  for (int j = 1; j <= q; ++j) mid.push_back("v" + std::to_string(j));
  for (int k = 1; k <= t; ++k) mid.push_back("f" + std::to_string(k));

  std::vector<std::string> names = front;
  names.insert(names.end(), mid.begin(), mid.end());
  names.insert(names.end(), back.begin(), back.end());
  ProfileBuilder pb(names);
  const int nf = static_cast<int>(front.size());
  const CandidateId p = nf, w = nf + 1;
  auto s = [&](int i) { return static_cast<CandidateId>(nf + 2 + i); };
  auto v = [&](int j) { return static_cast<CandidateId>(nf + 2 + n + j); };
  auto f = [&](int k) { return static_cast<CandidateId>(nf + 2 + n + q + k); };
  const CandidateId first_back = nf + static_cast<int>(mid.size());

  auto vote = [&](std::int64_t weight, std::vector<CandidateId> listed) {
    std::vector<CandidateId> r;
    for (CandidateId c = 0; c < nf; ++c) r.push_back(c);
    r.insert(r.end(), listed.begin(), listed.end());
    for (int k = 0; k < t; ++k) r.push_back(f(k));
    for (CandidateId c = nf; c < first_back; ++c) {
      if (std::find(r.begin(), r.end(), c) == r.end()) r.push_back(c);
    }
    for (CandidateId c = first_back; c < pb.m(); ++c) r.push_back(c);
    pb.add(std::move(r), weight);
  };
  for (int i = 0; i < n; ++i) {
    vote(7, {s(i), p});
    for (int e : inst.sets[i]) vote(2, {s(i), v(e)});
  }
  vote(7 * t - 1, {w});
  for (int j = 0; j < q; ++j) vote(7 * t - 3, {v(j)});

  GeneratedElection g{pb.build(), p, RuleSpec::hybrid_veto_half(RuleSpec::simple(RuleKind::Plurality)), 0};
  return g;
}

GeneratedElection gen_hybplurality_from_x3c(const X3CInstance& inst, std::int64_t T) {
  require_sets(inst, 1);
  const int q = inst.q, n = static_cast<int>(inst.sets.size());
  for (int i = 0; i < q; ++i) {
    if (inst.occ(i) != 3) throw InvalidArgument("every element must occur in exactly three sets");
  }
  const std::int64_t min_t = 3LL * n * q;
  if (T == 0) T = min_t;
  if (T < min_t) throw InvalidArgument("T must be at least 3*n*q = " + std::to_string(min_t));

  std::vector<std::string> names;
  for (int i = 1; i <= q; ++i) names.push_back("v" + std::to_string(i));
  for (int j = 1; j <= n; ++j) names.push_back("s" + std::to_string(j));
  names.push_back("p");
  names.push_back("d");
  ProfileBuilder pb(names);
  const CandidateId p = q + n, d = q + n + 1;

  pb.add_head({p}, T);
  for (int i = 0; i < q; ++i) pb.add_head({i}, T - 2);
  for (int j = 0; j < n; ++j) {
    for (int e : inst.sets[j]) pb.add_head({q + j, e}, 1);
  }
  pb.add_head({d}, 4);

  const int k = n - q / 3;
  GeneratedElection g{pb.build(), p, RuleSpec::hybrid_plurality_k(k, RuleSpec::simple(RuleKind::Plurality)), k};
  return g;
}

GeneratedCup gen_cup_from_3sat(const SATInstance& inst) {
  inst.validate();
  const int nc = static_cast<int>(inst.clauses.size());
  std::set<int> used;
  for (const auto& c : inst.clauses) {
    for (int lit : c) used.insert(std::abs(lit));
  }

  std::vector<Candidate> cands{{0, "p"}};
  for (int i = 1; i <= nc; ++i) cands.push_back({static_cast<CandidateId>(cands.size()), "k" + std::to_string(i)});
  std::vector<int> pos_id(inst.num_vars + 1, -1), neg_id(inst.num_vars + 1, -1), var_rank(inst.num_vars + 1, -1);
  int rank = 0;
  for (int x : used) {
    var_rank[x] = rank++;
    pos_id[x] = static_cast<int>(cands.size());
    cands.push_back({pos_id[x], "x" + std::to_string(x)});
    neg_id[x] = static_cast<int>(cands.size());
    cands.push_back({neg_id[x], "~x" + std::to_string(x)});
  }
  auto lit_id = [&](int lit) { return lit > 0 ? pos_id[lit] : neg_id[-lit]; };
  auto clause_id = [](int i) { return static_cast<CandidateId>(1 + i); };

  MajorityRelation rel(cands);
  const CandidateId p = 0;
  std::vector<int> lits;
  for (int x : used) {
    lits.push_back(pos_id[x]);
    lits.push_back(neg_id[x]);
  }
  auto var_of = [&](CandidateId c) {
    const int idx = c - 1 - nc;
    return *std::next(used.begin(), idx / 2);
  };
  for (CandidateId l : lits) rel.set_beats(p, l);
  for (std::size_t a = 0; a < lits.size(); ++a) {
    for (std::size_t b = a + 1; b < lits.size(); ++b) {
      const int xa = var_of(lits[a]), xb = var_of(lits[b]);
      if (xa == xb) rel.set_tied(lits[a], lits[b]);
      else rel.set_beats(var_rank[xa] < var_rank[xb] ? lits[a] : lits[b], var_rank[xa] < var_rank[xb] ? lits[b] : lits[a]);
    }
  }
  for (int i = 0; i < nc; ++i) {
    const CandidateId k = clause_id(i);
    rel.set_beats(k, p);
    for (CandidateId l : lits) {
      const auto& cl = inst.clauses[i];
      const bool in_clause = std::any_of(cl.begin(), cl.end(), [&](int lit) { return lit_id(lit) == l; });
      if (in_clause) rel.set_beats(l, k);
      else rel.set_beats(k, l);
    }
    for (int j = i + 1; j < nc; ++j) rel.set_beats(k, clause_id(j));
  }

  CupSchedule sched = CupSchedule::leaf(p);
  for (int i = 0; i < nc; ++i) {
    CupSchedule sub = CupSchedule::leaf(clause_id(i));
    for (int lit : inst.clauses[i]) {
      sub = CupSchedule::match(sub, CupSchedule::match(CupSchedule::leaf(lit_id(lit)), CupSchedule::leaf(lit_id(-lit))));
    }
    sched = CupSchedule::match(sched, sub);
  }
  return {std::move(rel), std::move(sched), p};
}

bool solve_x3c_bruteforce(const X3CInstance& inst) {
  inst.validate();
  const int need = inst.q / 3;
  const int n = static_cast<int>(inst.sets.size());
  std::vector<std::uint64_t> masks;
  for (const auto& s : inst.sets) masks.push_back((1ULL << s[0]) | (1ULL << s[1]) | (1ULL << s[2]));
  const std::uint64_t full = inst.q >= 64 ? ~0ULL : (1ULL << inst.q) - 1;
  // pick sets in index order, each one disjoint from what is covered so far
  std::function<bool(int, int, std::uint64_t)> go = [&](int from, int left, std::uint64_t cov) {
    if (left == 0) return cov == full;
    for (int j = from; j < n; ++j) {
      if ((masks[j] & cov) == 0 && go(j + 1, left - 1, cov | masks[j])) return true;
    }
    return false;
  };
  return go(0, need, 0);
}

bool solve_3sat_bruteforce(const SATInstance& inst) {
  inst.validate();
  if (inst.num_vars > 30) throw InvalidArgument("brute-force 3SAT is limited to 30 variables");
  for (std::uint64_t a = 0; a < (1ULL << inst.num_vars); ++a) {
    bool all = true;
    for (const auto& c : inst.clauses) {
      bool sat = false;
      for (int lit : c) {
        const bool val = (a >> (std::abs(lit) - 1)) & 1;
        if (val == (lit > 0)) sat = true;
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Profile random_profile(int m, int n, std::mt19937_64& rng) {
  if (m < 1 || n < 1) throw InvalidArgument("random profiles need m >= 1 and n >= 1");
  std::vector<Candidate> cands;
  for (int i = 0; i < m; ++i) cands.push_back({i, "c" + std::to_string(i + 1)});
  std::vector<Ballot> ballots;
  std::vector<CandidateId> r(m);
  for (int v = 0; v < n; ++v) {
    std::iota(r.begin(), r.end(), 0);
    std::shuffle(r.begin(), r.end(), rng);
    ballots.push_back({r, 1, std::nullopt});
  }
  return Profile(std::move(cands), std::move(ballots));
}

X3CInstance random_x3c(int q, int num_sets, bool plant, std::mt19937_64& rng) {
  X3CInstance inst;
  inst.q = q;
  std::vector<int> elems(q);
  std::iota(elems.begin(), elems.end(), 0);
  if (plant) {
    std::shuffle(elems.begin(), elems.end(), rng);
    for (int j = 0; j + 2 < q && static_cast<int>(inst.sets.size()) < num_sets; j += 3) {
      std::array<int, 3> s{elems[j], elems[j + 1], elems[j + 2]};
      std::sort(s.begin(), s.end());
      inst.sets.push_back(s);
    }
  }
  while (static_cast<int>(inst.sets.size()) < num_sets) {
    std::shuffle(elems.begin(), elems.end(), rng);
    std::array<int, 3> s{elems[0], elems[1], elems[2]};
    std::sort(s.begin(), s.end());
    inst.sets.push_back(s);
  }
  inst.validate();
  return inst;
}

X3CInstance random_x3c_exact3(int q, std::mt19937_64& rng) {
  if (q <= 0 || q % 3 != 0) throw InvalidArgument("q must be a positive multiple of 3");
  X3CInstance inst;
  inst.q = q;
  if (q == 3) {
    inst.sets.assign(3, {0, 1, 2});
    return inst;
  }
  std::vector<int> pool;
  for (int i = 0; i < q; ++i) pool.insert(pool.end(), 3, i);
  while (true) {
    std::shuffle(pool.begin(), pool.end(), rng);
    inst.sets.clear();
    bool ok = true;
    for (int j = 0; j < q && ok; ++j) {
      std::array<int, 3> s{pool[3 * j], pool[3 * j + 1], pool[3 * j + 2]};
      std::sort(s.begin(), s.end());
      ok = s[0] != s[1] && s[1] != s[2];
      inst.sets.push_back(s);
    }
    if (ok) return inst;
  }
}

SATInstance random_3sat(int num_vars, int num_clauses, std::mt19937_64& rng) {
  if (num_vars < 3) throw InvalidArgument("random 3SAT needs at least 3 variables");
  SATInstance inst;
  inst.num_vars = num_vars;
  std::vector<int> vars(num_vars);
  std::iota(vars.begin(), vars.end(), 1);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < num_clauses; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    std::array<int, 3> c{};
    for (int j = 0; j < 3; ++j) c[j] = sign(rng) ? vars[j] : -vars[j];
    inst.clauses.push_back(c);
  }
  return inst;
}

}  // namespace tiectl
