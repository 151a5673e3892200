#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "tiectl/error.hpp"
#include "tiectl/rules.hpp"

using namespace tiectl;
using th::make;

namespace {

const std::vector<std::string> kAbc{"a", "b", "c"};

Profile six_votes() {
  return make({"p", "a", "b", "c", "d", "f", "g"},
              {{1, "d>f>g>p>a>b>c"}, {1, "d>f>g>p>c>b>a"}, {2, "p>a>b>c>d>f>g"}, {2, "c>b>a>d>f>g>p"}});
}

Profile cycle(int copies = 1) {
  return make(kAbc, {{copies, "a>b>c"}, {copies, "b>c>a"}, {copies, "c>a>b"}});
}

CandidateSet winners(const char* rule, const Profile& p) { return single_stage_winners(parse_rule_spec(rule), p); }

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("maximin on a cycle is neutral") { CHECK(winners("maximin", cycle()).size() == 3); }

  TEST_CASE("copeland on the six-vote profile") {
    const Profile p = six_votes();
    auto rel = MajorityRelation::from_pairwise(pairwise_matrix(p), p.candidates());
    auto s = copeland_scores(rel, p.all(), {}, Rational(0));
    // p a b c d f g
    CHECK(s == std::vector<Rational>{3, 3, 3, 3, 3, 2, 1});
  }

  TEST_CASE("cyclic orientation on the six-vote profile lifts the trio to four") {
    const Profile p = six_votes();
    // a=1, b=2, c=3 with c>b, b>a, a>c
    auto w = copeland_with_orientation(p, {{3, 2}, {2, 1}, {1, 3}}, Rational(0));
    CHECK(w == CandidateSet{1, 2, 3});
    CHECK(copeland_with_orientation(p, {}, Rational(1, 3)) == single_stage_winners(RuleSpec::copeland(Rational(1, 3)), p));
  }

  TEST_CASE("fully oriented ties make copeland alpha-independent") {
    const Profile p = six_votes();
    std::vector<std::pair<CandidateId, CandidateId>> all{{1, 2}, {1, 3}, {2, 3}};
    CHECK(copeland_with_orientation(p, all, Rational(0)) == copeland_with_orientation(p, all, Rational(1)));
  }

  TEST_CASE("bucklin stops at k=1") {
    Profile p = make(kAbc, {{1, "a>b>c"}, {1, "a>c>b"}, {1, "b>c>a"}});
    CHECK(winners("bucklin", p) == CandidateSet{0});
  }

  TEST_CASE("black elects a Condorcet winner") {
    Profile p = make(kAbc, {{2, "b>a>c"}, {1, "a>b>c"}, {1, "c>b>a"}});
    CHECK(winners("black", p) == CandidateSet{1});
  }

  TEST_CASE("kemeny on the margin-2 cycle") {
    auto k = kemeny_optimal_rankings(cycle());
    CHECK(k.rankings.size() == 3);
    CHECK(k.score == 5);
    CHECK(winners("kemeny", cycle()) == CandidateSet{0, 1, 2});
  }

  TEST_CASE("kemeny special cases") {
    Profile u = make(kAbc, {{3, "b>c>a"}});
    auto k = kemeny_optimal_rankings(u);
    REQUIRE(k.rankings.size() == 1);
    CHECK(k.rankings[0] == std::vector<CandidateId>{1, 2, 0});

    Profile two = make({"a", "b"}, {{1, "a>b"}, {1, "b>a"}});
    CHECK(kemeny_optimal_rankings(two).rankings.size() == 2);

    Profile big = make({"a", "b", "c", "d"}, {{1, "a>b>c>d"}});
    CHECK_THROWS_AS(kemeny_optimal_rankings(big, 3), InvalidArgument);
  }

  TEST_CASE("single-stage rules match the brute-force definitions") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 150; ++t) {
      Profile p = oracle::random_profile(rng, 5, 8, t % 3 == 0, true);
      const int m = p.num_candidates();
      CAPTURE(serialize_profile(p));
      CHECK(oracle::to_set(winners("plurality", p)) == oracle::plurality(p));
      CHECK(oracle::to_set(winners("veto", p)) == oracle::veto(p));
      CHECK(oracle::to_set(winners("borda", p)) == oracle::borda(p));
      if (m > 3) CHECK(oracle::to_set(winners("k_approval:k=3", p)) == oracle::k_approval(p, 3));
      CHECK(oracle::to_set(winners("black", p)) == oracle::black(p));
      CHECK(oracle::to_set(winners("bucklin", p)) == oracle::bucklin(p, false));
      CHECK(oracle::to_set(winners("bucklin:simplified", p)) == oracle::bucklin(p, true));
      CHECK(oracle::to_set(winners("fallback", p)) == oracle::fallback(p));
      CHECK(oracle::to_set(winners("nanson", p)) == oracle::nanson(p));
      CHECK(oracle::to_set(winners("maximin", p)) == oracle::maximin(p));
      CHECK(oracle::to_set(winners("schulze", p)) == oracle::schulze(p));
      for (const char* a : {"0", "1/2", "1"}) {
        CHECK(oracle::to_set(winners((std::string("copeland:a=") + a).c_str(), p)) ==
              oracle::copeland(p, parse_rational(a)));
      }
      CHECK(oracle::to_set(winners("ranked_pairs", p)) == oracle::ranked_pairs(p));
      CHECK(oracle::to_set(winners("kemeny", p)) == oracle::kemeny(p));
    }
  }

  TEST_CASE("scoring rule by explicit weights") {
    Profile p = make(kAbc, {{2, "a>b>c"}, {1, "b>c>a"}});
    CHECK(winners("scoring:2,1,0", p) == CandidateSet{0, 1});
    CHECK(winners("scoring:3,1,0", p) == CandidateSet{0});
  }

  TEST_CASE("ranked pairs with an explicit pair order") {
    // all pairs tied: the first listed candidate's pairs lock first
    Profile p = make(kAbc, {{1, "a>b>c"}, {1, "c>b>a"}});
    CHECK(winners("ranked_pairs", p) == CandidateSet{0});
    CHECK(winners("ranked_pairs:order=c>b>a", p) == CandidateSet{2});
  }

  TEST_CASE("second-order copeland") {
    MajorityRelation rel({{0, "a"}, {1, "b"}, {2, "c"}, {3, "d"}});
    rel.set_beats(0, 2);
    rel.set_beats(0, 3);
    rel.set_beats(1, 0);
    rel.set_beats(1, 3);
    rel.set_beats(2, 1);
    rel.set_beats(3, 2);
    Profile p = tournament_to_profile(rel);
    // scores a=2 b=2 c=1 d=1; a's victims sum 2, b's victims (a,d) sum 3
    CHECK(winners("copeland:a=1/2", p) == CandidateSet{0, 1});
    CHECK(winners("copeland:a=1/2,second_order", p) == CandidateSet{1});
  }
}

TEST_SUITE("machines") {
  TEST_CASE("stv eliminates the unique plurality loser") {
    Profile p = make(kAbc, {{2, "a>b>c"}, {2, "b>a>c"}, {1, "c>a>b"}});
    th::Scripted r;
    Trace t = stv(p, r);
    CHECK(t.winner == 0);
    CHECK(r.seen.empty());
  }

  TEST_CASE("stv on a doubled cycle raises a three-way elimination") {
    th::Scripted r;
    stv(cycle(2), r);
    REQUIRE_FALSE(r.seen.empty());
    CHECK(r.seen[0].kind == TieKind::EliminateOne);
    CHECK(r.seen[0].tied == std::vector<CandidateId>{0, 1, 2});
  }

  TEST_CASE("single candidate wins at once") {
    Profile p = make({"a"}, {{1, "a"}});
    for (const char* rule : {"stv", "baldwin", "coombs", "plurality_runoff", "borda"}) {
      th::Scripted r;
      CHECK(run_rule(parse_rule_spec(rule), p, r).winner == 0);
      CHECK(r.seen.empty());
    }
  }

  TEST_CASE("baldwin") {
    Profile cw = make({"a", "b", "c", "d"}, {{3, "b>a>c>d"}, {1, "a>c>d>b"}, {1, "c>b>d>a"}});
    th::Scripted r;
    CHECK(baldwin(cw, r).winner == 1);

    th::Scripted sym;
    baldwin(cycle(), sym);
    REQUIRE_FALSE(sym.seen.empty());
    CHECK(sym.seen[0].tied.size() == 3);

    Profile two = make({"a", "b"}, {{2, "b>a"}, {1, "a>b"}});
    th::Scripted r2;
    CHECK(baldwin(two, r2).winner == 1);
    CHECK(r2.seen.empty());
  }

  TEST_CASE("coombs") {
    Profile p = make(kAbc, {{2, "a>b>c"}, {1, "b>a>c"}});
    th::Scripted r;
    Trace t = coombs(p, true, r);
    CHECK(t.winner == 0);
    CHECK(r.seen.empty());

    th::Scripted sym;
    coombs(cycle(), true, sym);
    REQUIRE_FALSE(sym.seen.empty());
    CHECK(sym.seen[0].tied == std::vector<CandidateId>{0, 1, 2});

    // a has a majority from the start: the unsimplified rule stops immediately
    Profile maj = make(kAbc, {{3, "a>b>c"}, {2, "b>c>a"}});
    th::Scripted rm;
    CHECK(coombs(maj, false, rm).winner == 0);
    CHECK(rm.seen.empty());
  }

  TEST_CASE("plurality with runoff") {
    Profile p = make(kAbc, {{3, "a>b>c"}, {2, "b>a>c"}, {1, "c>a>b"}});
    th::Scripted r;
    CHECK(plurality_runoff(p, r).winner == 0);
    CHECK(r.seen.empty());

    Profile q = make(kAbc, {{3, "a>b>c"}, {3, "b>c>a"}, {1, "c>b>a"}});
    th::Scripted rq;
    CHECK(plurality_runoff(q, rq).winner == 1);  // b beats a 4-3 in the runoff
    CHECK(rq.seen.empty());

    th::Scripted sym;
    plurality_runoff(cycle(2), sym);
    REQUIRE_FALSE(sym.seen.empty());
    CHECK(sym.seen[0].kind == TieKind::SelectSurvivor);
    CHECK(sym.seen[0].tied == std::vector<CandidateId>{0, 1, 2});

    Profile maj = make(kAbc, {{3, "c>a>b"}, {1, "a>b>c"}});
    th::Scripted rm;
    CHECK(plurality_runoff(maj, rm).winner == 2);
    CHECK(rm.seen.empty());
  }

  TEST_CASE("cup with a scripted orientation") {
    MajorityRelation rel({{0, "a"}, {1, "b"}});
    th::Scripted r({{TieKind::OrientPair, 0, 1}});
    CHECK(cup(rel, parse_schedule("[1,2]"), r).winner == 0);
    th::Scripted r2({{TieKind::OrientPair, 1, 0}});
    CHECK(cup(rel, parse_schedule("[1,2]"), r2).winner == 1);
  }

  TEST_CASE("a cup orients each tied pair once") {
    MajorityRelation rel({{0, "a"}, {1, "b"}});
    th::Scripted r;
    Trace t = cup(rel, parse_schedule("[[1,2],[2,1]]"), r);
    CHECK(r.seen.size() == 1);
    CHECK(t.winner == 0);
  }

  TEST_CASE("cup needs every candidate on a leaf") {
    MajorityRelation rel({{0, "a"}, {1, "b"}, {2, "c"}});
    th::Scripted r;
    CHECK_THROWS_AS(cup(rel, parse_schedule("[1,2]"), r), InvalidArgument);
  }

  TEST_CASE("hybrid with zero plurality rounds is the second stage") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
      Profile p = oracle::random_profile(rng, 5, 7, false, false, 2);
      CHECK(put_winners(parse_rule_spec("hybrid:plurality_k=0+stv"), p) ==
            put_winners(parse_rule_spec("stv"), p));
    }
  }

  TEST_CASE("hybrid stage one rules") {
    // veto half keeps the three candidates without last places
    Profile p = make({"a", "b", "c", "d", "e", "f"},
                     {{3, "a>b>c>d>e>f"}, {2, "b>c>a>d>f>e"}, {1, "c>a>b>e>d>f"}});
    th::Scripted r;
    Trace t = hybrid(parse_rule_spec("hybrid:veto_half+plurality"), p, r);
    REQUIRE_FALSE(r.seen.empty());
    CHECK(r.seen[0].kind == TieKind::SelectSurvivor);
    CHECK(t.winner != 4);
    CHECK(t.winner != 5);

    th::Scripted r2;
    Trace t2 = hybrid(parse_rule_spec("hybrid:cup_1@[[1,2],[3,4],[5,6]]+plurality"), p, r2);
    CHECK(t2.winner == 0);

    CHECK_THROWS_AS(hybrid(parse_rule_spec("hybrid:plurality_k=6+plurality"), p, r), InvalidArgument);
  }

  TEST_CASE("a linear policy drives a run end to end") {
    PolicyResolver res(TieBreakPolicy::linear({2, 1, 0}));
    Trace t = stv(cycle(), res);
    // eliminate the lowest-ranked of the tie (a), then b beats c 2-1
    CHECK(t.winner == 1);
  }
}
