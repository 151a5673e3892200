#include <benchmark/benchmark.h>

#include <random>

#include "tiectl/control.hpp"
#include "tiectl/generators.hpp"

using namespace tiectl;

namespace {

// STV on impartial-culture profiles: lots of elimination ties with small n
struct StvCase {
  Profile profile;
  RuleSpec rule = RuleSpec::simple(RuleKind::Stv);
};

StvCase stv_case(int m) {
  std::mt19937_64 rng(7);
  return {random_profile(m, 4, rng)};
}

GeneratedElection baldwin_case() {
  std::mt19937_64 rng(3);
  return gen_baldwin_from_x3c(random_x3c(6, 5, false, rng));
}

// no-instances walk the whole survivor-selection tree
template <int Q>
GeneratedElection veto_case() {
  std::mt19937_64 rng(Q);
  return gen_vetoplurality_from_x3c(random_x3c(Q, Q * 2 / 3, false, rng));
}

GeneratedElection hyb_case() {
  std::mt19937_64 rng(5);
  return gen_hybplurality_from_x3c(random_x3c_exact3(6, rng));
}

void BM_StvSerial(benchmark::State& state) {
  auto c = stv_case(static_cast<int>(state.range(0)));
  auto machine = make_machine(c.rule, c.profile);
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    // last candidate: usually a "no", so the whole tree is walked
    auto a = control_search(*machine, c.profile.num_candidates() - 1);
    nodes = a.nodes_explored;
    benchmark::DoNotOptimize(a.controllable);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}

void BM_StvParallel(benchmark::State& state) {
  auto c = stv_case(static_cast<int>(state.range(0)));
  auto machine = make_machine(c.rule, c.profile);
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    auto a = control_search_parallel(*machine, c.profile.num_candidates() - 1, kDefaultBudget,
                                     static_cast<int>(state.range(1)));
    nodes = a.nodes_explored;
    benchmark::DoNotOptimize(a.controllable);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}

template <GeneratedElection (*Make)()>
void BM_ReductionSerial(benchmark::State& state) {
  auto g = Make();
  auto machine = make_machine(g.rule, g.profile);
  for (auto _ : state) benchmark::DoNotOptimize(control_search(*machine, g.p).controllable);
}

template <GeneratedElection (*Make)()>
void BM_ReductionParallel(benchmark::State& state) {
  auto g = Make();
  auto machine = make_machine(g.rule, g.profile);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        control_search_parallel(*machine, g.p, kDefaultBudget, static_cast<int>(state.range(0))).controllable);
  }
}

void BM_PutWinners(benchmark::State& state) {
  auto c = stv_case(10);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(put_winners(c.rule, c.profile, kDefaultBudget, parallel).bits());
}

}  // namespace

BENCHMARK(BM_StvSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StvParallel)->Args({10, 2})->Args({10, 4})->Args({12, 2})->Args({12, 4})->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionSerial, veto_case<9>)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionParallel, veto_case<9>)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionSerial, veto_case<12>)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionParallel, veto_case<12>)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionSerial, baldwin_case)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionParallel, baldwin_case)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionSerial, hyb_case)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ReductionParallel, hyb_case)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PutWinners)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
