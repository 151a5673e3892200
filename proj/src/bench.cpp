#include "tiectl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "json.hpp"
#include "tiectl/error.hpp"
#include "tiectl/generators.hpp"

namespace tiectl {

namespace {

struct Instance {
  std::string source;
  Profile profile;
};

BenchReport::Summary summarize(std::vector<double> xs) {
  BenchReport::Summary s;
  if (xs.empty()) return s;
  std::sort(xs.begin(), xs.end());
  // nearest rank
  auto rank = [&xs](double q) {
    std::size_t r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size())));
    return xs[std::clamp<std::size_t>(r, 1, xs.size()) - 1];
  };
  s.p50 = rank(0.50);
  s.p90 = rank(0.90);
  s.p99 = rank(0.99);
  s.max = xs.back();
  return s;
}

nlohmann::json summary_json(const BenchReport::Summary& s) {
  return {{"p50", s.p50}, {"p90", s.p90}, {"p99", s.p99}, {"max", s.max}};
}

}  // namespace

BenchReport::Summary BenchReport::wall_ms() const {
  std::vector<double> xs;
  for (const auto& r : records) xs.push_back(r.wall_ms);
  return summarize(std::move(xs));
}

BenchReport::Summary BenchReport::nodes() const {
  std::vector<double> xs;
  for (const auto& r : records) xs.push_back(static_cast<double>(r.nodes_explored));
  return summarize(std::move(xs));
}

std::string BenchReport::to_json(bool include_times) const {
  nlohmann::ordered_json j;
  j["instances"] = records.size();
  auto& arr = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json e{{"rule", r.rule},       {"source", r.source}, {"m", r.m},
                             {"n", r.n},             {"candidate", r.candidate},
                             {"status", r.status},   {"nodes_explored", r.nodes_explored}};
    if (include_times) e["wall_ms"] = r.wall_ms;
    arr.push_back(std::move(e));
  }
  j["nodes_explored"] = summary_json(nodes());
  if (include_times) j["wall_ms"] = summary_json(wall_ms());
  return j.dump(2) + "\n";
}

BenchReport bench_control(const BenchConfig& config) {
  if (config.rules.empty()) throw InvalidArgument("bench needs at least one rule");
  std::vector<RuleSpec> specs;
  for (const auto& r : config.rules) specs.push_back(parse_rule_spec(r));

  std::vector<Instance> instances;
  for (const auto& path : config.profile_files) instances.push_back({path, parse_profile(read_file(path))});
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < config.random_profiles; ++i) {
    instances.push_back({"ic:" + std::to_string(config.seed) + ":" + std::to_string(i),
                         random_profile(config.m, config.n, rng)});
  }

  BenchReport report;
  report.records.resize(specs.size() * instances.size());
  const long total = static_cast<long>(report.records.size());

#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
  for (long idx = 0; idx < total; ++idx) {
    const std::size_t ri = static_cast<std::size_t>(idx) / instances.size();
    const Instance& inst = instances[static_cast<std::size_t>(idx) % instances.size()];
    BenchRecord rec;
    rec.rule = config.rules[ri];
    rec.source = inst.source;
    rec.m = inst.profile.num_candidates();
    rec.n = inst.profile.num_voters();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const CandidateId p = config.candidate.empty() ? 0 : inst.profile.id_of(config.candidate);
      rec.candidate = inst.profile.name(p);
      ControlAnswer a = control_search(specs[ri], inst.profile, p, config.budget);
      rec.status = a.controllable ? "yes" : "no";
      rec.nodes_explored = a.nodes_explored;
    } catch (const BudgetExceeded& e) {
      rec.status = "budget";
      rec.nodes_explored = e.nodes();
    } catch (const std::exception& e) {
      rec.status = std::string("error: ") + e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.records[idx] = std::move(rec);
  }
  return report;
}

}  // namespace tiectl
