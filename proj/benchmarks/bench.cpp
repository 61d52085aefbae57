#include <benchmark/benchmark.h>

#include <map>

#include "cogrip/follower.hpp"
#include "cogrip/harness.hpp"
#include "cogrip/observation.hpp"
#include "cogrip/server.hpp"

namespace cogrip {
namespace {

const std::vector<TaskInstance>& test_split(int size) {
  static std::map<int, std::vector<TaskInstance>> cache;
  auto it = cache.find(size);
  if (it == cache.end()) {
    const SplitAssignment pieces = split_pieces(kDefaultSeeds[0]);
    it = cache.emplace(size, build_split("test", pieces.test, size, kDefaultSeeds[0]).tasks).first;
  }
  return it->second;
}

void BM_Ia(benchmark::State& state) {
  const auto pieces = enumerate_pieces();
  Rng rng(1);
  std::vector<SymbolicPiece> ds(4);
  for (auto _ : state) {
    const SymbolicPiece& target = pieces[rng.below(pieces.size())];
    for (auto& d : ds) d = pieces[rng.below(pieces.size())];
    std::erase(ds, target);
    benchmark::DoNotOptimize(ia(target, ds, PreferenceOrder::PCS));
    ds.resize(4);
  }
}
BENCHMARK(BM_Ia);

void BM_GenerateTask(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto pieces = enumerate_pieces();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const SymbolicPiece& target = pieces[seed % pieces.size()];
    benchmark::DoNotOptimize(generate_task(target, 1 + static_cast<int>(seed % 7), size, seed));
    ++seed;
  }
}
BENCHMARK(BM_GenerateTask)->Arg(12)->Arg(21)->Arg(27);

void BM_PartialView(benchmark::State& state) {
  const TaskInstance& task = test_split(12).front();
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_view(task.board, {i % 12, (i / 12) % 12}));
    ++i;
  }
}
BENCHMARK(BM_PartialView);

void BM_PlanPath(benchmark::State& state) {
  const SymbolicView view = partial_view(test_split(12).front().board, {6, 6});
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_path(view, i % 7, (i / 7) % 7));
    ++i;
  }
}
BENCHMARK(BM_PlanPath);

void BM_Episode(benchmark::State& state) {
  const auto& tasks = test_split(static_cast<int>(state.range(0)));
  PairingSpec pairing;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_episode(pairing, tasks[i++ % tasks.size()], kDefaultSeeds[0]));
}
BENCHMARK(BM_Episode)->Arg(12)->Arg(21)->Arg(27);

void BM_EvaluateSplit(benchmark::State& state) {
  const auto& tasks = test_split(12);
  PairingSpec pairing;
  const std::vector<std::uint64_t> seeds(kDefaultSeeds.begin(), kDefaultSeeds.end());
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(pairing, tasks, seeds, static_cast<unsigned>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tasks.size() * seeds.size()));
}
BENCHMARK(BM_EvaluateSplit)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_ObservationJson(benchmark::State& state) {
  const Episode ep(test_split(27).front());
  const auto format = state.range(0) == 0 ? ArrayFormat::Lists : ArrayFormat::Base64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(observation_to_json(encode_observation(ep, Role::Follower), format).dump());
  }
}
BENCHMARK(BM_ObservationJson)->Arg(0)->Arg(1);

void BM_SessionStep(benchmark::State& state) {
  SessionConfig config;
  config.tasks = test_split(12);
  Session session(config);
  const std::string reset = R"({"type":"reset"})", wait = R"({"type":"step","follower_action":0})";
  session.handle(reset);
  for (auto _ : state) {
    const std::string reply = session.handle(wait);
    if (reply.find("\"terminal\":true") != std::string::npos) session.handle(reset);
    benchmark::DoNotOptimize(reply);
  }
}
BENCHMARK(BM_SessionStep);

}  // namespace
}  // namespace cogrip

BENCHMARK_MAIN();
