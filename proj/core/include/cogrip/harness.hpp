#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogrip/engine.hpp"
#include "cogrip/follower.hpp"
#include "cogrip/guide.hpp"
#include "cogrip/rng.hpp"

namespace cogrip {

inline constexpr std::array<std::uint64_t, 3> kDefaultSeeds = {49184, 92999, 98506};

class GuidePolicy {
 public:
  virtual ~GuidePolicy() = default;
  virtual GuideAction act(const Episode& episode) = 0;
};

class FollowerPolicy {
 public:
  virtual ~FollowerPolicy() = default;
  virtual FollowerAction act(const Episode& episode, const Utterance& utterance, Rng& rng) = 0;
};

class HeuristicGuidePolicy final : public GuidePolicy {
 public:
  explicit HeuristicGuidePolicy(int threshold) : guide_(threshold) {}
  GuideAction act(const Episode& episode) override;

 private:
  HeuristicGuide guide_;
};

class HeuristicFollowerPolicy final : public FollowerPolicy {
 public:
  HeuristicFollowerPolicy(FollowerConfig config, int board_size) : follower_(config, board_size) {}
  FollowerAction act(const Episode& episode, const Utterance& utterance, Rng& rng) override;
  const HeuristicFollower& follower() const { return follower_; }

 private:
  HeuristicFollower follower_;
};

// A guide/follower pair. Heuristic agents are configured by the plain fields;
// the factories, when set, replace them (stubs, remote adapters). A policy
// throwing AgentDisconnected aborts its episode.
struct PairingSpec {
  std::string name = "HIF-HIG";
  int guide_threshold = 1;
  FollowerConfig follower;
  GuideMode mode = GuideMode::Intent;
  std::function<std::unique_ptr<GuidePolicy>(const TaskInstance&)> guide_factory;
  std::function<std::unique_ptr<FollowerPolicy>(const TaskInstance&)> follower_factory;
};

struct EpisodeRecord {
  int task_id = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::Ongoing;
  int steps = 0;  // T
  double guide_effort = 0.0;
  double follower_effort = 0.0;
  ScoreBreakdown score;
  bool took_empty = false;
  bool aborted = false;
  std::array<int, 5> categories{};  // guide utterances per Category
  std::vector<std::string> log;     // episode log lines, when requested
};

// Seed of the follower's random stream for one episode.
std::uint64_t episode_seed(std::uint64_t seed, int task_id);

EpisodeRecord run_episode(const PairingSpec& pairing, const TaskInstance& task, std::uint64_t seed,
                          bool keep_log = false);

struct Metrics {
  double success_rate = 0.0;   // mSR
  double episode_length = 0.0; // mEPL
  double task_score = 0.0;     // mTS
  double joint_effort = 0.0;   // mJE
  int episodes = 0;            // N, aborted excluded
  int aborted = 0;
  std::array<double, 5> category_share{};  // share of guide steps per Category
};

// Aggregates in task-id order so results don't depend on completion order.
Metrics compute_metrics(std::span<const EpisodeRecord> records);

// Arithmetic mean of per-seed metrics.
Metrics average_metrics(std::span<const Metrics> per_seed);

Metrics metrics_from_json(const nlohmann::json& j);
nlohmann::json metrics_to_json(const Metrics& m);

struct SeedResult {
  std::uint64_t seed = 0;
  Metrics metrics;
  std::vector<EpisodeRecord> records;  // task order
};

struct Evaluation {
  std::string pairing;
  int board_size = 0;
  Metrics metrics;  // averaged over seeds
  std::vector<SeedResult> seeds;
};

// Runs every task once per seed on `workers` threads (0 = hardware concurrency).
Evaluation evaluate(const PairingSpec& pairing, std::span<const TaskInstance> tasks,
                    std::span<const std::uint64_t> seeds, unsigned workers = 0, bool keep_logs = false);

// Pools several evaluations on one board size (e.g. R=1 and R=4) into one
// row whose metrics average every (evaluation, seed) run.
Evaluation pool_evaluations(std::string name, std::span<const Evaluation> evaluations);

// CSV with header pairing,M,mSR,mEPL,mTS,mJE,N.
std::string report_csv(std::span<const Evaluation> evaluations);
nlohmann::json report_json(std::span<const Evaluation> evaluations, bool per_episode = true);

nlohmann::json record_to_json(const EpisodeRecord& r);

}  // namespace cogrip
