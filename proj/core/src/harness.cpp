#include "cogrip/harness.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "cogrip/error.hpp"

namespace cogrip {

using nlohmann::json;

GuideAction HeuristicGuidePolicy::act(const Episode& episode) {
  return guide_.act(episode.board(), episode.task().target_id, episode.gripper().position, episode.t());
}

FollowerAction HeuristicFollowerPolicy::act(const Episode& episode, const Utterance& utterance, Rng& rng) {
  const Coord pos = episode.gripper().position;
  return follower_.act(utterance.surface, partial_view(episode.board(), pos), pos, rng);
}

std::uint64_t episode_seed(std::uint64_t seed, int task_id) {
  return derive_seed(seed, static_cast<std::uint64_t>(task_id));
}

EpisodeRecord run_episode(const PairingSpec& pairing, const TaskInstance& task, std::uint64_t seed, bool keep_log) {
  EpisodeRecord rec;
  rec.task_id = task.id;
  rec.seed = seed;

  std::unique_ptr<GuidePolicy> guide = pairing.guide_factory
                                           ? pairing.guide_factory(task)
                                           : std::make_unique<HeuristicGuidePolicy>(pairing.guide_threshold);
  std::unique_ptr<FollowerPolicy> follower =
      pairing.follower_factory ? pairing.follower_factory(task)
                               : std::make_unique<HeuristicFollowerPolicy>(pairing.follower, task.size());
  Rng rng(episode_seed(seed, task.id));
  Episode episode(task, pairing.mode);

  try {
    while (!episode.terminal()) {
      const GuideAction g = guide->act(episode);
      const Utterance u = episode.utter(g);
      const FollowerAction f = follower->act(episode, u, rng);
      episode.step(g, f);
      ++rec.categories[static_cast<std::size_t>(u.category)];
    }
  } catch (const AgentDisconnected& e) {
    spdlog::warn("episode {} (seed {}) aborted: {}", task.id, seed, e.what());
    rec.aborted = true;
  }

  rec.outcome = episode.outcome();
  rec.steps = episode.t();
  rec.guide_effort = episode.guide_effort();
  rec.follower_effort = episode.follower_effort();
  rec.took_empty = episode.took_empty();
  if (!rec.aborted) rec.score = episode.score();
  if (keep_log) rec.log = episode_log_lines(episode);
  return rec;
}

Metrics compute_metrics(std::span<const EpisodeRecord> records) {
  std::vector<const EpisodeRecord*> sorted;
  for (const EpisodeRecord& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EpisodeRecord* a, const EpisodeRecord* b) { return a->task_id < b->task_id; });

  Metrics m;
  double success = 0.0, length = 0.0, task_score = 0.0, joint = 0.0;
  std::array<double, 5> cats{};
  double steps = 0.0;
  for (const EpisodeRecord* r : sorted) {
    if (r->aborted) {
      ++m.aborted;
      continue;
    }
    ++m.episodes;
    success += r->outcome == Outcome::Correct ? 1.0 : 0.0;
    length += r->steps;
    task_score += r->score.game;
    joint += ((r->guide_effort + r->follower_effort) / 2.0) / r->steps;
    for (std::size_t c = 0; c < cats.size(); ++c) cats[c] += r->categories[c];
    steps += r->steps;
  }
  if (m.episodes > 0) {
    const double n = m.episodes;
    m.success_rate = success / n;
    m.episode_length = length / n;
    m.task_score = task_score / n;
    m.joint_effort = joint / n;
    for (std::size_t c = 0; c < cats.size(); ++c) m.category_share[c] = cats[c] / steps;
  }
  return m;
}

Metrics average_metrics(std::span<const Metrics> per_seed) {
  Metrics avg;
  if (per_seed.empty()) return avg;
  for (const Metrics& m : per_seed) {
    avg.success_rate += m.success_rate;
    avg.episode_length += m.episode_length;
    avg.task_score += m.task_score;
    avg.joint_effort += m.joint_effort;
    avg.episodes += m.episodes;
    avg.aborted += m.aborted;
    for (std::size_t c = 0; c < avg.category_share.size(); ++c) avg.category_share[c] += m.category_share[c];
  }
  const double n = static_cast<double>(per_seed.size());
  avg.success_rate /= n;
  avg.episode_length /= n;
  avg.task_score /= n;
  avg.joint_effort /= n;
  for (double& c : avg.category_share) c /= n;
  return avg;
}

json metrics_to_json(const Metrics& m) {
  json cats = json::object();
  for (Category c : kCategories) cats[std::string(name(c))] = m.category_share[static_cast<std::size_t>(c)];
  return {{"mSR", m.success_rate}, {"mEPL", m.episode_length}, {"mTS", m.task_score}, {"mJE", m.joint_effort},
          {"N", m.episodes},       {"aborted", m.aborted},     {"utterance_categories", cats}};
}

Metrics metrics_from_json(const json& j) {
  Metrics m;
  m.success_rate = j.at("mSR").get<double>();
  m.episode_length = j.at("mEPL").get<double>();
  m.task_score = j.at("mTS").get<double>();
  m.joint_effort = j.at("mJE").get<double>();
  m.episodes = j.at("N").get<int>();
  m.aborted = j.value("aborted", 0);
  if (j.contains("utterance_categories")) {
    for (Category c : kCategories) {
      m.category_share[static_cast<std::size_t>(c)] = j["utterance_categories"].value(std::string(name(c)), 0.0);
    }
  }
  return m;
}

Evaluation evaluate(const PairingSpec& pairing, std::span<const TaskInstance> tasks,
                    std::span<const std::uint64_t> seeds, unsigned workers, bool keep_logs) {
  if (tasks.empty()) throw std::invalid_argument("evaluate: empty task split");
  if (seeds.empty()) throw std::invalid_argument("evaluate: at least one seed required");

  const std::size_t per_seed = tasks.size();
  const std::size_t total = per_seed * seeds.size();
  std::vector<EpisodeRecord> results(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        results[i] = run_episode(pairing, tasks[i % per_seed], seeds[i / per_seed], keep_logs);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  Evaluation ev{pairing.name, tasks.front().size(), {}, {}};
  std::vector<Metrics> per;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    SeedResult sr;
    sr.seed = seeds[s];
    sr.records.assign(std::make_move_iterator(results.begin() + static_cast<std::ptrdiff_t>(s * per_seed)),
                      std::make_move_iterator(results.begin() + static_cast<std::ptrdiff_t>((s + 1) * per_seed)));
    sr.metrics = compute_metrics(sr.records);
    if (sr.metrics.aborted > 0) {
      spdlog::warn("{}: {} aborted episodes excluded for seed {}", pairing.name, sr.metrics.aborted, sr.seed);
    }
    per.push_back(sr.metrics);
    ev.seeds.push_back(std::move(sr));
  }
  ev.metrics = average_metrics(per);
  return ev;
}

Evaluation pool_evaluations(std::string name, std::span<const Evaluation> evaluations) {
  if (evaluations.empty()) throw std::invalid_argument("pool_evaluations: nothing to pool");
  Evaluation pooled{std::move(name), evaluations.front().board_size, {}, {}};
  std::vector<Metrics> runs;
  for (const Evaluation& ev : evaluations) {
    if (ev.board_size != pooled.board_size) throw std::invalid_argument("pool_evaluations: mixed board sizes");
    for (const SeedResult& s : ev.seeds) runs.push_back(s.metrics);
  }
  pooled.metrics = average_metrics(runs);
  return pooled;
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string report_csv(std::span<const Evaluation> evaluations) {
  std::ostringstream out;
  out << "pairing,M,mSR,mEPL,mTS,mJE,N\n";
  for (const Evaluation& ev : evaluations) {
    out << ev.pairing << ',' << ev.board_size << ',' << fixed(ev.metrics.success_rate) << ','
        << fixed(ev.metrics.episode_length) << ',' << fixed(ev.metrics.task_score) << ','
        << fixed(ev.metrics.joint_effort) << ',' << ev.metrics.episodes << '\n';
  }
  return out.str();
}

json record_to_json(const EpisodeRecord& r) {
  json cats = json::object();
  for (Category c : kCategories) cats[std::string(name(c))] = r.categories[static_cast<std::size_t>(c)];
  json j = {{"task_id", r.task_id},
            {"seed", r.seed},
            {"outcome", name(r.outcome)},
            {"T", r.steps},
            {"E_G", r.guide_effort},
            {"E_F", r.follower_effort},
            {"S_Game", r.score.game},
            {"took_empty", r.took_empty},
            {"aborted", r.aborted},
            {"utterance_categories", cats}};
  if (!r.log.empty()) j["log"] = r.log;
  return j;
}

json report_json(std::span<const Evaluation> evaluations, bool per_episode) {
  json out = json::array();
  for (const Evaluation& ev : evaluations) {
    json seeds = json::array();
    for (const SeedResult& s : ev.seeds) {
      json entry = {{"seed", s.seed}, {"metrics", metrics_to_json(s.metrics)}};
      if (per_episode) {
        json episodes = json::array();
        for (const EpisodeRecord& r : s.records) episodes.push_back(record_to_json(r));
        entry["episodes"] = std::move(episodes);
      }
      seeds.push_back(std::move(entry));
    }
    out.push_back({{"pairing", ev.pairing},
                   {"M", ev.board_size},
                   {"metrics", metrics_to_json(ev.metrics)},
                   {"seeds", std::move(seeds)}});
  }
  return out;
}

}  // namespace cogrip
