#include "cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cogrip/engine.hpp"
#include "cogrip/error.hpp"
#include "cogrip/harness.hpp"
#include "cogrip/render.hpp"
#include "cogrip/server.hpp"
#include "cogrip/task_io.hpp"
#include "cogrip/taskgen.hpp"

namespace cogrip::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(std::span<const std::uint8_t> data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string file_sha256(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LookupError("cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string text_sha256(std::string_view text) {
  return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// What a finished run reports for its manifest.
struct RunRecord {
  std::vector<std::string> argv;  // canonical, without --manifest
  json config;
  std::vector<std::uint64_t> seeds;
  std::vector<fs::path> outputs;
  fs::path default_manifest;
};

struct ManifestOptions {
  std::string path;
  bool disabled = false;
};

void add_manifest_options(CLI::App* sub, ManifestOptions& o, const std::string& default_path) {
  sub->add_option("--manifest", o.path, "Manifest path (default " + default_path + ")");
  sub->add_flag("--no-manifest", o.disabled, "Skip the manifest");
}

// Manifests carry the canonical argument vector and checksums of every output
// file and of stdout. They hold no timestamps so a rerun reproduces them byte
// for byte.
void write_manifest(RunRecord run, const ManifestOptions& o, const std::string* stdout_text) {
  if (o.disabled) return;
  const fs::path path = o.path.empty() ? run.default_manifest : fs::path(o.path);
  run.argv.insert(run.argv.end(), {"--manifest", path.string()});
  json files = json::array();
  for (const fs::path& p : run.outputs) files.push_back({{"path", p.string()}, {"sha256", file_sha256(p)}});
  json manifest = {{"subcommand", run.argv.front()},
                   {"argv", run.argv},
                   {"config", run.config},
                   {"seeds", run.seeds},
                   {"outputs", files}};
  if (stdout_text) manifest["stdout_sha256"] = text_sha256(*stdout_text);
  write_text(path, manifest.dump(2) + "\n");
  spdlog::info("manifest written to {}", path.string());
}

struct PolicyOptions {
  std::string guide = "hig";
  std::vector<int> thresholds{1};
  std::string follower = "hif";
  double phi = 0.99;
  double l_min = 0.5;
};

void add_policy_options(CLI::App* sub, PolicyOptions& o) {
  sub->add_option("--guide", o.guide, "Guide policy")->check(CLI::IsMember({"hig"}))->capture_default_str();
  sub->add_option("--R", o.thresholds, "Guide threshold R (repeatable)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--follower", o.follower, "Follower policy")->check(CLI::IsMember({"hif"}))->capture_default_str();
  sub->add_option("--phi", o.phi, "Follower confidence decay")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sub->add_option("--lmin", o.l_min, "Follower confidence floor")->check(CLI::Range(0.0, 1.0))->capture_default_str();
}

PairingSpec pairing_for(const PolicyOptions& o, int threshold) {
  PairingSpec p;
  p.name = "HIF-HIG(R=" + std::to_string(threshold) + ")";
  p.guide_threshold = threshold;
  p.follower = {o.phi, o.l_min};
  return p;
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<std::string> policy_argv(const PolicyOptions& o) {
  std::vector<std::string> a = {"--guide", o.guide, "--follower", o.follower, "--phi", fmt_double(o.phi), "--lmin",
                                fmt_double(o.l_min)};
  for (int r : o.thresholds) {
    a.push_back("--R");
    a.push_back(std::to_string(r));
  }
  return a;
}

const TaskInstance& find_task(const std::vector<TaskInstance>& tasks, int id) {
  for (const TaskInstance& t : tasks) {
    if (t.id == id) return t;
  }
  throw LookupError("task " + std::to_string(id) + " is not in the split");
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::vector<int> sizes{12, 21, 27};
  std::uint64_t seed = kDefaultSeeds[0];
  std::string out_dir = ".";
};

RunRecord run_gen(const GenOptions& o, std::ostream& out) {
  const SplitAssignment pieces = split_pieces(o.seed);
  fs::create_directories(o.out_dir);
  std::vector<fs::path> outputs;
  for (int m : o.sizes) {
    for (const auto& [name, set] : {std::pair{"train", &pieces.train}, {"val", &pieces.val}, {"test", &pieces.test}}) {
      const TaskSplit split = build_split(name, *set, m, o.seed);
      const fs::path path = fs::path(o.out_dir) / split_file_name(name, m);
      write_split(path, split);
      outputs.push_back(path);
      out << path.string() << ": " << split.tasks.size() << " tasks\n";
    }
  }
  std::vector<std::string> argv = {"gen", "--seed", std::to_string(o.seed), "--out", o.out_dir};
  for (int m : o.sizes) {
    argv.push_back("--size");
    argv.push_back(std::to_string(m));
  }
  return {argv, {{"sizes", o.sizes}, {"out", o.out_dir}}, {o.seed}, outputs, fs::path(o.out_dir) / "manifest_gen.json"};
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOptions {
  PolicyOptions policy;
  std::string split;
  int seed_count = 3;
  std::vector<std::uint64_t> seeds;
  unsigned workers = 0;
  std::string csv;
  std::string json_path;
  bool pooled = false;
  bool episodes = false;
};

std::vector<std::uint64_t> resolve_seeds(const EvalOptions& o) {
  if (!o.seeds.empty()) return o.seeds;
  if (o.seed_count < 1) throw UsageError("--seeds must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < o.seed_count; ++i) {
    seeds.push_back(i < static_cast<int>(kDefaultSeeds.size()) ? kDefaultSeeds[static_cast<std::size_t>(i)]
                                                              : derive_seed(kDefaultSeeds[0], static_cast<std::uint64_t>(i)));
  }
  return seeds;
}

RunRecord run_eval(const EvalOptions& o, std::ostream& out) {
  const std::vector<TaskInstance> tasks = read_split(o.split);
  if (tasks.empty()) throw ValidationError("split " + o.split + " is empty");
  const std::vector<std::uint64_t> seeds = resolve_seeds(o);

  std::vector<Evaluation> evals;
  for (int r : o.policy.thresholds) {
    evals.push_back(evaluate(pairing_for(o.policy, r), tasks, seeds, o.workers, o.episodes));
    spdlog::info("{}: mSR {:.4f} mEPL {:.4f}", evals.back().pairing, evals.back().metrics.success_rate,
                 evals.back().metrics.episode_length);
  }
  if (o.pooled && evals.size() > 1) evals.push_back(pool_evaluations("HIF-HIG", evals));

  const std::string csv = report_csv(evals);
  out << csv;
  std::vector<fs::path> outputs;
  if (!o.csv.empty()) {
    write_text(o.csv, csv);
    outputs.emplace_back(o.csv);
  }
  if (!o.json_path.empty()) {
    write_text(o.json_path, report_json(evals, true).dump(2) + "\n");
    outputs.emplace_back(o.json_path);
  }

  std::vector<std::string> argv = {"eval", "--split", o.split, "--workers", std::to_string(o.workers)};
  const auto policy = policy_argv(o.policy);
  argv.insert(argv.end(), policy.begin(), policy.end());
  for (std::uint64_t s : seeds) {
    argv.push_back("--seed");
    argv.push_back(std::to_string(s));
  }
  if (!o.csv.empty()) argv.insert(argv.end(), {"--csv", o.csv});
  if (!o.json_path.empty()) argv.insert(argv.end(), {"--json", o.json_path});
  if (o.pooled) argv.push_back("--pooled");
  if (o.episodes) argv.push_back("--episodes");
  const json config = {{"split", o.split},
                       {"split_sha256", file_sha256(o.split)},
                       {"R", o.policy.thresholds},
                       {"phi", o.policy.phi},
                       {"lmin", o.policy.l_min}};
  const fs::path manifest = outputs.empty() ? fs::path("cogrip_eval.manifest.json")
                                            : fs::path(outputs.front().string() + ".manifest.json");
  return {argv, config, seeds, outputs, manifest};
}

// ---------------------------------------------------------------------------
// play
// ---------------------------------------------------------------------------

struct PlayOptions {
  PolicyOptions policy;
  std::string split;
  int task = 1;
  std::uint64_t seed = kDefaultSeeds[0];
  std::string log;
  bool board = false;
};

RunRecord run_play(const PlayOptions& o, std::ostream& out) {
  const std::vector<TaskInstance> tasks = read_split(o.split);
  const TaskInstance& task = find_task(tasks, o.task);
  const PairingSpec pairing = pairing_for(o.policy, o.policy.thresholds.front());
  const EpisodeRecord rec = run_episode(pairing, task, o.seed, true);

  Episode ep(task);
  out << "task " << task.id << "  M=" << task.size() << "  T_max=" << task.t_max << "  target: " << ep.target_description()
      << "  pairing: " << pairing.name << "\n";
  if (o.board) out << render_ascii(task.board, ep.gripper());
  for (std::size_t i = 0; i + 1 < rec.log.size(); ++i) {
    const json step = json::parse(rec.log[i]);
    out << "t=" << std::left << std::setw(3) << step["t"].get<int>() << " guide: " << std::left << std::setw(40)
        << ("\"" + step["utterance"].get<std::string>() + "\"") << " follower: " << std::setw(6)
        << step["follower_action"].get<std::string>() << " gripper (" << step["gripper"][0].get<int>() << ","
        << step["gripper"][1].get<int>() << ")\n";
  }
  if (o.board) {
    const Episode final_state = replay(task, parse_episode_log(rec.log, GuideMode::Intent));
    out << render_ascii(task.board, final_state.gripper());
  }
  out << "outcome: " << name(rec.outcome) << "  T=" << rec.steps << "  E_G=" << rec.guide_effort
      << "  E_F=" << rec.follower_effort << "  S_Game=" << std::setprecision(6) << rec.score.game << "\n";
  if (!o.log.empty()) {
    std::string text;
    for (const std::string& line : rec.log) text += line + "\n";
    write_text(o.log, text);
  }
  std::vector<std::string> argv = {"play", "--split", o.split, "--task", std::to_string(o.task), "--seed",
                                   std::to_string(o.seed)};
  const auto policy = policy_argv(o.policy);
  argv.insert(argv.end(), policy.begin(), policy.end());
  if (!o.log.empty()) argv.insert(argv.end(), {"--log", o.log});
  if (o.board) argv.push_back("--board");
  RunRecord run{argv, {{"split", o.split}, {"split_sha256", file_sha256(o.split)}, {"task", o.task}}, {o.seed}, {}, {}};
  if (!o.log.empty()) run.outputs.emplace_back(o.log);
  run.default_manifest = o.log.empty() ? fs::path("cogrip_play.manifest.json") : fs::path(o.log + ".manifest.json");
  return run;
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------

struct RenderOptions {
  std::string split;
  int task = 1;
  std::string log;
  std::string format = "ascii";
  std::string out;
  int tile = kTilePixels;
};

RunRecord run_render(const RenderOptions& o, std::ostream& out) {
  const std::vector<TaskInstance> tasks = read_split(o.split);
  const TaskInstance& task = find_task(tasks, o.task);

  std::vector<Gripper> frames = {Episode(task).gripper()};
  if (!o.log.empty()) {
    std::ifstream in(o.log);
    if (!in) throw LookupError("cannot read " + o.log);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) lines.push_back(line);
    }
    const LoggedActions actions = parse_episode_log(lines, GuideMode::Intent);
    Episode ep(task);
    for (std::size_t i = 0; i < actions.guide.size() && !ep.terminal(); ++i) {
      ep.step(actions.guide[i], actions.follower[i]);
      frames.push_back(ep.gripper());
    }
  }

  std::vector<std::string> argv = {"render", "--split", o.split, "--task", std::to_string(o.task), "--format",
                                   o.format, "--tile", std::to_string(o.tile)};
  if (!o.log.empty()) argv.insert(argv.end(), {"--log", o.log});
  if (!o.out.empty()) argv.insert(argv.end(), {"--out", o.out});
  RunRecord run{argv, {{"split", o.split}, {"split_sha256", file_sha256(o.split)}, {"task", o.task}}, {}, {}, {}};
  run.default_manifest = o.out.empty() ? fs::path("cogrip_render.manifest.json") : fs::path(o.out + ".manifest.json");

  if (o.format == "ascii") {
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (frames.size() > 1) out << "frame " << i << "\n";
      out << render_ascii(task.board, frames[i]);
    }
    return run;
  }
  if (o.out.empty()) throw UsageError("--out is required for png output");
  if (frames.size() == 1) {
    write_png(render_raster(task.board, frames[0], o.tile), o.out);
    run.outputs.emplace_back(o.out);
    out << o.out << "\n";
    return run;
  }
  fs::create_directories(o.out);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::ostringstream file;
    file << "frame_" << std::setw(3) << std::setfill('0') << i << ".png";
    const fs::path path = fs::path(o.out) / file.str();
    write_png(render_raster(task.board, frames[i], o.tile), path);
    run.outputs.push_back(path);
  }
  out << frames.size() << " frames in " << o.out << "\n";
  return run;
}

// ---------------------------------------------------------------------------
// serve
// ---------------------------------------------------------------------------

struct ServeOptions {
  PolicyOptions policy;
  std::string split;
  std::string remote = "follower";
  std::string mode = "intent";
  std::uint64_t seed = kDefaultSeeds[0];
  std::string format = "lists";
  bool include_symbolic = false;
  std::string transport = "stdio";
  std::string host = "127.0.0.1";
  std::uint16_t port = 7171;
};

int run_serve(const ServeOptions& o, const ManifestOptions& manifest, std::ostream& out) {
  SessionConfig config;
  config.tasks = read_split(o.split);
  config.remote = *parse_remote_roles(o.remote);
  config.mode = o.mode == "word" ? GuideMode::Word : GuideMode::Intent;
  config.seed = o.seed;
  config.format = *parse_array_format(o.format);
  config.include_symbolic = o.include_symbolic;
  config.guide_threshold = o.policy.thresholds.front();
  config.follower = {o.policy.phi, o.policy.l_min};

  // Interactive, so the manifest records the configuration only; a session
  // replays exactly given the same client messages.
  std::vector<std::string> argv = {"serve", "--split", o.split, "--remote", o.remote, "--mode", o.mode, "--seed",
                                   std::to_string(o.seed), "--format", o.format, "--transport", o.transport,
                                   "--host", o.host, "--port", std::to_string(o.port)};
  const auto policy = policy_argv(o.policy);
  argv.insert(argv.end(), policy.begin(), policy.end());
  if (o.include_symbolic) argv.push_back("--include-symbolic");
  write_manifest({argv, {{"split", o.split}, {"split_sha256", file_sha256(o.split)}}, {o.seed}, {},
                  "cogrip_serve.manifest.json"},
                 manifest, nullptr);

  if (o.transport == "stdio") {
    serve_stream(config, std::cin, out);
    return 0;
  }
  TcpServer server(std::move(config), o.port, o.host);
  spdlog::info("listening on {}:{}", o.host, server.port());
  server.run();
  return 0;
}

// ---------------------------------------------------------------------------
// rerun
// ---------------------------------------------------------------------------

int run_rerun(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw LookupError("cannot read " + manifest_path);
  const json manifest = json::parse(in);
  const auto argv = manifest.at("argv").get<std::vector<std::string>>();
  if (argv.empty()) throw ValidationError("manifest has an empty argv");
  if (argv.front() == "serve") throw ValidationError("serve runs are interactive; start them with the manifest argv");
  std::ostringstream captured;
  const int status = run(argv, captured, err);
  if (status != 0) return status;

  int mismatches = 0;
  if (manifest.contains("stdout_sha256")) {
    const bool same = text_sha256(captured.str()) == manifest["stdout_sha256"].get<std::string>();
    mismatches += same ? 0 : 1;
    out << (same ? "identical " : "DIFFERENT ") << "<stdout>\n";
  }
  for (const json& f : manifest.at("outputs")) {
    const std::string path = f.at("path").get<std::string>();
    const std::string expected = f.at("sha256").get<std::string>();
    const std::string actual = file_sha256(path);
    const bool same = actual == expected;
    mismatches += same ? 0 : 1;
    out << (same ? "identical " : "DIFFERENT ") << path << "\n";
  }
  return mismatches == 0 ? 0 : 1;
}

void configure_logging(const std::string& level) {
  auto logger = spdlog::get("cogrip");
  if (!logger) {
    logger = spdlog::stderr_color_mt("cogrip");
    spdlog::set_default_logger(logger);
  }
  std::string chosen = level;
  if (chosen.empty()) {
    if (const char* env = std::getenv("COGRIP_LOG")) chosen = env;
  }
  spdlog::set_level(chosen.empty() ? spdlog::level::warn : spdlog::level::from_str(chosen));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CoGRIP reference game: task generation, heuristic evaluation, env server", "cogrip"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file ([subcommand] sections)");
  std::string log_level;
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off (default: $COGRIP_LOG or warn)")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write train/val/test splits");
  gen_cmd->add_option("--size", gen.sizes, "Board sizes")->check(CLI::IsMember({12, 21, 27}))->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generation seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();
  ManifestOptions manifest;
  add_manifest_options(gen_cmd, manifest, "<out>/manifest_gen.json");

  EvalOptions ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a pairing on a split");
  add_policy_options(eval_cmd, ev.policy);
  eval_cmd->add_option("--split", ev.split, "Split file (JSONL)")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--seeds", ev.seed_count, "Number of default seeds (49184, 92999, 98506, ...)")
      ->capture_default_str();
  eval_cmd->add_option("--seed", ev.seeds, "Explicit seeds (repeatable, overrides --seeds)");
  eval_cmd->add_option("--workers", ev.workers, "Worker threads (0 = all cores)")->capture_default_str();
  eval_cmd->add_option("--csv", ev.csv, "Write the CSV report here");
  eval_cmd->add_option("--json", ev.json_path, "Write the JSON report here");
  add_manifest_options(eval_cmd, manifest, "<first report>.manifest.json, else ./cogrip_eval.manifest.json");
  eval_cmd->add_flag("--pooled", ev.pooled, "Add a row pooling all R values");
  eval_cmd->add_flag("--episodes", ev.episodes, "Keep per-step logs in the JSON report");

  PlayOptions play;
  auto* play_cmd = app.add_subcommand("play", "Run one task and print the transcript");
  add_policy_options(play_cmd, play.policy);
  play_cmd->add_option("--split", play.split, "Split file (JSONL)")->required()->check(CLI::ExistingFile);
  play_cmd->add_option("--task", play.task, "Task id")->required();
  play_cmd->add_option("--seed", play.seed, "Follower seed")->capture_default_str();
  play_cmd->add_option("--log", play.log, "Write the episode log (JSONL) here");
  play_cmd->add_flag("--board", play.board, "Print the board before and after");
  add_manifest_options(play_cmd, manifest, "<log>.manifest.json, else ./cogrip_play.manifest.json");

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Render a task or an episode log");
  render_cmd->add_option("--split", render.split, "Split file (JSONL)")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--task", render.task, "Task id")->required();
  render_cmd->add_option("--log", render.log, "Episode log to replay frame by frame")->check(CLI::ExistingFile);
  render_cmd->add_option("--format", render.format, "ascii or png")
      ->check(CLI::IsMember({"ascii", "png"}))
      ->capture_default_str();
  render_cmd->add_option("--out", render.out, "PNG file, or frame directory with --log");
  render_cmd->add_option("--tile", render.tile, "Pixels per tile")->check(CLI::Range(2, 128))->capture_default_str();
  add_manifest_options(render_cmd, manifest, "<out>.manifest.json, else ./cogrip_render.manifest.json");

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the environment protocol");
  add_policy_options(serve_cmd, serve.policy);
  serve_cmd->add_option("--split", serve.split, "Split file (JSONL)")->required()->check(CLI::ExistingFile);
  serve_cmd->add_option("--remote", serve.remote, "Remote role(s)")
      ->check(CLI::IsMember({"guide", "follower", "both"}))
      ->capture_default_str();
  serve_cmd->add_option("--mode", serve.mode, "Guide action mode")
      ->check(CLI::IsMember({"intent", "word"}))
      ->capture_default_str();
  serve_cmd->add_option("--seed", serve.seed, "Session seed")->capture_default_str();
  serve_cmd->add_option("--format", serve.format, "Array encoding")
      ->check(CLI::IsMember({"lists", "base64"}))
      ->capture_default_str();
  serve_cmd->add_flag("--include-symbolic", serve.include_symbolic, "Send the task JSON with each reset");
  serve_cmd->add_option("--transport", serve.transport, "stdio or tcp")
      ->check(CLI::IsMember({"stdio", "tcp"}))
      ->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "TCP bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "TCP port (0 = any free port)")->capture_default_str();
  add_manifest_options(serve_cmd, manifest, "./cogrip_serve.manifest.json");

  std::string manifest_path;
  auto* rerun_cmd = app.add_subcommand("rerun", "Repeat a run from its manifest and compare outputs");
  rerun_cmd->add_option("manifest", manifest_path, "Manifest file")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  configure_logging(log_level);
  try {
    // Runs print into a buffer first so the manifest can checksum stdout.
    auto finish = [&](auto&& command) {
      std::ostringstream captured;
      const RunRecord record = command(captured);
      const std::string text = captured.str();
      out << text;
      write_manifest(record, manifest, &text);
      return 0;
    };
    if (*gen_cmd) return finish([&](std::ostream& o) { return run_gen(gen, o); });
    if (*eval_cmd) return finish([&](std::ostream& o) { return run_eval(ev, o); });
    if (*play_cmd) return finish([&](std::ostream& o) { return run_play(play, o); });
    if (*render_cmd) return finish([&](std::ostream& o) { return run_render(render, o); });
    if (*serve_cmd) return run_serve(serve, manifest, out);
    if (*rerun_cmd) return run_rerun(manifest_path, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cogrip::cli
