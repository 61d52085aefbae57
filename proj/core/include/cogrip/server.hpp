#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogrip/engine.hpp"
#include "cogrip/follower.hpp"
#include "cogrip/harness.hpp"
#include "cogrip/observation.hpp"
#include "cogrip/taskgen.hpp"

namespace cogrip {

enum class RemoteRoles : std::uint8_t { Guide, Follower, Both };
std::string_view name(RemoteRoles r);
std::optional<RemoteRoles> parse_remote_roles(std::string_view text);

struct SessionConfig {
  std::vector<TaskInstance> tasks;
  RemoteRoles remote = RemoteRoles::Follower;
  GuideMode mode = GuideMode::Intent;
  std::uint64_t seed = kDefaultSeeds[0];
  ArrayFormat format = ArrayFormat::Lists;
  bool include_symbolic = false;  // add the task JSON to reset responses
  // Local heuristics for the role that isn't remote.
  int guide_threshold = 1;
  FollowerConfig follower;
};

// One environment session. Messages are JSON objects, one per line:
//   {"type":"reset"}                        next task of the epoch
//   {"type":"step","guide_action":id}       remote guide
//   {"type":"step","follower_action":id}    remote follower
//   {"type":"close"}
// With both roles remote a step takes one role at a time; every response
// names the role it expects next in "awaiting". Errors come back as
// {"type":"error","kind":...,"message":...} and leave the session usable.
class Session {
 public:
  explicit Session(SessionConfig config);

  std::string handle(std::string_view line);
  nlohmann::json handle_message(const nlohmann::json& message);

  bool closed() const { return closed_; }
  int epoch() const { return epoch_; }

 private:
  nlohmann::json reset();
  nlohmann::json step(const nlohmann::json& message);
  nlohmann::json advance(const GuideAction& guide, FollowerAction follower);
  nlohmann::json observations(bool guide, bool follower) const;
  void prepare_guide_turn();
  GuideAction parse_guide_action(const nlohmann::json& value) const;
  bool remote_guide() const { return config_.remote != RemoteRoles::Follower; }
  bool remote_follower() const { return config_.remote != RemoteRoles::Guide; }

  SessionConfig config_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
  int epoch_ = -1;
  std::optional<Episode> episode_;
  std::unique_ptr<HeuristicGuidePolicy> local_guide_;
  std::unique_ptr<HeuristicFollowerPolicy> local_follower_;
  Rng follower_rng_{0};
  std::optional<GuideAction> pending_guide_;
  Utterance pending_utterance_;
  bool closed_ = false;
};

// Processes lines from `in` until close or EOF.
void serve_stream(const SessionConfig& config, std::istream& in, std::ostream& out);

// Blocking TCP listener, one thread and one Session per connection.
class TcpServer {
 public:
  // port 0 picks a free port, see port().
  TcpServer(SessionConfig config, std::uint16_t port, std::string host = "127.0.0.1");
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  void run();   // returns after stop()
  void stop();

 private:
  SessionConfig config_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex clients_mutex_;
  std::vector<int> client_fds_;
};

// Minimal line client for the TCP transport.
class TcpClient {
 public:
  TcpClient(const std::string& host, std::uint16_t port);
  ~TcpClient();
  TcpClient(const TcpClient&) = delete;
  TcpClient& operator=(const TcpClient&) = delete;

  std::string request(std::string_view line);
  nlohmann::json request_json(const nlohmann::json& message);

 private:
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace cogrip
