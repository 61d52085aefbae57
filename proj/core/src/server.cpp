#include "cogrip/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <spdlog/spdlog.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "cogrip/error.hpp"
#include "cogrip/task_io.hpp"

namespace cogrip {

using nlohmann::json;

namespace {

constexpr std::uint64_t kEpochKey = 0xE90C;

json error_response(std::string_view kind, std::string_view message) {
  return {{"type", "error"}, {"kind", kind}, {"message", message}};
}

}  // namespace

std::string_view name(RemoteRoles r) {
  switch (r) {
    case RemoteRoles::Guide: return "guide";
    case RemoteRoles::Follower: return "follower";
    case RemoteRoles::Both: return "both";
  }
  return "?";
}

std::optional<RemoteRoles> parse_remote_roles(std::string_view text) {
  if (text == "guide") return RemoteRoles::Guide;
  if (text == "follower") return RemoteRoles::Follower;
  if (text == "both") return RemoteRoles::Both;
  return std::nullopt;
}

Session::Session(SessionConfig config) : config_(std::move(config)) {
  if (config_.tasks.empty()) throw ValidationError("session needs at least one task");
  if (config_.mode == GuideMode::Word && !remote_guide()) {
    throw ValidationError("word-level mode needs a remote guide");
  }
}

std::string Session::handle(std::string_view line) {
  json message;
  try {
    message = json::parse(line);
  } catch (const json::parse_error& e) {
    return error_response("malformed", e.what()).dump();
  }
  return handle_message(message).dump();
}

json Session::handle_message(const json& message) {
  if (closed_) return error_response("protocol", "session is closed");
  if (!message.is_object() || !message.contains("type") || !message["type"].is_string()) {
    return error_response("malformed", "message must be an object with a string 'type'");
  }
  const std::string type = message["type"].get<std::string>();
  try {
    if (type == "reset") return reset();
    if (type == "step") return step(message);
    if (type == "close") {
      closed_ = true;
      return {{"type", "closed"}};
    }
    return error_response("malformed", "unknown message type '" + type + "'");
  } catch (const LookupError& e) {
    return error_response("action", e.what());
  } catch (const ProtocolError& e) {
    return error_response("protocol", e.what());
  } catch (const json::exception& e) {
    return error_response("malformed", e.what());
  }
}

json Session::reset() {
  if (epoch_ < 0 || cursor_ >= order_.size()) {
    ++epoch_;
    order_.resize(config_.tasks.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    Rng rng(derive_seed(config_.seed, kEpochKey, static_cast<std::uint64_t>(epoch_)));
    rng.shuffle(std::span<std::size_t>(order_));
    cursor_ = 0;
  }
  const TaskInstance& task = config_.tasks[order_[cursor_++]];
  episode_.emplace(task, config_.mode);
  local_guide_ = std::make_unique<HeuristicGuidePolicy>(config_.guide_threshold);
  local_follower_ = std::make_unique<HeuristicFollowerPolicy>(config_.follower, task.size());
  follower_rng_ = Rng(episode_seed(config_.seed, task.id));
  pending_guide_.reset();
  if (!remote_guide()) prepare_guide_turn();

  json out = {{"type", "reset"},
              {"task_id", task.id},
              {"epoch", epoch_},
              {"t", 0},
              {"awaiting", remote_guide() ? "guide" : "follower"},
              {"observations", observations(remote_guide(), !remote_guide())}};
  if (config_.include_symbolic) out["task"] = task_to_json(task);
  return out;
}

void Session::prepare_guide_turn() {
  pending_guide_ = local_guide_->act(*episode_);
  pending_utterance_ = episode_->utter(*pending_guide_);
}

GuideAction Session::parse_guide_action(const json& value) const {
  if (!value.is_number_integer()) throw LookupError("guide_action must be an integer id");
  const int id = value.get<int>();
  if (config_.mode == GuideMode::Word) return word_from_action_id(id);
  return intent_from_action_id(id);
}

json Session::step(const json& message) {
  if (!episode_) throw ProtocolError("step before reset");
  if (episode_->terminal()) throw ProtocolError("episode is over; send reset");

  const bool has_guide = message.contains("guide_action");
  const bool has_follower = message.contains("follower_action");
  const bool guide_turn = remote_guide() && !pending_guide_;
  if (has_guide == has_follower) throw ProtocolError("a step carries exactly one of guide_action or follower_action");
  if (has_guide && !guide_turn) throw ProtocolError("not awaiting a guide action");
  if (has_follower && guide_turn) throw ProtocolError("awaiting a guide action first");
  if (has_follower && !remote_follower()) throw ProtocolError("the follower is not remote in this session");

  if (has_guide) {
    const GuideAction g = parse_guide_action(message["guide_action"]);
    const Utterance u = episode_->utter(g);
    if (remote_follower()) {
      pending_guide_ = g;
      pending_utterance_ = u;
      return {{"type", "step"},
              {"t", episode_->t()},
              {"reward", 0.0},
              {"terminal", false},
              {"awaiting", "follower"},
              {"info", {{"utterance", u.surface}, {"guide_action", action_name(g)}}},
              {"observations", observations(false, true)}};
    }
    const FollowerAction f = local_follower_->act(*episode_, u, follower_rng_);
    return advance(g, f);
  }

  const json& fv = message["follower_action"];
  if (!fv.is_number_integer()) throw LookupError("follower_action must be an integer id");
  const FollowerAction f = follower_from_action_id(fv.get<int>());
  const GuideAction g = *pending_guide_;
  return advance(g, f);
}

json Session::advance(const GuideAction& guide, FollowerAction follower) {
  episode_->step(guide, follower);
  pending_guide_.reset();
  const bool terminal = episode_->terminal();
  const StepRecord& last = episode_->history().back();

  json out = {{"type", "step"},
              {"t", episode_->t()},
              {"terminal", terminal},
              {"info",
               {{"utterance", last.utterance.surface},
                {"guide_action", action_name(guide)},
                {"follower_action", name(follower)},
                {"E_G", episode_->guide_effort()},
                {"E_F", episode_->follower_effort()}}}};
  if (terminal) {
    const ScoreBreakdown s = episode_->score();
    out["reward"] = s.game;
    out["outcome"] = name(episode_->outcome());
    out["T"] = episode_->t();
    out["took_empty"] = episode_->took_empty();
    out["score"] = {{"time", s.time}, {"effort", s.effort}, {"outcome", s.outcome}, {"game", s.game}};
    out["awaiting"] = nullptr;
    return out;
  }
  out["reward"] = 0.0;
  if (!remote_guide()) prepare_guide_turn();
  out["awaiting"] = remote_guide() ? "guide" : "follower";
  out["observations"] = observations(remote_guide(), !remote_guide());
  return out;
}

json Session::observations(bool guide, bool follower) const {
  json out = json::object();
  if (guide) {
    out["guide"] = observation_to_json(encode_observation(*episode_, Role::Guide), config_.format);
  }
  if (follower) {
    const Utterance* heard = pending_guide_ ? &pending_utterance_ : nullptr;
    out["follower"] = observation_to_json(encode_observation(*episode_, Role::Follower, heard), config_.format);
  }
  return out;
}

void serve_stream(const SessionConfig& config, std::istream& in, std::ostream& out) {
  Session session(config);
  std::string line;
  while (!session.closed() && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << session.handle(line) << '\n' << std::flush;
  }
}

// ---------------------------------------------------------------------------
// TCP
// ---------------------------------------------------------------------------

namespace {

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

// Reads one '\n'-terminated line; false on EOF or error.
bool read_line(int fd, std::string& buffer, std::string& line) {
  for (;;) {
    const auto nl = buffer.find('\n');
    if (nl != std::string::npos) {
      line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      return true;
    }
    char chunk[4096];
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

void serve_connection(const SessionConfig& config, int fd) {
  try {
    Session session(config);
    std::string buffer, line;
    while (!session.closed() && read_line(fd, buffer, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!send_all(fd, session.handle(line) + "\n")) break;
    }
  } catch (const std::exception& e) {
    spdlog::error("connection failed: {}", e.what());
  }
}

}  // namespace

TcpServer::TcpServer(SessionConfig config, std::uint16_t port, std::string host) : config_(std::move(config)) {
  if (config_.tasks.empty()) throw ValidationError("session needs at least one task");
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw ValidationError("invalid IPv4 host '" + host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(listen_fd_, 16) != 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    throw Error("cannot listen on " + host + ":" + std::to_string(port) + ": " + err);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  stop();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::run() {
  std::vector<std::jthread> connections;
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR && !stopping_) continue;
      break;
    }
    if (stopping_) {
      ::close(fd);
      break;
    }
    {
      std::lock_guard lock(clients_mutex_);
      client_fds_.push_back(fd);
    }
    connections.emplace_back([this, fd] {
      serve_connection(config_, fd);
      {
        std::lock_guard lock(clients_mutex_);
        std::erase(client_fds_, fd);
      }
      // Closed only after leaving the list so stop() never touches a reused fd.
      ::close(fd);
    });
  }
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  std::lock_guard lock(clients_mutex_);
  for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
}

TcpClient::TcpClient(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw Error(std::string("socket: ") + std::strerror(errno));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1 ||
      ::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    const std::string err = std::strerror(errno);
    ::close(fd_);
    throw Error("cannot connect to " + host + ":" + std::to_string(port) + ": " + err);
  }
}

TcpClient::~TcpClient() {
  if (fd_ >= 0) ::close(fd_);
}

std::string TcpClient::request(std::string_view line) {
  if (!send_all(fd_, std::string(line) + "\n")) throw AgentDisconnected("send failed");
  std::string reply;
  if (!read_line(fd_, buffer_, reply)) throw AgentDisconnected("server closed the connection");
  return reply;
}

json TcpClient::request_json(const json& message) { return json::parse(request(message.dump())); }

}  // namespace cogrip
