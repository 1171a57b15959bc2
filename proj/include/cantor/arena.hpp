#pragma once

// Live sessions and the JSON operations behind the CLI and the HTTP service.
// Every operation maps a request object to a response object and throws
// CantorError on failure; error_json renders the wire form of an error.

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>

#include "cantor/serialization.hpp"

namespace cantor {

enum class SessionStatus { AwaitingHuman, AwaitingEngine, Idle };
std::string_view status_name(SessionStatus s);

struct Session {
  std::string id;
  GameConfig config;
  Side human;
  StrategyOracle engine;
  SetExpr target;
  Json target_spec;  // as requested, echoed back
  History history;
  SessionStatus status = SessionStatus::AwaitingHuman;
};

/// Resolves "middle-thirds" (the chaser's default tree), "rationals" (the
/// standard enumeration of [a0, b0]), "irrationals" (the complement of the
/// ten-interval rational cover) or a target object.
SetExpr resolve_target(const Json& spec, const GameConfig& config);

class Arena {
 public:
  /// With a log path, every create and accepted move is appended as one JSON
  /// line, and existing lines are replayed first.
  explicit Arena(std::optional<std::string> log_path = std::nullopt);

  /// {"config":{"a0","b0"},"human_side":"A"|"B","engine":"<descriptor>","target":...}
  Json create_session(const Json& request);
  Json get_session(const std::string& id) const;
  /// {"value":"p/q"}: applies the human move and the engine's reply together.
  Json post_move(const std::string& id, const Json& body);
  /// Interval overlay of the session target's tree atoms at the given depth.
  Json target_tree(const std::string& id, std::size_t depth) const;

  std::size_t session_count() const;

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    mutable std::mutex mu;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  Json create_locked(const Json& request, bool log);
  Json move_locked(Slot& slot, const Rat& value, bool log);
  void append_log(const Json& line);

  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_id_ = 1;
  std::optional<std::string> log_path_;
  std::mutex log_mu_;
};

Json session_view(const Session& s);

/// {"side","strategy","depth","config"?} -> extraction object plus "report".
Json extract_op(const Json& request);
/// {"target":...,"depth"?,"config"?} (or a bare target) -> classification.
Json classify_op(const Json& request);
/// {"strategy","target_point","depth","config"?} -> trace.
Json counterplay_op(const Json& request);
/// Tree or extraction object -> {"clean","report","replay_failures"?}.
Json verify_op(const Json& artifact, std::size_t replay_samples = 20);

/// {"error": name, "message": text, "bound"?: {"lo","hi"}}
Json error_json(const CantorError& e);
/// HTTP status for an error code.
int http_status(Errc c);

/// The JSON API over HTTP.
class HttpService {
 public:
  explicit HttpService(Arena& arena);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds (port 0 picks a free one) and serves on a background thread.
  /// Returns the bound port.
  int start(const std::string& host, int port);
  /// Serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cantor
