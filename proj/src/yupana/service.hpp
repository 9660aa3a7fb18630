#pragma once

#include "yupana/arithmetic.hpp"
#include "yupana/engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace yupana::service {

using nlohmann::json;

enum class ModeKind : std::uint8_t { free, guided, atipanakuy };

std::string_view to_string(ModeKind kind);
ModeKind parse_mode_kind(std::string_view text);

struct Mode {
  ModeKind kind = ModeKind::free;
  // Guided sessions (and optionally timed ones) carry an operation whose
  // operands are loaded at creation; target is the expected result.
  std::optional<OperationKind> operation;
  std::vector<Integer> operands;
  std::optional<Integer> target;
  std::string started_at;
  std::string finished_at;
  std::uint64_t move_count = 0;
};

struct Session {
  std::string id;
  BoardConfig config;
  Mode mode;
  BoardState initial;
  BoardState state;
  MoveTrace trace;
  std::uint64_t revision = 0;
  std::string created_at;
  std::string updated_at;
  std::vector<json> events;  // the append-only log, in order

  // Simple, and equal to the target when there is one.
  bool complete() const;
};

struct ListedMatch {
  std::string id;
  Match match;
};

struct AutoOutcome {
  std::size_t moves = 0;
  bool simple = false;
  bool budget_exhausted = false;
};

// Current UTC time, ISO 8601 with milliseconds.
std::string now_utc();

// Opaque id of a match at one board revision.
std::string match_id(const Match& m, std::uint64_t revision);

// 64-bit FNV-1a of the snapshot text, as 16 hex digits.
std::string snapshot_digest(const BoardState& state);

// Builds a session on an empty board. Guided sessions get their operands
// loaded (and, for multiplication, replicated); division is not guided.
Session create_session(std::string id, BoardConfig config, Mode mode, const std::string& at = now_utc());

// Superimposes n with the given sign. Throws OverflowError when n or the new
// board value exceeds capacity.
void load_operand(Session& s, const Integer& n, Sign sign, const std::string& at = now_utc());

// Matches of the current board in listing order; an empty filter means every rule.
std::vector<ListedMatch> list_matches(const Session& s, std::span<const RuleId> filter = {});

// Applies a listed match. Throws StaleMatchError when the id does not belong
// to the current revision.
Match apply_move(Session& s, std::string_view id, const std::string& at = now_utc());

// Applies an explicitly described move. Throws StaleMatchError when the board
// does not support it.
Match apply_explicit(Session& s, const Match& m, const std::string& at = now_utc());

// Runs a strategy for at most `budget` moves (mixed boards go through the
// pairing planner first). A CycleError is logged as an error event, then rethrown.
AutoOutcome auto_run(Session& s, const Strategy& strategy, std::size_t budget, const std::string& at = now_utc());

// The canonical strategy's next move. Throws NoMatchError on simple or
// terminal boards.
ListedMatch hint(const Session& s);

// Rebuilds a session from its event log, checking every recorded digest.
// Throws ParseError on malformed or inconsistent logs.
Session replay(std::span<const json> events);

std::string events_jsonl(const Session& s);
std::vector<json> parse_jsonl(std::string_view text);

json session_json(const Session& s);
json move_json(const Match& m);
Match parse_move(const json& j, const BoardConfig& config);
Mode parse_mode(const json& j);
json mode_json(const Mode& mode);

// Sessions by id, each behind its own mutex. With a log directory every
// session's events are appended to <dir>/<id>.jsonl as they happen.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> log_dir = std::nullopt);

  std::string create(BoardConfig config, Mode mode);

  // Runs f on the session under its lock, then persists new events. Throws
  // NotFoundError for unknown ids.
  template <class F>
  auto with_session(const std::string& id, F&& f) {
    auto entry = find(id);
    std::lock_guard lock(entry->mutex);
    try {
      if constexpr (std::is_void_v<std::invoke_result_t<F, Session&>>) {
        f(entry->session);
        persist(*entry);
      } else {
        auto result = f(entry->session);
        persist(*entry);
        return result;
      }
    } catch (...) {
      // Error events written by the failed call still go to the log.
      try {
        persist(*entry);
      } catch (...) {
      }
      throw;
    }
  }

  std::vector<std::string> ids() const;

  // Loads every *.jsonl log of the directory by replay; returns the count.
  std::size_t restore();

  const std::optional<std::filesystem::path>& log_dir() const noexcept { return log_dir_; }

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
    std::size_t persisted = 0;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void persist(Entry& entry);
  std::string fresh_id();

  std::optional<std::filesystem::path> log_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
};

}  // namespace yupana::service
