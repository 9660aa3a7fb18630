#include "yupana/service.hpp"

#include "yupana/errors.hpp"
#include "yupana/json_codec.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace yupana::service {

using yupana::to_string;

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string sign_text(Sign s) { return std::string(1, sign_char(s)); }

void append_event(Session& s, json event, const std::string& at) {
  event["seq"] = s.events.size();
  event["at"] = at;
  event["revision"] = s.revision;
  event["digest"] = snapshot_digest(s.state);
  s.events.push_back(std::move(event));
  s.updated_at = at;
}

Session start_session(std::string id, BoardConfig config, Mode mode, const std::string& at) {
  config.validate();
  Session s;
  s.id = std::move(id);
  s.config = config;
  s.initial = BoardState(config);
  s.state = s.initial;
  s.trace = MoveTrace{{}, s.state};
  s.created_at = at;
  s.updated_at = at;
  if (mode.kind == ModeKind::atipanakuy && mode.started_at.empty()) mode.started_at = at;
  s.mode = std::move(mode);
  return s;
}

void do_load(Session& s, const Integer& n, Sign sign) {
  if (n < 0) throw DomainError("operand must be non-negative (got " + to_string(n) + ")");
  const BoardState next = encode_number(n, sign, s.state);
  const Integer value = board_value(next);
  if (abs(value) > capacity(s.config))
    throw OverflowError("loading " + to_string(n) + " takes the board value to " + to_string(value) +
                        ", beyond the capacity of a " + std::to_string(s.config.rows) + "-row board");
  s.state = next;
  s.trace.terminal = s.state;
  ++s.revision;
}

// Every positive token replicated by `factor` (row ascending, weight descending).
void do_replicate(Session& s, const Integer& factor) {
  if (factor < 0) throw DomainError("replication factor must be non-negative");
  if (factor == 0) {
    s.state = BoardState(s.config);
  } else {
    std::vector<SquareAddr> tokens;
    for (int r = 0; r < s.state.rows(); ++r)
      for (int w : kWeights)
        for (std::uint64_t i = 0; i < s.state.count({w, r}, Sign::positive); ++i) tokens.push_back({w, r});
    BoardState next = s.state;
    for (const auto& t : tokens) next = abbreviated_replicate(next, t, factor);
    if (abs(board_value(next)) > capacity(s.config))
      throw OverflowError("replication by " + to_string(factor) + " exceeds the board capacity");
    s.state = std::move(next);
  }
  s.trace.terminal = s.state;
  ++s.revision;
}

void do_move(Session& s, const Match& m, const std::string& at) {
  if (!is_valid(s.state, m)) throw StaleMatchError(describe(m) + " does not hold on the current board");
  BoardState next = apply_match(s.state, m);
  s.trace.record(m, s.state, next);
  s.state = std::move(next);
  ++s.revision;
  ++s.mode.move_count;
  if (s.mode.kind == ModeKind::atipanakuy && s.mode.finished_at.empty() && s.complete()) s.mode.finished_at = at;
}

}  // namespace

std::string_view to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::free: return "free";
    case ModeKind::guided: return "guided";
    case ModeKind::atipanakuy: return "atipanakuy";
  }
  return "?";
}

ModeKind parse_mode_kind(std::string_view text) {
  if (text == "free") return ModeKind::free;
  if (text == "guided") return ModeKind::guided;
  if (text == "atipanakuy") return ModeKind::atipanakuy;
  throw ParseError("unknown session mode '" + std::string(text) + "'");
}

bool Session::complete() const {
  if (!is_simple(state)) return false;
  return !mode.target || decode_simple(state) == *mode.target;
}

std::string now_utc() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string match_id(const Match& m, std::uint64_t revision) {
  const std::string key = std::string(rule_key(m.rule)) + "|" + sign_char(m.sign) + "|" + std::to_string(m.anchor.weight) +
                          "|" + std::to_string(m.anchor.row) + "|" + std::to_string(m.k) + "|" + std::to_string(m.shift) +
                          "|" + std::to_string(revision);
  return hex16(fnv1a(key));
}

std::string snapshot_digest(const BoardState& state) { return hex16(fnv1a(to_snapshot(state))); }

Session create_session(std::string id, BoardConfig config, Mode mode, const std::string& at) {
  if (mode.kind == ModeKind::guided && !mode.operation) throw DomainError("guided sessions need an operation");
  if (mode.operation) {
    if (*mode.operation == OperationKind::div) throw DomainError("guided division is not supported; use the div procedure");
    if (mode.operands.size() < 2) throw DomainError("an operation needs at least two operands");
    if (*mode.operation == OperationKind::mul && mode.operands.size() != 2)
      throw DomainError("multiplication takes exactly two operands");
    for (const auto& v : mode.operands)
      if (v < 0) throw DomainError("operands must be non-negative (got " + to_string(v) + ")");
    Integer target = mode.operands.front();
    for (std::size_t i = 1; i < mode.operands.size(); ++i) {
      const auto& v = mode.operands[i];
      if (*mode.operation == OperationKind::add) target += v;
      if (*mode.operation == OperationKind::sub) target -= v;
      if (*mode.operation == OperationKind::mul) target *= v;
    }
    config.validate();
    if (abs(target) > capacity(config))
      throw OverflowError("result " + to_string(target) + " exceeds the capacity of a " + std::to_string(config.rows) + "-row board");
    mode.target = target;
  }

  Session s = start_session(std::move(id), config, std::move(mode), at);
  append_event(s, {{"type", "create"}, {"session", s.id}, {"rows", s.config.rows}, {"mode", mode_json(s.mode)}}, at);
  if (!s.mode.operation) return s;

  const auto& ops = s.mode.operands;
  switch (*s.mode.operation) {
    case OperationKind::add:
      for (const auto& v : ops) load_operand(s, v, Sign::positive, at);
      break;
    case OperationKind::sub:
      load_operand(s, ops.front(), Sign::positive, at);
      for (std::size_t i = 1; i < ops.size(); ++i) load_operand(s, ops[i], Sign::negative, at);
      break;
    case OperationKind::mul:
      load_operand(s, ops[0], Sign::positive, at);
      do_replicate(s, ops[1]);
      append_event(s, {{"type", "replicate"}, {"factor", to_string(ops[1])}}, at);
      break;
    case OperationKind::div: break;
  }
  return s;
}

void load_operand(Session& s, const Integer& n, Sign sign, const std::string& at) {
  do_load(s, n, sign);
  append_event(s, {{"type", "load"}, {"value", to_string(n)}, {"sign", sign_text(sign)}}, at);
}

std::vector<ListedMatch> list_matches(const Session& s, std::span<const RuleId> filter) {
  const auto all = all_rule_ids();
  auto matches = match_rules(filter.empty() ? std::span<const RuleId>(all) : filter, s.state);
  sort_for_listing(matches);
  std::vector<ListedMatch> out;
  out.reserve(matches.size());
  for (auto& m : matches) {
    std::string id = match_id(m, s.revision);
    out.push_back({std::move(id), std::move(m)});
  }
  return out;
}

Match apply_move(Session& s, std::string_view id, const std::string& at) {
  for (auto& lm : list_matches(s)) {
    if (lm.id != id) continue;
    do_move(s, lm.match, at);
    append_event(s, {{"type", "move"}, {"match_id", lm.id}, {"move", move_json(lm.match)}}, at);
    return lm.match;
  }
  throw StaleMatchError("match " + std::string(id) + " is not listed at revision " + std::to_string(s.revision));
}

Match apply_explicit(Session& s, const Match& m, const std::string& at) {
  do_move(s, m, at);
  append_event(s, {{"type", "move"}, {"move", move_json(m)}}, at);
  return m;
}

AutoOutcome auto_run(Session& s, const Strategy& strategy, std::size_t budget, const std::string& at) {
  std::mt19937_64 rng(strategy.seed);
  std::unordered_set<BoardState, BoardStateHash> visited{s.state};
  AutoOutcome outcome;
  json moves = json::array();
  auto log = [&] {
    append_event(s,
                 {{"type", "auto"},
                  {"strategy", strategy.name()},
                  {"budget", budget},
                  {"moves", moves},
                  {"budget_exhausted", outcome.budget_exhausted}},
                 at);
  };

  while (!is_simple(s.state)) {
    if (outcome.moves == budget) {
      outcome.budget_exhausted = true;
      break;
    }
    const auto m = next_move(s.state, strategy, rng);
    if (!m) break;
    do_move(s, *m, at);
    moves.push_back(move_json(*m));
    ++outcome.moves;
    if (!visited.insert(s.state).second) {
      log();
      const std::string message = "strategy " + strategy.name() + " revisited a board after " + std::to_string(outcome.moves) + " moves";
      append_event(s, {{"type", "error"}, {"error", "cycle"}, {"message", message}}, at);
      throw CycleError(message);
    }
  }
  outcome.simple = is_simple(s.state);
  log();
  return outcome;
}

ListedMatch hint(const Session& s) {
  if (is_simple(s.state)) throw NoMatchError("the board is already simple");
  std::mt19937_64 rng(0);
  const auto m = next_move(s.state, Strategy::canonical(), rng);
  if (!m) throw NoMatchError("no move applies to the current board");
  return {match_id(*m, s.revision), *m};
}

Session replay(std::span<const json> events) {
  if (events.empty()) throw ParseError("event log is empty");
  Session s;
  try {
    const json& first = events.front();
    if (first.at("type") != "create") throw ParseError("event log must start with a create event");
    Mode mode = parse_mode(first.at("mode"));
    s = start_session(first.at("session").get<std::string>(), BoardConfig{first.at("rows").get<int>()}, mode,
                      first.at("at").get<std::string>());
    s.mode = std::move(mode);
    for (const auto& e : events) {
      const std::string type = e.at("type").get<std::string>();
      const std::string at = e.at("at").get<std::string>();
      if (e.at("seq").get<std::size_t>() != s.events.size())
        throw ParseError("event " + std::to_string(s.events.size()) + " is out of sequence");
      if (type == "create") {
        if (!s.events.empty()) throw ParseError("second create event");
      } else if (type == "load") {
        do_load(s, parse_integer(e.at("value").get<std::string>()), parse_sign(e.at("sign").get<std::string>()));
      } else if (type == "replicate") {
        do_replicate(s, parse_integer(e.at("factor").get<std::string>()));
      } else if (type == "move") {
        do_move(s, parse_move(e.at("move"), s.config), at);
      } else if (type == "auto") {
        for (const auto& m : e.at("moves")) do_move(s, parse_move(m, s.config), at);
      } else if (type != "error") {
        throw ParseError("unknown event type '" + type + "'");
      }
      if (e.at("revision").get<std::uint64_t>() != s.revision || e.at("digest").get<std::string>() != snapshot_digest(s.state))
        throw ParseError("event " + std::to_string(s.events.size()) + " (" + type + ") does not reproduce its recorded board");
      s.events.push_back(e);
      s.updated_at = at;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("event log: ") + e.what());
  } catch (const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ParseError(std::string("event log: ") + e.what());
  }
  return s;
}

std::string events_jsonl(const Session& s) {
  std::string out;
  for (const auto& e : s.events) out += e.dump() + "\n";
  return out;
}

std::vector<json> parse_jsonl(std::string_view text) {
  std::vector<json> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError("event log line " + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  return out;
}

json mode_json(const Mode& mode) {
  json out{{"kind", std::string(to_string(mode.kind))}, {"move_count", mode.move_count}};
  if (mode.operation) {
    out["operation"] = std::string(to_string(*mode.operation));
    json ops = json::array();
    for (const auto& v : mode.operands) ops.push_back(to_string(v));
    out["operands"] = std::move(ops);
  }
  if (mode.target) out["target"] = to_string(*mode.target);
  if (!mode.started_at.empty()) out["started_at"] = mode.started_at;
  if (!mode.finished_at.empty()) out["finished_at"] = mode.finished_at;
  return out;
}

Mode parse_mode(const json& j) {
  Mode mode;
  if (j.is_string()) {
    mode.kind = parse_mode_kind(j.get<std::string>());
    return mode;
  }
  if (!j.is_object()) throw ParseError("mode must be a string or an object");
  try {
    mode.kind = parse_mode_kind(j.value("kind", std::string("free")));
    if (j.contains("operation") && !j["operation"].is_null()) {
      const std::string op = j["operation"].get<std::string>();
      if (op == "add") mode.operation = OperationKind::add;
      else if (op == "sub") mode.operation = OperationKind::sub;
      else if (op == "mul") mode.operation = OperationKind::mul;
      else if (op == "div") mode.operation = OperationKind::div;
      else throw ParseError("unknown operation '" + op + "'");
    }
    if (j.contains("operands"))
      for (const auto& v : j["operands"]) mode.operands.push_back(codec::parse_integer_field(v));
    if (j.contains("target")) mode.target = codec::parse_integer_field(j["target"]);
    mode.started_at = j.value("started_at", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mode: ") + e.what());
  }
  return mode;
}

json move_json(const Match& m) {
  return {{"rule", std::string(rule_key(m.rule))}, {"sign", sign_text(m.sign)}, {"anchor", codec::square(m.anchor)}, {"k", m.k}, {"n", m.shift}};
}

Match parse_move(const json& j, const BoardConfig& config) {
  if (!j.is_object() || !j.contains("rule") || !j.contains("anchor")) throw ParseError("a move needs 'rule' and 'anchor'");
  try {
    const RuleId id = parse_rule_id(j["rule"].get<std::string>());
    const Sign sign = parse_sign(j.value("sign", std::string("+")));
    const std::uint64_t k = j.value("k", std::uint64_t{1});
    const int n = j.value("n", 0);
    return bind(id, sign, codec::parse_square(j["anchor"]), k, n, config);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("move: ") + e.what());
  }
}

json session_json(const Session& s) {
  return {
      {"id", s.id},
      {"rows", s.config.rows},
      {"revision", s.revision},
      {"mode", mode_json(s.mode)},
      {"created_at", s.created_at},
      {"updated_at", s.updated_at},
      {"board", codec::board(s.state)},
      {"trace_length", s.trace.steps.size()},
      {"event_count", s.events.size()},
      {"complete", s.complete()},
  };
}

SessionStore::SessionStore(std::optional<std::filesystem::path> log_dir) : log_dir_(std::move(log_dir)) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
              static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
  if (log_dir_) {
    std::error_code ec;
    std::filesystem::create_directories(*log_dir_, ec);
    if (ec) throw IoError("cannot create log directory " + log_dir_->string() + ": " + ec.message());
  }
}

std::string SessionStore::fresh_id() {
  std::lock_guard lock(id_mutex_);
  std::uint64_t x = (id_state_ += 0x9e3779b97f4a7c15ull);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return "s" + hex16(x ^ (x >> 31));
}

std::string SessionStore::create(BoardConfig config, Mode mode) {
  auto entry = std::make_shared<Entry>();
  std::string id;
  {
    std::unique_lock lock(mutex_);
    do id = fresh_id();
    while (sessions_.count(id));
    entry->session = create_session(id, config, std::move(mode));
    sessions_.emplace(id, entry);
  }
  std::lock_guard lock(entry->mutex);
  persist(*entry);
  return id;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session '" + id + "'");
  return it->second;
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

void SessionStore::persist(Entry& entry) {
  if (!log_dir_ || entry.persisted == entry.session.events.size()) return;
  const auto path = *log_dir_ / (entry.session.id + ".jsonl");
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open " + path.string());
  for (; entry.persisted < entry.session.events.size(); ++entry.persisted) out << entry.session.events[entry.persisted].dump() << '\n';
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

std::size_t SessionStore::restore() {
  if (!log_dir_) return 0;
  std::size_t count = 0;
  for (const auto& file : std::filesystem::directory_iterator(*log_dir_)) {
    if (file.path().extension() != ".jsonl") continue;
    std::ifstream in(file.path());
    if (!in) throw IoError("cannot read " + file.path().string());
    std::stringstream buf;
    buf << in.rdbuf();
    const auto events = parse_jsonl(buf.str());
    auto entry = std::make_shared<Entry>();
    entry->session = replay(events);
    entry->persisted = entry->session.events.size();
    std::unique_lock lock(mutex_);
    sessions_[entry->session.id] = entry;
    ++count;
  }
  return count;
}

}  // namespace yupana::service
