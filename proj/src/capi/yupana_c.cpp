#include "yupana/yupana.h"

#include "yupana/api.hpp"
#include "yupana/errors.hpp"
#include "yupana/json_codec.hpp"
#include "yupana/verification.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>

using namespace yupana;
using nlohmann::json;

struct yup_board {
  BoardState state;
};

struct yup_result {
  OperationResult result;
};

struct yup_store {
  explicit yup_store(std::optional<std::filesystem::path> dir) : store(std::move(dir)), api(store) {}
  service::SessionStore store;
  service::Api api;
};

struct yup_server {
  explicit yup_server(service::Api& api) : server(api) {}
  service::HttpServer server;
};

namespace {

thread_local std::string g_last_error;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

yup_status status_of(const std::exception& e) {
  if (dynamic_cast<const InvalidArgument*>(&e)) return YUP_ERR_INVALID_ARGUMENT;
  if (dynamic_cast<const OverflowError*>(&e)) return YUP_ERR_OVERFLOW;
  if (dynamic_cast<const NotSimpleError*>(&e)) return YUP_ERR_NOT_SIMPLE;
  if (dynamic_cast<const StaleMatchError*>(&e)) return YUP_ERR_STALE_MATCH;
  if (dynamic_cast<const ConflictError*>(&e)) return YUP_ERR_CONFLICT;
  if (dynamic_cast<const CycleError*>(&e)) return YUP_ERR_CYCLE;
  if (dynamic_cast<const NoMatchError*>(&e)) return YUP_ERR_NO_MATCH;
  if (dynamic_cast<const NotFoundError*>(&e)) return YUP_ERR_NOT_FOUND;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const json::exception*>(&e)) return YUP_ERR_PARSE;
  if (dynamic_cast<const IoError*>(&e)) return YUP_ERR_IO;
  if (dynamic_cast<const DomainError*>(&e)) return YUP_ERR_DOMAIN;
  return YUP_ERR_INTERNAL;
}

template <class F>
yup_status guard(F&& f) noexcept {
  try {
    f();
    return YUP_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (...) {
    g_last_error = "unknown error";
    return YUP_ERR_INTERNAL;
  }
}

template <class T>
T* need(T* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is null");
  return p;
}

const char* need_str(const char* p, const char* what) { return need(p, what); }

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) { *need(out, "output pointer") = dup(s); }

Sign to_sign(yup_sign s) {
  if (s == YUP_POSITIVE) return Sign::positive;
  if (s == YUP_NEGATIVE) return Sign::negative;
  throw InvalidArgument("sign must be YUP_POSITIVE or YUP_NEGATIVE");
}

BoardConfig config_for(int rows) { return BoardConfig{rows <= 0 ? kDefaultRows : rows}; }

json parse_options(const char* text) {
  if (!text || !*text) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw ParseError("options must be a JSON object");
  return j;
}

std::vector<RuleId> parse_rule_list(const json& spec) {
  if (spec.is_string()) {
    const auto name = spec.get<std::string>();
    if (name == "all") return all_rule_ids();
    if (name == "non-expansion") return non_expansion_rule_ids();
    return {parse_rule_id(name)};
  }
  std::vector<RuleId> out;
  for (const auto& key : spec) out.push_back(parse_rule_id(key.get<std::string>()));
  return out;
}

std::vector<RuleId> parse_rule_csv(const char* csv) {
  std::vector<RuleId> out;
  if (!csv) return out;
  std::string_view text(csv);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto key = text.substr(0, comma);
    if (!key.empty()) out.push_back(parse_rule_id(key));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Strategy parse_strategy(const json& j) {
  const std::string name = j.value("strategy", std::string("canonical"));
  if (name == "canonical") return Strategy::canonical();
  if (name == "random") return Strategy::random(j.value("seed", std::uint64_t{0}), j.value("allow_expansions", false));
  throw ParseError("unknown strategy '" + name + "'");
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string url_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out += ' ';
    } else if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::multimap<std::string, std::string> parse_query(const char* query) {
  std::multimap<std::string, std::string> out;
  if (!query) return out;
  std::string_view text(query);
  if (!text.empty() && text.front() == '?') text.remove_prefix(1);
  while (!text.empty()) {
    const auto amp = text.find('&');
    const auto pair = text.substr(0, amp);
    const auto eq = pair.find('=');
    if (!pair.empty())
      out.emplace(url_decode(pair.substr(0, eq)), eq == std::string_view::npos ? "" : url_decode(pair.substr(eq + 1)));
    if (amp == std::string_view::npos) break;
    text.remove_prefix(amp + 1);
  }
  return out;
}

yup_status status_from_code(const std::string& code) {
  if (code == "not_found") return YUP_ERR_NOT_FOUND;
  if (code == "stale_match") return YUP_ERR_STALE_MATCH;
  if (code == "conflict") return YUP_ERR_CONFLICT;
  if (code == "no_match") return YUP_ERR_NO_MATCH;
  if (code == "overflow") return YUP_ERR_OVERFLOW;
  if (code == "cycle") return YUP_ERR_CYCLE;
  if (code == "not_simple") return YUP_ERR_NOT_SIMPLE;
  if (code == "parse") return YUP_ERR_PARSE;
  if (code == "domain") return YUP_ERR_DOMAIN;
  if (code == "io") return YUP_ERR_IO;
  if (code == "method_not_allowed") return YUP_ERR_INVALID_ARGUMENT;
  return YUP_ERR_INTERNAL;
}

// Runs a route and turns an error response into a status.
yup_status call(yup_store* store, const std::string& method, const std::string& path, const std::string& body,
                const char* query, char** out) {
  service::Response response;
  const yup_status st = guard([&] {
    need(store, "store");
    need(out, "output pointer");
    response = store->api.handle({method, path, parse_query(query), body});
  });
  if (st != YUP_OK) return st;
  if (response.status >= 400) {
    const json err = json::parse(response.body, nullptr, false);
    const std::string code = err.is_object() ? err["error"].value("code", "internal") : "internal";
    g_last_error = err.is_object() ? err["error"].value("message", response.body) : response.body;
    return status_from_code(code);
  }
  return guard([&] { put(out, response.body); });
}

std::string session_path(const char* id, const char* action = nullptr) {
  std::string path = std::string("/v1/sessions/") + need_str(id, "session id");
  if (action) path += std::string("/") + action;
  return path;
}

}  // namespace

extern "C" {

const char* yup_version(void) { return "0.1.0"; }

const char* yup_status_name(yup_status status) {
  switch (status) {
    case YUP_OK: return "ok";
    case YUP_ERR_DOMAIN: return "domain";
    case YUP_ERR_OVERFLOW: return "overflow";
    case YUP_ERR_NOT_SIMPLE: return "not_simple";
    case YUP_ERR_STALE_MATCH: return "stale_match";
    case YUP_ERR_CONFLICT: return "conflict";
    case YUP_ERR_CYCLE: return "cycle";
    case YUP_ERR_NO_MATCH: return "no_match";
    case YUP_ERR_NOT_FOUND: return "not_found";
    case YUP_ERR_PARSE: return "parse";
    case YUP_ERR_IO: return "io";
    case YUP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case YUP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* yup_last_error(void) { return g_last_error.c_str(); }

void yup_string_free(char* s) { std::free(s); }

yup_status yup_board_new(int rows, yup_board** out) {
  return guard([&] { *need(out, "out") = new yup_board{BoardState(BoardConfig{rows})}; });
}

yup_status yup_board_encode(const char* value, yup_sign sign, int rows, yup_board** out) {
  return guard([&] {
    need(out, "out");
    auto board = std::make_unique<yup_board>(
        yup_board{encode_number(parse_integer(need_str(value, "value")), to_sign(sign), config_for(rows))});
    *out = board.release();
  });
}

yup_status yup_board_from_snapshot(const char* snapshot, yup_board** out) {
  return guard([&] {
    need(out, "out");
    *out = new yup_board{parse_snapshot(need_str(snapshot, "snapshot"))};
  });
}

yup_status yup_board_clone(const yup_board* board, yup_board** out) {
  return guard([&] {
    need(out, "out");
    *out = new yup_board{need(board, "board")->state};
  });
}

void yup_board_free(yup_board* board) { delete board; }

yup_status yup_board_rows(const yup_board* board, int* out) {
  return guard([&] { *need(out, "out") = need(board, "board")->state.rows(); });
}

yup_status yup_board_add_tokens(yup_board* board, int weight, int row, yup_sign sign, uint64_t n) {
  return guard([&] {
    if (!is_weight(weight)) throw DomainError("weight must be 5, 3, 2 or 1");
    need(board, "board")->state.add_tokens({weight, row}, to_sign(sign), n);
  });
}

yup_status yup_board_remove_tokens(yup_board* board, int weight, int row, yup_sign sign, uint64_t n) {
  return guard([&] {
    if (!is_weight(weight)) throw DomainError("weight must be 5, 3, 2 or 1");
    need(board, "board")->state.remove_tokens({weight, row}, to_sign(sign), n);
  });
}

yup_status yup_board_load(yup_board* board, const char* value, yup_sign sign) {
  return guard([&] {
    auto& state = need(board, "board")->state;
    BoardState next = encode_number(parse_integer(need_str(value, "value")), to_sign(sign), state);
    if (abs(board_value(next)) > capacity(next.config()))
      throw OverflowError("board value " + to_string(board_value(next)) + " exceeds the capacity");
    state = std::move(next);
  });
}

yup_status yup_board_count(const yup_board* board, int weight, int row, yup_sign sign, uint64_t* out) {
  return guard([&] {
    if (!is_weight(weight)) throw DomainError("weight must be 5, 3, 2 or 1");
    *need(out, "out") = need(board, "board")->state.count({weight, row}, to_sign(sign));
  });
}

yup_status yup_board_value(const yup_board* board, char** out) {
  return guard([&] { put(out, to_string(board_value(need(board, "board")->state))); });
}

yup_status yup_board_is_simple(const yup_board* board, int* out) {
  return guard([&] { *need(out, "out") = is_simple(need(board, "board")->state) ? 1 : 0; });
}

yup_status yup_board_decode(const yup_board* board, char** out) {
  return guard([&] { put(out, to_string(decode_simple(need(board, "board")->state))); });
}

yup_status yup_board_snapshot(const yup_board* board, char** out) {
  return guard([&] { put(out, to_snapshot(need(board, "board")->state)); });
}

yup_status yup_board_json(const yup_board* board, char** out) {
  return guard([&] { put(out, codec::board(need(board, "board")->state).dump()); });
}

yup_status yup_board_matches(const yup_board* board, const char* rules, char** out) {
  return guard([&] {
    const auto& state = need(board, "board")->state;
    auto ids = parse_rule_csv(rules);
    if (ids.empty()) ids = all_rule_ids();
    auto matches = match_rules(ids, state);
    sort_for_listing(matches);
    json arr = json::array();
    for (const auto& m : matches) arr.push_back(codec::match(m));
    put(out, arr.dump());
  });
}

yup_status yup_board_apply(yup_board* board, const char* move_json) {
  return guard([&] {
    auto& state = need(board, "board")->state;
    const Match m = service::parse_move(json::parse(need_str(move_json, "move")), state.config());
    state = apply_match(state, m);
  });
}

yup_status yup_board_simplify(const yup_board* board, const char* strategy_json, yup_board** out, char** trace_out) {
  return guard([&] {
    need(out, "out");
    const StepResult r = simplify(need(board, "board")->state, parse_strategy(parse_options(strategy_json)));
    std::string trace = export_trace(r.trace);
    char* trace_copy = trace_out ? dup(trace) : nullptr;
    *out = new yup_board{r.state};
    if (trace_out) *trace_out = trace_copy;
  });
}

yup_status yup_board_pair_and_cancel(const yup_board* board, yup_board** out, char** trace_out) {
  return guard([&] {
    need(out, "out");
    const StepResult r = pair_and_cancel(need(board, "board")->state);
    char* trace_copy = trace_out ? dup(export_trace(r.trace)) : nullptr;
    *out = new yup_board{r.state};
    if (trace_out) *trace_out = trace_copy;
  });
}

yup_status yup_board_explore(const yup_board* board, const char* options_json, char** report_out) {
  return guard([&] {
    const json opts = parse_options(options_json);
    const auto rules = parse_rule_list(opts.value("rules", json("non-expansion")));
    ExploreLimits limits;
    limits.max_states = opts.value("max_states", limits.max_states);
    limits.max_depth = opts.value("max_depth", limits.max_depth);
    put(report_out, codec::exploration(explore(need(board, "board")->state, rules, limits)).dump());
  });
}

yup_status yup_add(const char* const* addends, size_t count, int rows, yup_result** out) {
  return guard([&] {
    need(out, "out");
    if (count > 0) need(addends, "addends");
    std::vector<Integer> values;
    for (size_t i = 0; i < count; ++i) values.push_back(parse_integer(need_str(addends[i], "addend")));
    *out = new yup_result{yapay(values, config_for(rows))};
  });
}

yup_status yup_sub(const char* minuend, const char* const* subtrahends, size_t count, int rows, yup_result** out) {
  return guard([&] {
    need(out, "out");
    if (count > 0) need(subtrahends, "subtrahends");
    std::vector<Operand> ops{{parse_integer(need_str(minuend, "minuend")), Sign::positive}};
    for (size_t i = 0; i < count; ++i) ops.push_back({parse_integer(need_str(subtrahends[i], "subtrahend")), Sign::negative});
    *out = new yup_result{taqay(ops, config_for(rows))};
  });
}

yup_status yup_mul(const char* multiplicand, const char* multiplier, int rows, yup_result** out) {
  return guard([&] {
    need(out, "out");
    *out = new yup_result{miray(parse_integer(need_str(multiplicand, "multiplicand")),
                                parse_integer(need_str(multiplier, "multiplier")), config_for(rows))};
  });
}

yup_status yup_div(const char* dividend, const char* divisor, int rows, yup_result** out) {
  return guard([&] {
    need(out, "out");
    *out = new yup_result{rakiy(parse_integer(need_str(dividend, "dividend")), parse_integer(need_str(divisor, "divisor")),
                                config_for(rows))};
  });
}

void yup_result_free(yup_result* result) { delete result; }

yup_status yup_result_value(const yup_result* result, char** out) {
  return guard([&] { put(out, to_string(need(result, "result")->result.value)); });
}

yup_status yup_result_quotient(const yup_result* result, char** out) {
  return guard([&] {
    const auto& r = need(result, "result")->result;
    if (!r.division) throw DomainError("not a division result");
    put(out, to_string(r.division->quotient));
  });
}

yup_status yup_result_remainder(const yup_result* result, char** out) {
  return guard([&] {
    const auto& r = need(result, "result")->result;
    if (!r.division) throw DomainError("not a division result");
    put(out, to_string(r.division->remainder));
  });
}

yup_status yup_result_division_steps(const yup_result* result, char** out) {
  return guard([&] {
    const auto& r = need(result, "result")->result;
    if (!r.division) throw DomainError("not a division result");
    std::string text;
    for (auto [k, count] : r.division->subtractions_per_k)
      text += "k=" + std::to_string(k) + " subtractions=" + std::to_string(count) + "\n";
    put(out, text);
  });
}

yup_status yup_result_board(const yup_result* result, yup_board** out) {
  return guard([&] {
    need(out, "out");
    *out = new yup_board{need(result, "result")->result.terminal};
  });
}

yup_status yup_result_trace(const yup_result* result, char** out) {
  return guard([&] { put(out, export_trace(need(result, "result")->result.trace)); });
}

yup_status yup_result_json(const yup_result* result, char** out) {
  return guard([&] { put(out, codec::operation(need(result, "result")->result).dump()); });
}

yup_status yup_catalog_json(char** out) {
  return guard([&] { put(out, codec::catalog().dump()); });
}

yup_status yup_verify(const char* options_json, char** report_out, int* passed) {
  return guard([&] {
    need(report_out, "report");
    need(passed, "passed");
    const json o = parse_options(options_json);
    const std::uint64_t seed = o.value("seed", std::uint64_t{20220619});
    const std::uint64_t samples = o.value("samples", std::uint64_t{1000});
    const std::uint64_t per_rule = o.value("trials_per_rule", std::uint64_t{1000});
    verify::OperationRanges ranges;
    ranges.rows = o.value("rows", ranges.rows);
    ranges.add_max = o.value("add_max", ranges.add_max);
    ranges.mul_a_max = o.value("mul_a_max", ranges.mul_a_max);
    ranges.mul_b_max = o.value("mul_b_max", ranges.mul_b_max);
    ranges.div_a_max = o.value("div_a_max", ranges.div_a_max);
    ranges.div_b_max = o.value("div_b_max", ranges.div_b_max);
    verify::ConfluenceOptions confluence;
    confluence.n_max = o.value("confluence_n_max", confluence.n_max);
    confluence.decompositions = o.value("decompositions", confluence.decompositions);
    confluence.max_summands = o.value("max_summands", confluence.max_summands);
    confluence.master_seed = seed;

    const std::vector<std::pair<std::string, std::function<verify::PropertyReport()>>> suites{
        {"thm1", [&] { return verify::check_transfer(samples, seed); }},
        {"thm2", [&] { return verify::check_invariance(per_rule, seed); }},
        {"thm3", [&] { return verify::check_superposition(samples, seed); }},
        {"thm4", [&] { return verify::check_scaling(samples, seed); }},
        {"thm5", [&] { return verify::check_abbreviation(samples, seed); }},
        {"thm6", [&] { return verify::check_operation(OperationKind::add, ranges); }},
        {"thm7", [&] { return verify::check_operation(OperationKind::sub, ranges); }},
        {"thm8", [&] { return verify::check_operation(OperationKind::mul, ranges); }},
        {"thm9", [&] { return verify::check_operation(OperationKind::div, ranges); }},
        {"confluence", [&] { return verify::check_confluence(confluence); }},
        {"parallelism", [&] { return verify::check_parallelism(samples, seed); }},
    };
    std::vector<std::string> wanted;
    if (o.contains("properties"))
      for (const auto& p : o["properties"]) wanted.push_back(p.get<std::string>());
    for (const auto& w : wanted)
      if (std::none_of(suites.begin(), suites.end(), [&](const auto& s) { return s.first == w; }))
        throw NotFoundError("unknown property '" + w + "'");

    std::string report;
    bool all = true;
    for (const auto& [id, run] : suites) {
      if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
      const auto r = run();
      all = all && r.passed();
      json record = codec::property(r);
      record["seed"] = seed;
      report += record.dump() + "\n";
    }
    *report_out = dup(report);
    *passed = all ? 1 : 0;
  });
}

yup_status yup_store_new(const char* log_dir, yup_store** out) {
  return guard([&] {
    need(out, "out");
    std::optional<std::filesystem::path> dir;
    if (log_dir && *log_dir) dir = std::filesystem::path(log_dir);
    *out = new yup_store(dir);
  });
}

void yup_store_free(yup_store* store) { delete store; }

yup_status yup_store_restore(yup_store* store, size_t* count) {
  return guard([&] { *need(count, "count") = need(store, "store")->store.restore(); });
}

yup_status yup_store_request(yup_store* store, const char* method, const char* path, const char* query, const char* body,
                             int* http_status, char** response) {
  return guard([&] {
    need(store, "store");
    need(http_status, "http_status");
    need(response, "response");
    const auto r = store->api.handle({need_str(method, "method"), need_str(path, "path"), parse_query(query), body ? body : ""});
    *response = dup(r.body);
    *http_status = r.status;
  });
}

yup_status yup_session_create(yup_store* store, const char* request_json, char** out) {
  return call(store, "POST", "/v1/sessions", request_json ? request_json : "", nullptr, out);
}

yup_status yup_session_get(yup_store* store, const char* id, char** out) {
  std::string path;
  if (auto st = guard([&] { path = session_path(id); }); st != YUP_OK) return st;
  return call(store, "GET", path, "", nullptr, out);
}

yup_status yup_session_load(yup_store* store, const char* id, const char* value, yup_sign sign, char** out) {
  std::string path, body;
  if (auto st = guard([&] {
        path = session_path(id, "load");
        body = json{{"value", need_str(value, "value")}, {"sign", std::string(1, sign_char(to_sign(sign)))}}.dump();
      });
      st != YUP_OK)
    return st;
  return call(store, "POST", path, body, nullptr, out);
}

yup_status yup_session_matches(yup_store* store, const char* id, const char* rules, char** out) {
  std::string path, query;
  if (auto st = guard([&] { path = session_path(id, "matches"); }); st != YUP_OK) return st;
  if (rules && *rules) query = std::string("rules=") + rules;
  return call(store, "GET", path, "", query.empty() ? nullptr : query.c_str(), out);
}

yup_status yup_session_apply(yup_store* store, const char* id, const char* match_id, char** out) {
  std::string path, body;
  if (auto st = guard([&] {
        path = session_path(id, "moves");
        body = json{{"match_id", need_str(match_id, "match id")}}.dump();
      });
      st != YUP_OK)
    return st;
  return call(store, "POST", path, body, nullptr, out);
}

yup_status yup_session_apply_move(yup_store* store, const char* id, const char* move_json, char** out) {
  std::string path, body;
  if (auto st = guard([&] {
        path = session_path(id, "moves");
        body = json{{"move", json::parse(need_str(move_json, "move"))}}.dump();
      });
      st != YUP_OK)
    return st;
  return call(store, "POST", path, body, nullptr, out);
}

yup_status yup_session_auto(yup_store* store, const char* id, const char* request_json, char** out) {
  std::string path;
  if (auto st = guard([&] { path = session_path(id, "auto"); }); st != YUP_OK) return st;
  return call(store, "POST", path, request_json ? request_json : "", nullptr, out);
}

yup_status yup_session_hint(yup_store* store, const char* id, char** out) {
  std::string path;
  if (auto st = guard([&] { path = session_path(id, "hint"); }); st != YUP_OK) return st;
  return call(store, "GET", path, "", nullptr, out);
}

yup_status yup_session_trace(yup_store* store, const char* id, char** out) {
  std::string path;
  if (auto st = guard([&] { path = session_path(id, "trace"); }); st != YUP_OK) return st;
  return call(store, "GET", path, "", "format=text", out);
}

yup_status yup_session_events(yup_store* store, const char* id, char** out) {
  std::string path;
  if (auto st = guard([&] { path = session_path(id, "events"); }); st != YUP_OK) return st;
  return call(store, "GET", path, "", nullptr, out);
}

yup_status yup_replay(const char* events_jsonl, char** snapshot_out) {
  return guard([&] {
    const auto events = service::parse_jsonl(need_str(events_jsonl, "events"));
    put(snapshot_out, to_snapshot(service::replay(events).state));
  });
}

yup_status yup_server_start(yup_store* store, const char* host, int port, yup_server** out) {
  return guard([&] {
    need(out, "out");
    auto server = std::make_unique<yup_server>(need(store, "store")->api);
    server->server.bind(host ? host : "127.0.0.1", port);
    server->server.start();
    *out = server.release();
  });
}

yup_status yup_server_port(const yup_server* server, int* out) {
  return guard([&] { *need(out, "out") = need(server, "server")->server.port(); });
}

void yup_server_stop(yup_server* server) {
  if (!server) return;
  server->server.stop();
  delete server;
}

}  // extern "C"
