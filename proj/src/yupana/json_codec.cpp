#include "yupana/json_codec.hpp"

#include "yupana/errors.hpp"

namespace yupana::codec {

json square(SquareAddr addr) { return {{"weight", addr.weight}, {"row", addr.row}}; }

SquareAddr parse_square(const json& j) {
  if (!j.is_object() || !j.contains("weight") || !j.contains("row") || !j["weight"].is_number_integer() ||
      !j["row"].is_number_integer())
    throw ParseError("square needs integer 'weight' and 'row'");
  return {j["weight"].get<int>(), j["row"].get<int>()};
}

json board(const BoardState& state) {
  json cells = json::array();
  for (int r = 0; r < state.rows(); ++r)
    for (int w : kWeights) {
      const auto& c = state.at({w, r});
      if (!c.empty()) cells.push_back({{"row", r}, {"weight", w}, {"pos", c.pos}, {"neg", c.neg}});
    }
  const bool simple = is_simple(state);
  return {
      {"rows", state.rows()},
      {"cells", std::move(cells)},
      {"snapshot", to_snapshot(state)},
      {"value", to_string(board_value(state))},
      {"is_simple", simple},
      {"decoded", simple ? json(to_string(decode_simple(state))) : json(nullptr)},
  };
}

namespace {

json deltas(const std::vector<TokenDelta>& ds) {
  json out = json::array();
  for (const auto& d : ds)
    out.push_back({{"weight", d.addr.weight}, {"row", d.addr.row}, {"sign", std::string(1, sign_char(d.sign))}, {"count", d.count}});
  return out;
}

json terms(const std::vector<Term>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back({{"weight", t.weight}, {"row_offset", t.row_offset}, {"per_k", t.per_k}});
  return out;
}

}  // namespace

json match(const Match& m, const std::string& id) {
  json squares = json::array();
  for (const auto& a : m.touched) squares.push_back(square(a));
  json out{
      {"rule", std::string(rule_key(m.rule))},
      {"name", std::string(rule(m.rule).name)},
      {"kind", std::string(to_string(rule(m.rule).kind))},
      {"sign", std::string(1, sign_char(m.sign))},
      {"anchor", square(m.anchor)},
      {"k", m.k},
      {"n", m.shift},
      {"removals", deltas(m.removals)},
      {"deposits", deltas(m.deposits)},
      {"squares", std::move(squares)},
      {"summary", describe(m)},
  };
  if (!id.empty()) out["id"] = id;
  return out;
}

json trace_step(const TraceStep& s) {
  return {
      {"step", s.index},
      {"rule_id", std::string(rule_key(s.rule))},
      {"sign", std::string(1, sign_char(s.sign))},
      {"anchor", square(s.anchor)},
      {"anchor_row", s.anchor.row},
      {"k", s.k},
      {"n", s.shift},
      {"summary", s.summary},
      {"value_before", to_string(s.value_before)},
      {"value_after", to_string(s.value_after)},
  };
}

json trace(const MoveTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(trace_step(s));
  return {{"steps", std::move(steps)}, {"terminal", to_snapshot(t.terminal)}, {"text", export_trace(t)}};
}

json rule(const Rule& r) {
  return {
      {"id", std::string(r.key)},
      {"name", std::string(r.name)},
      {"gloss", std::string(r.gloss)},
      {"kind", std::string(to_string(r.kind))},
      {"pattern", std::string(r.pattern)},
      {"movement", std::string(r.movement)},
      {"consume", terms(r.consume)},
      {"produce", terms(r.produce)},
  };
}

json catalog() {
  json rules = json::array();
  for (const auto& r : yupana::catalog()) rules.push_back(rule(r));
  json priority = json::array();
  for (RuleId id : canonical_priority()) priority.push_back(std::string(rule_key(id)));
  return {{"weights", kWeights}, {"rules", std::move(rules)}, {"canonical_priority", std::move(priority)}};
}

json operation(const OperationResult& r) {
  json out{
      {"operation", std::string(to_string(r.kind))},
      {"value", to_string(r.value)},
      {"loaded_value", to_string(r.loaded_value)},
      {"board", board(r.terminal)},
      {"trace", trace(r.trace)},
  };
  if (r.division) {
    json steps = json::array();
    for (auto [k, count] : r.division->subtractions_per_k) steps.push_back({{"k", k}, {"subtractions", count}});
    out["quotient"] = to_string(r.division->quotient);
    out["remainder"] = to_string(r.division->remainder);
    out["subtractions_per_k"] = std::move(steps);
  }
  return out;
}

json property(const verify::PropertyReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"seed", f.seed}, {"state", f.state}, {"detail", f.detail}});
  return {{"property", report.id}, {"trials", report.trials}, {"status", report.status()}, {"failures", std::move(failures)}};
}

json exploration(const ExploreReport& r) {
  json terminals = json::array();
  for (const auto& t : r.terminals) {
    json entry{{"snapshot", to_snapshot(t)}, {"value", to_string(board_value(t))}, {"is_simple", is_simple(t)}};
    terminals.push_back(std::move(entry));
  }
  return {
      {"states_visited", r.states_visited},
      {"terminal_count", r.terminals.size()},
      {"terminals", std::move(terminals)},
      {"max_depth", r.max_depth},
      {"cycle_detected", r.cycle_detected},
      {"truncated", r.truncated},
      {"confluent", r.terminals.size() == 1 && !r.truncated},
  };
}

Integer parse_integer_field(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ParseError("expected an integer or a decimal string");
}

}  // namespace yupana::codec
