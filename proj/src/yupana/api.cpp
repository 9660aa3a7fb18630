#include "yupana/api.hpp"

#include "yupana/errors.hpp"
#include "yupana/json_codec.hpp"

#include <httplib.h>

#include <sstream>

namespace yupana::service {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(sep, start);
    const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!piece.empty()) out.emplace_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

Response ok(const json& body, int status = 200) { return {status, body.dump(), "application/json"}; }

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw ParseError("request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("request body: ") + e.what());
  }
}

std::optional<std::string> param(const Request& r, const std::string& key) {
  auto it = r.params.find(key);
  if (it == r.params.end()) return std::nullopt;
  return it->second;
}

Strategy parse_strategy(const json& body) {
  const std::string name = body.value("strategy", std::string("canonical"));
  const bool expansions = body.value("allow_expansions", false);
  Strategy s;
  if (name == "canonical") {
    s = Strategy::canonical();
  } else if (name == "random") {
    s = Strategy::random(body.value("seed", std::uint64_t{0}), expansions);
  } else {
    throw ParseError("unknown strategy '" + name + "' (canonical or random)");
  }
  if (body.contains("rule_priority")) {
    s.rule_priority.clear();
    for (const auto& key : body["rule_priority"]) s.rule_priority.push_back(parse_rule_id(key.get<std::string>()));
  }
  return s;
}

Mode mode_from_body(const json& body) {
  const json& m = body.contains("mode") ? body["mode"] : json("free");
  if (m.is_object()) return parse_mode(m);
  json spec{{"kind", m}};
  if (body.contains("operation")) spec["operation"] = body["operation"];
  if (body.contains("operands")) spec["operands"] = body["operands"];
  return parse_mode(spec);
}

}  // namespace

int status_for(const std::exception& e) {
  if (dynamic_cast<const NotFoundError*>(&e)) return 404;
  if (dynamic_cast<const StaleMatchError*>(&e) || dynamic_cast<const ConflictError*>(&e) ||
      dynamic_cast<const NoMatchError*>(&e))
    return 409;
  if (dynamic_cast<const OverflowError*>(&e) || dynamic_cast<const CycleError*>(&e) ||
      dynamic_cast<const NotSimpleError*>(&e))
    return 422;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const nlohmann::json::exception*>(&e))
    return 400;
  return 500;
}

std::string error_code_for(const std::exception& e) {
  if (dynamic_cast<const NotFoundError*>(&e)) return "not_found";
  if (dynamic_cast<const StaleMatchError*>(&e)) return "stale_match";
  if (dynamic_cast<const ConflictError*>(&e)) return "conflict";
  if (dynamic_cast<const NoMatchError*>(&e)) return "no_match";
  if (dynamic_cast<const OverflowError*>(&e)) return "overflow";
  if (dynamic_cast<const CycleError*>(&e)) return "cycle";
  if (dynamic_cast<const NotSimpleError*>(&e)) return "not_simple";
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return "parse";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  return "internal";
}

Response Api::handle(const Request& request) {
  try {
    return route(request);
  } catch (const std::exception& e) {
    return ok({{"error", {{"code", error_code_for(e)}, {"message", e.what()}}}}, status_for(e));
  }
}

Response Api::route(const Request& r) {
  const auto parts = split(r.path, '/');
  auto method_not_allowed = [] {
    return ok({{"error", {{"code", "method_not_allowed"}, {"message", "method not allowed"}}}}, 405);
  };
  if (parts.empty() || parts[0] != "v1") throw NotFoundError("no route " + r.path);

  if (parts.size() == 2 && parts[1] == "catalog") {
    if (r.method != "GET") return method_not_allowed();
    return ok(codec::catalog());
  }
  if (parts.size() < 2 || parts[1] != "sessions") throw NotFoundError("no route " + r.path);

  if (parts.size() == 2) {
    if (r.method == "GET") return ok({{"sessions", store_.ids()}});
    if (r.method != "POST") return method_not_allowed();
    const json body = parse_body(r.body);
    const BoardConfig config{body.value("rows", kDefaultRows)};
    const std::string id = store_.create(config, mode_from_body(body));
    return ok(store_.with_session(id, [](Session& s) { return session_json(s); }), 201);
  }

  const std::string& id = parts[2];
  const std::string action = parts.size() > 3 ? parts[3] : "";
  if (parts.size() > 4) throw NotFoundError("no route " + r.path);

  if (action.empty()) {
    if (r.method != "GET") return method_not_allowed();
    return ok(store_.with_session(id, [](Session& s) { return session_json(s); }));
  }

  if (action == "load") {
    if (r.method != "POST") return method_not_allowed();
    const json body = parse_body(r.body);
    if (!body.contains("value")) throw ParseError("load needs 'value'");
    const Integer value = codec::parse_integer_field(body["value"]);
    const Sign sign = parse_sign(body.value("sign", std::string("+")));
    return ok(store_.with_session(id, [&](Session& s) {
      load_operand(s, value, sign);
      return session_json(s);
    }));
  }

  if (action == "matches") {
    if (r.method != "GET") return method_not_allowed();
    std::vector<RuleId> filter;
    if (auto rules = param(r, "rules"))
      for (const auto& key : split(*rules, ',')) filter.push_back(parse_rule_id(key));
    return ok(store_.with_session(id, [&](Session& s) {
      json matches = json::array();
      for (const auto& lm : list_matches(s, filter)) matches.push_back(codec::match(lm.match, lm.id));
      return json{{"session", s.id}, {"revision", s.revision}, {"matches", std::move(matches)}};
    }));
  }

  if (action == "moves") {
    if (r.method != "POST") return method_not_allowed();
    const json body = parse_body(r.body);
    return ok(store_.with_session(id, [&](Session& s) {
      Match applied;
      if (body.contains("match_id")) {
        applied = apply_move(s, body["match_id"].get<std::string>());
      } else {
        applied = apply_explicit(s, parse_move(body.contains("move") ? body["move"] : body, s.config));
      }
      json out = session_json(s);
      out["applied"] = codec::match(applied);
      return out;
    }));
  }

  if (action == "auto") {
    if (r.method != "POST") return method_not_allowed();
    const json body = parse_body(r.body);
    const Strategy strategy = parse_strategy(body);
    const std::size_t budget = body.value("budget", std::size_t{10'000});
    return ok(store_.with_session(id, [&](Session& s) {
      const AutoOutcome outcome = auto_run(s, strategy, budget);
      json out = session_json(s);
      out["auto"] = {{"moves", outcome.moves}, {"simple", outcome.simple}, {"budget_exhausted", outcome.budget_exhausted}};
      return out;
    }));
  }

  if (action == "hint") {
    if (r.method != "GET") return method_not_allowed();
    return ok(store_.with_session(id, [](Session& s) {
      const ListedMatch h = hint(s);
      return json{{"session", s.id}, {"revision", s.revision}, {"match", codec::match(h.match, h.id)}};
    }));
  }

  if (action == "trace") {
    if (r.method != "GET") return method_not_allowed();
    const bool text = param(r, "format") == std::optional<std::string>("text");
    return store_.with_session(id, [&](Session& s) {
      if (text) return Response{200, export_trace(s.trace), "text/plain"};
      json out = codec::trace(s.trace);
      out["session"] = s.id;
      out["initial"] = to_snapshot(s.initial);
      return ok(out);
    });
  }

  if (action == "events") {
    if (r.method != "GET") return method_not_allowed();
    return store_.with_session(id, [](Session& s) { return Response{200, events_jsonl(s), "application/x-ndjson"}; });
  }

  throw NotFoundError("no route " + r.path);
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>()) {
  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {req.params.begin(), req.params.end()}, req.body};
    const Response out = api.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  auto& s = impl_->server;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Get(".*", handler);
  s.Post(".*", handler);
  s.Put(".*", handler);
  s.Delete(".*", handler);
  s.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  port_ = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return port_;
}

void HttpServer::run() {
  if (!impl_->server.listen_after_bind()) throw IoError("server stopped with an error");
}

void HttpServer::start() {
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace yupana::service
