#include "yupana/api.hpp"
#include "yupana/json_codec.hpp"

#include <doctest.h>
#include <httplib.h>

using namespace yupana;
using namespace yupana::service;

namespace {

struct Fixture {
  SessionStore store;
  Api api{store};

  json call(const std::string& method, const std::string& path, const json& body = nullptr, int expect = 200,
            std::multimap<std::string, std::string> params = {}) {
    const Response r = api.handle({method, path, std::move(params), body.is_null() ? "" : body.dump()});
    INFO(method << " " << path << " -> " << r.body);
    CHECK(r.status == expect);
    return json::parse(r.body);
  }
};

}  // namespace

TEST_SUITE("api") {

TEST_CASE("catalog") {
  Fixture f;
  const json c = f.call("GET", "/v1/catalog");
  CHECK(c["rules"].size() == 22);
  CHECK(c["weights"] == json::array({5, 3, 2, 1}));
  CHECK(c["canonical_priority"][0] == "chinkay");
  const json& first = c["rules"][0];
  for (const char* key : {"id", "name", "kind", "pattern", "movement"}) CHECK(first.contains(key));
  f.call("POST", "/v1/catalog", nullptr, 405);
}

TEST_CASE("guided addition over the routes") {
  Fixture f;
  const json s =
      f.call("POST", "/v1/sessions", {{"rows", 5}, {"mode", "guided"}, {"operation", "add"}, {"operands", {736, 532}}}, 201);
  const std::string id = s["id"];
  const std::string base = "/v1/sessions/" + id;
  CHECK(s["board"]["value"] == "1268");

  const json listed = f.call("GET", base + "/matches");
  CHECK(listed["session"] == id);
  REQUIRE(listed["matches"].size() > 0);
  const std::string mid = listed["matches"][0]["id"];

  const json after = f.call("POST", base + "/moves", {{"match_id", mid}});
  CHECK(after["applied"]["rule"] == listed["matches"][0]["rule"]);
  CHECK(after["revision"] == listed["revision"].get<int>() + 1);
  CHECK(after["board"]["value"] == "1268");

  const json stale = f.call("POST", base + "/moves", {{"match_id", mid}}, 409);
  CHECK(stale["error"]["code"] == "stale_match");

  const json h = f.call("GET", base + "/hint");
  CHECK(h["match"].contains("id"));

  const json done = f.call("POST", base + "/auto", {{"strategy", "canonical"}});
  CHECK(done["auto"]["simple"] == true);
  CHECK(done["board"]["decoded"] == "1268");
  CHECK(done["complete"] == true);

  const json nomatch = f.call("GET", base + "/hint", nullptr, 409);
  CHECK(nomatch["error"]["code"] == "no_match");

  const json trace = f.call("GET", base + "/trace");
  CHECK(trace["steps"].size() == done["trace_length"]);
  const Response text = f.api.handle({"GET", base + "/trace", {{"format", "text"}}, ""});
  CHECK(text.content_type == "text/plain");
  CHECK(text.body.rfind("step=0 rule_id=", 0) == 0);

  const Response events = f.api.handle({"GET", base + "/events", {}, ""});
  CHECK(events.content_type == "application/x-ndjson");
  CHECK(to_snapshot(replay(parse_jsonl(events.body)).state) == to_snapshot(encode_number(1268)));
}

TEST_CASE("free play with explicit moves") {
  Fixture f;
  const std::string id = f.call("POST", "/v1/sessions", {{"rows", 3}}, 201)["id"];
  const std::string base = "/v1/sessions/" + id;
  f.call("POST", base + "/load", {{"value", 12}, {"sign", "+"}});
  const json r = f.call("POST", base + "/load", {{"value", "2"}, {"sign", "-"}});
  CHECK(r["board"]["value"] == "10");
  const json moved =
      f.call("POST", base + "/moves", {{"move", {{"rule", "chinkay"}, {"sign", "+"}, {"anchor", {{"weight", 2}, {"row", 0}}}, {"k", 1}}}});
  CHECK(moved["board"]["value"] == "10");
  CHECK(moved["board"]["decoded"] == "10");
  const json filtered = f.call("GET", base + "/matches", nullptr, 200, {{"rules", "iskay,kimsa"}});
  CHECK(filtered["matches"].empty());
  const json over = f.call("POST", base + "/load", {{"value", 1000}}, 422);
  CHECK(over["error"]["code"] == "overflow");
}

TEST_CASE("errors") {
  Fixture f;
  CHECK(f.call("GET", "/v1/sessions/nope", nullptr, 404)["error"]["code"] == "not_found");
  CHECK(f.call("GET", "/v2/catalog", nullptr, 404)["error"]["code"] == "not_found");
  CHECK(f.call("POST", "/v1/sessions", {{"mode", "guided"}, {"operation", "div"}, {"operands", {8, 2}}}, 400)["error"]["code"] ==
        "domain");
  const Response bad = f.api.handle({"POST", "/v1/sessions", {}, "{oops"});
  CHECK(bad.status == 400);
  CHECK(json::parse(bad.body)["error"]["code"] == "parse");
  const std::string id = f.call("POST", "/v1/sessions", json::object(), 201)["id"];
  f.call("POST", "/v1/sessions/" + id + "/auto", {{"strategy", "greedy"}}, 400);
  f.call("GET", "/v1/sessions/" + id + "/load", nullptr, 405);
  f.call("POST", "/v1/sessions/" + id + "/load", json::object(), 400);
  const json listing = f.call("GET", "/v1/sessions");
  CHECK(listing["sessions"].size() == 1);
}

TEST_CASE("http transport") {
  SessionStore store;
  Api api(store);
  HttpServer server(api);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  server.start();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/v1/sessions", R"({"mode":"guided","operation":"sub","operands":[945,532]})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const std::string id = json::parse(created->body)["id"];

  auto ran = client.Post("/v1/sessions/" + id + "/auto", "{}", "application/json");
  REQUIRE(ran);
  CHECK(json::parse(ran->body)["board"]["decoded"] == "413");

  auto trace = client.Get("/v1/sessions/" + id + "/trace?format=text");
  REQUIRE(trace);
  CHECK(trace->status == 200);
  CHECK(trace->body.find("rule_id=chinkay") != std::string::npos);

  auto missing = client.Get("/v1/sessions/unknown");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto options = client.Options("/v1/sessions");
  REQUIRE(options);
  CHECK(options->status == 204);
  server.stop();
}

}  // TEST_SUITE
