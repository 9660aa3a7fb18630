#include <yupana/yupana.h>

#include <doctest.h>
#include <json.hpp>

#include <memory>
#include <string>

using nlohmann::json;

namespace {

// Takes ownership of a returned string.
std::string take(char* s) {
  std::string out = s ? s : "";
  yup_string_free(s);
  return out;
}

struct BoardDeleter {
  void operator()(yup_board* b) const { yup_board_free(b); }
};
struct ResultDeleter {
  void operator()(yup_result* r) const { yup_result_free(r); }
};
struct StoreDeleter {
  void operator()(yup_store* s) const { yup_store_free(s); }
};
using Board = std::unique_ptr<yup_board, BoardDeleter>;
using Result = std::unique_ptr<yup_result, ResultDeleter>;
using Store = std::unique_ptr<yup_store, StoreDeleter>;

Board encode(const char* value, yup_sign sign = YUP_POSITIVE, int rows = 5) {
  yup_board* b = nullptr;
  REQUIRE(yup_board_encode(value, sign, rows, &b) == YUP_OK);
  return Board(b);
}

std::string value_of(const yup_board* b) {
  char* v = nullptr;
  REQUIRE(yup_board_value(b, &v) == YUP_OK);
  return take(v);
}

std::string result_value(const yup_result* r) {
  char* v = nullptr;
  REQUIRE(yup_result_value(r, &v) == YUP_OK);
  return take(v);
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status names and errors") {
  CHECK(std::string(yup_status_name(YUP_OK)) == "ok");
  CHECK(std::string(yup_status_name(YUP_ERR_OVERFLOW)) == "overflow");
  CHECK(std::string(yup_version()) == "0.1.0");
  yup_board* b = nullptr;
  CHECK(yup_board_encode("100000", YUP_POSITIVE, 5, &b) == YUP_ERR_OVERFLOW);
  CHECK(b == nullptr);
  CHECK(std::string(yup_last_error()).find("capacity") != std::string::npos);
  CHECK(yup_board_encode("12x", YUP_POSITIVE, 5, &b) == YUP_ERR_PARSE);
  CHECK(yup_board_new(0, &b) == YUP_ERR_DOMAIN);
  CHECK(yup_board_new(5, nullptr) == YUP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("boards") {
  Board b = encode("5347");
  int simple = 0;
  REQUIRE(yup_board_is_simple(b.get(), &simple) == YUP_OK);
  CHECK(simple == 1);
  char* text = nullptr;
  REQUIRE(yup_board_decode(b.get(), &text) == YUP_OK);
  CHECK(take(text) == "5347");

  uint64_t n = 0;
  REQUIRE(yup_board_count(b.get(), 5, 3, YUP_POSITIVE, &n) == YUP_OK);
  CHECK(n == 1);
  REQUIRE(yup_board_add_tokens(b.get(), 1, 0, YUP_POSITIVE, 2) == YUP_OK);
  CHECK(value_of(b.get()) == "5349");
  REQUIRE(yup_board_decode(b.get(), &text) == YUP_ERR_NOT_SIMPLE);
  CHECK(yup_board_remove_tokens(b.get(), 1, 0, YUP_POSITIVE, 3) == YUP_ERR_STALE_MATCH);
  CHECK(yup_board_add_tokens(b.get(), 4, 0, YUP_POSITIVE, 1) == YUP_ERR_DOMAIN);

  REQUIRE(yup_board_snapshot(b.get(), &text) == YUP_OK);
  const std::string snap = take(text);
  yup_board* back = nullptr;
  REQUIRE(yup_board_from_snapshot(snap.c_str(), &back) == YUP_OK);
  Board owned(back);
  CHECK(value_of(owned.get()) == "5349");

  REQUIRE(yup_board_load(owned.get(), "49", YUP_NEGATIVE) == YUP_OK);
  CHECK(value_of(owned.get()) == "5300");
  CHECK(yup_board_load(owned.get(), "100000", YUP_POSITIVE) == YUP_ERR_OVERFLOW);

  REQUIRE(yup_board_json(owned.get(), &text) == YUP_OK);
  CHECK(json::parse(take(text))["value"] == "5300");
}

TEST_CASE("matches, moves and simplification") {
  Board b;
  {
    yup_board* raw = nullptr;
    REQUIRE(yup_board_new(5, &raw) == YUP_OK);
    b.reset(raw);
  }
  REQUIRE(yup_board_add_tokens(b.get(), 1, 0, YUP_POSITIVE, 2) == YUP_OK);
  char* text = nullptr;
  REQUIRE(yup_board_matches(b.get(), "kikin-2on1", &text) == YUP_OK);
  const json ms = json::parse(take(text));
  REQUIRE(ms.size() == 1);
  CHECK(yup_board_matches(b.get(), "bogus", &text) == YUP_ERR_NOT_FOUND);

  REQUIRE(yup_board_apply(b.get(), R"({"rule":"kikin-2on1","sign":"+","anchor":{"weight":1,"row":0},"k":1})") == YUP_OK);
  uint64_t n = 0;
  REQUIRE(yup_board_count(b.get(), 2, 0, YUP_POSITIVE, &n) == YUP_OK);
  CHECK(n == 1);
  CHECK(yup_board_apply(b.get(), R"({"rule":"kikin-2on1","sign":"+","anchor":{"weight":1,"row":0},"k":1})") ==
        YUP_ERR_STALE_MATCH);

  Board loaded = encode("532");
  REQUIRE(yup_board_load(loaded.get(), "736", YUP_POSITIVE) == YUP_OK);
  yup_board* out = nullptr;
  char* trace = nullptr;
  REQUIRE(yup_board_simplify(loaded.get(), nullptr, &out, &trace) == YUP_OK);
  Board simple(out);
  CHECK(value_of(simple.get()) == "1268");
  CHECK(take(trace).rfind("step=0 rule_id=pichana-12 anchor_row=0", 0) == 0);

  Board mixed = encode("945");
  REQUIRE(yup_board_load(mixed.get(), "532", YUP_NEGATIVE) == YUP_OK);
  CHECK(yup_board_simplify(mixed.get(), nullptr, &out, nullptr) == YUP_ERR_DOMAIN);
  REQUIRE(yup_board_pair_and_cancel(mixed.get(), &out, nullptr) == YUP_OK);
  Board single(out);
  CHECK(value_of(single.get()) == "413");

  REQUIRE(yup_board_explore(loaded.get(), nullptr, &text) == YUP_OK);
  const json report = json::parse(take(text));
  CHECK(report["terminal_count"] == 1);
  CHECK(report["confluent"] == true);
}

TEST_CASE("procedures") {
  const char* addends[] = {"736", "532"};
  yup_result* raw = nullptr;
  REQUIRE(yup_add(addends, 2, 0, &raw) == YUP_OK);
  Result add(raw);
  CHECK(result_value(add.get()) == "1268");
  char* text = nullptr;
  CHECK(yup_result_quotient(add.get(), &text) == YUP_ERR_DOMAIN);

  const char* subs[] = {"532"};
  REQUIRE(yup_sub("945", subs, 1, 0, &raw) == YUP_OK);
  Result sub(raw);
  CHECK(result_value(sub.get()) == "413");

  REQUIRE(yup_mul("513", "3", 0, &raw) == YUP_OK);
  Result mul(raw);
  CHECK(result_value(mul.get()) == "1539");
  REQUIRE(yup_result_trace(mul.get(), &text) == YUP_OK);
  CHECK_FALSE(take(text).empty());

  REQUIRE(yup_div("1534", "322", 0, &raw) == YUP_OK);
  Result div(raw);
  REQUIRE(yup_result_quotient(div.get(), &text) == YUP_OK);
  CHECK(take(text) == "4");
  REQUIRE(yup_result_remainder(div.get(), &text) == YUP_OK);
  CHECK(take(text) == "246");
  REQUIRE(yup_result_division_steps(div.get(), &text) == YUP_OK);
  CHECK(take(text) == "k=0 subtractions=4\n");
  yup_board* terminal = nullptr;
  REQUIRE(yup_result_board(div.get(), &terminal) == YUP_OK);
  Board t(terminal);
  CHECK(value_of(t.get()) == "246");
  REQUIRE(yup_result_json(div.get(), &text) == YUP_OK);
  const json j = json::parse(take(text));
  CHECK(j["quotient"] == "4");
  CHECK(j["remainder"] == "246");

  CHECK(yup_div("10", "0", 0, &raw) == YUP_ERR_DOMAIN);
  const char* big[] = {"99999", "1"};
  CHECK(yup_add(big, 2, 0, &raw) == YUP_ERR_OVERFLOW);
}

TEST_CASE("catalog and verify") {
  char* text = nullptr;
  REQUIRE(yup_catalog_json(&text) == YUP_OK);
  CHECK(json::parse(take(text))["rules"].size() == 22);

  int passed = 0;
  REQUIRE(yup_verify(R"({"samples":50,"trials_per_rule":5,"properties":["thm1","thm3"]})", &text, &passed) == YUP_OK);
  const std::string report = take(text);
  CHECK(passed == 1);
  CHECK(report.find("\"property\":\"thm1\"") != std::string::npos);
  CHECK(report.find("\"property\":\"thm3\"") != std::string::npos);
  CHECK(report.find("thm2") == std::string::npos);
  CHECK(yup_verify(R"({"properties":["thm99"]})", &text, &passed) != YUP_OK);
}

TEST_CASE("sessions") {
  yup_store* raw = nullptr;
  REQUIRE(yup_store_new(nullptr, &raw) == YUP_OK);
  Store store(raw);
  char* text = nullptr;
  REQUIRE(yup_session_create(store.get(), R"({"mode":"guided","operation":"add","operands":[736,532]})", &text) == YUP_OK);
  const std::string id = json::parse(take(text))["id"];

  REQUIRE(yup_session_matches(store.get(), id.c_str(), nullptr, &text) == YUP_OK);
  const json ms = json::parse(take(text));
  const std::string mid = ms["matches"][0]["id"];
  REQUIRE(yup_session_apply(store.get(), id.c_str(), mid.c_str(), &text) == YUP_OK);
  yup_string_free(text);
  CHECK(yup_session_apply(store.get(), id.c_str(), mid.c_str(), &text) == YUP_ERR_STALE_MATCH);

  REQUIRE(yup_session_hint(store.get(), id.c_str(), &text) == YUP_OK);
  yup_string_free(text);
  REQUIRE(yup_session_auto(store.get(), id.c_str(), nullptr, &text) == YUP_OK);
  CHECK(json::parse(take(text))["board"]["decoded"] == "1268");
  CHECK(yup_session_hint(store.get(), id.c_str(), &text) == YUP_ERR_NO_MATCH);

  REQUIRE(yup_session_load(store.get(), id.c_str(), "3", YUP_NEGATIVE, &text) == YUP_OK);
  CHECK(json::parse(take(text))["board"]["value"] == "1265");
  REQUIRE(yup_session_apply_move(store.get(), id.c_str(),
                                 R"({"rule":"chinkay","sign":"+","anchor":{"weight":3,"row":0},"k":1})", &text) == YUP_OK);
  yup_string_free(text);

  REQUIRE(yup_session_trace(store.get(), id.c_str(), &text) == YUP_OK);
  CHECK(take(text).find("rule_id=chinkay") != std::string::npos);

  REQUIRE(yup_session_get(store.get(), id.c_str(), &text) == YUP_OK);
  const json state = json::parse(take(text));
  REQUIRE(yup_session_events(store.get(), id.c_str(), &text) == YUP_OK);
  const std::string log = take(text);
  REQUIRE(yup_replay(log.c_str(), &text) == YUP_OK);
  CHECK(take(text) == state["board"]["snapshot"]);
  CHECK(yup_replay("{}\n", &text) == YUP_ERR_PARSE);

  int status = 0;
  REQUIRE(yup_store_request(store.get(), "GET", "/v1/sessions/nope", nullptr, nullptr, &status, &text) == YUP_OK);
  CHECK(status == 404);
  yup_string_free(text);
  CHECK(yup_session_get(store.get(), "nope", &text) == YUP_ERR_NOT_FOUND);
}

TEST_CASE("server") {
  yup_store* raw = nullptr;
  REQUIRE(yup_store_new(nullptr, &raw) == YUP_OK);
  Store store(raw);
  yup_server* server = nullptr;
  REQUIRE(yup_server_start(store.get(), "127.0.0.1", 0, &server) == YUP_OK);
  int port = 0;
  REQUIRE(yup_server_port(server, &port) == YUP_OK);
  CHECK(port > 0);
  yup_server_stop(server);
}

}  // TEST_SUITE
