#include "yupana/yupana.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <pthread.h>

using nlohmann::json;

namespace {

constexpr int kExitFailed = 1;  // verification failure, non-confluent exploration
constexpr int kExitError = 3;   // the library reported an error

struct Failure {
  yup_status status;
};

// Takes ownership of a string from the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  yup_string_free(s);
  return out;
}

void check(yup_status st) {
  if (st != YUP_OK) throw Failure{st};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

using Result = Handle<yup_result, yup_result_free>;
using Board = Handle<yup_board, yup_board_free>;
using Store = Handle<yup_store, yup_store_free>;

std::vector<const char*> c_strs(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void print_result(yup_result* r, bool division, bool trace, bool as_json) {
  char* s = nullptr;
  if (as_json) {
    check(yup_result_json(r, &s));
    std::cout << take(s) << "\n";
    return;
  }
  if (division) {
    check(yup_result_quotient(r, &s));
    std::cout << "quotient=" << take(s) << "\n";
    check(yup_result_remainder(r, &s));
    std::cout << "remainder=" << take(s) << "\n";
    check(yup_result_division_steps(r, &s));
    std::cout << take(s);
  } else {
    check(yup_result_value(r, &s));
    std::cout << "value=" << take(s) << "\n";
  }
  Board b;
  check(yup_result_board(r, &b.p));
  check(yup_board_snapshot(b.p, &s));
  std::cout << take(s);
  if (trace) {
    check(yup_result_trace(r, &s));
    std::cout << take(s);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Grid view, top row first, columns 5 3 2 1.
void render(const json& board) {
  const int rows = board["rows"].get<int>();
  std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(rows), std::vector<std::string>(4, "."));
  const int col[6] = {-1, 3, 2, 1, -1, 0};
  for (const auto& c : board["cells"]) {
    std::string text;
    if (c["pos"].get<std::uint64_t>()) text += "+" + std::to_string(c["pos"].get<std::uint64_t>());
    if (c["neg"].get<std::uint64_t>()) text += "-" + std::to_string(c["neg"].get<std::uint64_t>());
    grid[c["row"].get<std::size_t>()][static_cast<std::size_t>(col[c["weight"].get<int>()])] = text;
  }
  for (int r = rows - 1; r >= 0; --r) {
    std::printf("  row %-2d |", r);
    for (const auto& cell : grid[static_cast<std::size_t>(r)]) std::printf(" %6s", cell.c_str());
    std::printf("\n");
  }
  std::printf("         | %6s %6s %6s %6s\n", "[5]", "[3]", "[2]", "[1]");
  std::cout << "  value " << board["value"].get<std::string>() << (board["is_simple"].get<bool>() ? "  (simple)" : "") << "\n";
}

void report_error(yup_status st) {
  std::cerr << "error (" << yup_status_name(st) << "): " << yup_last_error() << "\n";
}

void play_help() {
  std::cout << "commands:\n"
               "  show                  board and value\n"
               "  load <n> [+|-]        superimpose n\n"
               "  matches [rule,...]    list matches\n"
               "  apply <index|id>      fire a listed match\n"
               "  auto [budget]         canonical strategy\n"
               "  hint                  next canonical move\n"
               "  trace                 moves so far\n"
               "  events                session event log\n"
               "  quit\n";
}

int play(const std::string& log_dir, int rows, const std::string& mode, const std::string& operation,
         const std::vector<std::string>& operands) {
  Store store;
  check(yup_store_new(log_dir.empty() ? nullptr : log_dir.c_str(), &store.p));
  json request{{"rows", rows}, {"mode", mode}};
  if (!operation.empty()) {
    request["operation"] = operation;
    request["operands"] = operands;
  }
  char* s = nullptr;
  check(yup_session_create(store.p, request.dump().c_str(), &s));
  json session = json::parse(take(s));
  const std::string id = session["id"];
  std::cout << "session " << id << " (" << mode << ")\n";
  render(session["board"]);

  std::vector<std::string> listed;
  std::string line;
  std::cout << "> " << std::flush;
  while (std::getline(std::cin, line)) {
    std::istringstream in(line);
    std::string cmd;
    in >> cmd;
    yup_status st = YUP_OK;
    if (cmd.empty()) {
    } else if (cmd == "quit" || cmd == "exit") {
      break;
    } else if (cmd == "help") {
      play_help();
    } else if (cmd == "show") {
      if ((st = yup_session_get(store.p, id.c_str(), &s)) == YUP_OK) render(json::parse(take(s))["board"]);
    } else if (cmd == "load") {
      std::string value, sign = "+";
      in >> value >> sign;
      st = yup_session_load(store.p, id.c_str(), value.c_str(), sign == "-" ? YUP_NEGATIVE : YUP_POSITIVE, &s);
      if (st == YUP_OK) render(json::parse(take(s))["board"]);
    } else if (cmd == "matches") {
      std::string rules;
      in >> rules;
      if ((st = yup_session_matches(store.p, id.c_str(), rules.empty() ? nullptr : rules.c_str(), &s)) == YUP_OK) {
        const json out = json::parse(take(s));
        listed.clear();
        for (const auto& m : out["matches"]) {
          std::cout << "  [" << listed.size() << "] " << m["id"].get<std::string>() << "  " << m["summary"].get<std::string>() << "\n";
          listed.push_back(m["id"]);
        }
        if (listed.empty()) std::cout << "  no matches\n";
      }
    } else if (cmd == "apply") {
      std::string which;
      in >> which;
      std::string match_id = which;
      if (!which.empty() && which.find_first_not_of("0123456789") == std::string::npos && std::stoul(which) < listed.size())
        match_id = listed[std::stoul(which)];
      if ((st = yup_session_apply(store.p, id.c_str(), match_id.c_str(), &s)) == YUP_OK) {
        const json out = json::parse(take(s));
        std::cout << "  " << out["applied"]["summary"].get<std::string>() << "\n";
        render(out["board"]);
        if (out["complete"].get<bool>()) std::cout << "  complete after " << out["mode"]["move_count"] << " moves\n";
      }
    } else if (cmd == "auto") {
      std::size_t budget = 10000;
      in >> budget;
      const json body{{"strategy", "canonical"}, {"budget", budget}};
      if ((st = yup_session_auto(store.p, id.c_str(), body.dump().c_str(), &s)) == YUP_OK) {
        const json out = json::parse(take(s));
        std::cout << "  " << out["auto"]["moves"] << " moves\n";
        render(out["board"]);
      }
    } else if (cmd == "hint") {
      if ((st = yup_session_hint(store.p, id.c_str(), &s)) == YUP_OK)
        std::cout << "  " << json::parse(take(s))["match"]["summary"].get<std::string>() << "\n";
    } else if (cmd == "trace") {
      if ((st = yup_session_trace(store.p, id.c_str(), &s)) == YUP_OK) std::cout << take(s);
    } else if (cmd == "events") {
      if ((st = yup_session_events(store.p, id.c_str(), &s)) == YUP_OK) std::cout << take(s);
    } else {
      std::cout << "unknown command '" << cmd << "' (try help)\n";
    }
    if (st != YUP_OK) report_error(st);
    std::cout << "> " << std::flush;
  }
  return 0;
}

int serve(const std::string& host, int port, const std::string& log_dir) {
  // Block the stop signals before any server thread exists, then wait for one.
  sigset_t stop;
  sigemptyset(&stop);
  sigaddset(&stop, SIGINT);
  sigaddset(&stop, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop, nullptr);

  Store store;
  check(yup_store_new(log_dir.empty() ? nullptr : log_dir.c_str(), &store.p));
  if (!log_dir.empty()) {
    std::size_t restored = 0;
    check(yup_store_restore(store.p, &restored));
    if (restored) std::cerr << "restored " << restored << " sessions from " << log_dir << "\n";
  }
  yup_server* server = nullptr;
  check(yup_server_start(store.p, host.c_str(), port, &server));
  int bound = 0;
  yup_server_port(server, &bound);
  std::cout << "listening on http://" << host << ":" << bound << "/v1" << std::endl;
  int sig = 0;
  sigwait(&stop, &sig);
  yup_server_stop(server);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yupana arithmetic engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(yup_version()));

  int rows = 5;
  bool trace = false;
  bool as_json = false;
  std::vector<std::string> operands;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--rows", rows, "board rows")->check(CLI::Range(1, 64));
    cmd->add_flag("--trace", trace, "print the move trace");
    cmd->add_flag("--json", as_json, "print the full result as JSON");
  };

  auto* add = app.add_subcommand("add", "addition: superimpose and simplify");
  add->add_option("operands", operands, "addends")->required()->expected(1, -1);
  add_common(add);

  auto* sub = app.add_subcommand("sub", "subtraction: minuend, then subtrahends");
  sub->add_option("operands", operands, "minuend and subtrahends")->required()->expected(2, -1);
  add_common(sub);

  auto* mul = app.add_subcommand("mul", "multiplication by abbreviated replication");
  mul->add_option("operands", operands, "multiplicand multiplier")->required()->expected(2);
  add_common(mul);

  auto* div = app.add_subcommand("div", "division by fast repeated subtraction");
  div->add_option("operands", operands, "dividend divisor")->required()->expected(2);
  add_common(div);

  std::uint64_t seed = 20220619;
  std::uint64_t samples = 1000;
  std::uint64_t per_rule = 1000;
  std::vector<std::string> properties;
  int add_max = 99, mul_a_max = 99, mul_b_max = 20, div_a_max = 99, div_b_max = 20, n_max = 999, decompositions = 3;
  auto* verify = app.add_subcommand("verify", "run the property suites; one JSON record per property");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--samples", samples, "samples per randomized property");
  verify->add_option("--trials-per-rule", per_rule, "randomized states per rule for thm2");
  verify->add_option("--property", properties, "only these properties (thm1..thm9, confluence, parallelism)");
  verify->add_option("--add-max", add_max, "yapay and taqay over [0, N]^2");
  verify->add_option("--mul-a-max", mul_a_max);
  verify->add_option("--mul-b-max", mul_b_max);
  verify->add_option("--div-a-max", div_a_max);
  verify->add_option("--div-b-max", div_b_max);
  verify->add_option("--confluence-n-max", n_max, "confluence over n in [0, N]");
  verify->add_option("--decompositions", decompositions, "random decompositions per n");
  verify->add_option("--rows", rows, "board rows for the operation checks")->check(CLI::Range(1, 64));

  std::vector<std::string> summands;
  std::string snapshot_file;
  std::string rules = "non-expansion";
  std::size_t max_states = 1'000'000;
  auto* explore = app.add_subcommand("explore", "all rewrite paths from a board; reports its terminal states");
  auto* summands_opt = explore->add_option("--summands", summands, "superimpose these numbers")->expected(1, -1);
  explore->add_option("--snapshot", snapshot_file, "start from a board snapshot file")->excludes(summands_opt);
  explore->add_option("--rules", rules, "non-expansion, all, or comma-separated rule ids");
  explore->add_option("--max-states", max_states, "state budget");
  explore->add_option("--rows", rows, "board rows")->check(CLI::Range(1, 64));

  std::string mode = "free", operation, log_dir;
  auto* play_cmd = app.add_subcommand("play", "line-mode interactive session");
  play_cmd->add_option("--rows", rows, "board rows")->check(CLI::Range(1, 64));
  play_cmd->add_option("--mode", mode, "free, guided or atipanakuy")->check(CLI::IsMember({"free", "guided", "atipanakuy"}));
  play_cmd->add_option("--operation", operation, "add, sub or mul")->check(CLI::IsMember({"add", "sub", "mul"}));
  play_cmd->add_option("--operands", operands, "operands of the operation");
  play_cmd->add_option("--log-dir", log_dir, "persist the session event log here");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP service under /v1");
  serve_cmd->add_option("--port", port, "port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--log-dir", log_dir, "session event logs; existing logs are replayed at start");

  auto* catalog = app.add_subcommand("catalog", "rule catalog as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    char* s = nullptr;
    if (*add || *sub || *mul || *div) {
      Result r;
      if (*add) {
        auto ptrs = c_strs(operands);
        check(yup_add(ptrs.data(), ptrs.size(), rows, &r.p));
      } else if (*sub) {
        std::vector<std::string> rest(operands.begin() + 1, operands.end());
        auto ptrs = c_strs(rest);
        check(yup_sub(operands[0].c_str(), ptrs.data(), ptrs.size(), rows, &r.p));
      } else if (*mul) {
        check(yup_mul(operands[0].c_str(), operands[1].c_str(), rows, &r.p));
      } else {
        check(yup_div(operands[0].c_str(), operands[1].c_str(), rows, &r.p));
      }
      print_result(r.p, static_cast<bool>(*div), trace, as_json);
      return 0;
    }
    if (*verify) {
      json options{{"seed", seed},           {"samples", samples},       {"trials_per_rule", per_rule},
                   {"rows", rows},           {"add_max", add_max},       {"mul_a_max", mul_a_max},
                   {"mul_b_max", mul_b_max}, {"div_a_max", div_a_max},   {"div_b_max", div_b_max},
                   {"confluence_n_max", n_max}, {"decompositions", decompositions}};
      if (!properties.empty()) options["properties"] = properties;
      int passed = 0;
      check(yup_verify(options.dump().c_str(), &s, &passed));
      std::cout << take(s);
      return passed ? 0 : kExitFailed;
    }
    if (*explore) {
      Board b;
      if (!snapshot_file.empty()) {
        check(yup_board_from_snapshot(read_file(snapshot_file).c_str(), &b.p));
      } else {
        if (summands.empty()) throw std::runtime_error("explore needs --summands or --snapshot");
        check(yup_board_new(rows, &b.p));
        for (const auto& n : summands) check(yup_board_load(b.p, n.c_str(), YUP_POSITIVE));
      }
      json options{{"max_states", max_states}};
      if (rules == "all" || rules == "non-expansion") {
        options["rules"] = rules;
      } else {
        json list = json::array();
        std::stringstream ss(rules);
        for (std::string key; std::getline(ss, key, ',');)
          if (!key.empty()) list.push_back(key);
        options["rules"] = list;
      }
      check(yup_board_explore(b.p, options.dump().c_str(), &s));
      const json report = json::parse(take(s));
      std::cout << report.dump(2) << "\n";
      return report["confluent"].get<bool>() ? 0 : kExitFailed;
    }
    if (*play_cmd) return play(log_dir, rows, mode, operation, operands);
    if (*serve_cmd) return serve(host, port, log_dir);
    if (*catalog) {
      check(yup_catalog_json(&s));
      std::cout << json::parse(take(s)).dump(2) << "\n";
      return 0;
    }
  } catch (const Failure& f) {
    report_error(f.status);
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
