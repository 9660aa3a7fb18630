#pragma once

#include "yupana/service.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

namespace yupana::service {

struct Request {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> params;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Routes for /v1. Independent of the transport so the C API and tests can
// call it directly.
class Api {
 public:
  explicit Api(SessionStore& store) : store_(store) {}

  Response handle(const Request& request);

 private:
  Response route(const Request& request);
  SessionStore& store_;
};

// HTTP status for an exception thrown by the core.
int status_for(const std::exception& e);
std::string error_code_for(const std::exception& e);

class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws IoError.
  int bind(const std::string& host, int port);
  // Serves until stop(); blocking.
  void run();
  // Serves on a background thread.
  void start();
  void stop();
  int port() const noexcept { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace yupana::service
