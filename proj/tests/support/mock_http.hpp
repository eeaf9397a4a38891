// In-process mock chat-completions endpoint for tests: binds an ephemeral
// port on localhost and serves deterministic canned replies.

#pragma once

#include <memory>
#include <string>
#include <thread>

#include <httplib.h>

#include "fmn/sim_mock.hpp"

namespace testsupport {

class MockServer {
 public:
  explicit MockServer(int malform_nth = 0) {
    if (malform_nth > 0) responder_.malform_nth(malform_nth);
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   res.set_content(responder_.respond(req.body), "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }

  int requests_seen() const { return responder_.requests_seen(); }

 private:
  fmn::MockChatResponder responder_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace testsupport
