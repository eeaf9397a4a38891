// Mock chat-completions endpoint for offline runs and tests. Replies are
// deterministic functions of each request body; --malform-nth N makes the
// N-th request return one value too few (exercises client retries).

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "fmn/sim_mock.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mock chat-completions server"};
  int port = 8089;
  int malform_nth = 0;
  app.add_option("--port", port, "TCP port to listen on (0 picks a free port)");
  app.add_option("--malform-nth", malform_nth,
                 "return a malformed reply for the n-th request (1-based)");
  CLI11_PARSE(app, argc, argv);

  fmn::MockChatResponder responder;
  if (malform_nth > 0) responder.malform_nth(malform_nth);

  httplib::Server server;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    res.set_content(responder.respond(req.body), "application/json");
  });
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  if (port == 0) {
    port = server.bind_to_any_port("127.0.0.1");
    std::printf("listening on http://127.0.0.1:%d\n", port);
    std::fflush(stdout);
    server.listen_after_bind();
  } else {
    std::printf("listening on http://127.0.0.1:%d\n", port);
    std::fflush(stdout);
    server.listen("127.0.0.1", port);
  }
  return 0;
}
