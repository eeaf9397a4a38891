#pragma once

#include <atomic>
#include <string>

namespace fmn {

/// Canned chat-completions responder for tests and the bundled mock server.
/// Replies are a pure function of the request body (task detected from the
/// prompt text, content seeded by the request hash), so runs are
/// reproducible at any request interleaving. `malform_nth` makes the n-th
/// request (1-based, per responder instance) return one value too few,
/// which drives exactly one client retry when requests are serialized.
class MockChatResponder {
 public:
  MockChatResponder() = default;

  void malform_nth(int n) { malform_nth_ = n; }

  /// Full response body (JSON) for a chat-completions request body.
  std::string respond(const std::string& request_body);

  int requests_seen() const { return counter_.load(); }

 private:
  std::atomic<int> counter_{0};
  int malform_nth_ = 0;
};

}  // namespace fmn
