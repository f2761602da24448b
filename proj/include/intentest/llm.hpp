#pragma once

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace intentest {

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.0;
  std::optional<int> max_output_tokens;
  std::string tag;  // pipeline stage label, e.g. "generation", "repair"
};

/// Hex SHA-256 over the raw prompt bytes, a NUL separator and the
/// shortest round-trip rendering of the temperature.
std::string key_of(std::string_view prompt, double temperature);

struct TranscriptEntry {
  std::string key;
  int ordinal = 0;
  std::string tag;
  std::string prompt;
  std::string response;
};

void to_json(nlohmann::json& j, const TranscriptEntry& e);
void from_json(const nlohmann::json& j, TranscriptEntry& e);

class Backend {
 public:
  virtual ~Backend() = default;
  /// Returns the model's reply. Implementations accept concurrent calls.
  virtual std::string complete(const CompletionRequest& req) = 0;
  virtual std::string id() const = 0;
};

/// Canned replies for tests and offline runs. Rules are consulted in order;
/// a rule applies when its tag (if set) equals the request tag and its match
/// string (if set) occurs in the prompt, and it still has replies (or
/// repeat_last is set). Unmatched requests fall back to the responder, then
/// to the plain FIFO queue.
class ScriptedBackend : public Backend {
 public:
  struct Rule {
    std::string tag;
    std::string match;
    std::deque<std::string> responses;
    bool repeat_last = false;
    std::optional<std::string> last;
  };
  using Responder = std::function<std::optional<std::string>(const CompletionRequest&)>;

  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<std::string> queue);

  /// {"rules": [{"tag": ..., "match": ..., "responses": [...], "repeat_last": bool}],
  ///  "queue": [...]}
  static std::unique_ptr<ScriptedBackend> from_json(const nlohmann::json& script);
  static std::unique_ptr<ScriptedBackend> load(const std::filesystem::path& path);

  void push(std::string response);
  void push(const std::string& tag, std::string response);
  void add_rule(Rule rule);
  void set_responder(Responder responder);

  std::string complete(const CompletionRequest& req) override;
  std::string id() const override { return "scripted"; }

  std::vector<CompletionRequest> calls() const;
  std::size_t call_count() const;
  std::size_t call_count(std::string_view tag) const;

 private:
  mutable std::mutex mu_;
  std::vector<Rule> rules_;
  std::deque<std::string> queue_;
  Responder responder_;
  std::vector<CompletionRequest> calls_;
};

/// Wraps another backend and appends every exchange to a JSON-lines transcript.
class RecordingBackend : public Backend {
 public:
  RecordingBackend(std::shared_ptr<Backend> inner, const std::filesystem::path& transcript);

  std::string complete(const CompletionRequest& req) override;
  std::string id() const override { return inner_->id(); }

 private:
  std::shared_ptr<Backend> inner_;
  std::mutex mu_;
  std::ofstream out_;
  std::map<std::string, int> next_ordinal_;
};

/// Serves responses from a recorded transcript, in recorded order per key.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(std::vector<TranscriptEntry> entries);
  static std::unique_ptr<ReplayBackend> load(const std::filesystem::path& transcript);

  /// Throws ReplayMiss when the transcript holds no entry for the next ordinal.
  std::string complete(const CompletionRequest& req) override;
  std::string id() const override { return "replay"; }

 private:
  std::map<std::string, std::map<int, std::string>> responses_;
  std::mutex mu_;
  std::map<std::string, int> next_ordinal_;
};

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path);

struct HttpBackendConfig {
  std::string endpoint = "https://api.deepseek.com/v1/chat/completions";
  std::string model = "deepseek-chat";
  std::string api_key_env = "INTENTEST_API_KEY";
  std::chrono::seconds timeout{300};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
};

/// Chat-completions client: one user message per request.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  /// Throws BackendUnavailable after max_attempts failed tries.
  std::string complete(const CompletionRequest& req) override;
  std::string id() const override { return "http"; }

  /// Request body sent for `req` (exposed for tests).
  nlohmann::json request_body(const CompletionRequest& req) const;

 private:
  HttpBackendConfig config_;
  std::string api_key_;
};

struct CallRecord {
  std::string tag;
  std::string key;
};

/// Per-sample view of a backend: fixes the temperature and logs every call.
/// Not thread-safe; one session belongs to one sequential sample pipeline.
class LlmSession {
 public:
  LlmSession(Backend& backend, double temperature) : backend_(backend), temperature_(temperature) {}

  std::string ask(std::string tag, std::string prompt);

  const std::vector<CallRecord>& calls() const { return calls_; }
  std::size_t call_count() const { return calls_.size(); }
  std::size_t call_count(std::string_view tag) const;

 private:
  Backend& backend_;
  double temperature_;
  std::vector<CallRecord> calls_;
};

}  // namespace intentest
