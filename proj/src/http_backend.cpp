#include "intentest/errors.hpp"
#include "intentest/llm.hpp"

#include <httplib.h>

#include <cstdlib>
#include <regex>
#include <thread>

namespace intentest {

namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw ConfigError("invalid endpoint URL '" + url + "'");
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  parse_url(config_.endpoint);
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  }
}

nlohmann::json HttpBackend::request_body(const CompletionRequest& req) const {
  nlohmann::json body = {
      {"model", config_.model},
      {"temperature", req.temperature},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", req.prompt}}})},
  };
  if (req.max_output_tokens) body["max_tokens"] = *req.max_output_tokens;
  return body;
}

std::string HttpBackend::complete(const CompletionRequest& req) {
  auto url = parse_url(config_.endpoint);
  auto payload = request_body(req).dump();
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  std::string last_error;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    httplib::Client client(url.origin);
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
    } else {
      try {
        auto reply = nlohmann::json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        last_error = std::string("malformed reply: ") + e.what();
      }
    }
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw BackendUnavailable("chat completion failed after " + std::to_string(config_.max_attempts) +
                           " attempts: " + last_error);
}

}  // namespace intentest
