#include "intentest/llm.hpp"

#include "intentest/errors.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace intentest {

std::string key_of(std::string_view prompt, double temperature) {
  std::string material(prompt);
  material.push_back('\0');
  material += nlohmann::json(temperature).dump();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(material.data(), material.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

void to_json(nlohmann::json& j, const TranscriptEntry& e) {
  j = nlohmann::json{{"key", e.key}, {"ordinal", e.ordinal}, {"tag", e.tag},
                     {"prompt", e.prompt}, {"response", e.response}};
}

void from_json(const nlohmann::json& j, TranscriptEntry& e) {
  j.at("key").get_to(e.key);
  j.at("ordinal").get_to(e.ordinal);
  e.tag = j.value("tag", "");
  j.at("prompt").get_to(e.prompt);
  j.at("response").get_to(e.response);
}

// ---------------------------------------------------------------- scripted

ScriptedBackend::ScriptedBackend(std::vector<std::string> queue)
    : queue_(queue.begin(), queue.end()) {}

std::unique_ptr<ScriptedBackend> ScriptedBackend::from_json(const nlohmann::json& script) {
  auto backend = std::make_unique<ScriptedBackend>();
  for (const auto& r : script.value("rules", nlohmann::json::array())) {
    Rule rule;
    rule.tag = r.value("tag", "");
    rule.match = r.value("match", "");
    for (const auto& resp : r.at("responses")) rule.responses.push_back(resp.get<std::string>());
    rule.repeat_last = r.value("repeat_last", false);
    backend->add_rule(std::move(rule));
  }
  for (const auto& resp : script.value("queue", nlohmann::json::array())) {
    backend->push(resp.get<std::string>());
  }
  return backend;
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script file " + path.string());
  nlohmann::json script;
  try {
    in >> script;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed script file " + path.string() + ": " + e.what());
  }
  return from_json(script);
}

void ScriptedBackend::push(std::string response) {
  std::lock_guard lock(mu_);
  queue_.push_back(std::move(response));
}

void ScriptedBackend::push(const std::string& tag, std::string response) {
  std::lock_guard lock(mu_);
  for (auto& rule : rules_) {
    if (rule.tag == tag && rule.match.empty()) {
      rule.responses.push_back(std::move(response));
      return;
    }
  }
  Rule rule;
  rule.tag = tag;
  rule.responses.push_back(std::move(response));
  rules_.push_back(std::move(rule));
}

void ScriptedBackend::add_rule(Rule rule) {
  std::lock_guard lock(mu_);
  rules_.push_back(std::move(rule));
}

void ScriptedBackend::set_responder(Responder responder) {
  std::lock_guard lock(mu_);
  responder_ = std::move(responder);
}

std::string ScriptedBackend::complete(const CompletionRequest& req) {
  std::lock_guard lock(mu_);
  calls_.push_back(req);
  for (auto& rule : rules_) {
    if (!rule.tag.empty() && rule.tag != req.tag) continue;
    if (!rule.match.empty() && req.prompt.find(rule.match) == std::string::npos) continue;
    if (!rule.responses.empty()) {
      rule.last = std::move(rule.responses.front());
      rule.responses.pop_front();
      return *rule.last;
    }
    if (rule.repeat_last && rule.last) return *rule.last;
  }
  if (responder_) {
    if (auto reply = responder_(req)) return *reply;
  }
  if (!queue_.empty()) {
    auto reply = std::move(queue_.front());
    queue_.pop_front();
    return reply;
  }
  throw ScriptExhausted("scripted backend has no reply for a '" + req.tag + "' request");
}

std::vector<CompletionRequest> ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::size_t ScriptedBackend::call_count() const {
  std::lock_guard lock(mu_);
  return calls_.size();
}

std::size_t ScriptedBackend::call_count(std::string_view tag) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& c : calls_) n += c.tag == tag ? 1 : 0;
  return n;
}

// ---------------------------------------------------------------- record/replay

RecordingBackend::RecordingBackend(std::shared_ptr<Backend> inner, const std::filesystem::path& transcript)
    : inner_(std::move(inner)) {
  if (transcript.has_parent_path()) std::filesystem::create_directories(transcript.parent_path());
  out_.open(transcript, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError("cannot open transcript for writing: " + transcript.string());
}

std::string RecordingBackend::complete(const CompletionRequest& req) {
  auto response = inner_->complete(req);
  TranscriptEntry entry{key_of(req.prompt, req.temperature), 0, req.tag, req.prompt, response};
  std::lock_guard lock(mu_);
  entry.ordinal = next_ordinal_[entry.key]++;
  out_ << nlohmann::json(entry).dump() << '\n';
  out_.flush();
  return response;
}

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open transcript " + path.string());
  std::vector<TranscriptEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      entries.push_back(nlohmann::json::parse(line).get<TranscriptEntry>());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return entries;
}

ReplayBackend::ReplayBackend(std::vector<TranscriptEntry> entries) {
  for (auto& e : entries) responses_[e.key][e.ordinal] = std::move(e.response);
}

std::unique_ptr<ReplayBackend> ReplayBackend::load(const std::filesystem::path& transcript) {
  return std::make_unique<ReplayBackend>(read_transcript(transcript));
}

std::string ReplayBackend::complete(const CompletionRequest& req) {
  auto key = key_of(req.prompt, req.temperature);
  std::lock_guard lock(mu_);
  int ordinal = next_ordinal_[key];
  auto it = responses_.find(key);
  if (it == responses_.end()) throw ReplayMiss(key, ordinal);
  auto entry = it->second.find(ordinal);
  if (entry == it->second.end()) throw ReplayMiss(key, ordinal);
  ++next_ordinal_[key];
  return entry->second;
}

// ---------------------------------------------------------------- session

std::string LlmSession::ask(std::string tag, std::string prompt) {
  CompletionRequest req{std::move(prompt), temperature_, std::nullopt, std::move(tag)};
  calls_.push_back({req.tag, key_of(req.prompt, req.temperature)});
  return backend_.complete(req);
}

std::size_t LlmSession::call_count(std::string_view tag) const {
  std::size_t n = 0;
  for (const auto& c : calls_) n += c.tag == tag ? 1 : 0;
  return n;
}

}  // namespace intentest
