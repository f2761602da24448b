#include "intentest/config.hpp"

#include "intentest/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace intentest {
namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
  }
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  std::string s(value);
  std::size_t used = 0;
  try {
    double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + std::string(key) + "' expects a number, got '" + s + "'");
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  const std::string v(value);
  auto& p = c.pipeline;
  if (key == "max_iter_val") p.max_iter_val = to_int(key, value);
  else if (key == "max_iter_ana") p.max_iter_ana = to_int(key, value);
  else if (key == "n_tests") p.n_tests = to_int(key, value);
  else if (key == "temperature") p.temperature = to_double(key, value);
  else if (key == "backend") p.backend_id = v;
  else if (key == "oracle") p.oracle_id = v;
  else if (key == "workdir") p.workdir = v;
  else if (key == "worker_count") p.worker_count = to_int(key, value);
  else if (key == "templates") c.templates_dir = v;
  else if (key == "http.endpoint") c.http.endpoint = v;
  else if (key == "http.model") c.http.model = v;
  else if (key == "http.api_key_env") c.http.api_key_env = v;
  else if (key == "http.timeout_s") c.http.timeout = std::chrono::seconds(to_int(key, value));
  else if (key == "http.max_attempts") c.http.max_attempts = to_int(key, value);
  else if (key == "java.javac") c.java.javac = v;
  else if (key == "java.java") c.java.java = v;
  else if (key == "java.junit_jar") c.java.junit_console_jar = v;
  else if (key == "java.jacoco_agent") c.java.jacoco_agent_jar = v;
  else if (key == "java.jacoco_cli") c.java.jacoco_cli_jar = v;
  else if (key == "java.classpath") {
    c.java.classpath.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ':')) {
      if (!item.empty()) c.java.classpath.emplace_back(item);
    }
  } else if (key == "java.test_timeout_s") c.java.test_timeout = std::chrono::seconds(to_int(key, value));
  else if (key == "java.compile_timeout_s") c.java.compile_timeout = std::chrono::seconds(to_int(key, value));
  else if (key == "java.max_processes") c.java.max_processes = to_int(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& config, std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_setting(config, trim(body.substr(0, eq)), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig config;
  apply_config_text(config, ss.str(), path.string());
  return config;
}

}  // namespace intentest
