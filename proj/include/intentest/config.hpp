#pragma once

#include "intentest/core.hpp"
#include "intentest/java_oracle.hpp"
#include "intentest/llm.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace intentest {

/// Everything a run needs besides the dataset and the backend choice.
struct RunConfig {
  PipelineConfig pipeline;
  HttpBackendConfig http;
  JavaToolchainConfig java;
  std::optional<std::filesystem::path> templates_dir;
};

/// Applies one `key = value` setting. Throws ConfigError for unknown keys
/// or malformed values. Keys:
///   max_iter_val, max_iter_ana, n_tests, temperature, backend, oracle,
///   workdir, worker_count, templates,
///   http.endpoint, http.model, http.api_key_env, http.timeout_s, http.max_attempts,
///   java.javac, java.java, java.junit_jar, java.jacoco_agent, java.jacoco_cli,
///   java.classpath (':'-separated), java.test_timeout_s, java.compile_timeout_s,
///   java.max_processes
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses a config file: one `key = value` per line, `#` starts a comment.
/// Relative paths in values stay relative to the working directory.
void apply_config_text(RunConfig& config, std::string_view text, std::string_view origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace intentest
