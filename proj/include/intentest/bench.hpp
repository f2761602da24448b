#pragma once

#include "intentest/core.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace intentest {

/// A dataset directory:
///
///   manifest.json   {"name": "...", "samples": [{"id", "project", "focal_signature",
///                    "package" (optional), "focal_span": [first, last] (optional),
///                    "dir" (optional, defaults to id)}]}
///   <dir>/buggy.java, <dir>/fixed.java   focal method, one version each
///   <dir>/nld.txt                        natural-language description
///   <dir>/context.json                   {"class_declaration", "fields",
///                                         "method_signatures", "imports"}
///   <dir>/oracle.mock.json               optional mock-oracle rules
struct Dataset {
  std::filesystem::path root;
  std::string name;
  std::vector<BenchmarkSample> samples;
  std::vector<std::filesystem::path> sample_dirs;  // parallel to samples

  std::filesystem::path sample_dir(std::string_view id) const;
};

/// Throws SchemaError (with sample id and field), DuplicateId or ConfigError
/// when the manifest itself is unreadable.
Dataset load_dataset(const std::filesystem::path& root);

struct NldViolation {
  std::string rule;  // functional_abstraction, parameters, return, length
  std::string message;
};

inline constexpr int kMinNldTokens = 47;
inline constexpr int kMaxNldTokens = 299;

std::vector<NldViolation> check_nld_protocol(const BenchmarkSample& sample);

/// Word runs ([A-Za-z0-9_] plus non-ASCII bytes) and single punctuation
/// characters; whitespace separates.
std::vector<std::string> tokenize(std::string_view text);

struct ColumnStats {
  double max = 0, min = 0, median = 0, mean = 0, sd = 0;  // sd is the population deviation
};

struct StatsTable {
  std::size_t n_samples = 0;
  ColumnStats buggy, fixed, nld;
};

ColumnStats column_stats(std::vector<double> values);
/// Throws EmptyDataset.
StatsTable dataset_stats(const std::vector<BenchmarkSample>& samples);
std::string format_stats_table(const StatsTable& table, std::string_view dataset_name);

struct ImportOptions {
  std::filesystem::path buggy_dir;
  std::filesystem::path fixed_dir;
  std::optional<std::filesystem::path> nld_dir;  // <stem>.txt per pair
  std::filesystem::path out_dir;
  std::string project;
  std::string dataset_name = "imported";
};

struct ImportResult {
  std::vector<std::string> imported;
  std::vector<std::string> skipped;  // "<file>: reason"
  std::vector<std::string> missing_nld;
};

/// Builds the dataset layout from same-named buggy/fixed Java files. The
/// focal method is the one named like the file (case-insensitive), else
/// the first method; constructors are never chosen.
ImportResult import_pairs(const ImportOptions& options);

}  // namespace intentest
