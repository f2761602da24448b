#pragma once

#include <stdexcept>
#include <string>

namespace intentest {

// Base of every recoverable pipeline error. Programming errors use the
// standard std::logic_error family instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyBranchSet : public Error {
 public:
  EmptyBranchSet() : Error("no logical branches could be extracted from reply") {}
};

class MissingPlaceholder : public Error {
 public:
  explicit MissingPlaceholder(std::string name)
      : Error("missing binding for placeholder {" + name + "}"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnknownPlaceholder : public Error {
 public:
  explicit UnknownPlaceholder(std::string name)
      : Error("binding {" + name + "} is not a placeholder of the template"),
        name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnknownTemplate : public Error {
 public:
  using Error::Error;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class ReplayMiss : public Error {
 public:
  ReplayMiss(std::string key, int ordinal)
      : Error("replay transcript has no entry for key " + key + " ordinal " +
              std::to_string(ordinal)),
        key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class ScriptExhausted : public Error {
 public:
  using Error::Error;
};

class ScaffoldError : public Error {
 public:
  using Error::Error;
};

class ToolchainMissing : public Error {
 public:
  using Error::Error;
};

class CoverageUnavailable : public Error {
 public:
  using Error::Error;
};

class NoTestsExtracted : public Error {
 public:
  NoTestsExtracted() : Error("no test methods could be extracted from reply") {}
};

class SchemaError : public Error {
 public:
  SchemaError(std::string sample_id, std::string field, const std::string& detail)
      : Error("sample '" + sample_id + "': field '" + field + "': " + detail),
        sample_id_(std::move(sample_id)),
        field_(std::move(field)) {}
  const std::string& sample_id() const noexcept { return sample_id_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string sample_id_;
  std::string field_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id) : Error("duplicate sample id '" + id + "'") {}
};

class EmptyDataset : public Error {
 public:
  EmptyDataset() : Error("dataset contains no samples") {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace intentest
