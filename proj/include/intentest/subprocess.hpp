#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace intentest {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};

/// Runs argv[0] (looked up on PATH) in `cwd`, capturing stdout and stderr.
/// The process group is killed once `timeout` elapses.
ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                          std::chrono::milliseconds timeout);

/// Resolves an executable name against PATH; absolute/relative paths are
/// checked directly.
std::optional<std::filesystem::path> find_executable(const std::string& name);

/// Counting semaphore bounding simultaneous external toolchain processes.
class ProcessLimiter {
 public:
  explicit ProcessLimiter(int slots) : free_(slots) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return free_ > 0; });
    --free_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      ++free_;
    }
    cv_.notify_one();
  }

  class Slot {
   public:
    explicit Slot(ProcessLimiter& l) : l_(l) { l_.acquire(); }
    ~Slot() { l_.release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    ProcessLimiter& l_;
  };

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int free_;
};

}  // namespace intentest
