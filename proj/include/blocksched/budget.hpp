#pragma once

#include <chrono>
#include <cstddef>
#include <limits>

#include "blocksched/errors.hpp"

namespace bsched {

// Cooperative limits checked from inside solver loops.
class Budget {
 public:
  using Clock = std::chrono::steady_clock;

  Budget() = default;
  Budget(std::chrono::milliseconds time_limit, std::size_t max_bytes)
      : has_deadline_(time_limit.count() > 0),
        deadline_(Clock::now() + time_limit),
        max_bytes_(max_bytes == 0 ? std::numeric_limits<std::size_t>::max()
                                  : max_bytes) {}

  static Budget unlimited() { return Budget(); }

  void check_time() const {
    if (has_deadline_ && Clock::now() > deadline_)
      throw BudgetExceeded(BudgetExceeded::Kind::Time, "time budget exceeded");
  }

  void check_memory(std::size_t bytes) const {
    if (bytes > max_bytes_)
      throw BudgetExceeded(BudgetExceeded::Kind::Memory,
                           "memory budget exceeded");
  }

  void check(std::size_t bytes) const {
    check_memory(bytes);
    check_time();
  }

  std::size_t max_bytes() const { return max_bytes_; }

 private:
  bool has_deadline_ = false;
  Clock::time_point deadline_{};
  std::size_t max_bytes_ = std::numeric_limits<std::size_t>::max();
};

}  // namespace bsched
