#pragma once

#include <chrono>
#include <mutex>

namespace tgbi {

/// Spaces calls at least 1/rate seconds apart across all threads sharing the
/// limiter. No bursting.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  /// Throws Error(RateLimitConfigInvalid) unless requests_per_second > 0.
  explicit RateLimiter(double requests_per_second);

  /// Blocks until the caller's slot arrives.
  void acquire();
  /// Reserves the next slot without sleeping; returns when it starts.
  Clock::time_point reserve();

  double rate() const noexcept { return rate_; }

 private:
  double rate_;
  Clock::duration interval_;
  std::mutex mutex_;
  Clock::time_point next_slot_{};
};

}  // namespace tgbi
