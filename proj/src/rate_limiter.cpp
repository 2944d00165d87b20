#include "tgbi/rate_limiter.hpp"

#include <cmath>
#include <thread>

#include "tgbi/error.hpp"

namespace tgbi {

RateLimiter::RateLimiter(double requests_per_second) : rate_(requests_per_second) {
  if (!(std::isfinite(requests_per_second) && requests_per_second > 0.0)) {
    throw Error(ErrorCode::RateLimitConfigInvalid, "rate limit must be a positive number");
  }
  interval_ = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(1.0 / requests_per_second));
}

RateLimiter::Clock::time_point RateLimiter::reserve() {
  std::lock_guard lock(mutex_);
  const auto now = Clock::now();
  const auto slot = std::max(now, next_slot_);
  next_slot_ = slot + interval_;
  return slot;
}

void RateLimiter::acquire() { std::this_thread::sleep_until(reserve()); }

}  // namespace tgbi
