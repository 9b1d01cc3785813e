#pragma once

#include <chrono>
#include <optional>

#include "error.hpp"

namespace homolab {

// Cooperative per-thread deadline. Long-running kernels call checkDeadline()
// from their main loops; the probe runner installs a deadline per cell.
namespace detail {
inline thread_local std::optional<std::chrono::steady_clock::time_point> tlsDeadline;
inline thread_local unsigned tlsTick = 0;
}  // namespace detail

class DeadlineScope {
public:
  explicit DeadlineScope(std::chrono::milliseconds budget)
      : previous_(detail::tlsDeadline) {
    detail::tlsDeadline = std::chrono::steady_clock::now() + budget;
  }
  ~DeadlineScope() { detail::tlsDeadline = previous_; }
  DeadlineScope(const DeadlineScope&) = delete;
  DeadlineScope& operator=(const DeadlineScope&) = delete;

private:
  std::optional<std::chrono::steady_clock::time_point> previous_;
};

inline void checkDeadline() {
  if (!detail::tlsDeadline) return;
  if ((++detail::tlsTick & 0xff) != 0) return;
  if (std::chrono::steady_clock::now() > *detail::tlsDeadline) throw TimeoutError("timeout");
}

}  // namespace homolab
