// Copyright the numrad authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace numrad
{

namespace detail
{

inline std::atomic<unsigned> &thread_override()
{
  static std::atomic<unsigned> cap{0};
  return cap;
}

}  // namespace detail

/// Worker count for embarrassingly parallel loops. Defaults to the hardware
/// concurrency, capped by the NUMRAD_THREADS environment variable when set
/// and by an active ThreadCap.
inline unsigned worker_threads()
{
  unsigned count = std::max(1u, std::thread::hardware_concurrency());
  if (const unsigned cap = detail::thread_override().load(); cap != 0)
  {
    count = std::min(count, cap);
  }
  if (const char *env = std::getenv("NUMRAD_THREADS"); env != nullptr && *env != '\0')
  {
    try
    {
      const long cap = std::stol(env);
      if (cap >= 1)
      {
        count = std::min<unsigned>(count, static_cast<unsigned>(cap));
      }
    }
    catch (const std::exception &)
    {
      // Unparsable values are ignored.
    }
  }
  return count;
}

/// Process-wide cap on worker_threads() for the lifetime of the object.
class ThreadCap
{
public:
  explicit ThreadCap(unsigned cap) : previous_(detail::thread_override().exchange(cap)) {}
  ~ThreadCap() { detail::thread_override().store(previous_); }
  ThreadCap(const ThreadCap &) = delete;
  ThreadCap &operator=(const ThreadCap &) = delete;

private:
  unsigned previous_;
};

/// Calls body(i) for i in [begin, end). Each index is visited exactly once;
/// results must be written to per-index slots for the outcome to be
/// independent of the thread count. The first exception is rethrown.
template <class Body>
void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end, Body &&body)
{
  const std::ptrdiff_t count = end - begin;
  if (count <= 0)
  {
    return;
  }
  const auto threads =
      static_cast<std::ptrdiff_t>(std::min<std::ptrdiff_t>(worker_threads(), count));
  if (threads <= 1 || count < 64)
  {
    for (std::ptrdiff_t i = begin; i < end; ++i)
    {
      body(i);
    }
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::ptrdiff_t t = 0; t < threads; ++t)
  {
    pool.emplace_back(
        [&, t]
        {
          try
          {
            for (std::ptrdiff_t i = begin + t; i < end; i += threads)
            {
              body(i);
            }
          }
          catch (...)
          {
            std::lock_guard lock(failure_mutex);
            if (!failure)
            {
              failure = std::current_exception();
            }
          }
        });
  }
  pool.clear();
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

}  // namespace numrad
