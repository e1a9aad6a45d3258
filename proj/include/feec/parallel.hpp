#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace feec
{

/// Worker count from FEEC_MAX_THREADS (0 or unset: hardware concurrency).
std::size_t max_threads();

/// Runs body(i) for i in [0, count) on up to max_threads() workers. The first
/// exception thrown by any task is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, Body&& body)
{
  const std::size_t workers = std::min(max_threads(), count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back(
        [&]
        {
          for (std::size_t i = next++; i < count; i = next++)
          {
            try
            {
              body(i);
            }
            catch (...)
            {
              std::lock_guard lock(error_mutex);
              if (!error)
                error = std::current_exception();
            }
          }
        });
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace feec
