#include "feec/parallel.hpp"

#include <cstdlib>
#include <string>

std::size_t feec::max_threads()
{
  std::size_t n = 0;
  if (const char* env = std::getenv("FEEC_MAX_THREADS"))
  {
    try
    {
      n = std::stoul(env);
    }
    catch (const std::exception&)
    {
      n = 0;
    }
  }
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}
