#include "cauchy/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace cauchy
{

int resolve_threads(int threads)
{
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& body)
{
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (workers <= 1)
  {
    body(0, n);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w)
  {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try
      {
        body(begin, end);
      }
      catch (...)
      {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  // Rethrow the first failure in partition order so error reporting is deterministic.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cauchy
